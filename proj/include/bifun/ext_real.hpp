#pragma once

#include <cmath>
#include <limits>
#include <ostream>

namespace bifun {

/// Extended real number. Stored as a double where the IEEE infinities play
/// +inf / -inf; NaN never appears.
///
/// operator+ is the addition of the inf-flavoured quantale: (+inf) + (-inf)
/// is +inf. Concave code uses add_concave, where -inf absorbs instead.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  constexpr ExtReal(double v) : v_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr ExtReal pos_inf() { return ExtReal(std::numeric_limits<double>::infinity()); }
  static constexpr ExtReal neg_inf() { return ExtReal(-std::numeric_limits<double>::infinity()); }

  bool is_finite() const { return std::isfinite(v_); }
  bool is_pos_inf() const { return std::isinf(v_) && v_ > 0; }
  bool is_neg_inf() const { return std::isinf(v_) && v_ < 0; }
  constexpr double value() const { return v_; }

  ExtReal operator-() const { return ExtReal(-v_); }

  friend ExtReal operator+(ExtReal a, ExtReal b) {
    if (a.is_pos_inf() || b.is_pos_inf()) return pos_inf();
    return ExtReal(a.v_ + b.v_);
  }
  friend ExtReal operator-(ExtReal a, ExtReal b) { return a + (-b); }

  friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend auto operator<=>(ExtReal a, ExtReal b) { return a.v_ <=> b.v_; }

  friend std::ostream& operator<<(std::ostream& os, ExtReal x) {
    if (x.is_pos_inf()) return os << "inf";
    if (x.is_neg_inf()) return os << "-inf";
    return os << x.v_;
  }

 private:
  double v_ = 0.0;
};

inline ExtReal add_concave(ExtReal a, ExtReal b) { return -((-a) + (-b)); }

}  // namespace bifun
