#ifndef ELLNB_GERMS_HPP
#define ELLNB_GERMS_HPP

// Truncated formal diffeomorphisms of (C,0): f(0) = 0, f'(0) != 0.

#include <optional>

#include "ellnb/series.hpp"

namespace ellnb {

template <class K>
class Germ {
 public:
  Germ() : s_(PSeries<K>::identity(1)) {}
  explicit Germ(PSeries<K> s) : s_(std::move(s)) {
    if (s_.trunc() < 1) fail(ErrorCode::NotAGerm, "germ needs truncation >= 1");
    if (!ellnb::is_zero(s_[0])) fail(ErrorCode::NotAGerm, "germ must fix 0");
    if (ellnb::is_zero(s_[1])) fail(ErrorCode::NotAGerm, "germ needs f'(0) != 0");
  }

  static Germ identity(int trunc) { return Germ(PSeries<K>::identity(trunc)); }
  static Germ linear(const K& a, int trunc) { return Germ(PSeries<K>::monomial(a, 1, trunc)); }

  const PSeries<K>& series() const { return s_; }
  int trunc() const { return s_.trunc(); }
  K linear_part() const { return s_[1]; }
  K coeff(int i) const { return s_.coeff(i); }
  Germ truncated(int n) const { return Germ(s_.truncated(n)); }

  bool is_identity() const { return s_ == PSeries<K>::identity(trunc()); }
  bool is_linear() const {
    for (int i = 2; i <= trunc(); ++i)
      if (!ellnb::is_zero(s_[i])) return false;
    return true;
  }

  // (f * g)(y) = f(g(y)).
  friend Germ operator*(const Germ& f, const Germ& g) { return Germ(compose(f.s_, g.s_)); }
  Germ inverse() const { return Germ(reversion(s_)); }
  // Scalar post-multiplication a * f(y).
  friend Germ operator*(const K& a, const Germ& f) { return Germ(a * f.s_); }

  friend bool operator==(const Germ& a, const Germ& b) { return a.s_ == b.s_; }
  friend bool operator!=(const Germ& a, const Germ& b) { return !(a == b); }

  std::string to_string() const { return s_.to_string(); }

 private:
  PSeries<K> s_;
};

// h o f o h^-1.
template <class K>
Germ<K> conjugate(const Germ<K>& f, const Germ<K>& h) {
  return h * f * h.inverse();
}

// n-fold composition; negative n iterates the inverse.
template <class K>
Germ<K> iterate(const Germ<K>& f, long n) {
  Germ<K> b = n < 0 ? f.inverse() : f;
  if (n < 0) n = -n;
  Germ<K> r = Germ<K>::identity(f.trunc());
  while (n > 0) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

// Least exponent where f and g differ, or nullopt when equal to truncation.
template <class K>
std::optional<int> contact_order(const Germ<K>& f, const Germ<K>& g) {
  const int n = std::min(f.trunc(), g.trunc());
  for (int i = 1; i <= n; ++i)
    if (f.coeff(i) != g.coeff(i)) return i;
  return std::nullopt;
}

}  // namespace ellnb

#endif  // ELLNB_GERMS_HPP
