#ifndef ELLNB_SERIES_HPP
#define ELLNB_SERIES_HPP

// Truncated power series (exponents 0..N) and Laurent series (exponents v..N).
// Every result carries the largest truncation its operands actually determine.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ellnb/coefficients.hpp"
#include "ellnb/errors.hpp"

namespace ellnb {

template <class K>
class PSeries {
 public:
  PSeries() : PSeries(0) {}
  explicit PSeries(int trunc) : c_(std::size_t(std::max(trunc, -1) + 1), K(0L)) {
    if (trunc < 0) fail(ErrorCode::InvalidInput, "negative truncation");
  }
  // Coefficients past trunc are dropped; missing ones are zero.
  PSeries(std::vector<K> coeffs, int trunc) : PSeries(trunc) {
    for (std::size_t i = 0; i < coeffs.size() && i < c_.size(); ++i) c_[i] = std::move(coeffs[i]);
  }

  static PSeries monomial(const K& a, int e, int trunc) {
    PSeries s(trunc);
    if (e >= 0 && e <= trunc) s.c_[e] = a;
    return s;
  }
  static PSeries identity(int trunc) { return monomial(K(1L), 1, trunc); }
  static PSeries constant(const K& a, int trunc) { return monomial(a, 0, trunc); }

  int trunc() const { return int(c_.size()) - 1; }
  const std::vector<K>& coeffs() const { return c_; }
  // Coefficient of y^i; zero past truncation is a caller bug.
  const K& operator[](int i) const { return c_.at(std::size_t(i)); }
  K coeff(int i) const { return i >= 0 && i <= trunc() ? c_[i] : K(0L); }
  void set(int i, const K& a) { c_.at(std::size_t(i)) = a; }

  PSeries truncated(int n) const {
    if (n >= trunc()) return *this;
    return PSeries(std::vector<K>(c_.begin(), c_.begin() + (n + 1)), n);
  }

  // First exponent with a nonzero coefficient, or nullopt when zero to truncation.
  std::optional<int> valuation() const {
    for (int i = 0; i <= trunc(); ++i)
      if (!ellnb::is_zero(c_[i])) return i;
    return std::nullopt;
  }
  bool is_zero() const { return !valuation().has_value(); }

  friend PSeries operator+(const PSeries& a, const PSeries& b) {
    const int n = std::min(a.trunc(), b.trunc());
    PSeries r(n);
    for (int i = 0; i <= n; ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
  }
  friend PSeries operator-(const PSeries& a) {
    PSeries r(a.trunc());
    for (int i = 0; i <= a.trunc(); ++i) r.c_[i] = -a.c_[i];
    return r;
  }
  friend PSeries operator-(const PSeries& a, const PSeries& b) { return a + (-b); }
  friend PSeries operator*(const PSeries& a, const PSeries& b) {
    const int n = std::min(a.trunc(), b.trunc());
    return mul_to(a, b, n);
  }
  friend PSeries operator*(const K& s, const PSeries& a) {
    PSeries r(a.trunc());
    for (int i = 0; i <= a.trunc(); ++i)
      if (!a.c_[i].is_null()) r.c_[i] = s * a.c_[i];
    return r;
  }

  // Product known through exponent n (n at most the shared truncation).
  static PSeries mul_to(const PSeries& a, const PSeries& b, int n) {
    PSeries r(n);
    for (int i = 0; i <= n && i <= a.trunc(); ++i) {
      if (a.c_[i].is_null()) continue;
      for (int j = 0; i + j <= n && j <= b.trunc(); ++j) {
        if (b.c_[j].is_null()) continue;
        r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }

  // d/dy loses the top coefficient.
  PSeries derivative() const {
    if (trunc() == 0) return PSeries(0);
    PSeries r(trunc() - 1);
    for (int i = 1; i <= trunc(); ++i)
      if (!c_[i].is_null()) r.c_[i - 1] = K(long(i)) * c_[i];
    return r;
  }

  // Multiplicative inverse; constant term must be invertible.
  PSeries inverse() const {
    if (ellnb::is_zero(c_[0])) fail(ErrorCode::DivisionByZero, "series inverse needs c0 != 0");
    const int n = trunc();
    PSeries r(n);
    const K inv0 = c_[0].inverse();
    r.c_[0] = inv0;
    for (int i = 1; i <= n; ++i) {
      K acc(0L);
      for (int j = 1; j <= i; ++j)
        if (!c_[j].is_null() && !r.c_[i - j].is_null()) acc += c_[j] * r.c_[i - j];
      r.c_[i] = -(acc * inv0);
    }
    return r;
  }

  friend bool operator==(const PSeries& a, const PSeries& b) {
    const int n = std::min(a.trunc(), b.trunc());
    for (int i = 0; i <= n; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }
  friend bool operator!=(const PSeries& a, const PSeries& b) { return !(a == b); }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= trunc(); ++i) {
      if (ellnb::is_zero(c_[i])) continue;
      if (!first) os << " + ";
      os << "(" << c_[i] << ")*y^" << i;
      first = false;
    }
    if (first) os << "0";
    os << " + O(y^" << trunc() + 1 << ")";
    return os.str();
  }

 private:
  std::vector<K> c_;
};

// outer(inner(y)) by Horner; inner(0) must vanish.
template <class K>
PSeries<K> compose(const PSeries<K>& outer, const PSeries<K>& inner) {
  if (!ellnb::is_zero(inner[0])) fail(ErrorCode::NonzeroConstantTerm, "inner series has c0 != 0");
  const int n = std::min(outer.trunc(), inner.trunc());
  PSeries<K> r = PSeries<K>::constant(outer.coeff(n), n);
  for (int j = n - 1; j >= 0; --j) {
    r = PSeries<K>::mul_to(r, inner, n);
    r.set(0, r[0] + outer[j]);
  }
  return r;
}

// Compositional inverse by Lagrange inversion: g_n = (1/n) [y^(n-1)] (y/f)^n.
template <class K>
PSeries<K> reversion(const PSeries<K>& f) {
  if (!ellnb::is_zero(f[0])) fail(ErrorCode::NonzeroConstantTerm, "reversion needs f(0) = 0");
  if (f.trunc() < 1 || ellnb::is_zero(f[1]))
    fail(ErrorCode::ZeroLinearCoefficient, "reversion needs f'(0) != 0");
  const int n = f.trunc();
  std::vector<K> q(std::size_t(n), K(0L));
  for (int i = 1; i <= n; ++i) q[i - 1] = f[i];
  const PSeries<K> h = PSeries<K>(q, n - 1).inverse();
  PSeries<K> g(n);
  PSeries<K> hp = h;
  for (int k = 1; k <= n; ++k) {
    g.set(k, hp[k - 1] / K(long(k)));
    if (k < n) hp = hp * h;
  }
  return g;
}

// ---------------------------------------------------------------------------
// Laurent series c_v y^v + ... + c_N y^N + O(y^(N+1)).
// ---------------------------------------------------------------------------
template <class K>
class LSeries {
 public:
  LSeries() : LSeries(0) {}
  explicit LSeries(int trunc) : lo_(trunc + 1), n_(trunc) {}
  // Coefficients indexed from exponent lo; leading zeros are stripped.
  LSeries(int lo, std::vector<K> coeffs, int trunc) : lo_(lo), n_(trunc), c_(std::move(coeffs)) {
    if (lo_ + int(c_.size()) - 1 > n_) c_.resize(std::size_t(std::max(0, n_ - lo_ + 1)), K(0L));
    normalize();
  }
  LSeries(const PSeries<K>& p) : LSeries(0, p.coeffs(), p.trunc()) {}

  static LSeries monomial(const K& a, int e, int trunc) { return LSeries(e, {a}, trunc); }

  int trunc() const { return n_; }
  bool is_zero() const { return c_.empty(); }
  // Valuation; a zero series reports trunc + 1.
  int valuation() const { return lo_; }
  int pole_order() const { return std::max(0, -lo_); }
  K coeff(int e) const {
    const int i = e - lo_;
    return i >= 0 && i < int(c_.size()) ? c_[i] : K(0L);
  }
  K residue() const { return coeff(-1); }

  LSeries truncated(int n) const {
    if (n >= n_) return *this;
    std::vector<K> c;
    for (int e = lo_; e <= n; ++e) c.push_back(coeff(e));
    return LSeries(lo_, c, n);
  }

  // Terms of negative exponent (residue included).
  LSeries principal_part() const {
    std::vector<K> c;
    for (int e = lo_; e < 0; ++e) c.push_back(coeff(e));
    return LSeries(lo_, c, n_);
  }
  bool is_holomorphic() const { return is_zero() || lo_ >= 0; }

  PSeries<K> to_pseries() const {
    if (!is_holomorphic()) fail(ErrorCode::InvalidInput, "series has a pole");
    if (n_ < 0) fail(ErrorCode::TruncationTooLow, "no holomorphic coefficients known");
    PSeries<K> p(n_);
    for (int e = std::max(lo_, 0); e <= n_; ++e) p.set(e, coeff(e));
    return p;
  }

  friend LSeries operator+(const LSeries& a, const LSeries& b) {
    const int n = std::min(a.n_, b.n_);
    const int lo = std::min(a.lo_, b.lo_);
    std::vector<K> c;
    for (int e = lo; e <= n; ++e) c.push_back(a.coeff(e) + b.coeff(e));
    return LSeries(lo, c, n);
  }
  friend LSeries operator-(const LSeries& a) {
    std::vector<K> c;
    for (const auto& x : a.c_) c.push_back(-x);
    return LSeries(a.lo_, c, a.n_);
  }
  friend LSeries operator-(const LSeries& a, const LSeries& b) { return a + (-b); }
  friend LSeries operator*(const K& s, const LSeries& a) {
    std::vector<K> c;
    for (const auto& x : a.c_) c.push_back(s * x);
    return LSeries(a.lo_, c, a.n_);
  }

  friend LSeries operator*(const LSeries& a, const LSeries& b) {
    const int n = std::min(a.n_ + b.lo_, b.n_ + a.lo_);
    if (a.is_zero() || b.is_zero()) return LSeries(n);
    const int lo = a.lo_ + b.lo_;
    std::vector<K> c(std::size_t(std::max(0, n - lo + 1)), K(0L));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_null()) continue;
      for (std::size_t j = 0; j < b.c_.size() && int(i + j) < int(c.size()); ++j) {
        if (b.c_[j].is_null()) continue;
        c[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return LSeries(lo, c, n);
  }

  LSeries inverse() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero series");
    const int v = lo_;
    const int m = n_ - v;  // unit part known through y^m
    PSeries<K> u(m);
    for (int i = 0; i <= m; ++i) u.set(i, coeff(v + i));
    const PSeries<K> w = u.inverse();
    return LSeries(-v, w.coeffs(), n_ - 2 * v);
  }
  friend LSeries operator/(const LSeries& a, const LSeries& b) { return a * b.inverse(); }

  LSeries derivative() const {
    std::vector<K> c;
    for (int e = lo_; e <= n_; ++e) c.push_back(K(long(e)) * coeff(e));
    return LSeries(lo_ - 1, c, n_ - 1);
  }

  // Antiderivative with zero integration constant.
  LSeries primitive() const {
    if (!ellnb::is_zero(residue())) fail(ErrorCode::NonzeroResidue, "primitive needs zero residue");
    std::vector<K> c;
    for (int e = lo_; e <= n_; ++e)
      c.push_back(e == -1 ? K(0L) : coeff(e) / K(long(e + 1)));
    return LSeries(lo_ + 1, c, n_ + 1);
  }

  // this(f(y)) for f with f(0) = 0, f'(0) != 0.
  LSeries substitute(const PSeries<K>& f) const {
    if (!ellnb::is_zero(f[0])) fail(ErrorCode::NonzeroConstantTerm, "substitution needs f(0) = 0");
    if (f.trunc() < 1 || ellnb::is_zero(f[1]))
      fail(ErrorCode::ZeroLinearCoefficient, "substitution needs f'(0) != 0");
    if (is_zero()) return LSeries(std::min(n_, lo_ + f.trunc() - 1));
    const int v = lo_;
    const int nf = f.trunc();
    // f = y u with u known through y^(nf-1).
    std::vector<K> uq(std::size_t(nf), K(0L));
    for (int i = 1; i <= nf; ++i) uq[i - 1] = f[i];
    const PSeries<K> u(uq, nf - 1);
    const int qn = n_ - v;
    std::vector<K> qc;
    for (int i = 0; i <= qn; ++i) qc.push_back(coeff(v + i));
    const PSeries<K> qf = compose(PSeries<K>(qc, qn), f);
    PSeries<K> uv = pow(u, v);
    const int n = std::min(n_, v + nf - 1);
    const PSeries<K> prod = PSeries<K>::mul_to(qf, uv, n - v);
    return LSeries(v, prod.coeffs(), n);
  }

  friend bool operator==(const LSeries& a, const LSeries& b) {
    const int n = std::min(a.n_, b.n_);
    for (int e = std::min(a.lo_, b.lo_); e <= n; ++e)
      if (a.coeff(e) != b.coeff(e)) return false;
    return true;
  }
  friend bool operator!=(const LSeries& a, const LSeries& b) { return !(a == b); }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int e = lo_; e <= n_; ++e) {
      if (ellnb::is_zero(coeff(e))) continue;
      if (!first) os << " + ";
      os << "(" << coeff(e) << ")*y^" << e;
      first = false;
    }
    if (first) os << "0";
    os << " + O(y^" << n_ + 1 << ")";
    return os.str();
  }

 private:
  static PSeries<K> pow(const PSeries<K>& u, long e) {
    if (e < 0) return pow(u.inverse(), -e);
    PSeries<K> r = PSeries<K>::constant(K(1L), u.trunc());
    PSeries<K> b = u;
    while (e > 0) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  void normalize() {
    std::size_t s = 0;
    while (s < c_.size() && ellnb::is_zero(c_[s])) ++s;
    if (s == c_.size()) {
      c_.clear();
      lo_ = n_ + 1;
      return;
    }
    c_.erase(c_.begin(), c_.begin() + long(s));
    lo_ += int(s);
    while (!c_.empty() && c_.back().is_null()) c_.pop_back();
  }

  int lo_;
  int n_;
  std::vector<K> c_;
};

}  // namespace ellnb

#endif  // ELLNB_SERIES_HPP
