#ifndef ELLNB_COEFFICIENTS_HPP
#define ELLNB_COEFFICIENTS_HPP

// Two coefficient fields share one interface:
//   Cyclo  - exact elements of Q(zeta_n), dense in the power basis of zeta_n.
//   FloatC - complex numbers on MPFR with a per-value mantissa width.

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ellnb/errors.hpp"

namespace ellnb {

using boost::multiprecision::mpfr_float;

namespace detail {

using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

inline void trim(QPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Monic exact division in Z[x].
inline ZPoly zdiv_monic(ZPoly num, const ZPoly& den) {
  const int dn = int(num.size()) - 1, dd = int(den.size()) - 1;
  ZPoly q(dn - dd + 1);
  for (int i = dn; i >= dd; --i) {
    mpz_class t = num[i];
    q[i - dd] = t;
    if (t != 0)
      for (int j = 0; j <= dd; ++j) num[i - dd + j] -= t * den[j];
  }
  return q;
}

inline const ZPoly& cyclotomic_poly(int n) {
  static std::recursive_mutex mu;
  static std::map<int, ZPoly> cache;
  std::lock_guard<std::recursive_mutex> lk(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  ZPoly p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = zdiv_monic(p, cyclotomic_poly(d));
  return cache.emplace(n, std::move(p)).first->second;
}

inline int totient(int n) { return int(cyclotomic_poly(n).size()) - 1; }

// Reduce p modulo the monic polynomial m in place; result has size deg(m).
inline void reduce_mod(QPoly& p, const ZPoly& m) {
  const int d = int(m.size()) - 1;
  for (int i = int(p.size()) - 1; i >= d; --i) {
    if (sgn(p[i]) == 0) continue;
    mpq_class t = p[i];
    for (int j = 0; j < d; ++j)
      if (m[j] != 0) p[i - d + j] -= t * mpq_class(m[j]);
    p[i] = 0;
  }
  p.resize(d);
}

inline std::pair<QPoly, QPoly> qdivmod(QPoly a, const QPoly& b) {
  QPoly q;
  const int db = int(b.size()) - 1;
  if (int(a.size()) - 1 >= db) q.assign(a.size() - b.size() + 1, mpq_class(0));
  for (int i = int(a.size()) - 1; i >= db; --i) {
    if (sgn(a[i]) == 0) continue;
    mpq_class t = a[i] / b[db];
    q[i - db] = t;
    for (int j = 0; j <= db; ++j) a[i - db + j] -= t * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (sgn(b[j]) != 0) r[i + j] += a[i] * b[j];
  }
  return r;
}

inline QPoly qsub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), mpq_class(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

inline int digits10_for_bits(int bits) {
  return int(std::ceil(bits * 0.30102999566398120)) + 1;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exact cyclotomic field element.
// ---------------------------------------------------------------------------
class Cyclo {
 public:
  Cyclo() : n_(1), c_(1, mpq_class(0)) {}
  Cyclo(long v) : n_(1), c_(1, mpq_class(v)) {}
  Cyclo(int v) : Cyclo(long(v)) {}
  Cyclo(const mpq_class& q) : n_(1), c_(1, q) {}

  static Cyclo rational(long p, long q) {
    mpq_class r(p, q);
    r.canonicalize();
    return Cyclo(r);
  }

  // Primitive root exp(2 pi i / order), living in conductor `order`.
  static Cyclo zeta(int order) {
    if (order < 1) fail(ErrorCode::InvalidInput, "root order must be positive");
    detail::QPoly p(2, mpq_class(0));
    p[1] = 1;
    return from_poly(order, std::move(p));
  }

  static Cyclo from_poly(int conductor, detail::QPoly p) {
    if (conductor < 1) fail(ErrorCode::InvalidInput, "conductor must be >= 1");
    const auto& m = detail::cyclotomic_poly(conductor);
    if (p.size() < m.size() - 1) p.resize(m.size() - 1, mpq_class(0));
    detail::reduce_mod(p, m);
    Cyclo r;
    r.n_ = conductor;
    r.c_ = std::move(p);
    return r;
  }

  int conductor() const { return n_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& q : c_)
      if (sgn(q) != 0) return false;
    return true;
  }
  bool is_null() const { return is_zero(); }

  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (sgn(c_[i]) != 0) return false;
    return true;
  }
  mpq_class rational_value() const { return c_.empty() ? mpq_class(0) : c_[0]; }

  Cyclo promoted(int L) const {
    if (L == n_) return *this;
    if (L % n_ != 0) fail(ErrorCode::ConductorMismatch, "cannot embed conductor");
    const int r = L / n_;
    detail::QPoly p((c_.size() - 1) * r + 1, mpq_class(0));
    for (size_t j = 0; j < c_.size(); ++j) p[j * r] = c_[j];
    return from_poly(L, std::move(p));
  }

  friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    if (a.n_ == b.n_) {
      Cyclo r = a;
      for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
      return r;
    }
    if (b.n_ == 1) return a.add_rational(b.c_[0]);
    if (a.n_ == 1) return b.add_rational(a.c_[0]);
    const int L = std::lcm(a.n_, b.n_);
    return a.promoted(L) + b.promoted(L);
  }
  friend Cyclo operator-(const Cyclo& a) {
    Cyclo r = a;
    for (auto& q : r.c_) q = -q;
    return r;
  }
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    if (b.n_ == 1) return a.scaled(b.c_[0]);
    if (a.n_ == 1) return b.scaled(a.c_[0]);
    if (a.n_ != b.n_) {
      const int L = std::lcm(a.n_, b.n_);
      return a.promoted(L) * b.promoted(L);
    }
    detail::QPoly p = detail::qmul(a.c_, b.c_);
    return from_poly(a.n_, std::move(p));
  }

  Cyclo inverse() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
    if (n_ == 1 || is_rational()) {
      Cyclo r = *this;
      r.c_.assign(c_.size(), mpq_class(0));
      r.c_[0] = 1 / c_[0];
      return r;
    }
    const auto& m = detail::cyclotomic_poly(n_);
    detail::QPoly r_prev(m.begin(), m.end()), r = c_;
    detail::trim(r);
    detail::QPoly t_prev, t{mpq_class(1)};
    while (r.size() > 1) {
      auto [q, rem] = detail::qdivmod(r_prev, r);
      r_prev = std::move(r);
      r = std::move(rem);
      detail::QPoly nt = detail::qsub(t_prev, detail::qmul(q, t));
      t_prev = std::move(t);
      t = std::move(nt);
    }
    mpq_class inv0 = 1 / r[0];
    for (auto& q : t) q *= inv0;
    return from_poly(n_, std::move(t));
  }

  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) {
    if (b.n_ == 1) {
      if (sgn(b.c_[0]) == 0) fail(ErrorCode::DivisionByZero, "division by zero");
      return a.scaled(1 / b.c_[0]);
    }
    return a * b.inverse();
  }

  Cyclo& operator+=(const Cyclo& b) { return *this = *this + b; }
  Cyclo& operator-=(const Cyclo& b) { return *this = *this - b; }
  Cyclo& operator*=(const Cyclo& b) { return *this = *this * b; }
  Cyclo& operator/=(const Cyclo& b) { return *this = *this / b; }

  friend bool operator==(const Cyclo& a, const Cyclo& b) {
    if (a.n_ == b.n_) return a.c_ == b.c_;
    const int L = std::lcm(a.n_, b.n_);
    return a.promoted(L).c_ == b.promoted(L).c_;
  }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  // Lexicographic order on the coefficient vector over the common conductor.
  friend int compare_encoding(const Cyclo& a, const Cyclo& b) {
    const int L = std::lcm(a.n_, b.n_);
    const Cyclo pa = a.promoted(L), pb = b.promoted(L);
    for (size_t i = 0; i < pa.c_.size(); ++i) {
      int c = cmp(pa.c_[i], pb.c_[i]);
      if (c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
  }

  // Value under the embedding zeta_n -> exp(2 pi i / n).
  std::pair<mpfr_float, mpfr_float> embed(int bits) const;

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t j = 0; j < c_.size(); ++j) {
      if (sgn(c_[j]) == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << c_[j].get_str();
      if (j == 1) os << "*z" << n_;
      if (j > 1) os << "*z" << n_ << "^" << j;
    }
    if (first) os << "0";
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const Cyclo& a) {
    return os << a.to_string();
  }

 private:
  Cyclo add_rational(const mpq_class& q) const {
    Cyclo r = *this;
    r.c_[0] += q;
    return r;
  }
  Cyclo scaled(const mpq_class& q) const {
    Cyclo r = *this;
    for (auto& x : r.c_) x *= q;
    return r;
  }

  int n_;
  std::vector<mpq_class> c_;
};

// ---------------------------------------------------------------------------
// Arbitrary-precision complex number.
// ---------------------------------------------------------------------------

// Working width for values created from integer literals.
inline int& default_float_bits() {
  static int bits = 200;
  return bits;
}

class FloatC {
 public:
  FloatC() : FloatC(0L) {}
  FloatC(long v) : re_(v, 20), im_(0, 20), bits_(0) {}
  FloatC(int v) : FloatC(long(v)) {}
  FloatC(const mpfr_float& re, const mpfr_float& im, int bits)
      : re_(re, detail::digits10_for_bits(bits)),
        im_(im, detail::digits10_for_bits(bits)),
        bits_(bits) {}

  static FloatC from_strings(const std::string& re, const std::string& im, int bits) {
    const int d = detail::digits10_for_bits(bits);
    mpfr_float r(0, d), i(0, d);
    try {
      r = mpfr_float(re, d);
      i = mpfr_float(im, d);
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidInput, "bad decimal string");
    }
    return FloatC(r, i, bits);
  }

  // Width a value actually carries; integer literals adopt the default width.
  int bits() const { return bits_ == 0 ? default_float_bits() : bits_; }
  int declared_bits() const { return bits_; }
  const mpfr_float& re() const { return re_; }
  const mpfr_float& im() const { return im_; }

  // Zero-test threshold: 1e-12 at 53 bits, halving with each extra bit.
  static mpfr_float epsilon(int bits) {
    const int d = detail::digits10_for_bits(bits);
    mpfr_float e(1, d);
    e = e / mpfr_float(1000000000000LL, d);
    return boost::multiprecision::ldexp(e, 53 - bits);
  }

  mpfr_float abs() const { return boost::multiprecision::hypot(re_, im_); }
  mpfr_float arg() const { return boost::multiprecision::atan2(im_, re_); }

  bool is_zero() const { return abs() <= epsilon(bits()); }
  bool is_zero(const mpfr_float& eps) const { return abs() <= eps; }
  bool is_null() const { return re_ == 0 && im_ == 0; }

  friend FloatC operator+(const FloatC& a, const FloatC& b) {
    const int w = width(a, b);
    const int d = detail::digits10_for_bits(w);
    return FloatC(mpfr_float(a.re_, d) + b.re_, mpfr_float(a.im_, d) + b.im_, w);
  }
  friend FloatC operator-(const FloatC& a) {
    FloatC r = a;
    r.re_ = -r.re_;
    r.im_ = -r.im_;
    return r;
  }
  friend FloatC operator-(const FloatC& a, const FloatC& b) { return a + (-b); }
  friend FloatC operator*(const FloatC& a, const FloatC& b) {
    const int w = width(a, b);
    const int d = detail::digits10_for_bits(w);
    mpfr_float ar(a.re_, d), ai(a.im_, d);
    return FloatC(ar * b.re_ - ai * b.im_, ar * b.im_ + ai * b.re_, w);
  }
  friend FloatC operator/(const FloatC& a, const FloatC& b) {
    if (b.is_null()) fail(ErrorCode::DivisionByZero, "division by zero");
    const int w = width(a, b);
    const int d = detail::digits10_for_bits(w);
    mpfr_float br(b.re_, d), bi(b.im_, d);
    mpfr_float den = br * br + bi * bi;
    mpfr_float ar(a.re_, d), ai(a.im_, d);
    return FloatC((ar * br + ai * bi) / den, (ai * br - ar * bi) / den, w);
  }
  FloatC inverse() const { return FloatC(1L) / *this; }

  FloatC& operator+=(const FloatC& b) { return *this = *this + b; }
  FloatC& operator-=(const FloatC& b) { return *this = *this - b; }
  FloatC& operator*=(const FloatC& b) { return *this = *this * b; }
  FloatC& operator/=(const FloatC& b) { return *this = *this / b; }

  // Equality within the zero-test threshold of the wider operand.
  // Absolute below magnitude 1, relative above it.
  friend bool operator==(const FloatC& a, const FloatC& b) {
    const mpfr_float scale = std::max({mpfr_float(1), a.abs(), b.abs()});
    return (a - b).abs() <= epsilon(std::min(a.bits(), b.bits())) * scale;
  }
  friend bool operator!=(const FloatC& a, const FloatC& b) { return !(a == b); }

  FloatC with_bits(int bits) const { return FloatC(re_, im_, bits); }

  std::string re_string() const { return dec(re_); }
  std::string im_string() const { return dec(im_); }
  friend std::ostream& operator<<(std::ostream& os, const FloatC& a) {
    return os << "(" << a.re_string() << ", " << a.im_string() << ")";
  }

 private:
  static int width(const FloatC& a, const FloatC& b) {
    const int w = std::max(a.bits_, b.bits_);
    return w == 0 ? default_float_bits() : w;
  }
  std::string dec(const mpfr_float& x) const {
    return x.str(detail::digits10_for_bits(bits()), std::ios_base::scientific);
  }

  mpfr_float re_, im_;
  int bits_;
};

inline mpfr_float pi_at(int bits) {
  const int d = detail::digits10_for_bits(bits);
  mpfr_float one(1, d);
  return 4 * boost::multiprecision::atan(one);
}

inline FloatC cexp(const FloatC& z) {
  const int b = z.bits();
  const int d = detail::digits10_for_bits(b);
  mpfr_float re(z.re(), d), im(z.im(), d);
  mpfr_float m = boost::multiprecision::exp(re);
  return FloatC(m * boost::multiprecision::cos(im), m * boost::multiprecision::sin(im), b);
}

// Principal branch, argument in (-pi, pi].
inline FloatC clog(const FloatC& z) {
  if (z.is_null()) fail(ErrorCode::DivisionByZero, "logarithm of zero");
  const int b = z.bits();
  const int d = detail::digits10_for_bits(b);
  mpfr_float re(z.re(), d), im(z.im(), d);
  return FloatC(boost::multiprecision::log(boost::multiprecision::hypot(re, im)),
                boost::multiprecision::atan2(im, re), b);
}

inline std::pair<mpfr_float, mpfr_float> Cyclo::embed(int bits) const {
  const int d = detail::digits10_for_bits(bits);
  mpfr_float re(0, d), im(0, d);
  const mpfr_float twopi = 2 * pi_at(bits);
  for (size_t j = 0; j < c_.size(); ++j) {
    if (sgn(c_[j]) == 0) continue;
    mpfr_float num(c_[j].get_num().get_str(), d), den(c_[j].get_den().get_str(), d);
    mpfr_float q = num / den;
    mpfr_float ang = twopi * mpfr_float(long(j), d) / mpfr_float(long(n_), d);
    re += q * boost::multiprecision::cos(ang);
    im += q * boost::multiprecision::sin(ang);
  }
  return {re, im};
}

inline FloatC to_float(const Cyclo& a, int bits) {
  auto [re, im] = a.embed(bits);
  return FloatC(re, im, bits);
}
inline FloatC to_float(const FloatC& a, int bits) { return a.with_bits(bits); }

// ---------------------------------------------------------------------------
// Backend-generic helpers.
// ---------------------------------------------------------------------------
template <class K>
struct field_traits;

template <>
struct field_traits<Cyclo> {
  static constexpr bool exact = true;
  static constexpr const char* name = "exact";
};

template <>
struct field_traits<FloatC> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
};

template <class K>
inline bool is_zero(const K& a) {
  return a.is_zero();
}

template <class K>
inline K from_rational(long p, long q) {
  if constexpr (field_traits<K>::exact) {
    return Cyclo::rational(p, q);
  } else {
    return K(p) / K(q);
  }
}

template <class K>
inline K power(K a, long e) {
  if (e < 0) {
    a = a.inverse();
    e = -e;
  }
  K r(1L);
  while (e > 0) {
    if (e & 1) r = r * a;
    e >>= 1;
    if (e) a = a * a;
  }
  return r;
}

// Working field for exact roots of unity: conductor `conductor` (0 = grow as needed).
struct FieldContext {
  int conductor = 0;
  int bits = 0;
};

inline Cyclo root_of_unity_exact(int order, int conductor) {
  if (order < 1) fail(ErrorCode::InvalidInput, "root order must be positive");
  if (conductor != 0 && conductor % order != 0)
    fail(ErrorCode::ConductorMismatch, "conductor " + std::to_string(conductor) +
                                           " has no primitive root of order " +
                                           std::to_string(order));
  Cyclo z = Cyclo::zeta(order);
  return conductor == 0 ? z : z.promoted(conductor);
}

inline FloatC root_of_unity_float(int order, int bits) {
  if (order < 1) fail(ErrorCode::InvalidInput, "root order must be positive");
  const int d = detail::digits10_for_bits(bits);
  const mpfr_float ang = 2 * pi_at(bits) / mpfr_float(long(order), d);
  return FloatC(boost::multiprecision::cos(ang), boost::multiprecision::sin(ang), bits);
}

template <class K>
inline K root_of_unity(int order, FieldContext ctx = {}) {
  if constexpr (field_traits<K>::exact) {
    return root_of_unity_exact(order, ctx.conductor);
  } else {
    return root_of_unity_float(order, ctx.bits == 0 ? default_float_bits() : ctx.bits);
  }
}

// Least j <= bound with a^j = 1.
template <class K>
inline std::optional<int> mul_order(const K& a, int bound) {
  if (a.is_zero()) fail(ErrorCode::DivisionByZero, "order of zero");
  K p = a;
  const K one(1L);
  for (int j = 1; j <= bound; ++j) {
    if (p == one) return j;
    p = p * a;
  }
  return std::nullopt;
}

namespace detail {

inline std::optional<mpz_class> int_root(const mpz_class& x, unsigned n) {
  if (x < 0) {
    if (n % 2 == 0) return std::nullopt;
    auto r = int_root(-x, n);
    if (!r) return std::nullopt;
    return mpz_class(-*r);
  }
  mpz_class r;
  if (mpz_root(r.get_mpz_t(), x.get_mpz_t(), n) == 0) return std::nullopt;
  return r;
}

inline std::optional<mpq_class> rational_root(const mpq_class& q, unsigned n) {
  auto a = int_root(q.get_num(), n);
  auto b = int_root(q.get_den(), n);
  if (!a || !b) return std::nullopt;
  mpq_class r(*a, *b);
  r.canonicalize();
  return r;
}

}  // namespace detail

// Some n-th root of a.  Exact backend: found when a is a rational multiple of a
// root of unity.  The roots of unity of Q(zeta_c) form mu_lcm(2,c), so the
// root lives in conductor n * lcm(2, c).
inline std::optional<Cyclo> nth_root(const Cyclo& a, int n) {
  if (n == 1) return a;
  if (a.is_zero()) return Cyclo(0L);
  if (a.is_rational()) {
    auto r = detail::rational_root(a.rational_value(), unsigned(n));
    if (r) return Cyclo(*r);
  }
  const int c = a.conductor();
  const int L = n * (c % 2 == 1 ? 2 * c : c);
  const Cyclo z = Cyclo::zeta(L);
  Cyclo zj(1L);
  for (int j = 0; j < L; ++j, zj = zj * z) {
    // a = r * zeta_L^(n j')  with  root = r^(1/n) zeta_L^(j')
    Cyclo w = a * power(zj, -n);
    if (!w.is_rational()) continue;
    auto r = detail::rational_root(w.rational_value(), unsigned(n));
    if (r) return Cyclo(*r) * zj;
  }
  return std::nullopt;
}

inline std::optional<FloatC> nth_root(const FloatC& a, int n) {
  if (n == 1) return a;
  if (a.is_null()) return a;
  const int b = a.bits();
  return cexp(clog(a) / FloatC(long(n)).with_bits(b));
}

}  // namespace ellnb

#endif  // ELLNB_COEFFICIENTS_HPP
