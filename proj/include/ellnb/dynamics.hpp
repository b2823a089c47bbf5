#ifndef ELLNB_DYNAMICS_HPP
#define ELLNB_DYNAMICS_HPP

// Analytic side: Koenigs linearization of hyperbolic germs, continued fractions
// with Brjuno partial sums, and the distance profile of k z0 to the lattice Z + tau Z.
// Profiles are finite horizons; verdicts are advisory.

#include <gmpxx.h>

#include <functional>
#include <string>
#include <vector>

#include "ellnb/series.hpp"

namespace ellnb {

// ---------------------------------------------------------------------------
// Koenigs linearization.
// ---------------------------------------------------------------------------

// The truncated series read as a polynomial map.
inline FloatC eval_poly(const PSeries<FloatC>& f, const FloatC& z) {
  FloatC r = f[f.trunc()];
  for (int i = f.trunc() - 1; i >= 0; --i) r = r * z + f[i];
  return r;
}

struct KoenigsReport {
  FloatC value;                        // h_n(z)
  mpfr_float difference;               // |h_n(z) - h_(n-1)(z)|
  mpfr_float residual;                 // |h_n(f(z)) - a h_n(z)|
  std::vector<mpfr_float> residuals;   // residual after each iteration
  int iterations = 0;
  bool inverted = false;  // repelling map pulled back through its local inverse
};

// h_n(z) = b^-n g^n(z) with g = f (attracting) or g = f^-1 (repelling), b = g'(0).
inline KoenigsReport koenigs(const PSeries<FloatC>& f, const FloatC& z, int iterations) {
  if (iterations < 1) fail(ErrorCode::InvalidInput, "koenigs needs at least one iteration");
  if (!f[0].is_zero()) fail(ErrorCode::NonzeroConstantTerm, "map must fix 0");
  const FloatC a = f[1];
  const int bits = std::max(a.bits(), z.bits());
  const mpfr_float tol = FloatC::epsilon(bits);
  const mpfr_float ra = a.abs();
  if (boost::multiprecision::abs(ra - 1) <= tol || ra <= tol)
    fail(ErrorCode::NonHyperbolic, "|f'(0)| must differ from 0 and 1");
  KoenigsReport rep;
  rep.inverted = ra > 1;
  const FloatC binv = rep.inverted ? a : a.inverse();
  // The local inverse of a polynomial is not polynomial, so repelling maps are
  // pulled back by Newton's method on f(x) = w started at w / a.
  PSeries<FloatC> df(f.trunc());
  for (int i = 1; i <= f.trunc(); ++i) df.set(i - 1, FloatC(long(i)) * f[i]);
  const FloatC ainv = a.inverse();
  auto g = [&](const FloatC& t) {
    if (!rep.inverted) return eval_poly(f, t);
    FloatC x = ainv * t;
    for (int it = 0; it < 200; ++it) {
      const FloatC step = (eval_poly(f, x) - t) / eval_poly(df, x);
      x = x - step;
      if (step.abs() <= tol * std::max<mpfr_float>(mpfr_float(1), x.abs())) break;
    }
    return x;
  };
  FloatC w = z.with_bits(bits);
  FloatC wf = eval_poly(f, w);  // orbit of f(z)
  FloatC scale(1L);
  FloatC h = w;
  mpfr_float last(-1);
  int stagnant = 0;
  for (int n = 1; n <= iterations; ++n) {
    w = g(w);
    wf = g(wf);
    scale = scale * binv;
    const FloatC hn = scale * w;
    rep.difference = (hn - h).abs();
    h = hn;
    const mpfr_float res = (scale * wf - a * h).abs();
    rep.residuals.push_back(res);
    if (last >= 0 && res >= last && res > tol) {
      if (++stagnant > 8) fail(ErrorCode::NoConvergence, "Koenigs residuals stagnate");
    } else {
      stagnant = 0;
    }
    last = res;
    rep.iterations = n;
  }
  rep.value = h;
  rep.residual = last;
  return rep;
}

// ---------------------------------------------------------------------------
// Continued fractions.
// ---------------------------------------------------------------------------

struct CFExpansion {
  std::vector<mpz_class> a;  // a_1 .. a_n
  std::vector<mpz_class> q;  // q_0 .. q_n
  std::vector<mpz_class> p;  // p_0 .. p_n
  bool terminated = false;   // alpha rational and fully expanded
  int bits = 0;              // working precision used
};

namespace detail {

inline void fill_convergents(CFExpansion& cf) {
  cf.q.assign(1, mpz_class(1));
  cf.p.assign(1, mpz_class(0));
  mpz_class qm1 = 0, pm1 = 1;
  for (const auto& ai : cf.a) {
    const mpz_class qn = ai * cf.q.back() + qm1;
    const mpz_class pn = ai * cf.p.back() + pm1;
    qm1 = cf.q.back();
    pm1 = cf.p.back();
    cf.q.push_back(qn);
    cf.p.push_back(pn);
  }
}

}  // namespace detail

// Recurrence q_(n+1) = a_(n+1) q_n + q_(n-1) and strict growth from q_1.
inline bool check_recurrence(const CFExpansion& cf) {
  if (cf.q.size() != cf.a.size() + 1 || cf.q[0] != 1) return false;
  for (std::size_t n = 0; n < cf.a.size(); ++n) {
    const mpz_class prev = n == 0 ? mpz_class(0) : cf.q[n - 1];
    if (cf.q[n + 1] != cf.a[n] * cf.q[n] + prev) return false;
    if (n >= 1 && cf.q[n + 1] <= cf.q[n]) return false;
  }
  return true;
}

inline CFExpansion cf_from_quotients(const std::vector<mpz_class>& a) {
  for (const auto& x : a)
    if (x < 1) fail(ErrorCode::InvalidInput, "partial quotients must be positive");
  CFExpansion cf;
  cf.a = a;
  detail::fill_convergents(cf);
  return cf;
}

// Exact expansion of a rational in (0, 1); terminates.
inline CFExpansion cf_from_rational(mpq_class x, int terms) {
  x.canonicalize();
  if (x <= 0 || x >= 1) fail(ErrorCode::InvalidInput, "alpha must lie in (0, 1)");
  CFExpansion cf;
  while (int(cf.a.size()) < terms && x != 0) {
    const mpq_class r = 1 / x;
    mpz_class ai = r.get_num() / r.get_den();
    cf.a.push_back(ai);
    x = r - ai;
  }
  cf.terminated = x == 0;
  detail::fill_convergents(cf);
  return cf;
}

// A decimal string is an exact rational.
inline CFExpansion cf_from_decimal(const std::string& s, int terms) {
  const auto dot = s.find('.');
  std::string digits = s;
  long scale = 0;
  if (dot != std::string::npos) {
    digits = s.substr(0, dot) + s.substr(dot + 1);
    scale = long(s.size() - dot - 1);
  }
  mpz_class num;
  if (digits.empty() || num.set_str(digits, 10) != 0)
    fail(ErrorCode::InvalidInput, "alpha must be a decimal string");
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(scale));
  return cf_from_rational(mpq_class(num, den), terms);
}

// alpha(bits) must be accurate to about 2^-bits.  Quotients are accepted only
// when both ends of the error interval agree; precision doubles while
// denominators exceed 2^(bits/4) or quotients are undecided.
inline CFExpansion cf_from_real(const std::function<mpfr_float(int)>& alpha, int terms,
                                int bits = 200, int max_bits = 1 << 18) {
  for (; bits <= max_bits; bits *= 2) {
    const int d = detail::digits10_for_bits(bits + 64);
    const mpfr_float x = alpha(bits);
    if (x <= 0 || x >= 1) fail(ErrorCode::InvalidInput, "alpha must lie in (0, 1)");
    const mpfr_float slack = boost::multiprecision::ldexp(mpfr_float(1, d), 8 - bits);
    mpfr_float lo(x - slack, d), hi(x + slack, d);
    CFExpansion cf;
    cf.bits = bits;
    bool decided = true;
    while (int(cf.a.size()) < terms) {
      if (lo <= 0) {
        decided = false;
        break;
      }
      const mpfr_float rlo = 1 / hi, rhi = 1 / lo;
      const mpfr_float flo = boost::multiprecision::floor(rlo);
      if (flo != boost::multiprecision::floor(rhi)) {
        decided = false;
        break;
      }
      mpz_class ai;
      mpfr_get_z(ai.get_mpz_t(), flo.backend().data(), MPFR_RNDN);
      cf.a.push_back(ai);
      lo = rlo - flo;
      hi = rhi - flo;
    }
    detail::fill_convergents(cf);
    mpz_class cap;
    mpz_ui_pow_ui(cap.get_mpz_t(), 2, static_cast<unsigned long>(bits / 4));
    if (decided && cf.q.back() <= cap) {
      if (!check_recurrence(cf)) fail(ErrorCode::InternalConsistency, "convergent recurrence broken");
      return cf;
    }
  }
  fail(ErrorCode::PrecisionExhausted, "continued fraction undecided at maximum precision");
}

struct BrjunoProfile {
  std::vector<mpfr_float> terms;         // log(q_(j+1)) / q_j
  std::vector<mpfr_float> partial_sums;
  std::string verdict;
};

// Partial sums of sum_j log(q_(j+1)) / q_j for j < n.
inline BrjunoProfile brjuno_profile(const CFExpansion& cf, int n, int bits = 200) {
  if (!check_recurrence(cf)) fail(ErrorCode::InternalConsistency, "convergent recurrence broken");
  if (n < 0 || n > int(cf.a.size()))
    fail(ErrorCode::InvalidInput, "more terms requested than quotients available");
  const int d = detail::digits10_for_bits(bits);
  BrjunoProfile r;
  mpfr_float s(0, d);
  for (int j = 0; j < n; ++j) {
    const mpfr_float qj(cf.q[j].get_str(), d), qn(cf.q[j + 1].get_str(), d);
    const mpfr_float t = boost::multiprecision::log(qn) / qj;
    s += t;
    r.terms.push_back(t);
    r.partial_sums.push_back(s);
  }
  bool shrinking = r.terms.size() >= 2;
  for (std::size_t j = r.terms.size() >= 6 ? r.terms.size() - 5 : 1; j < r.terms.size(); ++j)
    if (r.terms[j] >= r.terms[j - 1]) shrinking = false;
  if (cf.terminated && n == int(cf.a.size()))
    r.verdict = "advisory-finite-expansion";
  else
    r.verdict = shrinking ? "advisory-terms-decreasing-at-horizon" : "advisory-terms-not-decreasing-at-horizon";
  return r;
}

// ---------------------------------------------------------------------------
// Diophantine profile on C / (Z + tau Z).
// ---------------------------------------------------------------------------

struct LatticeBasis {
  FloatC w1, w2;
};

// Lagrange-Gauss reduction of the basis (1, tau).
inline LatticeBasis reduce_lattice(const FloatC& tau) {
  if (tau.im() <= 0) fail(ErrorCode::InvalidInput, "tau needs positive imaginary part");
  FloatC u(1L), v = tau;
  auto norm2 = [](const FloatC& z) { return z.re() * z.re() + z.im() * z.im(); };
  if (norm2(u) > norm2(v)) std::swap(u, v);
  for (int it = 0; it < 10000; ++it) {
    const mpfr_float mu = (u.re() * v.re() + u.im() * v.im()) / norm2(u);
    const mpfr_float r = boost::multiprecision::round(mu);
    if (r == 0) break;
    v = v - FloatC(r, mpfr_float(0), v.bits()) * u;
    if (norm2(v) < norm2(u)) std::swap(u, v);
  }
  return {u, v};
}

// min over the lattice of |w - gamma|.
inline mpfr_float lattice_distance(const LatticeBasis& b, const FloatC& w) {
  // w = x w1 + y w2 with real x, y.
  const mpfr_float det = b.w1.re() * b.w2.im() - b.w1.im() * b.w2.re();
  const mpfr_float x = (w.re() * b.w2.im() - w.im() * b.w2.re()) / det;
  const mpfr_float y = (b.w1.re() * w.im() - b.w1.im() * w.re()) / det;
  const mpfr_float fx = boost::multiprecision::floor(x), fy = boost::multiprecision::floor(y);
  mpfr_float best(-1);
  for (int i = -1; i <= 2; ++i)
    for (int j = -1; j <= 2; ++j) {
      const FloatC g = FloatC(fx + i, mpfr_float(0), w.bits()) * b.w1 +
                       FloatC(fy + j, mpfr_float(0), w.bits()) * b.w2;
      const mpfr_float dist = (w - g).abs();
      if (best < 0 || dist < best) best = dist;
    }
  return best;
}

struct DiophProfile {
  std::vector<mpfr_float> d;  // d_1 .. d_K
  bool bounded = true;        // d_k >= eps / k^alpha for all k <= K
  int first_violation = 0;
  std::string verdict;
};

inline DiophProfile diophantine_profile(const FloatC& tau, const FloatC& z0, int K,
                                        const mpfr_float& alpha, const mpfr_float& eps) {
  if (K < 1) fail(ErrorCode::InvalidInput, "K must be positive");
  const LatticeBasis b = reduce_lattice(tau);
  DiophProfile r;
  for (int k = 1; k <= K; ++k) {
    const mpfr_float dk = lattice_distance(b, FloatC(long(k)) * z0);
    r.d.push_back(dk);
    const mpfr_float bound = eps / boost::multiprecision::pow(mpfr_float(k), alpha);
    if (dk < bound && r.bounded) {
      r.bounded = false;
      r.first_violation = k;
    }
  }
  r.verdict = r.bounded ? "advisory-bounded-below-at-horizon" : "advisory-violated-at-horizon";
  return r;
}

}  // namespace ellnb

#endif  // ELLNB_DYNAMICS_HPP
