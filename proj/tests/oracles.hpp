#ifndef ELLNB_TESTS_ORACLES_HPP
#define ELLNB_TESTS_ORACLES_HPP

// Reference computations written without the library's series kernels:
// plain coefficient vectors, schoolbook products and direct definitions.

#include <gmpxx.h>

#include <vector>

#include "ellnb/ellnb.hpp"

namespace oracle {

using ellnb::mpfr_float;

template <class K>
using Vec = std::vector<K>;

template <class K>
Vec<K> coeffs(const ellnb::PSeries<K>& s) {
  Vec<K> v;
  for (int i = 0; i <= s.trunc(); ++i) v.push_back(s[i]);
  return v;
}

template <class K>
ellnb::PSeries<K> series(const Vec<K>& v) {
  return ellnb::PSeries<K>(v, int(v.size()) - 1);
}

template <class K>
Vec<K> mul(const Vec<K>& a, const Vec<K>& b) {
  Vec<K> r(a.size(), K(0L));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < r.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

// sum_i f_i g^i with explicit powers.
template <class K>
Vec<K> compose(const Vec<K>& f, const Vec<K>& g) {
  Vec<K> r(g.size(), K(0L)), pw(g.size(), K(0L));
  pw[0] = K(1L);
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t e = 0; e < r.size(); ++e) r[e] = r[e] + f[i] * pw[e];
    pw = mul(pw, g);
  }
  return r;
}

// g with f o g = y, solved one coefficient at a time.
template <class K>
Vec<K> reversion(const Vec<K>& f) {
  const std::size_t n = f.size();
  Vec<K> g(n, K(0L));
  g[1] = K(1L) / f[1];
  for (std::size_t e = 2; e < n; ++e) {
    const Vec<K> c = compose(f, g);
    g[e] = -c[e] / f[1];
  }
  return g;
}

// F * G'.
template <class K>
Vec<K> apply_field(const Vec<K>& F, const Vec<K>& G) {
  Vec<K> d(G.size(), K(0L));
  for (std::size_t i = 1; i < G.size(); ++i) d[i - 1] = K(long(i)) * G[i];
  return mul(F, d);
}

// exp(t v)(y) summed until the terms vanish; F(0) = F'(0) = 0.
template <class K>
Vec<K> flow(const Vec<K>& F, const K& t) {
  Vec<K> term(F.size(), K(0L));
  term[1] = K(1L);
  Vec<K> sum = term;
  for (long j = 1; j < long(F.size()) + 2; ++j) {
    term = apply_field(F, term);
    for (auto& x : term) x = x * t / K(j);
    for (std::size_t e = 0; e < sum.size(); ++e) sum[e] = sum[e] + term[e];
  }
  return sum;
}

// v with exp(v) = f: each coefficient of v enters exp(v) at its own degree with weight 1.
template <class K>
Vec<K> order_log(const Vec<K>& f) {
  Vec<K> v(f.size(), K(0L));
  for (std::size_t n = 2; n < f.size(); ++n) {
    const Vec<K> e = flow(v, K(1L));
    v[n] = v[n] + (f[n] - e[n]);
  }
  return v;
}

// Laurent series as (lowest exponent, coefficients).
template <class K>
struct Laurent {
  int lo;
  Vec<K> c;
  K at(int e) const {
    const int i = e - lo;
    return i >= 0 && i < int(c.size()) ? c[std::size_t(i)] : K(0L);
  }
};

// 1 / (y^v u) for a unit u, as a Laurent series with `len` coefficients.
template <class K>
Laurent<K> reciprocal(int v, const Vec<K>& u, std::size_t len) {
  Vec<K> w(len, K(0L));
  w[0] = K(1L) / u[0];
  for (std::size_t n = 1; n < len; ++n) {
    K acc(0L);
    for (std::size_t j = 1; j <= n && j < u.size(); ++j) acc = acc + u[j] * w[n - j];
    w[n] = -acc / u[0];
  }
  return {-v, w};
}

inline mpz_class fibonacci(int n) {
  mpz_class a = 0, b = 1;
  for (int i = 0; i < n; ++i) {
    const mpz_class t = a + b;
    a = b;
    b = t;
  }
  return a;
}

// min |w - (i + j tau)| over |i|, |j| <= R.
inline mpfr_float lattice_distance(const mpfr_float& tre, const mpfr_float& tim, const mpfr_float& wre, const mpfr_float& wim,
                                   int R) {
  mpfr_float best = -1;
  for (int i = -R; i <= R; ++i)
    for (int j = -R; j <= R; ++j) {
      const mpfr_float dx = wre - i - j * tre, dy = wim - j * tim;
      const mpfr_float d = boost::multiprecision::sqrt(dx * dx + dy * dy);
      if (best < 0 || d < best) best = d;
    }
  return best;
}

}  // namespace oracle

#endif  // ELLNB_TESTS_ORACLES_HPP
