#ifndef ELLNB_SAMPLING_HPP
#define ELLNB_SAMPLING_HPP

// Seeded generators for specs, fields and conjugators; same seed, same output.

#include <numeric>
#include <random>

#include "ellnb/neighborhood.hpp"

namespace ellnb {

using Rng = std::mt19937_64;

inline long uniform_int(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// p/q with |p| <= 5, 1 <= q <= 4; nonzero on request.
template <class K>
K random_rational(Rng& rng, bool nonzero = false) {
  long p = uniform_int(rng, -5, 5);
  while (nonzero && p == 0) p = uniform_int(rng, -5, 5);
  return from_rational<K>(p, uniform_int(rng, 1, 4));
}

// Exact: a rational.  Float: a rational real part plus a random imaginary part.
template <class K>
K random_scalar(Rng& rng, bool nonzero = false) {
  if constexpr (field_traits<K>::exact) {
    return random_rational<K>(rng, nonzero);
  } else {
    const K re = random_rational<K>(rng, nonzero);
    return re + random_rational<K>(rng) * root_of_unity<K>(4);
  }
}

// y + sum of up to `terms` random monomials of degree in [lo, N].
template <class K>
Germ<K> random_tangent_germ(Rng& rng, int N, int lo = 2, int terms = 3) {
  PSeries<K> s = PSeries<K>::identity(N);
  for (int i = 0; i < terms && lo <= N; ++i) {
    const int e = int(uniform_int(rng, lo, N));
    s.set(e, s[e] + random_rational<K>(rng));
  }
  return Germ<K>(s);
}

// F with valuation v and a few further terms.
template <class K>
VField<K> random_field(Rng& rng, int v, int N, int extra = 3) {
  PSeries<K> F = PSeries<K>::monomial(random_rational<K>(rng, true), v, N);
  for (int i = 0; i < extra; ++i) {
    const int e = int(uniform_int(rng, v + 1, N));
    F.set(e, F[e] + random_rational<K>(rng));
  }
  return VField<K>(F);
}

enum class PCase { None, Zero, Positive, Any };

// A valid spec with k <= kmax and m <= mmax; `pc` selects p = -1, p = 0 or 0 < p < k.
template <class K>
ModelSpec<K> random_spec(Rng& rng, PCase pc = PCase::Any, int kmax = 8, int mmax = 4) {
  if (pc == PCase::Any) pc = static_cast<PCase>(uniform_int(rng, 0, 2));
  ModelSpec<K> s;
  for (;;) {
    s.m = int(uniform_int(rng, 1, mmax));
    const int kp_max = kmax / s.m;
    const int kp_min = pc == PCase::Positive ? 2 : 1;
    if (kp_max < kp_min) continue;
    s.k = s.m * int(uniform_int(rng, kp_min, kp_max));
    break;
  }
  long e1, e2;
  do {
    e1 = uniform_int(rng, 0, s.m - 1);
    e2 = uniform_int(rng, 0, s.m - 1);
  } while (std::gcd(std::gcd(e1, e2), long(s.m)) != 1);
  const K z = root_of_unity<K>(s.m);
  s.a1 = power(z, e1);
  s.atau = power(z, e2);
  s.lambda = random_scalar<K>(rng);
  const int kp = s.kprime();
  s.Lambda.assign(kp, K(0L));
  if (pc == PCase::Zero) {
    s.Lambda[0] = random_scalar<K>(rng, true);
  } else if (pc == PCase::Positive) {
    const int deg = int(uniform_int(rng, 1, kp - 1));
    for (int i = 0; i < deg; ++i) s.Lambda[i] = random_scalar<K>(rng);
    s.Lambda[deg] = random_scalar<K>(rng, true);
  }
  s.validate();
  return s;
}

// (phi, psi) with phi = psi mod y^(k+2).
template <class K>
std::pair<Germ<K>, Germ<K>> random_admissible_pair(Rng& rng, int k, int N) {
  const Germ<K> psi = random_tangent_germ<K>(rng, N, 2, 2);
  const Germ<K> tail = random_tangent_germ<K>(rng, N, k + 2, 2);
  return {tail * psi, psi};
}

}  // namespace ellnb

#endif  // ELLNB_SAMPLING_HPP
