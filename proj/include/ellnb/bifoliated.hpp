#ifndef ELLNB_BIFOLIATED_HPP
#define ELLNB_BIFOLIATED_HPP

// Invariants of a pair of foliations read from their holonomy pairs: tangency
// order, affine discrepancy structure, compatibility, and the complete
// invariants (m, k, p, lambda, Lambda) modulo the Z_{k'} action.

#include <string>
#include <vector>

#include "ellnb/neighborhood.hpp"

namespace ellnb {

// Relative agreement threshold for float consistency checks.
inline mpfr_float& float_check_tolerance() {
  static mpfr_float tol("1e-30");
  return tol;
}

namespace detail {

inline bool approx_eq(const Cyclo& a, const Cyclo& b) { return a == b; }
inline bool approx_eq(const FloatC& a, const FloatC& b) {
  const mpfr_float scale = std::max<mpfr_float>({mpfr_float(1), a.abs(), b.abs()});
  return (a - b).abs() <= float_check_tolerance() * scale;
}

inline Cyclo complex_conj(const Cyclo& a) {
  const int n = a.conductor();
  QPoly p(std::size_t(n), mpq_class(0));
  for (std::size_t j = 0; j < a.coeffs().size(); ++j) p[(n - int(j)) % n] += a.coeffs()[j];
  return Cyclo::from_poly(n, p);
}

// Sign of a nonzero real algebraic number given by an exact element x = conj(x).
inline int real_sign(const Cyclo& x) {
  for (int bits = 128; bits <= 1 << 16; bits *= 4) {
    const auto [re, im] = x.embed(bits);
    (void)im;
    const mpfr_float bound = boost::multiprecision::ldexp(mpfr_float(1), 24 - bits);
    if (re > bound) return 1;
    if (re < -bound) return -1;
  }
  fail(ErrorCode::InternalConsistency, "could not resolve the sign of an algebraic number");
}

}  // namespace detail

// Total order: real part, then imaginary part, of the standard embedding.
inline int canonical_compare(const Cyclo& a, const Cyclo& b) {
  if (a == b) return 0;
  const Cyclo d = a - b;
  const Cyclo dc = detail::complex_conj(d);
  const Cyclo re2 = d + dc;
  if (!re2.is_zero()) return detail::real_sign(re2);
  // Real parts agree; i (d - conj d) is real with sign opposite to Im d.
  return -detail::real_sign(Cyclo::zeta(4) * (d - dc));
}

// Total order: modulus, then argument in [0, 2 pi), with tolerance.
inline int canonical_compare(const FloatC& a, const FloatC& b) {
  const mpfr_float& tol = float_check_tolerance();
  const mpfr_float ra = a.abs(), rb = b.abs();
  const mpfr_float scale = std::max<mpfr_float>({mpfr_float(1), ra, rb});
  if (ra - rb > tol * scale) return 1;
  if (rb - ra > tol * scale) return -1;
  if (ra <= tol) return 0;
  const mpfr_float twopi = 2 * pi_at(std::max(a.bits(), b.bits()));
  auto norm = [&](mpfr_float t) {
    if (t < 0) t += twopi;
    if (twopi - t <= tol) t = 0;
    return t;
  };
  const mpfr_float ta = norm(a.arg()), tb = norm(b.arg());
  if (ta - tb > tol) return 1;
  if (tb - ta > tol) return -1;
  return 0;
}

template <class K>
int canonical_compare(const std::vector<K>& a, const std::vector<K>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    const int c = canonical_compare(a[i], b[i]);
    if (c != 0) return c;
  }
  return a.size() < b.size() ? -1 : a.size() > b.size() ? 1 : 0;
}

// Orbit minimum of (lambda_i) -> (mu^-i lambda_i) over mu^{k'} = 1.
template <class K>
std::vector<K> canonicalize_Lambda(const std::vector<K>& L, int kprime) {
  if (int(L.size()) != kprime) fail(ErrorCode::InvalidInput, "Lambda needs k' entries");
  int bits = default_float_bits();
  if constexpr (!field_traits<K>::exact)
    for (const auto& x : L) bits = std::max(bits, x.bits());
  const K mu = root_of_unity<K>(kprime, FieldContext{0, bits});
  const K muinv = mu.inverse();
  std::vector<K> best = L;
  K muj(1L);
  for (int j = 1; j < kprime; ++j) {
    muj = muj * muinv;  // mu^-j
    std::vector<K> cand(L.size());
    K f(1L);
    for (std::size_t i = 0; i < L.size(); ++i) {
      cand[i] = ellnb::is_zero(L[i]) ? K(0L) : f * L[i];
      f = f * muj;
    }
    if (canonical_compare(cand, best) < 0) best = cand;
  }
  return best;
}

enum class CaseTag { FibrationTransverse, Logarithmic, Intermediate };

inline const char* case_tag_name(CaseTag t) {
  switch (t) {
    case CaseTag::FibrationTransverse: return "FIBRATION_TRANSVERSE";
    case CaseTag::Logarithmic: return "LOGARITHMIC";
    case CaseTag::Intermediate: return "INTERMEDIATE";
  }
  return "?";
}

template <class K>
struct PairInvariants {
  int m = 1;
  int k = 1;
  int p = -1;
  K lambda = K(0L);
  std::vector<K> Lambda;
  CaseTag tag = CaseTag::FibrationTransverse;
};

template <class K>
bool same_invariants(const PairInvariants<K>& a, const PairInvariants<K>& b) {
  if (a.m != b.m || a.k != b.k || a.p != b.p || a.tag != b.tag) return false;
  if (!detail::approx_eq(a.lambda, b.lambda) || a.Lambda.size() != b.Lambda.size()) return false;
  for (std::size_t i = 0; i < a.Lambda.size(); ++i)
    if (!detail::approx_eq(a.Lambda[i], b.Lambda[i])) return false;
  return true;
}

// Invariants a model spec should classify to.
template <class K>
PairInvariants<K> spec_invariants(const ModelSpec<K>& s) {
  PairInvariants<K> r;
  r.m = s.m;
  r.k = s.k;
  r.p = s.p();
  r.lambda = s.lambda;
  r.Lambda = canonicalize_Lambda(s.Lambda, s.kprime());
  r.tag = r.p < 0 ? CaseTag::FibrationTransverse
                  : r.p == 0 ? CaseTag::Logarithmic : CaseTag::Intermediate;
  return r;
}

// Least contact order over both loops.
template <class K>
int tangency(const HolRep<K>& F, const HolRep<K>& G) {
  const auto c1 = contact_order(F.g1, G.g1);
  const auto ct = contact_order(F.gtau, G.gtau);
  if (!c1 && !ct) fail(ErrorCode::Undetected, "holonomies agree to full truncation");
  if (!c1) return *ct;
  if (!ct) return *c1;
  return std::min(*c1, *ct);
}

template <class K>
struct AffineStructure {
  K theta = K(0L);
  K c = K(0L);
  K u1 = K(0L);
  K utau = K(0L);
};

namespace detail {

// u(gamma) with G_gamma F_gamma^-1 = y + u y^(k+1) mod y^(k+2).
template <class K>
K discrepancy(const Germ<K>& f, const Germ<K>& g, int k) {
  const Germ<K> phi = (g * f.inverse()).truncated(k + 1);
  if (phi.linear_part() != K(1L))
    fail(ErrorCode::InconsistentAffine, "linear parts differ; tangency is below k+1");
  for (int i = 2; i <= k; ++i)
    if (!ellnb::is_zero(phi.coeff(i)))
      fail(ErrorCode::InconsistentAffine, "discrepancy below order k+1");
  return phi.coeff(k + 1);
}

// Branch n with exp((L + 2 pi i n) tau) = target; nullopt when none.
inline std::optional<FloatC> solve_branch(const FloatC& L, const FloatC& tau, const FloatC& target,
                                          int window = 64) {
  const int bits = std::max({L.bits(), tau.bits(), target.bits()});
  const FloatC twopii(mpfr_float(0), 2 * pi_at(bits), bits);
  std::optional<FloatC> found;
  for (int n = 0; n <= window; ++n)
    for (int s : {1, -1}) {
      if (n == 0 && s == -1) continue;
      const FloatC th = L + FloatC(long(s * n)) * twopii;
      if (approx_eq(cexp(th * tau), target)) {
        if (found && !approx_eq(*found, th))
          fail(ErrorCode::InconsistentAffine, "branch of the logarithm is ambiguous");
        found = th;
      }
    }
  return found;
}

}  // namespace detail

// (theta, c, u) with e^(theta gamma) = a_gamma^-k and u(gamma) = c (e^(theta gamma) - 1),
// or u(gamma) = c gamma when theta = 0.
template <class K>
AffineStructure<K> affine_structure(const HolRep<K>& F, const HolRep<K>& G, int k) {
  if (k < 1) fail(ErrorCode::InvalidInput, "affine structure needs k >= 1");
  AffineStructure<K> s;
  s.u1 = detail::discrepancy(F.g1, G.g1, k);
  s.utau = detail::discrepancy(F.gtau, G.gtau, k);
  const K b1 = power(F.g1.linear_part(), -k);
  const K bt = power(F.gtau.linear_part(), -k);
  const K one(1L);
  if (b1 == one && bt == one) {
    s.theta = K(0L);
  } else if constexpr (field_traits<K>::exact) {
    if (mul_order(b1, 64) && mul_order(bt, 64))
      fail(ErrorCode::InconsistentAffine, "unitary linear part needs a_gamma^k = 1");
    fail(ErrorCode::BackendMismatch, "non-unitary affine structure needs the float backend");
  } else {
    const auto th = detail::solve_branch(clog(b1), F.tau, bt);
    if (!th) fail(ErrorCode::InconsistentAffine, "no theta with e^theta = a_1^-k, e^(theta tau) = a_tau^-k");
    s.theta = detail::approx_eq(*th, K(0L)) ? K(0L) : *th;
  }
  if (ellnb::is_zero(s.theta)) {
    s.theta = K(0L);
    s.c = s.u1;
    if (!detail::approx_eq(s.utau, s.c * F.tau))
      fail(ErrorCode::InconsistentAffine, "u(tau) != c tau");
    return s;
  }
  if constexpr (!field_traits<K>::exact) {
    const K e1 = cexp(s.theta) - one;
    const K et = cexp(s.theta * F.tau) - one;
    const bool use1 = e1.abs() >= et.abs();
    s.c = use1 ? s.u1 / e1 : s.utau / et;
    if (!detail::approx_eq(s.u1, s.c * e1) || !detail::approx_eq(s.utau, s.c * et))
      fail(ErrorCode::InconsistentAffine, "u(gamma) != c (e^(theta gamma) - 1)");
  }
  return s;
}

struct CompatibilityReport {
  bool ok = false;
  std::string diagnostic;
};

// k = 0: the linear-part ratios must be (e^c, e^(c tau)); k > 0: the order k+1
// discrepancies must come from one affine structure.
template <class K>
CompatibilityReport compatibility_check(const HolRep<K>& F, const HolRep<K>& G, int k) {
  if (k == 0) {
    const K r1 = G.g1.linear_part() / F.g1.linear_part();
    const K rt = G.gtau.linear_part() / F.gtau.linear_part();
    if (r1 == K(1L) && rt == K(1L)) return {true, "trivial ratios; c = 0"};
    const int bits = default_float_bits();
    const FloatC f1 = to_float(r1, bits), ft = to_float(rt, bits), tau = to_float(F.tau, bits);
    try {
      if (detail::solve_branch(clog(f1), tau, ft)) return {true, "periods of c dx found"};
    } catch (const MathError& e) {
      return {false, e.what()};
    }
    return {false, "linear-part ratios are not periods of a holomorphic form"};
  }
  try {
    affine_structure(F, G, k);
  } catch (const MathError& e) {
    if (e.code() == ErrorCode::InconsistentAffine) return {false, e.what()};
    throw;
  }
  return {true, "affine structure consistent on both loops"};
}

// Complete invariants of (F, G) with F of distinguished type (torsion along 1).
template <class K>
PairInvariants<K> classify_pair(const HolRep<K>& F, const HolRep<K>& G,
                                const NormalizeOptions& opt = {}) {
  const PairNF<K> nf = normalize_pair(F, opt);
  if (nf.kind != PairKind::ResonantPair || nf.reference != 2 || !ellnb::is_zero(nf.t1))
    fail(ErrorCode::NotF0Type, "first pair is not of type (a1 y, atau exp(v_{k,lambda}))");
  if (!nf.h) fail(ErrorCode::NoExactRoot, "normalizer needs a k-th root outside the field");
  if (!commutes(G)) fail(ErrorCode::Nonabelian, "second pair does not commute");
  PairInvariants<K> out;
  out.m = nf.m;
  out.k = nf.k;
  out.lambda = nf.lambda;
  const int kp = nf.k / nf.m;
  out.Lambda.assign(std::size_t(kp), K(0L));
  // Through y^(N-k) only; see normalize_pair.
  const int M = std::min(F.trunc(), G.trunc()) - nf.k;
  const HolRep<K> gc = conjugate(G, *nf.h);
  const HolRep<K> g{gc.g1.truncated(M), gc.gtau.truncated(M), gc.tau};
  const K r1 = g.g1.linear_part() / nf.a1;
  const K rt = g.gtau.linear_part() / nf.atau;
  if (r1 != K(1L) || rt != K(1L)) {
    if constexpr (field_traits<K>::exact) {
      fail(ErrorCode::BackendMismatch, "logarithmic case needs the float backend");
    } else {
      const auto c = detail::solve_branch(clog(r1), F.tau, rt);
      if (!c || ellnb::is_zero(*c))
        fail(ErrorCode::NotInModel, "linear parts are not (a e^c, a e^(c tau))");
      out.p = 0;
      out.Lambda[0] = c->inverse();
      out.tag = CaseTag::Logarithmic;
      return out;
    }
  }
  const Germ<K> p1 = iterate(g.g1, nf.m);
  const Germ<K> pt = iterate(g.gtau, nf.m);
  if (p1.is_identity() && pt.is_identity()) {
    out.tag = CaseTag::FibrationTransverse;
    return out;
  }
  // omega_P = m gamma dual(log g_gamma^m), principal parts only.
  auto principal = [&](const Germ<K>& pw, const K& gamma) {
    const LSeries<K> B = dual_form(formal_log(pw)).B;
    if (B.trunc() < -1) fail(ErrorCode::TruncationTooLow, "principal part lies past truncation");
    const LSeries<K> d = B.principal_part();
    return (K(long(nf.m)) * gamma) * d;
  };
  const LSeries<K> P = p1.is_identity() ? principal(pt, F.tau) : principal(p1, K(1L));
  if (!p1.is_identity() && !pt.is_identity() && principal(pt, F.tau) != P)
    fail(ErrorCode::NotInModel, "loops disagree on the principal part");
  int deg = -1;
  for (int e = P.valuation(); e < 0; ++e) {
    const K c = P.coeff(e);
    if (ellnb::is_zero(c)) continue;
    if ((-e - 1) % nf.m != 0) fail(ErrorCode::NotInModel, "principal part outside P(1/y^m) dy/y");
    const int i = (-e - 1) / nf.m;
    if (i >= kp) fail(ErrorCode::NotInModel, "principal part of order beyond k");
    out.Lambda[std::size_t(i)] = c;
    deg = std::max(deg, i);
  }
  if (deg <= 0) fail(ErrorCode::InternalConsistency, "resonant second pair with constant P");
  out.p = nf.m * deg;
  out.tag = CaseTag::Intermediate;
  out.Lambda = canonicalize_Lambda(out.Lambda, kp);
  return out;
}

}  // namespace ellnb

#endif  // ELLNB_BIFOLIATED_HPP
