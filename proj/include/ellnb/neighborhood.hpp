#ifndef ELLNB_NEIGHBORHOOD_HPP
#define ELLNB_NEIGHBORHOOD_HPP

// Neighborhoods as quotients of C_x x (C_y, 0) by two commuting maps
// (x, y) -> (x + shift + drift(y), vert(y)), with the pencil of invariant
// closed forms A dx + B(y) dy and their holonomies on the transversal x = 0.

#include <numeric>
#include <optional>
#include <vector>

#include "ellnb/normalform.hpp"

namespace ellnb {

template <class K>
struct ModelSpec {
  K a1 = K(1L);
  K atau = K(1L);
  int m = 1;
  int k = 1;
  K lambda = K(0L);
  std::vector<K> Lambda;  // lambda_0 .. lambda_{k'-1}
  K tau = default_tau<K>();

  int kprime() const { return k / m; }
  // Degree of P(z) = sum lambda_i z^i, or -1 when P = 0.
  int degP() const {
    for (int i = int(Lambda.size()) - 1; i >= 0; --i)
      if (!ellnb::is_zero(Lambda[i])) return i;
    return -1;
  }
  int p() const { return degP() < 0 ? -1 : m * degP(); }

  void validate(int torsion_bound = 64) const {
    const auto o1 = mul_order(a1, torsion_bound);
    const auto ot = mul_order(atau, torsion_bound);
    if (!o1 || !ot) fail(ErrorCode::InvalidInput, "a1 and atau must be roots of unity");
    if (std::lcm(*o1, *ot) != m) fail(ErrorCode::InvalidInput, "m is not the order of <a1, atau>");
    if (k < 1 || k % m != 0) fail(ErrorCode::InvalidInput, "k must be a positive multiple of m");
    if (int(Lambda.size()) != kprime()) fail(ErrorCode::InvalidInput, "Lambda needs k/m entries");
  }
};

// omega_Lambda = P(1/y^m) dy/y.
template <class K>
MForm<K> omega_Lambda(const ModelSpec<K>& s, int trunc) {
  LSeries<K> b(trunc);
  for (int i = 0; i < int(s.Lambda.size()); ++i)
    if (!ellnb::is_zero(s.Lambda[i])) b = b + LSeries<K>::monomial(s.Lambda[i], -s.m * i - 1, trunc);
  return MForm<K>(b);
}

// v_Lambda, the field dual to omega_Lambda (Lambda != 0).
template <class K>
VField<K> v_Lambda(const ModelSpec<K>& s, int trunc) {
  const int p = s.p();
  if (p < 0) fail(ErrorCode::ZeroField, "v_Lambda needs Lambda != 0");
  return dual_field(omega_Lambda(s, trunc - 2 * p - 2));
}

template <class K>
struct Generator {
  K shift = K(0L);
  PSeries<K> drift;
  Germ<K> vert;

  int trunc() const { return std::min(drift.trunc(), vert.trunc()); }

  // (A B)(x, y) = A(B(x, y)).
  friend Generator operator*(const Generator& A, const Generator& B) {
    return {A.shift + B.shift, B.drift + compose(A.drift, B.vert.series()), A.vert * B.vert};
  }
  Generator inverse() const {
    const Germ<K> fi = vert.inverse();
    return {-shift, -compose(drift, fi.series()), fi};
  }
  friend bool operator==(const Generator& A, const Generator& B) {
    return A.shift == B.shift && A.drift == B.drift && A.vert == B.vert;
  }
  friend bool operator!=(const Generator& A, const Generator& B) { return !(A == B); }
};

template <class K>
struct Presentation {
  K tau = default_tau<K>();
  Generator<K> gen1;
  Generator<K> gentau;
  int trunc = 0;

  const Generator<K>& at(int loop) const { return loop == 1 ? gen1 : gentau; }
  bool commutes() const { return gen1 * gentau == gentau * gen1; }
};

// A dx + B dy with constant A.
template <class K>
struct CoverForm {
  K A = K(0L);
  MForm<K> B;
};

// Largest pole order among the pencil members of a spec.
template <class K>
int pencil_pole(const ModelSpec<K>& s) {
  return s.k + 1;
}

// omega_0 + t omega_inf for finite t, omega_inf = dx - omega_Lambda otherwise.
template <class K>
CoverForm<K> pencil_form(const ModelSpec<K>& s, const std::optional<K>& t, int trunc) {
  const MForm<K> w0 = omega_k_lambda(s.k, s.lambda, trunc);
  const MForm<K> wl = omega_Lambda(s, trunc);
  if (!t) return {K(1L), MForm<K>(-wl.B)};
  return {*t, MForm<K>(w0.B - *t * wl.B)};
}

// Phi^*(A dx + B dy) = A dx + (A drift' + vert^* B) dy.
template <class K>
MForm<K> pulled_dy_part(const Generator<K>& g, const CoverForm<K>& w) {
  MForm<K> r = pullback(w.B, g.vert);
  if (!ellnb::is_zero(w.A)) r = r + MForm<K>(LSeries<K>(w.A * g.drift.derivative()));
  return r;
}

template <class K>
bool pencil_invariance_check(const Presentation<K>& pres, const CoverForm<K>& w) {
  for (int loop : {1, 2})
    if (pulled_dy_part(pres.at(loop), w) != w.B) return false;
  return true;
}

// The quotient model with invariants spec, truncated at N.
template <class K>
Presentation<K> build_model(const ModelSpec<K>& s, int N) {
  s.validate();
  if (N < 2 * s.k + 2) fail(ErrorCode::TruncationTooLow, "build_model needs N >= 2k + 2");
  const int p = s.p();
  if (p >= s.k) fail(ErrorCode::InvalidInput, "deg P too large: need m deg P < k");
  const int Ni = N + std::max(p, 0) + 2;
  const Germ<K> phi = flow(v_k_lambda(s.k, s.lambda, Ni), K(1L));
  const Germ<K> vtau = s.atau * phi;
  Presentation<K> pres;
  pres.tau = s.tau;
  pres.trunc = N;
  pres.gen1 = {K(1L), PSeries<K>(N), Germ<K>::linear(s.a1, N)};
  PSeries<K> drift(N);
  if (p >= 0) {
    const MForm<K> wl = omega_Lambda(s, Ni);
    const LSeries<K> integrand = (pullback(wl, vtau) - wl).B;
    if (!integrand.is_holomorphic() || !ellnb::is_zero(integrand.residue()))
      fail(ErrorCode::IntegrandNotHolomorphic, "drift integrand has a pole");
    drift = integrand.primitive().to_pseries().truncated(N);
  }
  pres.gentau = {s.tau, drift, vtau.truncated(N)};
  if (!pres.commutes()) fail(ErrorCode::CommutationFailure, "model generators do not commute");
  return pres;
}

// Phi_1 = (x + 1, a1 y), Phi_tau = (x + tau + y^n, atau y); needs a1^n = 1.
template <class K>
Presentation<K> fibration_model(int n, const K& a1, const K& atau, int N,
                                const K& tau = default_tau<K>()) {
  if (n < 1 || n > N) fail(ErrorCode::InvalidInput, "fibration model needs 1 <= n <= N");
  Presentation<K> pres;
  pres.tau = tau;
  pres.trunc = N;
  pres.gen1 = {K(1L), PSeries<K>(N), Germ<K>::linear(a1, N)};
  pres.gentau = {tau, PSeries<K>::monomial(K(1L), n, N), Germ<K>::linear(atau, N)};
  if (!pres.commutes()) fail(ErrorCode::CommutationFailure, "fibration model needs a1^n = 1");
  return pres;
}

// Holonomy on x = 0 of an invariant form: the vertical maps when A = 0, their
// linear parts when B = 0, else
// a exp(s (c + A shift) v_B) with v_B dual to B, c the constant term of
// B-primitive(vert) - B-primitive + A drift, and s = -1 in the infinity convention.
template <class K>
HolRep<K> holonomy_of_form(const Presentation<K>& pres, const CoverForm<K>& w, bool at_infinity) {
  if (ellnb::is_zero(w.A)) return {pres.gen1.vert, pres.gentau.vert, pres.tau};
  const LSeries<K>& B = w.B.B;
  if (B.is_zero()) {
    const int N = pres.trunc;
    return {Germ<K>::linear(pres.gen1.vert.linear_part(), N),
            Germ<K>::linear(pres.gentau.vert.linear_part(), N), pres.tau};
  }
  const K res = B.residue();
  const LSeries<K> G = (B - LSeries<K>::monomial(res, -1, B.trunc())).primitive();
  const VField<K> v = dual_field(w.B);
  const int N = std::min(pres.trunc, v.trunc());
  auto one = [&](const Generator<K>& g) {
    const LSeries<K> d = G.substitute(g.vert.series()) - G + LSeries<K>(w.A * g.drift);
    K t = d.coeff(0) + w.A * g.shift;
    if (at_infinity) t = -t;
    const K a = g.vert.linear_part();
    return Germ<K>(a * flow(v, t).series().truncated(N));
  };
  return {one(pres.gen1), one(pres.gentau), pres.tau};
}

// Holonomy of the pencil member t (nullopt = infinity) on a built model.
template <class K>
HolRep<K> holonomy(const Presentation<K>& pres, const ModelSpec<K>& s, const std::optional<K>& t) {
  const int N = pres.trunc;
  if (!t) {
    if (s.p() < 0) return {Germ<K>::linear(s.a1, N), Germ<K>::linear(s.atau, N), s.tau};
    const VField<K> v = v_Lambda(s, N);
    return {s.a1 * flow(v, K(1L)), s.atau * flow(v, s.tau), s.tau};
  }
  if (ellnb::is_zero(*t)) return {pres.gen1.vert, pres.gentau.vert, s.tau};
  const CoverForm<K> w = pencil_form(s, t, N - 2 * s.k - 2);
  const VField<K> v = dual_field(w.B);
  return {s.a1 * flow(v, *t), s.atau * flow(v, K(1L) + *t * s.tau), s.tau};
}

// J^-1 Phi^-1 J under J(x, y) = (-x, xi y): shifts are kept and the invariant
// forms are the J-pullbacks.
template <class K>
Generator<K> transport_generator(const Generator<K>& g, const K& xi) {
  const int N = g.trunc();
  const Germ<K> inner = g.vert.inverse() * Germ<K>::linear(xi, N);
  return {g.shift, compose(g.drift, inner.series()), xi.inverse() * inner};
}

template <class K>
Presentation<K> transport_involution(const Presentation<K>& pres, const K& xi) {
  Presentation<K> out = pres;
  out.gen1 = transport_generator(pres.gen1, xi);
  out.gentau = transport_generator(pres.gentau, xi);
  if (!out.commutes()) fail(ErrorCode::CommutationFailure, "transported generators do not commute");
  return out;
}

// J^*(A dx + B(y) dy) = -A dx + xi B(xi y) dy.
template <class K>
CoverForm<K> transport_form(const CoverForm<K>& w, const K& xi) {
  const int nf = std::max(1, w.B.trunc() - w.B.B.valuation() + 1);
  const LSeries<K> b = w.B.B.substitute(PSeries<K>::monomial(xi, 1, nf));
  return {-w.A, MForm<K>(xi * b)};
}

// xi = zeta_{2k}, so xi^k = -1.
template <class K>
K involution_xi(int k, FieldContext ctx = {}) {
  return root_of_unity<K>(2 * k, ctx);
}

// (a1, atau, lambda, Lambda) -> (a1^-1, atau^-1, -lambda, -(xi^m)^(-i) lambda_i).
template <class K>
ModelSpec<K> involution(const ModelSpec<K>& s, FieldContext ctx = {}) {
  s.validate();
  const K xi = involution_xi<K>(s.k, ctx);
  const K xm = power(xi, s.m);
  ModelSpec<K> r = s;
  r.a1 = s.a1.inverse();
  r.atau = s.atau.inverse();
  r.lambda = -s.lambda;
  for (int i = 0; i < int(s.Lambda.size()); ++i) r.Lambda[i] = -(power(xm, -i) * s.Lambda[i]);
  return r;
}

// Cross-ratio with c = 0 at t1, c = 1 at t2, c = infinity at t3.
template <class K>
K cross_ratio(const K& t1, const K& t2, const K& t3, const K& t) {
  const K den = (t - t3) * (t2 - t1);
  if (ellnb::is_zero(den)) fail(ErrorCode::DegenerateCrossRatio, "cross-ratio with repeated points");
  return (t - t1) * (t2 - t3) / den;
}

// The slope s with cross-ratio c against s1, s2, s3.
template <class K>
PSeries<K> cross_ratio_slope(const PSeries<K>& s1, const PSeries<K>& s2, const PSeries<K>& s3,
                             const K& c) {
  const LSeries<K> a(s1), b(s2), d(s3);
  const LSeries<K> num = a * (b - d) - c * (d * (b - a));
  const LSeries<K> den = (b - d) - c * (b - a);
  if (den.is_zero()) fail(ErrorCode::DegenerateCrossRatio, "cross-ratio denominator vanishes");
  const LSeries<K> s = num / den;
  if (!s.is_holomorphic()) fail(ErrorCode::DegenerateCrossRatio, "recombined slope has a pole");
  return s.to_pseries();
}

// dy/dx = -A/B along the leaves of A dx + B dy.
template <class K>
PSeries<K> pencil_slope(const ModelSpec<K>& s, const std::optional<K>& t, int trunc) {
  const CoverForm<K> w = pencil_form(s, t, trunc);
  const LSeries<K> r = (-w.A) * w.B.B.inverse();
  return r.to_pseries();
}

}  // namespace ellnb

#endif  // ELLNB_NEIGHBORHOOD_HPP
