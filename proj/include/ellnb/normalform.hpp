#ifndef ELLNB_NORMALFORM_HPP
#define ELLNB_NORMALFORM_HPP

// Normal forms of single germs (a y or a exp(v_{k,lambda})) and of commuting
// pairs, with the flow times of each generator in the model group.

#include <numeric>
#include <optional>
#include <string>

#include "ellnb/flows.hpp"

namespace ellnb {

struct NormalizeOptions {
  int torsion_bound = 64;
  long step_budget = 100000;
};

enum class DiffeoKind { Linear, Resonant };

template <class K>
struct DiffeoNF {
  DiffeoKind kind = DiffeoKind::Linear;
  K a = K(1L);
  int m = 0;  // order of a, 0 when not torsion up to the bound
  int k = 0;
  K lambda = K(0L);
  // h with h f h^-1 = model; absent when the field lacks the needed k-th root.
  std::optional<Germ<K>> h;
  bool torsion_bound_reached = false;
};

namespace detail {

// Step counter shared by one normalization.
struct Budget {
  long left;
  void spend() {
    if (--left < 0) fail(ErrorCode::StepBudgetExceeded, "normalization step budget exhausted");
  }
};

// psi g psi^-1 for psi = y + c y^n.
template <class K>
Germ<K> conj_monomial(const Germ<K>& g, const K& c, int n) {
  const int N = g.trunc();
  const Germ<K> psi(PSeries<K>::identity(N) + PSeries<K>::monomial(c, n, N));
  return conjugate(g, psi);
}

// Kill every coefficient y^n with a^(n-1) != 1; returns the conjugator.
template <class K>
Germ<K> kill_nonresonant(Germ<K>& g, Budget& budget) {
  const int N = g.trunc();
  const K a = g.linear_part();
  Germ<K> h = Germ<K>::identity(N);
  K an = a;
  for (int n = 2; n <= N; ++n) {
    an = an * a;
    const K r = g.coeff(n);
    if (ellnb::is_zero(r)) continue;
    const K den = a - an;
    if (ellnb::is_zero(den)) continue;
    budget.spend();
    const K c = r / den;
    g = conj_monomial(g, c, n);
    h = Germ<K>(PSeries<K>::identity(N) + PSeries<K>::monomial(c, n, N)) * h;
  }
  return h;
}

}  // namespace detail

// Classify f up to formal conjugacy: a y, or a exp(v_{k,lambda}) with a^k = 1.
template <class K>
DiffeoNF<K> normalize_germ(const Germ<K>& f, const NormalizeOptions& opt = {}) {
  detail::Budget budget{opt.step_budget};
  const int N = f.trunc();
  DiffeoNF<K> out;
  out.a = f.linear_part();
  const auto m = mul_order(out.a, opt.torsion_bound);
  if (f.is_linear()) {
    out.m = m.value_or(0);
    out.torsion_bound_reached = !m.has_value();
    out.h = Germ<K>::identity(N);
    return out;
  }
  Germ<K> g = f;
  Germ<K> h = detail::kill_nonresonant(g, budget);
  if (!m) {
    if (!g.is_linear()) fail(ErrorCode::InternalConsistency, "linearization left resonant terms");
    out.torsion_bound_reached = true;
    out.h = h;
    return out;
  }
  out.m = *m;
  const Germ<K> gm = iterate(g, *m);
  if (gm.is_identity())
    fail(ErrorCode::TruncationTooLow,
         "f^m is the identity at truncation " + std::to_string(N) + "; periodic or k > N");
  const VField<K> w = formal_log(gm);
  const int k = *w.F.valuation() - 1;
  if (k % *m != 0) fail(ErrorCode::InternalConsistency, "Ueda type is not a multiple of the torsion");
  if (N < 2 * k + 1)
    fail(ErrorCode::TruncationTooLow, "residue of y^(2k+1) lies past truncation");
  out.kind = DiffeoKind::Resonant;
  out.k = k;
  out.lambda = K(long(*m)) * dual_form(w).B.residue();

  // Homothety mu y bringing the y^(k+1) coefficient of g/a to 1.
  const K lead = g.coeff(k + 1) / out.a;
  const auto mu = nth_root(lead, k);
  if (!mu) return out;
  const Germ<K> hom = Germ<K>::linear(*mu, N);
  g = conjugate(g, hom);
  h = hom * h;

  // Match a exp(v_{k,lambda}) degree by degree with psi = y + c y^(j+1), m | j.
  const Germ<K> model = out.a * flow(v_k_lambda(k, out.lambda, N), K(1L));
  for (int n = k + 2; n <= N; ++n) {
    const K d = model.coeff(n) - g.coeff(n);
    if (ellnb::is_zero(d)) continue;
    const int j = n - k - 1;
    if (j == k || j % *m != 0)
      fail(ErrorCode::InternalConsistency, "normal form mismatch at a fixed coefficient");
    budget.spend();
    const K c = d / (out.a * K(long(j - k)));
    g = detail::conj_monomial(g, c, j + 1);
    h = Germ<K>(PSeries<K>::identity(N) + PSeries<K>::monomial(c, j + 1, N)) * h;
  }
  if (conjugate(f, h) != model) fail(ErrorCode::InternalConsistency, "normalizer check failed");
  out.h = h;
  return out;
}

template <class K>
struct TimePair {
  K a;
  K t;
};

// (a, t) with f = a exp(t v_{k,lambda}) at truncation.
template <class K>
TimePair<K> extract_time(const Germ<K>& f, int k, const K& lambda) {
  const K a = f.linear_part();
  const K t = f.coeff(k + 1) / a;
  const Germ<K> model = a * flow(v_k_lambda(k, lambda, f.trunc()), t);
  if (model != f) fail(ErrorCode::NotInModel, "germ is not a exp(t v_{k,lambda})");
  return {a, t};
}

// The flow time realizing a holonomy element in the model group.
template <class K>
K period_of(const Germ<K>& f, int k, const K& lambda) {
  return extract_time(f, k, lambda).t;
}

// Holonomy images of the lattice generators 1 and tau.
template <class K>
struct HolRep {
  Germ<K> g1;
  Germ<K> gtau;
  K tau;

  int trunc() const { return std::min(g1.trunc(), gtau.trunc()); }
  const Germ<K>& at(int loop) const { return loop == 1 ? g1 : gtau; }
};

// The lattice generator tau = i.
template <class K>
K default_tau() {
  return root_of_unity<K>(4);
}

template <class K>
HolRep<K> conjugate(const HolRep<K>& r, const Germ<K>& h) {
  return {conjugate(r.g1, h), conjugate(r.gtau, h), r.tau};
}

template <class K>
bool commutes(const HolRep<K>& r) {
  return r.g1 * r.gtau == r.gtau * r.g1;
}

enum class PairKind { LinearPair, ResonantPair, Finite };

inline const char* pair_kind_name(PairKind k) {
  switch (k) {
    case PairKind::LinearPair: return "LINEAR_PAIR";
    case PairKind::ResonantPair: return "RESONANT_PAIR";
    case PairKind::Finite: return "FINITE";
  }
  return "?";
}

template <class K>
struct PairNF {
  PairKind kind = PairKind::Finite;
  K a1 = K(1L);
  K atau = K(1L);
  int m = 0;  // order of <a1, atau>; 0 when not torsion
  int k = 0;
  K lambda = K(0L);
  K t1 = K(0L);
  K ttau = K(0L);
  int reference = 0;     // loop normalized to time 1 (1 or 2 for tau), 0 if none
  bool certified = false;  // FINITE with both generators exactly linear
  std::optional<Germ<K>> h;
};

// Commuting pair up to simultaneous conjugation.
template <class K>
PairNF<K> normalize_pair(const HolRep<K>& rep, const NormalizeOptions& opt = {}) {
  if (!commutes(rep)) fail(ErrorCode::Nonabelian, "holonomy generators do not commute");
  PairNF<K> out;
  out.a1 = rep.g1.linear_part();
  out.atau = rep.gtau.linear_part();
  const auto m1 = mul_order(out.a1, opt.torsion_bound);
  const auto mt = mul_order(out.atau, opt.torsion_bound);
  if (!m1 || !mt) {
    // A non-torsion linear part forces a common linearization.
    const Germ<K>& f = !m1 ? rep.g1 : rep.gtau;
    const DiffeoNF<K> nf = normalize_germ(f, opt);
    const HolRep<K> lin = conjugate(rep, *nf.h);
    if (!lin.g1.is_linear() || !lin.gtau.is_linear())
      fail(ErrorCode::InternalConsistency, "commuting partner of a linearizable germ is not linear");
    out.kind = PairKind::LinearPair;
    out.h = nf.h;
    return out;
  }
  out.m = std::lcm(*m1, *mt);
  const Germ<K> p1 = iterate(rep.g1, out.m);
  const Germ<K> pt = iterate(rep.gtau, out.m);
  if (p1.is_identity() && pt.is_identity()) {
    out.kind = PairKind::Finite;
    out.certified = rep.g1.is_linear() && rep.gtau.is_linear();
    if (!out.certified)
      fail(ErrorCode::TruncationTooLow, "both generators periodic at truncation; not certified");
    out.h = Germ<K>::identity(rep.trunc());
    return out;
  }
  out.reference = pt.is_identity() ? 1 : 2;
  const Germ<K>& ref = out.reference == 2 ? rep.gtau : rep.g1;
  const DiffeoNF<K> nf = normalize_germ(ref, opt);
  if (nf.kind != DiffeoKind::Resonant) fail(ErrorCode::InternalConsistency, "reference not resonant");
  if (nf.k % out.m != 0)
    fail(ErrorCode::InternalConsistency, "Ueda type is not a multiple of the group torsion");
  out.kind = PairKind::ResonantPair;
  out.k = nf.k;
  out.lambda = nf.lambda;
  // Times from the logarithms of the m-th powers: log g^m = m t v.
  const VField<K> wref = formal_log(out.reference == 2 ? pt : p1);
  const K lead = wref.F.coeff(nf.k + 1);
  auto time_of = [&](const Germ<K>& pw) {
    if (pw.is_identity()) return K(0L);
    const VField<K> w = formal_log(pw);
    if (w.F.valuation() != wref.F.valuation() || K(lead) * w.F != w.F.coeff(nf.k + 1) * wref.F)
      fail(ErrorCode::NotInModel, "generator logarithms are not proportional");
    return w.F.coeff(nf.k + 1) / lead;
  };
  out.t1 = time_of(p1);
  out.ttau = time_of(pt);
  if (nf.h) {
    // The normalizer is fixed by the reference only up to its centralizer, whose
    // free terms of degree > N - k leave the partner certified through y^(N-k).
    const int M = rep.trunc() - nf.k;
    const HolRep<K> c = conjugate(rep, *nf.h);
    const HolRep<K> n{c.g1.truncated(M), c.gtau.truncated(M), c.tau};
    const auto e1 = extract_time(n.g1, nf.k, nf.lambda);
    const auto et = extract_time(n.gtau, nf.k, nf.lambda);
    if (e1.t != out.t1 || et.t != out.ttau)
      fail(ErrorCode::InternalConsistency, "normalizer and logarithm times disagree");
    out.h = nf.h;
  }
  return out;
}

// Ueda type (nullopt = infinite) and whether the foliation is a fibration.
struct UedaData {
  std::optional<int> utype;
  bool fibration = false;
};

template <class K>
UedaData ueda_data(const HolRep<K>& rep, const NormalizeOptions& opt = {}) {
  const PairNF<K> nf = normalize_pair(rep, opt);
  switch (nf.kind) {
    case PairKind::Finite: return {std::nullopt, true};
    case PairKind::ResonantPair: return {nf.k, false};
    case PairKind::LinearPair: return {std::nullopt, false};
  }
  return {};
}

}  // namespace ellnb

#endif  // ELLNB_NORMALFORM_HPP
