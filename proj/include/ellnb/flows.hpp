#ifndef ELLNB_FLOWS_HPP
#define ELLNB_FLOWS_HPP

// Formal vector fields F(y) d/dy with F(0) = 0, their time-t flows, formal
// logarithms of tangent-to-identity germs, and meromorphic 1-forms B(y) dy.

#include <vector>

#include "ellnb/germs.hpp"

namespace ellnb {

template <class K>
struct VField {
  PSeries<K> F;

  VField() = default;
  explicit VField(PSeries<K> f) : F(std::move(f)) {
    if (!ellnb::is_zero(F[0])) fail(ErrorCode::NonzeroConstantTerm, "vector field must vanish at 0");
  }
  int trunc() const { return F.trunc(); }
  friend bool operator==(const VField& a, const VField& b) { return a.F == b.F; }
  friend bool operator!=(const VField& a, const VField& b) { return !(a == b); }
  friend VField operator*(const K& s, const VField& v) { return VField(s * v.F); }
};

template <class K>
struct MForm {
  LSeries<K> B;

  MForm() = default;
  explicit MForm(LSeries<K> b) : B(std::move(b)) {}
  int trunc() const { return B.trunc(); }
  friend bool operator==(const MForm& a, const MForm& b) { return a.B == b.B; }
  friend bool operator!=(const MForm& a, const MForm& b) { return !(a == b); }
  friend MForm operator+(const MForm& a, const MForm& b) { return MForm(a.B + b.B); }
  friend MForm operator-(const MForm& a, const MForm& b) { return MForm(a.B - b.B); }
  friend MForm operator*(const K& s, const MForm& w) { return MForm(s * w.B); }
};

// F * G'; F(0) = 0 keeps the shared truncation.
template <class K>
PSeries<K> lie_derivative(const PSeries<K>& F, const PSeries<K>& G) {
  const int n = std::min(F.trunc(), G.trunc());
  PSeries<K> r(n);
  for (int i = 1; i <= n; ++i) {
    if (F[i].is_null()) continue;
    for (int j = 1; i + j - 1 <= n; ++j) {
      if (G[j].is_null()) continue;
      r.set(i + j - 1, r[i + j - 1] + K(long(j)) * F[i] * G[j]);
    }
  }
  return r;
}

// Upper bound on the Lie-series terms summed on the float backend.
inline int& flow_term_cap() {
  static int cap = 4000;
  return cap;
}

// exp(t v)(y) = sum_n t^n/n! v^n(y).
template <class K>
Germ<K> flow(const VField<K>& v, const K& t) {
  const int n = v.trunc();
  if (n < 1) fail(ErrorCode::TruncationTooLow, "flow needs truncation >= 1");
  PSeries<K> term = PSeries<K>::identity(n);
  PSeries<K> sum = term;
  if (ellnb::is_zero(t) || v.F.is_zero()) return Germ<K>(sum);
  const bool linear = !ellnb::is_zero(v.F[1]);
  if (linear && field_traits<K>::exact)
    fail(ErrorCode::NoExactExponential, "flow with F'(0) != 0 needs the float backend");
  for (long j = 1;; ++j) {
    term = (t / K(j)) * lie_derivative(v.F, term);
    if (term.is_zero()) break;
    sum = sum + term;
    if (j > flow_term_cap()) fail(ErrorCode::NoConvergence, "Lie series did not settle");
  }
  return Germ<K>(sum);
}

// Composition matrix P[i][n] = [y^n] f^i, i, n <= N.
template <class K>
std::vector<PSeries<K>> power_table(const PSeries<K>& f) {
  const int n = f.trunc();
  std::vector<PSeries<K>> p;
  p.push_back(PSeries<K>::constant(K(1L), n));
  for (int i = 1; i <= n; ++i) p.push_back(PSeries<K>::mul_to(p.back(), f, n));
  return p;
}

// G o f from a precomputed power table of f.
template <class K>
PSeries<K> compose_with_table(const PSeries<K>& G, const std::vector<PSeries<K>>& pt) {
  const int n = std::min(G.trunc(), int(pt.size()) - 1);
  PSeries<K> r(n);
  for (int i = 0; i <= n; ++i) {
    if (G[i].is_null()) continue;
    for (int e = i; e <= n; ++e)
      if (!pt[i][e].is_null()) r.set(e, r[e] + G[i] * pt[i][e]);
  }
  return r;
}

// The unique v with exp(v) = f, for f tangent to the identity.
// log C_f = sum (-1)^(j+1)/j (C_f - I)^j with C_f(G) = G o f, applied to y.
template <class K>
VField<K> formal_log(const Germ<K>& f) {
  if (f.linear_part() != K(1L)) fail(ErrorCode::NotTangent, "formal_log needs f'(0) = 1");
  if (f.is_identity()) fail(ErrorCode::Identity, "formal_log of the identity");
  const int n = f.trunc();
  const auto pt = power_table(f.series());
  PSeries<K> term = PSeries<K>::identity(n);
  PSeries<K> F(n);
  for (long j = 1;; ++j) {
    term = compose_with_table(term, pt) - term;
    if (term.is_zero()) break;
    const K c = (j % 2 == 1 ? K(1L) : K(-1L)) / K(j);
    F = F + c * term;
    if (j > n + 1) fail(ErrorCode::InternalConsistency, "operator logarithm did not terminate");
  }
  VField<K> v(F);
  if (flow(v, K(1L)) != f) fail(ErrorCode::InternalConsistency, "formal_log failed re-exponentiation");
  return v;
}

// The form B dy with B F = 1.
template <class K>
MForm<K> dual_form(const VField<K>& v) {
  if (v.F.is_zero()) fail(ErrorCode::ZeroField, "dual of the zero field");
  return MForm<K>(LSeries<K>(v.F).inverse());
}

// The field F d/dy with B F = 1.
template <class K>
VField<K> dual_field(const MForm<K>& w) {
  if (w.B.is_zero()) fail(ErrorCode::ZeroField, "dual of the zero form");
  const LSeries<K> F = w.B.inverse();
  if (F.valuation() < 1) fail(ErrorCode::InvalidInput, "dual field does not vanish at 0");
  return VField<K>(F.to_pseries());
}

// f^* (B dy) = B(f(y)) f'(y) dy.
template <class K>
MForm<K> pullback(const MForm<K>& w, const Germ<K>& f) {
  const LSeries<K> bf = w.B.substitute(f.series());
  return MForm<K>(bf * LSeries<K>(f.series().derivative()));
}

// h_* v = (h' F) o h^-1; F(0) = 0 keeps h' F known through the truncation of F.
template <class K>
VField<K> pushforward(const VField<K>& v, const Germ<K>& h) {
  const int n = std::min(v.trunc(), h.trunc());
  const PSeries<K> hp = h.series().derivative();
  PSeries<K> prod(n);
  for (int i = 1; i <= n; ++i) {
    K acc(0L);
    for (int j = 1; j <= i; ++j)
      if (!v.F[j].is_null() && !hp[i - j].is_null()) acc += hp[i - j] * v.F[j];
    prod.set(i, acc);
  }
  return VField<K>(compose(prod, h.inverse().series()));
}

// v_{k,lambda} = y^(k+1) / (1 + lambda y^k) d/dy.
template <class K>
VField<K> v_k_lambda(int k, const K& lambda, int trunc) {
  PSeries<K> den = PSeries<K>::constant(K(1L), trunc) + PSeries<K>::monomial(lambda, k, trunc);
  return VField<K>(PSeries<K>::monomial(K(1L), k + 1, trunc) * den.inverse());
}

// omega_{k,lambda} = dy / y^(k+1) + lambda dy / y.
template <class K>
MForm<K> omega_k_lambda(int k, const K& lambda, int trunc) {
  return MForm<K>(LSeries<K>::monomial(K(1L), -k - 1, trunc) +
                  LSeries<K>::monomial(lambda, -1, trunc));
}

}  // namespace ellnb

#endif  // ELLNB_FLOWS_HPP
