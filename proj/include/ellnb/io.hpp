#ifndef ELLNB_IO_HPP
#define ELLNB_IO_HPP

// JSON encodings of coefficients, series, models, normal forms, invariants and
// reports.  Every to_json / from_json pair round-trips exactly.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ellnb/bifoliated.hpp"
#include "ellnb/dynamics.hpp"

namespace ellnb::io {

using json = nlohmann::json;

enum class Backend { Exact, Float };

// Float when any coefficient object carries "re".
inline Backend detect_backend(const json& j) {
  if (j.is_object()) {
    if (j.contains("re")) return Backend::Float;
    for (const auto& [key, v] : j.items())
      if (detect_backend(v) == Backend::Float) return Backend::Float;
  } else if (j.is_array()) {
    for (const auto& v : j)
      if (detect_backend(v) == Backend::Float) return Backend::Float;
  }
  return Backend::Exact;
}

[[noreturn]] inline void bad(const std::string& what) { fail(ErrorCode::InvalidInput, what); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) bad(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

// "p/q" or "n", or a JSON integer.
inline mpq_class rational_from_json(const json& j) {
  mpq_class q;
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (!j.is_string()) bad("rational must be a \"p/q\" string");
  const std::string s = j.get<std::string>();
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) bad("bad rational \"" + s + "\"");
  q.canonicalize();
  return q;
}

inline std::string real_to_string(const mpfr_float& x) {
  return x.str(0, std::ios_base::scientific);
}

// ---------------------------------------------------------------------------
// Coefficients.
// ---------------------------------------------------------------------------

inline json to_json(const Cyclo& a) {
  json c = json::array();
  for (const auto& q : a.coeffs()) c.push_back(q.get_str());
  return {{"conductor", a.conductor()}, {"coeffs", c}};
}

inline json to_json(const FloatC& a) {
  return {{"re", real_to_string(a.re())}, {"im", real_to_string(a.im())}, {"bits", a.bits()}};
}

template <class K>
K coeff_from_json(const json& j);

template <>
inline Cyclo coeff_from_json<Cyclo>(const json& j) {
  if (!j.is_object()) return Cyclo(rational_from_json(j));
  if (j.contains("re")) fail(ErrorCode::BackendMismatch, "float coefficient in exact input");
  const int n = int_field(j, "conductor");
  if (n < 1) bad("conductor must be >= 1");
  const json& c = field(j, "coeffs");
  if (!c.is_array()) bad("\"coeffs\" must be an array");
  detail::QPoly p;
  for (const auto& x : c) p.push_back(rational_from_json(x));
  if (p.empty()) p.push_back(mpq_class(0));
  return Cyclo::from_poly(n, std::move(p));
}

template <>
inline FloatC coeff_from_json<FloatC>(const json& j) {
  if (!j.is_object()) {
    return to_float(Cyclo(rational_from_json(j)), default_float_bits());
  }
  if (j.contains("conductor")) return to_float(coeff_from_json<Cyclo>(j), default_float_bits());
  const int bits = j.contains("bits") ? int_field(j, "bits") : default_float_bits();
  if (bits < 16) bad("bits must be >= 16");
  const json& re = field(j, "re");
  const json im = j.contains("im") ? j.at("im") : json("0");
  if (!re.is_string() || !im.is_string()) bad("\"re\" and \"im\" must be decimal strings");
  return FloatC::from_strings(re.get<std::string>(), im.get<std::string>(), bits);
}

template <class K>
std::vector<K> coeffs_from_json(const json& j) {
  if (!j.is_array()) bad("expected an array of coefficients");
  std::vector<K> out;
  for (const auto& x : j) out.push_back(coeff_from_json<K>(x));
  return out;
}

template <class K>
json to_json(const std::vector<K>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

// ---------------------------------------------------------------------------
// Series, germs, fields and forms.
// ---------------------------------------------------------------------------

// Coefficients listed from the valuation; the zero series has valuation trunc + 1.
template <class K>
json to_json(const PSeries<K>& s) {
  const int v = s.valuation().value_or(s.trunc() + 1);
  json c = json::array();
  for (int i = v; i <= s.trunc(); ++i) c.push_back(to_json(s[i]));
  return {{"valuation", v}, {"trunc", s.trunc()}, {"coeffs", c}};
}

template <class K>
json to_json(const LSeries<K>& s) {
  const int v = s.is_zero() ? s.trunc() + 1 : s.valuation();
  json c = json::array();
  for (int i = v; i <= s.trunc(); ++i) c.push_back(to_json(s.coeff(i)));
  return {{"valuation", v}, {"trunc", s.trunc()}, {"coeffs", c}};
}

template <class K>
LSeries<K> lseries_from_json(const json& j) {
  const int v = int_field(j, "valuation");
  const int n = int_field(j, "trunc");
  std::vector<K> c = coeffs_from_json<K>(field(j, "coeffs"));
  if (n < v - 1 || int(c.size()) > n - v + 1) bad("coefficients run past the truncation");
  return LSeries<K>(v, std::move(c), n);
}

template <class K>
PSeries<K> pseries_from_json(const json& j) {
  const int v = int_field(j, "valuation");
  if (v < 0) bad("power series valuation must be >= 0");
  const int n = int_field(j, "trunc");
  if (n < 0) bad("truncation must be >= 0");
  const std::vector<K> c = coeffs_from_json<K>(field(j, "coeffs"));
  if (v + int(c.size()) - 1 > n) bad("coefficients run past the truncation");
  PSeries<K> s(n);
  for (int i = 0; i < int(c.size()); ++i) s.set(v + i, c[i]);
  return s;
}

inline void check_kind(const json& j, const char* kind) {
  if (j.contains("kind") && j.at("kind") != kind) bad(std::string("expected kind \"") + kind + "\"");
}

template <class K>
json to_json(const Germ<K>& g) {
  json j = to_json(g.series());
  j["kind"] = "germ";
  return j;
}

template <class K>
Germ<K> germ_from_json(const json& j) {
  check_kind(j, "germ");
  return Germ<K>(pseries_from_json<K>(j));
}

template <class K>
json to_json(const VField<K>& v) {
  json j = to_json(v.F);
  j["kind"] = "vector_field";
  return j;
}

template <class K>
VField<K> vfield_from_json(const json& j) {
  check_kind(j, "vector_field");
  return VField<K>(pseries_from_json<K>(j));
}

template <class K>
json to_json(const MForm<K>& w) {
  json j = to_json(w.B);
  j["kind"] = "one_form";
  return j;
}

template <class K>
MForm<K> mform_from_json(const json& j) {
  check_kind(j, "one_form");
  return MForm<K>(lseries_from_json<K>(j));
}

// ---------------------------------------------------------------------------
// Models and presentations.
// ---------------------------------------------------------------------------

template <class K>
json to_json(const ModelSpec<K>& s) {
  return {{"a1", to_json(s.a1)},         {"atau", to_json(s.atau)}, {"m", s.m},
          {"k", s.k},                    {"lambda", to_json(s.lambda)},
          {"Lambda", to_json(s.Lambda)}, {"tau", to_json(s.tau)}};
}

template <class K>
ModelSpec<K> spec_from_json(const json& j) {
  ModelSpec<K> s;
  s.a1 = coeff_from_json<K>(field(j, "a1"));
  s.atau = coeff_from_json<K>(field(j, "atau"));
  s.m = int_field(j, "m");
  s.k = int_field(j, "k");
  s.lambda = coeff_from_json<K>(field(j, "lambda"));
  s.Lambda = coeffs_from_json<K>(field(j, "Lambda"));
  if (j.contains("tau")) s.tau = coeff_from_json<K>(j.at("tau"));
  s.validate();
  return s;
}

template <class K>
json to_json(const Generator<K>& g) {
  return {{"shift", to_json(g.shift)}, {"drift", to_json(g.drift)}, {"vert", to_json(g.vert)}};
}

template <class K>
Generator<K> generator_from_json(const json& j) {
  return {coeff_from_json<K>(field(j, "shift")), pseries_from_json<K>(field(j, "drift")),
          germ_from_json<K>(field(j, "vert"))};
}

template <class K>
json to_json(const Presentation<K>& p) {
  return {{"tau", to_json(p.tau)},
          {"gen1", to_json(p.gen1)},
          {"gen_tau", to_json(p.gentau)},
          {"trunc", p.trunc}};
}

template <class K>
Presentation<K> presentation_from_json(const json& j) {
  Presentation<K> p;
  p.tau = coeff_from_json<K>(field(j, "tau"));
  p.gen1 = generator_from_json<K>(field(j, "gen1"));
  p.gentau = generator_from_json<K>(field(j, "gen_tau"));
  p.trunc = int_field(j, "trunc");
  return p;
}

template <class K>
json to_json(const HolRep<K>& r) {
  return {{"tau", to_json(r.tau)}, {"g1", to_json(r.g1)}, {"g_tau", to_json(r.gtau)}};
}

template <class K>
HolRep<K> holrep_from_json(const json& j) {
  const K tau = j.contains("tau") ? coeff_from_json<K>(j.at("tau")) : default_tau<K>();
  return {germ_from_json<K>(field(j, "g1")), germ_from_json<K>(field(j, "g_tau")), tau};
}

// ---------------------------------------------------------------------------
// Normal forms and invariants.
// ---------------------------------------------------------------------------

inline const char* diffeo_kind_name(DiffeoKind k) {
  return k == DiffeoKind::Linear ? "LINEAR" : "RESONANT";
}

template <class K>
json normalizer_json(const std::optional<Germ<K>>& h) {
  return h ? to_json(*h) : json(nullptr);
}

template <class K>
std::optional<Germ<K>> normalizer_from_json(const json& j) {
  if (!j.contains("normalizer") || j.at("normalizer").is_null()) return std::nullopt;
  return germ_from_json<K>(j.at("normalizer"));
}

template <class K>
json to_json(const DiffeoNF<K>& nf) {
  return {{"kind", diffeo_kind_name(nf.kind)},
          {"a", to_json(nf.a)},
          {"m", nf.m},
          {"k", nf.k},
          {"lambda", to_json(nf.lambda)},
          {"normalizer", normalizer_json(nf.h)},
          {"torsion_bound_reached", nf.torsion_bound_reached}};
}

template <class K>
DiffeoNF<K> diffeo_nf_from_json(const json& j) {
  DiffeoNF<K> nf;
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind != "LINEAR" && kind != "RESONANT") bad("unknown normal form kind " + kind);
  nf.kind = kind == "LINEAR" ? DiffeoKind::Linear : DiffeoKind::Resonant;
  nf.a = coeff_from_json<K>(field(j, "a"));
  nf.m = int_field(j, "m");
  nf.k = int_field(j, "k");
  nf.lambda = coeff_from_json<K>(field(j, "lambda"));
  nf.h = normalizer_from_json<K>(j);
  nf.torsion_bound_reached = j.value("torsion_bound_reached", false);
  return nf;
}

template <class K>
json to_json(const PairNF<K>& nf) {
  return {{"kind", pair_kind_name(nf.kind)},
          {"a1", to_json(nf.a1)},
          {"atau", to_json(nf.atau)},
          {"m", nf.m},
          {"k", nf.k},
          {"lambda", to_json(nf.lambda)},
          {"t1", to_json(nf.t1)},
          {"t_tau", to_json(nf.ttau)},
          {"reference", nf.reference == 0 ? json(nullptr) : json(nf.reference == 1 ? "1" : "tau")},
          {"certified", nf.certified},
          {"normalizer", normalizer_json(nf.h)}};
}

template <class K>
PairNF<K> pair_nf_from_json(const json& j) {
  PairNF<K> nf;
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "LINEAR_PAIR") nf.kind = PairKind::LinearPair;
  else if (kind == "RESONANT_PAIR") nf.kind = PairKind::ResonantPair;
  else if (kind == "FINITE") nf.kind = PairKind::Finite;
  else bad("unknown pair kind " + kind);
  nf.a1 = coeff_from_json<K>(field(j, "a1"));
  nf.atau = coeff_from_json<K>(field(j, "atau"));
  nf.m = int_field(j, "m");
  nf.k = int_field(j, "k");
  nf.lambda = coeff_from_json<K>(field(j, "lambda"));
  nf.t1 = coeff_from_json<K>(field(j, "t1"));
  nf.ttau = coeff_from_json<K>(field(j, "t_tau"));
  const json& r = field(j, "reference");
  nf.reference = r.is_null() ? 0 : (r == "1" ? 1 : 2);
  nf.certified = j.value("certified", false);
  nf.h = normalizer_from_json<K>(j);
  return nf;
}

inline CaseTag case_tag_from_string(const std::string& s) {
  for (CaseTag t : {CaseTag::FibrationTransverse, CaseTag::Logarithmic, CaseTag::Intermediate})
    if (s == case_tag_name(t)) return t;
  bad("unknown case tag " + s);
}

template <class K>
json to_json(const PairInvariants<K>& inv) {
  return {{"case", case_tag_name(inv.tag)}, {"m", inv.m},
          {"k", inv.k},                     {"p", inv.p},
          {"lambda", to_json(inv.lambda)},  {"Lambda", to_json(inv.Lambda)}};
}

template <class K>
PairInvariants<K> invariants_from_json(const json& j) {
  PairInvariants<K> inv;
  inv.tag = case_tag_from_string(field(j, "case").get<std::string>());
  inv.m = int_field(j, "m");
  inv.k = int_field(j, "k");
  inv.p = int_field(j, "p");
  inv.lambda = coeff_from_json<K>(field(j, "lambda"));
  inv.Lambda = coeffs_from_json<K>(field(j, "Lambda"));
  return inv;
}

// ---------------------------------------------------------------------------
// Dynamics reports and errors.
// ---------------------------------------------------------------------------

inline json reals_json(const std::vector<mpfr_float>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(real_to_string(x));
  return a;
}

inline json to_json(const KoenigsReport& r) {
  return {{"value", to_json(r.value)},
          {"difference", real_to_string(r.difference)},
          {"residual", real_to_string(r.residual)},
          {"residuals", reals_json(r.residuals)},
          {"iterations", r.iterations},
          {"inverted", r.inverted}};
}

inline json to_json(const CFExpansion& cf) {
  json a = json::array(), q = json::array();
  for (const auto& x : cf.a) a.push_back(x.get_str());
  for (const auto& x : cf.q) q.push_back(x.get_str());
  return {{"quotients", a}, {"denominators", q}, {"terminated", cf.terminated}, {"bits", cf.bits}};
}

// A CF file lists partial quotients: {"quotients": ["1", "2", ...]}.
inline CFExpansion cf_from_json(const json& j) {
  const json& a = field(j, "quotients");
  if (!a.is_array()) bad("\"quotients\" must be an array");
  std::vector<mpz_class> q;
  for (const auto& x : a) {
    mpz_class z;
    if (x.is_number_integer()) z = x.get<long>();
    else if (!x.is_string() || z.set_str(x.get<std::string>(), 10) != 0) bad("bad partial quotient");
    q.push_back(z);
  }
  return cf_from_quotients(q);
}

inline json to_json(const BrjunoProfile& p, int horizon) {
  return {{"partial_sums", reals_json(p.partial_sums)},
          {"terms", reals_json(p.terms)},
          {"verdict", p.verdict},
          {"horizon", horizon}};
}

inline json to_json(const DiophProfile& p, int horizon) {
  return {{"d", reals_json(p.d)},
          {"first_violation", p.first_violation != 0 ? json(p.first_violation) : json(nullptr)},
          {"verdict", p.verdict},
          {"horizon", horizon}};
}

inline json error_json(const MathError& e) {
  return {{"error", e.name()}, {"message", e.what()}, {"exit_code", exit_status(e.code())}};
}

}  // namespace ellnb::io

#endif  // ELLNB_IO_HPP
