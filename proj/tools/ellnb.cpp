// Command-line front end: one subcommand per pipeline, JSON in and out.
// Exit status 0 on success, 2 on invalid input, 4 on insufficient truncation,
// 3 on any other mathematical precondition failure.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "ellnb/io.hpp"
#include "ellnb/sampling.hpp"

namespace {

using namespace ellnb;
using io::json;

json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidInput, "cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

void write_json(const std::string& path, const json& j) {
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) fail(ErrorCode::InvalidInput, "cannot write " + path);
  out << j.dump(2) << "\n";
}

// Run f with a value of the backend type the input calls for.
template <class F>
void with_backend(io::Backend b, F&& f) {
  if (b == io::Backend::Exact) f(Cyclo{});
  else f(FloatC{});
}

// "p/q", a decimal, or an inline JSON coefficient.
template <class K>
K parse_scalar(const std::string& s) {
  if (!s.empty() && s.front() == '{') {
    try {
      return io::coeff_from_json<K>(json::parse(s));
    } catch (const json::exception&) {
      fail(ErrorCode::InvalidInput, "bad coefficient " + s);
    }
  }
  const auto dot = s.find('.');
  if (dot == std::string::npos) return io::coeff_from_json<K>(json(s));
  const std::string sign = !s.empty() && s[0] == '-' ? "-" : "";
  const std::string body = sign.empty() ? s : s.substr(1);
  const auto d = body.find('.');
  std::string digits = body.substr(0, d) + body.substr(d + 1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    fail(ErrorCode::InvalidInput, "bad number " + s);
  return io::coeff_from_json<K>(json(sign + digits + "/1" + std::string(body.size() - d - 1, '0')));
}

// "x" or "x,y" as a float complex.
FloatC parse_complex(const std::string& s, int bits) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return FloatC::from_strings(s, "0", bits);
  return FloatC::from_strings(s.substr(0, comma), s.substr(comma + 1), bits);
}

mpfr_float parse_real(const std::string& s, int bits) { return parse_complex(s, bits).re(); }

struct Options {
  std::string out = "-";
  int bits = 200;
  int torsion_bound = 64;
  long budget = 100000;
  NormalizeOptions normalize() const { return {torsion_bound, budget}; }
};

void add_subcommands(CLI::App& app, Options& o) {
  auto* nd = app.add_subcommand("normalize-diffeo", "normal form of a single germ");
  static std::string nd_file;
  nd->add_option("file", nd_file, "germ JSON")->required();
  nd->callback([&o] {
    const json in = read_json(nd_file);
    with_backend(io::detect_backend(in), [&](auto tag) {
      using K = decltype(tag);
      const Germ<K> f = io::germ_from_json<K>(in);
      if (f.is_identity()) fail(ErrorCode::Identity, "the identity has no normal form to compute");
      write_json(o.out, io::to_json(normalize_germ(f, o.normalize())));
    });
  });

  auto* cp = app.add_subcommand("classify-pair", "invariants of a bifoliated pair {F, G}");
  static std::string cp_file;
  cp->add_option("file", cp_file, "pair JSON")->required();
  cp->callback([&o] {
    const json in = read_json(cp_file);
    with_backend(io::detect_backend(in), [&](auto tag) {
      using K = decltype(tag);
      const auto F = io::holrep_from_json<K>(io::field(in, "F"));
      const auto G = io::holrep_from_json<K>(io::field(in, "G"));
      write_json(o.out, io::to_json(classify_pair(F, G, o.normalize())));
    });
  });

  auto* bm = app.add_subcommand("build-model", "quotient presentation of a spec");
  static std::string bm_spec;
  static int bm_order = 0;
  bm->add_option("--spec", bm_spec, "ModelSpec JSON")->required();
  bm->add_option("--order", bm_order, "truncation N")->required();
  bm->callback([&o] {
    const json in = read_json(bm_spec);
    with_backend(io::detect_backend(in), [&](auto tag) {
      using K = decltype(tag);
      const ModelSpec<K> s = io::spec_from_json<K>(in);
      json j = io::to_json(build_model(s, bm_order));
      j["spec"] = io::to_json(s);
      write_json(o.out, j);
    });
  });

  auto* ho = app.add_subcommand("holonomy", "holonomy germ of a pencil member on one loop");
  static std::string ho_model, ho_t, ho_loop = "1";
  static int ho_order = 0;
  ho->add_option("--model", ho_model, "build-model output, or a ModelSpec with --order")->required();
  ho->add_option("--t", ho_t, "pencil parameter: rational, decimal or inf")->required();
  ho->add_option("--loop", ho_loop, "1 or tau")->check(CLI::IsMember({"1", "tau"}));
  ho->add_option("--order", ho_order, "truncation when --model is a bare spec");
  ho->callback([&o] {
    const json in = read_json(ho_model);
    with_backend(io::detect_backend(in), [&](auto tag) {
      using K = decltype(tag);
      ModelSpec<K> s;
      Presentation<K> pres;
      if (in.contains("gen1")) {
        s = io::spec_from_json<K>(io::field(in, "spec"));
        pres = io::presentation_from_json<K>(in);
      } else {
        if (ho_order == 0) fail(ErrorCode::InvalidInput, "a bare spec needs --order");
        s = io::spec_from_json<K>(in);
        pres = build_model(s, ho_order);
      }
      std::optional<K> t;
      if (ho_t != "inf") t = parse_scalar<K>(ho_t);
      const HolRep<K> r = holonomy(pres, s, t);
      write_json(o.out, io::to_json(r.at(ho_loop == "1" ? 1 : 2)));
    });
  });

  auto* tg = app.add_subcommand("tangency", "tangency order of two foliations from their holonomies");
  static std::string tg_pair;
  tg->add_option("--pair", tg_pair, "pair JSON {F, G}")->required();
  tg->callback([&o] {
    const json in = read_json(tg_pair);
    with_backend(io::detect_backend(in), [&](auto tag) {
      using K = decltype(tag);
      const auto F = io::holrep_from_json<K>(io::field(in, "F"));
      const auto G = io::holrep_from_json<K>(io::field(in, "G"));
      write_json(o.out, json(tangency(F, G)));
    });
  });

  auto* iv = app.add_subcommand("involution", "spec of the model transported by (x, y) -> (-x, xi y)");
  static std::string iv_spec;
  iv->add_option("--spec", iv_spec, "ModelSpec JSON")->required();
  iv->callback([&o] {
    const json in = read_json(iv_spec);
    with_backend(io::detect_backend(in), [&](auto tag) {
      using K = decltype(tag);
      write_json(o.out, io::to_json(involution(io::spec_from_json<K>(in))));
    });
  });

  auto* cr = app.add_subcommand("crossratio", "slope recombined from three pencil slopes");
  static std::string cr_file, cr_c;
  cr->add_option("--slopes", cr_file, "JSON {s1, s2, s3}")->required();
  cr->add_option("--c", cr_c, "cross-ratio value")->required();
  cr->callback([&o] {
    const json in = read_json(cr_file);
    with_backend(io::detect_backend(in), [&](auto tag) {
      using K = decltype(tag);
      const auto s1 = io::pseries_from_json<K>(io::field(in, "s1"));
      const auto s2 = io::pseries_from_json<K>(io::field(in, "s2"));
      const auto s3 = io::pseries_from_json<K>(io::field(in, "s3"));
      write_json(o.out, io::to_json(cross_ratio_slope(s1, s2, s3, parse_scalar<K>(cr_c))));
    });
  });

  auto* bj = app.add_subcommand("brjuno", "Brjuno partial sums of a continued fraction");
  static std::string bj_alpha, bj_cf;
  static int bj_terms = 0;
  auto* alpha_opt = bj->add_option("--alpha", bj_alpha, "decimal in (0, 1), expanded exactly");
  auto* cf_opt = bj->add_option("--cf", bj_cf, "JSON {quotients: [...]}");
  alpha_opt->excludes(cf_opt);
  bj->add_option("--terms", bj_terms, "number of terms")->required();
  bj->callback([&o] {
    if (bj_alpha.empty() == bj_cf.empty()) fail(ErrorCode::InvalidInput, "give exactly one of --alpha, --cf");
    const CFExpansion cf = bj_cf.empty() ? cf_from_decimal(bj_alpha, bj_terms + 1)
                                         : io::cf_from_json(read_json(bj_cf));
    const int n = std::min<int>(bj_terms, int(cf.a.size()));
    json j = io::to_json(brjuno_profile(cf, n, o.bits), n);
    j["expansion"] = io::to_json(cf);
    write_json(o.out, j);
  });

  auto* kg = app.add_subcommand("koenigs", "Koenigs linearizer at a seed point");
  static std::string kg_map, kg_seed;
  static int kg_iters = 60;
  kg->add_option("--map", kg_map, "germ JSON of the map")->required();
  kg->add_option("--seed", kg_seed, "seed z as x or x,y")->required();
  kg->add_option("--iters", kg_iters, "iterations");
  kg->callback([&o] {
    const json in = read_json(kg_map);
    default_float_bits() = o.bits;
    const PSeries<FloatC> f = io::pseries_from_json<FloatC>(in);
    write_json(o.out, io::to_json(koenigs(f, parse_complex(kg_seed, o.bits), kg_iters)));
  });

  auto* dp = app.add_subcommand("dioph", "distance profile of k z0 to the lattice Z + tau Z");
  static std::string dp_tau = "0,1", dp_z0, dp_alpha = "1", dp_eps = "0.01";
  static int dp_K = 100;
  dp->add_option("--tau", dp_tau, "tau as x,y with y > 0");
  dp->add_option("--z0", dp_z0, "z0 as x or x,y")->required();
  dp->add_option("--K", dp_K, "horizon");
  dp->add_option("--alpha", dp_alpha, "exponent");
  dp->add_option("--eps", dp_eps, "threshold");
  dp->callback([&o] {
    const DiophProfile p = diophantine_profile(parse_complex(dp_tau, o.bits), parse_complex(dp_z0, o.bits),
                                               dp_K, parse_real(dp_alpha, o.bits), parse_real(dp_eps, o.bits));
    write_json(o.out, io::to_json(p, dp_K));
  });

  auto* rs = app.add_subcommand("random-spec", "seeded random ModelSpec");
  static unsigned long long rs_seed = 0;
  static std::string rs_case = "any", rs_backend = "exact";
  static int rs_kmax = 8, rs_mmax = 4;
  rs->add_option("--seed", rs_seed, "generator seed")->required();
  rs->add_option("--case", rs_case, "none, zero, positive or any")
      ->check(CLI::IsMember({"none", "zero", "positive", "any"}));
  rs->add_option("--backend", rs_backend, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  rs->add_option("--kmax", rs_kmax, "largest Ueda type");
  rs->add_option("--mmax", rs_mmax, "largest torsion order");
  rs->callback([&o] {
    const PCase pc = rs_case == "none"     ? PCase::None
                     : rs_case == "zero"   ? PCase::Zero
                     : rs_case == "positive" ? PCase::Positive
                                           : PCase::Any;
    Rng rng(rs_seed);
    with_backend(rs_backend == "exact" ? io::Backend::Exact : io::Backend::Float, [&](auto tag) {
      using K = decltype(tag);
      write_json(o.out, io::to_json(random_spec<K>(rng, pc, rs_kmax, rs_mmax)));
    });
  });
}

int report(const MathError& e) {
  std::cout << io::error_json(e).dump(2) << "\n";
  return exit_status(e.code());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ellnb: formal classification of neighborhoods of elliptic curves"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("-o,--out", o.out, "output file, - for stdout");
  app.add_option("--bits", o.bits, "float precision in bits")->check(CLI::Range(16, 1 << 20));
  app.add_option("--torsion-bound", o.torsion_bound, "largest root-of-unity order tested");
  app.add_option("--budget", o.budget, "normalization step budget");
  app.parse_complete_callback([&o] { default_float_bits() = o.bits; });
  add_subcommands(app, o);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report(MathError(ErrorCode::InvalidInput, e.what()));
  } catch (const MathError& e) {
    return report(e);
  } catch (const std::exception& e) {
    return report(MathError(ErrorCode::InternalConsistency, e.what()));
  }
  return 0;
}
