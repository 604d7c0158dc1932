#include "cli.hpp"

#include <affdyn/fibration.hpp>
#include <affdyn/padic.hpp>
#include <affdyn/valdyn.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

namespace affdyn::cli {
namespace {

using nlohmann::json;

enum Stream : std::uint32_t { kDegrees = 1, kLambda2, kHarvest, kStarts };

json quad(const QuadraticNumber& q) { return {{"exact", q.to_string()}, {"approx", q.to_double()}}; }

std::string point_string(const Point& p) { return "(" + p.first.get_str() + ", " + p.second.get_str() + ")"; }

Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0 || sgn(r.get_den()) == 0) throw std::invalid_argument("not a rational number: " + s);
  r.canonicalize();
  return r;
}

Point parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("point must be \"a,b\": " + s);
  auto trim = [](std::string t) {
    t.erase(0, t.find_first_not_of(" ()"));
    t.erase(t.find_last_not_of(" ()") + 1);
    return t;
  };
  return {parse_rational(trim(s.substr(0, comma))), parse_rational(trim(s.substr(comma + 1)))};
}

/// Small rational start points drawn from the start-point stream.
std::vector<Point> random_starts(const AnalysisConfig& c, int count) {
  std::mt19937_64 rng(stream_seed(c.seed, kStarts));
  std::uniform_int_distribution<long> num(-9, 8), den(1, 3);
  auto draw = [&] {
    long a = num(rng);
    if (a >= 0) ++a;
    return frac(a, den(rng));
  };
  std::vector<Point> out;
  for (int i = 0; i < count; ++i) out.push_back({draw(), draw()});
  return out;
}

HarvestOptions harvest_options(const AnalysisConfig& c) {
  HarvestOptions h;
  h.trials = c.trials;
  h.D_max = c.dmax;
  h.seed = stream_seed(c.seed, kHarvest);
  return h;
}

json certificate(const DensityCertificate& d) {
  json j{{"D", d.D}, {"M", d.M}, {"verdict", to_string(d.verdict)}, {"rank", d.rank}};
  if (d.witness) j["witness"] = d.witness->to_string();
  return j;
}

json cmd_analyze(const AnalysisConfig& c, const Endo2& f, int& code) {
  DegreeGrowthOptions go;
  go.exact_degree_cap = c.exact_degree_cap;
  go.degree_cap = c.degree_cap;
  go.seed = stream_seed(c.seed, kDegrees);
  const DegreeGrowth g = degree_growth(f, c.iterates, go);
  const Lambda2Report l2 = lambda2(f, 3, stream_seed(c.seed, kLambda2));
  const InequalityReport ineq = check_degree_inequality(g, l2.value);
  const ResonanceReport res = resonance_classify(f, c.iterates);

  json r;
  r["map"] = f.to_string();
  r["degrees"] = g.degrees;
  r["degrees_exact"] = g.exact;
  r["partial"] = g.partial;
  r["recurrence"] = g.recurrence ? json(*g.recurrence) : json(nullptr);
  json l1{{"lo", g.lambda1_lo.get_str()}, {"hi", g.lambda1_hi.get_str()}};
  if (g.lambda1) l1.update(quad(*g.lambda1));
  if (g.minimal_polynomial) l1["minimal_polynomial"] = g.minimal_polynomial->to_string('z');
  r["lambda1"] = l1;
  r["lambda2"] = {{"value", l2.value},
                  {"generic_trials", l2.generic_trials},
                  {"modp_prime", l2.prime},
                  {"modp_degree", l2.modp_degree},
                  {"modp_agrees", l2.modp_agrees}};
  r["inequality"] = {{"decided", ineq.decided}, {"holds", ineq.holds}, {"resonant", ineq.resonant}};
  r["resonance"] = to_string(res.tag);

  json eig;
  try {
    const auto e = eigenvaluation_iterate(f, MonomialValuation::minus_deg(), std::max(30, c.iterates));
    eig["verdict"] = e.verdict;
    eig["converged"] = e.converged;
    eig["steps"] = e.d_values.size();
    eig["last"] = to_string(e.trajectory.back());
    if (e.fixed) eig["fixed"] = {{"s", quad(e.fixed->s)}, {"t", quad(e.fixed->t)}};
    if (e.d_fixed) eig["d_fixed"] = quad(*e.d_fixed);
    if (e.alpha) eig["alpha"] = quad(*e.alpha);
    if (e.thinness) eig["thinness"] = quad(*e.thinness);
  } catch (const Collapsed& e) {
    eig["verdict"] = "collapsed";
    eig["note"] = e.what();
  }
  r["eigenvaluation"] = eig;

  const bool degenerate = g.lambda1 && *g.lambda1 == QuadraticNumber(1) && l2.value == 1;
  r["degenerate"] = degenerate;
  if (degenerate) r["note"] = "lambda1 = lambda2 = 1";
  if (!g.lambda1) code = g.partial ? kBudgetExceeded : kInconclusive;
  else if (!ineq.decided || res.tag == Resonance::inconclusive) code = kInconclusive;
  r["status"] = code == kOk ? "ok" : code == kBudgetExceeded ? "budget exceeded" : "inconclusive";
  return r;
}

json cmd_dichotomy(const AnalysisConfig& c, const Endo2& f, int& code) {
  json r;
  r["map"] = f.to_string();
  const auto s = invariant_function_search(f, harvest_options(c));
  if (s.g) {
    r["verdict"] = "invariant function found";
    r["invariant_function"] = s.g->to_string();
    r["message"] = "invariant function found: " + s.g->to_string();
    return r;
  }
  std::vector<Point> starts{parse_point(c.point)};
  for (const auto& p : random_starts(c, c.trials)) starts.push_back(p);
  for (const auto& p : starts) {
    const auto orbit = iterate_orbit(f, p, monomial_count(c.dmax) + 5);
    if (distinct_count(orbit) < monomial_count(c.dmax)) continue;
    const auto certs = density_scan(orbit, c.dmax);
    if (certs.back().verdict != DensityVerdict::dense_up_to_D) continue;
    r["verdict"] = "dense orbit found";
    r["start"] = point_string(p);
    r["certificate"] = certificate(certs.back());
    r["message"] = "dense_up_to_" + std::to_string(c.dmax) + " orbit found at " + point_string(p);
    return r;
  }
  code = kInconclusive;
  r["verdict"] = "inconclusive";
  r["message"] = "inconclusive at budget";
  return r;
}

json cmd_density(const AnalysisConfig& c, const Endo2& f, int& code) {
  const Point p = parse_point(c.point);
  const auto orbit = iterate_orbit(f, p, monomial_count(c.dmax) + 5);
  const int have = distinct_count(orbit);
  int D = c.dmax;
  while (D >= 1 && monomial_count(D) > have) --D;
  json r{{"map", f.to_string()},
         {"start", point_string(p)},
         {"orbit_status", to_string(orbit.status)},
         {"distinct_points", have}};
  json certs = json::array();
  if (D >= 1)
    for (const auto& d : density_scan(orbit, D)) certs.push_back(certificate(d));
  r["certificates"] = certs;
  const bool curve = !certs.empty() && certs.back()["verdict"] == "curve_found";
  if (!curve && D < c.dmax) {
    code = kInconclusive;
    r["note"] = "orbit supports D <= " + std::to_string(std::max(D, 0)) + " only";
  }
  return r;
}

json cmd_fibration(const AnalysisConfig& c, const Endo2& f, int&) {
  const auto s = invariant_function_search(f, harvest_options(c));
  json r;
  r["map"] = f.to_string();
  r["contracted"] = json::array();
  for (const auto& q : s.contracted) r["contracted"].push_back(q.to_string());
  r["invariant_curves"] = json::array();
  for (const auto& cv : s.harvest.curves)
    r["invariant_curves"].push_back({{"poly", cv.P.to_string()},
                                     {"type", to_string(cv.type)},
                                     {"mult", cv.multiplicity},
                                     {"ramified", cv.ramified}});
  r["semi_invariants"] = json::array();
  for (const auto& si : s.semi.semis)
    r["semi_invariants"].push_back({{"g", si.g.to_string()}, {"A", si.A.get_str()}});
  if (s.g) r["invariant_function"] = s.g->to_string();
  if (!s.note.empty()) r["note"] = s.note;
  return r;
}

json cmd_padic(const AnalysisConfig& c, const Endo2& f, int& code) {
  const long p = c.prime ? good_prime(f, {*c.prime}) : good_prime(f, c.prime_candidates);
  const PAdicContext ctx(p, c.precision);
  json r{{"map", f.to_string()}, {"prime", p}, {"precision", c.precision}};
  if (p > 2000) {
    code = kBudgetExceeded;
    r["note"] = "periodic point scan over F_p^2 exceeds the budget";
    return r;
  }
  const auto fp = reduce_mod_p(f, p);
  const auto pts = periodic_points_mod_p(fp, 8);
  r["periodic_points"] = json::array();
  r["tangent_orders"] = json::array();
  int orders = 0;
  for (const auto& q : pts) {
    const json at{q.x[0], q.y[0]};
    r["periodic_points"].push_back({{"point", at}, {"period", q.period}, {"critical", q.critical}});
    if (!q.critical && orders++ < 16)
      r["tangent_orders"].push_back({{"point", at}, {"k", identity_tangent_iterate(fp, q)}});
  }

  const Point start = parse_point(c.point);
  const auto att = attraction_monitor(f, start, {}, ctx, c.iterates);
  json dist = json::array();
  for (const auto& d : att.distances) dist.push_back(d.get_str());
  r["attraction"] = {{"start", point_string(start)},
                     {"target", "line at infinity"},
                     {"distances", dist},
                     {"monotone_tail", att.monotone_tail}};

  int K = 6;
  while (K >= 1 && mahler_schedule(K, p) >= c.precision) --K;
  json mahler{{"K", K}, {"schedule", "floor(k/(p-1)) + ceil(k/2) - 1 (engineering calibration)"}};
  if (K < 1) {
    mahler["note"] = "precision too small";
  } else {
    try {
      const auto seq = orbit_mod(f, start, ctx, std::max(K, c.iterates));
      for (int i = 0; i < 2; ++i) {
        const auto m = mahler_test(seq[i], K, ctx);
        mahler[i == 0 ? "x" : "y"] = {
            {"valuations", m.valuations},
            {"verdict", m.fails_at ? "fails_at(" + std::to_string(*m.fails_at) + ")" : "analytic_consistent"},
            {"slope", m.slope}};
      }
    } catch (const std::domain_error& e) {
      mahler["note"] = e.what();
    }
  }
  r["mahler"] = mahler;
  return r;
}

void render_text(const json& r, std::ostream& out) {
  for (const auto& [k, v] : r.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

void load_config(const std::string& path, AnalysisConfig& c) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path);
  const json j = json::parse(in);
  c.map = j.value("map", c.map);
  c.iterates = j.value("iterates", c.iterates);
  c.dmax = j.value("dmax", c.dmax);
  c.trials = j.value("trials", c.trials);
  if (j.contains("prime")) c.prime = j["prime"].get<long>();
  c.prime_candidates = j.value("prime_candidates", c.prime_candidates);
  c.precision = j.value("precision", c.precision);
  c.seed = j.value("seed", c.seed);
  c.point = j.value("point", c.point);
  c.exact_degree_cap = j.value("exact_degree_cap", c.exact_degree_cap);
  c.degree_cap = j.value("degree_cap", c.degree_cap);
  c.json = j.value("json", c.json);
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamics of polynomial endomorphisms of the affine plane"};
  std::optional<std::string> map, config, point;
  std::optional<int> iterates, dmax, trials, precision;
  std::optional<long> prime;
  std::optional<std::uint64_t> seed;
  bool as_json = false;
  app.add_option("--map", map, "endomorphism \"(F, G)\"");
  app.add_option("--config", config, "JSON configuration file; flags override it");
  app.add_option("--iterates", iterates, "iterate budget N");
  app.add_option("--dmax", dmax, "largest curve degree for density tests");
  app.add_option("--trials", trials, "random start points");
  app.add_option("--prime", prime, "prime for padic-explore");
  app.add_option("--precision", precision, "p-adic precision m");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--point", point, "start point \"a,b\"");
  app.add_flag("--json", as_json, "JSON output");
  app.require_subcommand(1);

  using Command = json (*)(const AnalysisConfig&, const Endo2&, int&);
  const std::vector<std::tuple<std::string, std::string, Command>> commands{
      {"analyze", "degrees, lambda1, lambda2, resonance and eigenvaluation", cmd_analyze},
      {"dichotomy", "invariant fibration or a dense orbit", cmd_dichotomy},
      {"density-test", "orbit density certificates from --point", cmd_density},
      {"fibration-search", "contracted curves, invariant curves and semi-invariants", cmd_fibration},
      {"padic-explore", "reduction mod p, periodic points, attraction and Mahler tests", cmd_padic},
  };
  std::optional<std::string> positional;
  std::vector<CLI::App*> subs;
  for (const auto& [name, help, fn] : commands) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    s->add_option("map", positional, "endomorphism \"(F, G)\"");
    subs.push_back(s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kInputError;
  }

  AnalysisConfig c;
  try {
    if (config) load_config(*config, c);
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kInputError;
  }
  if (positional) c.map = *positional;
  if (map) c.map = *map;
  if (iterates) c.iterates = *iterates;
  if (dmax) c.dmax = *dmax;
  if (trials) c.trials = *trials;
  if (prime) c.prime = *prime;
  if (precision) c.precision = *precision;
  if (seed) c.seed = *seed;
  if (point) c.point = *point;
  c.json = c.json || as_json;
  if (c.map.empty()) {
    err << "no map given (use --map, a positional argument or --config)\n";
    return kInputError;
  }
  if (c.iterates < 1 || c.dmax < 1 || c.trials < 1 || c.precision < 1) {
    err << "iterates, dmax, trials and precision must be positive\n";
    return kInputError;
  }

  int code = kOk;
  json report;
  try {
    const Endo2 f = parse_endo(c.map);
    for (std::size_t i = 0; i < subs.size(); ++i)
      if (subs[i]->parsed()) report = std::get<2>(commands[i])(c, f, code);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kInputError;
  } catch (const BadPrime& e) {
    err << "bad prime: " << e.what() << '\n';
    return kInputError;
  } catch (const DegreeCapExceeded& e) {
    err << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const FactorCapExceeded& e) {
    err << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "inconclusive: " << e.what() << '\n';
    return kInconclusive;
  }
  if (c.json) out << report.dump(2) << '\n';
  else render_text(report, out);
  return code;
}

}  // namespace affdyn::cli
