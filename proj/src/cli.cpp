#include "cbtau/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cbtau/cache.hpp"
#include "cbtau/errors.hpp"
#include "cbtau/nekrasov.hpp"
#include "cbtau/pit.hpp"
#include "cbtau/skew.hpp"
#include "cbtau/tau.hpp"
#include "cbtau/verma.hpp"
#include "cbtau/whittaker.hpp"
#include "json.hpp"

namespace cbtau {

using Json = nlohmann::ordered_json;

ParameterPoint parse_point_json(const std::string& text, const std::vector<std::string>& required) {
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw UsageError("point file must be a JSON object of symbol values");
  ParameterPoint p;
  for (const auto& [name, v] : j.items()) {
    if (v.is_string())
      p.set(name, parse_rational(v.get<std::string>()));
    else if (v.is_number_integer())
      p.set(name, Rational(v.get<long>()));
    else
      throw UsageError("value of '" + name + "' must be an integer or a \"p/q\" string");
  }
  for (const auto& s : required)
    if (!p.has(s)) throw MissingSymbol(s);
  return p;
}

ParameterPoint read_point_file(const std::string& path, const std::vector<std::string>& required) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read point file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_point_json(ss.str(), required);
}

namespace {

struct Options {
  std::string point_file;
  int order = 4;
  int nmax = 0;
  int digits = 60;
  std::uint64_t seed = 1;
  int threads = 1;
  int trials = 3;
  bool no_cache = false;
};

nlohmann::json canonical_point(const ParameterPoint& p, const std::vector<std::string>& symbols) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& s : symbols)
    if (p.has(s)) j[s] = to_string(p.at(s));
  return j;
}

Json series_json(const std::vector<Rational>& v) {
  Json j = Json::object();
  for (size_t k = 0; k < v.size(); ++k) j[std::to_string(k)] = to_string(v[k]);
  return j;
}

std::string value_string(const Rational& x, int) { return to_string(x); }
std::string value_string(const BigFloat& x, int digits) { return x.to_string(digits); }

template <class T>
Json channel_json(const ChannelSeries<T>& s, int digits) {
  Json data = Json::object();
  for (const auto& [n, row] : s.data) {
    Json r = Json::object();
    for (const auto& [k, v] : row) r[std::to_string(k)] = value_string(v, digits);
    data[std::to_string(n)] = r;
  }
  return data;
}

Partition parse_partition(const std::string& text) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      parts.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw UsageError("bad partition '" + text + "'");
    }
  }
  return Partition(parts);
}

// Runs a job through the cache and returns its JSON text.
class Runner {
 public:
  Runner(const Options& opt) : opt_(opt) {}

  std::string run(const std::string& op, const nlohmann::json& params, const nlohmann::json& orders,
                  const std::string& mode, const std::function<Json()>& compute) {
    JobKey key{op, params.dump(), orders.dump(), mode};
    if (!opt_.no_cache) {
      ResultCache cache;
      if (auto hit = cache.get(key)) return *hit;
      std::string result = compute().dump();
      try {
        cache.put(key, result);
      } catch (const std::exception& e) {
        std::cerr << "warning: cache write failed: " << e.what() << "\n";
      }
      return result;
    }
    return compute().dump();
  }

 private:
  const Options& opt_;
};

int verdict(const std::string& result) {
  auto j = nlohmann::json::parse(result);
  if (j.is_object() && j.contains("pass") && j["pass"].is_boolean() && !j["pass"].get<bool>()) return kExitFailed;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conformal blocks, irregular blocks and Painleve tau functions"};
  app.require_subcommand(1);
  Options opt;
  std::string result;
  std::function<void()> action;

  auto add_point = [&](CLI::App* c, bool required = true) {
    auto o = c->add_option("--point", opt.point_file, "JSON file with parameter values");
    if (required) o->required();
  };
  auto add_common = [&](CLI::App* c) {
    c->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
    c->add_flag("--no-cache", opt.no_cache, "bypass the result cache");
  };
  Runner runner(opt);

  // block
  auto* block = app.add_subcommand("block", "four-point c=1 block coefficients (Delta = theta^2)");
  add_point(block);
  add_common(block);
  block->add_option("--order", opt.order)->check(CLI::NonNegativeNumber);
  block->callback([&] {
    auto syms = nekrasov_symbols(NekrasovKind::FULL4);
    ParameterPoint p = read_point_file(opt.point_file, syms);
    syms.push_back(sym::c);
    result = runner.run("block", canonical_point(p, syms), {{"order", opt.order}}, "exact", [&] {
      const Rational c = p.has(sym::c) ? p.at(sym::c) : Rational(1);
      auto sq = [&](const char* s) { return Rational(p.at(s) * p.at(s)); };
      auto b = four_point_block(sq(sym::theta_0), sq(sym::theta_t), sq(sym::sigma), sq(sym::theta_1),
                                sq(sym::theta_inf), c, opt.order);
      return Json{{"coefficients", series_json(b)}};
    });
  });

  // icb
  int rank = 1;
  auto* icb = app.add_subcommand("icb", "irregular block coefficients of rank 1 or 2");
  add_point(icb);
  add_common(icb);
  icb->add_option("--rank", rank)->check(CLI::IsMember({1, 2}));
  icb->add_option("--order", opt.order)->check(CLI::NonNegativeNumber);
  icb->callback([&] {
    std::vector<std::string> syms = rank == 1 ? tau_symbols(TauFamily::PV) : tau_symbols(TauFamily::PIV);
    ParameterPoint p = read_point_file(opt.point_file, syms);
    result = runner.run("icb", canonical_point(p, syms), {{"order", opt.order}, {"rank", rank}}, "exact", [&] {
      IcbSeries s = rank == 1 ? icb_rank1(p.at(sym::theta), p.at(sym::beta), p.at(sym::theta_0),
                                          p.at(sym::theta_t), opt.order)
                              : icb_rank2(p.at(sym::theta), p.at(sym::beta), p.at(sym::theta_t),
                                          QuadExt(0, rational(1, 2)), opt.order);
      Json coeffs = Json::object();
      for (size_t k = 0; k < s.coeffs.size(); ++k) {
        const QuadExt& a = s.coeffs[k];
        coeffs[std::to_string(k)] = is_zero(a.b()) ? to_string(a.a()) : to_string(a);
      }
      Json ep = Json::array();
      for (const auto& e : s.exp_poly) ep.push_back(is_zero(e.b()) ? to_string(e.a()) : to_string(e));
      return Json{{"rank", s.rank}, {"alpha", to_string(s.alpha)}, {"exp_poly", ep}, {"coefficients", coeffs}};
    });
  });

  // nekrasov
  std::string kind_name = "full4", lambda_text, mu_text;
  auto* nek = app.add_subcommand("nekrasov", "Nekrasov-type sums over pairs of partitions");
  nek->require_subcommand(1);
  auto* nek_sum = nek->add_subcommand("sum", "coefficients sum_{|l|+|m|=k} N_{l,m}");
  add_point(nek_sum);
  add_common(nek_sum);
  nek_sum->add_option("--kind", kind_name);
  nek_sum->add_option("--order", opt.order)->check(CLI::NonNegativeNumber);
  nek_sum->callback([&] {
    NekrasovKind kind = parse_nekrasov_kind(kind_name);
    auto syms = nekrasov_symbols(kind);
    ParameterPoint p = read_point_file(opt.point_file, syms);
    result = runner.run("nekrasov.sum", canonical_point(p, syms), {{"order", opt.order}, {"kind", kind_name}},
                        "exact", [&] { return series_json(block_sum(kind, p, opt.order, opt.threads)); });
  });
  auto* nek_factor = nek->add_subcommand("factor", "a single factor N_{lambda,mu}");
  add_point(nek_factor);
  add_common(nek_factor);
  nek_factor->add_option("--kind", kind_name);
  nek_factor->add_option("--lambda", lambda_text, "comma separated parts");
  nek_factor->add_option("--mu", mu_text, "comma separated parts");
  nek_factor->callback([&] {
    NekrasovKind kind = parse_nekrasov_kind(kind_name);
    auto syms = nekrasov_symbols(kind);
    ParameterPoint p = read_point_file(opt.point_file, syms);
    Partition l = parse_partition(lambda_text), m = parse_partition(mu_text);
    result = runner.run("nekrasov.factor", canonical_point(p, syms),
                        {{"kind", kind_name}, {"lambda", l.to_string()}, {"mu", m.to_string()}}, "exact",
                        [&] { return Json{{"value", to_string(nekrasov_factor(kind, l, m, p))}}; });
  });

  // tau
  std::string family_name = "pv";
  bool exact = false, normalized = false;
  auto* tau = app.add_subcommand("tau", "tau-function channel series");
  tau->require_subcommand(1);
  auto* tau_build = tau->add_subcommand("build", "assemble the channel series");
  add_point(tau_build);
  add_common(tau_build);
  tau_build->add_option("--family", family_name);
  tau_build->add_option("--nmax", opt.nmax)->check(CLI::NonNegativeNumber);
  tau_build->add_option("--order", opt.order)->check(CLI::NonNegativeNumber);
  tau_build->add_option("--digits", opt.digits)->check(CLI::Range(16, 2000));
  tau_build->add_flag("--exact", exact, "exact rationals (requires rational C_n)");
  tau_build->add_flag("--normalized", normalized, "exact data without C_n; products carry the cocycle");
  tau_build->callback([&] {
    TauFamily f = parse_tau_family(family_name);
    auto syms = tau_symbols(f);
    ParameterPoint p = read_point_file(opt.point_file, syms);
    const bool use_exact = exact || normalized || opt.nmax == 0;
    const std::string mode = normalized ? "normalized" : use_exact ? "exact" : "digits:" + std::to_string(opt.digits);
    result = runner.run("tau.build", canonical_point(p, syms),
                        {{"family", family_name}, {"nmax", opt.nmax}, {"order", opt.order}}, mode, [&] {
                          ChannelSpec spec = tau_channel_spec(f, p);
                          Json j{{"family", family_name}, {"spec", Json::parse(to_json_string(spec))}, {"d", 1}};
                          if (normalized)
                            j["data"] = channel_json(
                                tau_series_normalized<Rational>(f, p, opt.nmax, opt.order, opt.digits, opt.threads),
                                opt.digits);
                          else if (use_exact)
                            j["data"] = channel_json(
                                tau_series<Rational>(f, p, opt.nmax, opt.order, opt.digits, opt.threads), opt.digits);
                          else
                            j["data"] = channel_json(
                                tau_series<BigFloat>(f, p, opt.nmax, opt.order, opt.digits, opt.threads), opt.digits);
                          j["normalized"] = normalized;
                          return j;
                        });
  });

  // verify
  auto* verify = app.add_subcommand("verify", "verification oracles");
  verify->require_subcommand(1);
  auto* v_ode = verify->add_subcommand("ode", "sigma-form residual of the tau series");
  add_point(v_ode);
  add_common(v_ode);
  v_ode->add_option("--family", family_name)->check(CLI::IsMember({"pv", "piv"}));
  v_ode->add_option("--nmax", opt.nmax)->check(CLI::NonNegativeNumber);
  v_ode->add_option("--order", opt.order)->check(CLI::NonNegativeNumber);
  v_ode->add_option("--digits", opt.digits)->check(CLI::Range(16, 2000));
  v_ode->add_flag("--exact", exact, "exact arithmetic (cocycle-normalized channels)");
  v_ode->callback([&] {
    TauFamily f = parse_tau_family(family_name);
    auto syms = tau_symbols(f);
    ParameterPoint p = read_point_file(opt.point_file, syms);
    const std::string mode = exact ? "exact" : "digits:" + std::to_string(opt.digits);
    result = runner.run("verify.ode", canonical_point(p, syms),
                        {{"family", family_name}, {"nmax", opt.nmax}, {"order", opt.order}}, mode, [&] {
                          auto report = [&](const auto& rep) {
                            Json win = Json::object();
                            for (const auto& [n, r] : rep.window.ranges)
                              win[std::to_string(n)] = Json::array({r.first, r.second});
                            return Json{{"pass", rep.pass},
                                        {"family", family_name},
                                        {"mode", mode},
                                        {"degree", rep.degree},
                                        {"shift", rep.shift},
                                        {"window", win},
                                        {"cells", rep.window.cell_count()},
                                        {"max_abs", rep.max_abs.to_string(20)},
                                        {"tolerance", rep.tolerance},
                                        {"residual", channel_json(rep.residual, opt.digits)}};
                          };
                          if (exact) {
                            auto tau = tau_series_normalized<Rational>(f, p, opt.nmax, opt.order, opt.digits,
                                                                       opt.threads);
                            return report(ode_residual(f, p, tau, opt.nmax, opt.order, opt.digits, opt.threads));
                          }
                          auto tau = tau_series<BigFloat>(f, p, opt.nmax, opt.order, opt.digits, opt.threads);
                          return report(ode_residual(f, p, tau, opt.nmax, opt.order, opt.digits, opt.threads));
                        });
  });

  auto* v_agt = verify->add_subcommand("agt", "block recursion against the partition-pair sum");
  add_point(v_agt, false);
  add_common(v_agt);
  v_agt->add_option("--order", opt.order)->check(CLI::NonNegativeNumber);
  v_agt->add_option("--trials", opt.trials, "additional seeded random points")->check(CLI::NonNegativeNumber);
  v_agt->add_option("--seed", opt.seed);
  v_agt->callback([&] {
    auto syms = nekrasov_symbols(NekrasovKind::FULL4);
    std::vector<ParameterPoint> pts;
    nlohmann::json params = nlohmann::json::object();
    if (!opt.point_file.empty()) {
      pts.push_back(read_point_file(opt.point_file, syms));
      params = canonical_point(pts.back(), syms);
    }
    result = runner.run("verify.agt", params, {{"order", opt.order}, {"trials", opt.trials}, {"seed", opt.seed}},
                        "exact", [&] {
                          RationalSampler sampler(opt.seed);
                          for (int i = 0; i < opt.trials; ++i) pts.push_back(sampler.sample(syms));
                          bool pass = true;
                          Json runs = Json::array();
                          for (const auto& p : pts) {
                            Json point = Json::object();
                            for (const auto& s : syms) point[s] = to_string(p.at(s));
                            try {
                              AgtReport r = agt_equivalence_check(p, opt.order, opt.threads);
                              pass = pass && r.pass;
                              runs.push_back(Json{{"point", point},
                                                  {"pass", r.pass},
                                                  {"theta0_dressing_pass", r.theta0_dressing_pass}});
                            } catch (const NonGenericPoint& e) {
                              runs.push_back(Json{{"point", point}, {"skipped", e.what()}});
                            }
                          }
                          return Json{{"pass", pass}, {"order", opt.order}, {"points", runs}};
                        });
  });

  std::string parent_name = "full4", child_name = "pv";
  std::vector<std::string> lambda_values{"100", "1000", "10000"};
  auto* v_deg = verify->add_subcommand("degeneration", "confluence limit between two sums");
  add_point(v_deg);
  add_common(v_deg);
  v_deg->add_option("--parent", parent_name);
  v_deg->add_option("--child", child_name);
  v_deg->add_option("--order", opt.order)->check(CLI::NonNegativeNumber);
  v_deg->add_option("--lambda", lambda_values, "values of the large parameter")->expected(2, 16);
  v_deg->callback([&] {
    NekrasovKind parent = parse_nekrasov_kind(parent_name), child = parse_nekrasov_kind(child_name);
    auto syms = nekrasov_symbols(child);
    if (parent == NekrasovKind::PIII_ALT && child == NekrasovKind::PIII_D7) syms.push_back(sym::theta_star);
    ParameterPoint p = read_point_file(opt.point_file, {});
    std::vector<Rational> lambdas;
    for (const auto& s : lambda_values) lambdas.push_back(parse_rational(s));
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : p.values()) params[k] = to_string(v);
    result = runner.run("verify.degeneration", params,
                        {{"parent", parent_name}, {"child", child_name}, {"order", opt.order}, {"lambda", lambda_values}},
                        "exact", [&] {
                          DegenerationReport r = degeneration_limit_check(parent, child, p, lambdas, opt.order,
                                                                          opt.threads);
                          DegenerationVerdict v = degeneration_verdict(r);
                          Json ks = Json::array();
                          for (size_t k = 0; k < r.deviations.size(); ++k)
                            ks.push_back(Json{{"k", k},
                                              {"child", to_string(r.child[k])},
                                              {"deviations", r.deviations[k]},
                                              {"ratios", r.ratios[k]},
                                              {"order", v.orders[k]}});
                          return Json{{"pass", v.pass}, {"coefficients", ks}};
                        });
  });

  // conjecture
  bool no_symmetry = false, impose_observed = false;
  int solve_trials = 0;
  auto* conj = app.add_subcommand("conjecture", "skew expansion of the rank-one irregular block");
  conj->require_subcommand(1);
  auto* solve = conj->add_subcommand("solve-c", "solve for the coefficients c at one order");
  add_common(solve);
  solve->add_option("--order", opt.order)->check(CLI::Range(0, 8));
  solve->add_option("--seed", opt.seed);
  solve->add_option("--trials", solve_trials, "evaluation points (default #unknowns + 20)");
  solve->add_flag("--no-symmetry", no_symmetry, "do not impose the symmetry relations");
  solve->add_flag("--observed", impose_observed, "impose the observed closed-form families");
  auto solve_json = [&](const CSolution& s) {
    Json c = Json::object();
    for (size_t i = 0; i < s.unknowns.size(); ++i) {
      if (!s.consistent)
        break;
      c[s.unknowns[i].key()] = s.determined[i] ? Json(to_string(s.particular[i])) : Json(nullptr);
    }
    Json j{{"pass", s.consistent},    {"order", s.order},     {"unknowns", s.unknowns.size()},
           {"points", s.points},      {"rank", s.rank},       {"nullity", s.nullity()},
           {"symmetric", s.symmetric}, {"observed", s.observed}, {"c", c}};
    if (s.witness) {
      Json w = Json::object();
      for (const auto& [k, v] : s.witness->values()) w[k] = to_string(v);
      j["witness"] = w;
    }
    j["integer_points"] = s.integer_points.size();
    j["integer_search_complete"] = s.search_complete;
    return j;
  };
  solve->callback([&] {
    result = runner.run("conjecture.solve-c", nlohmann::json::object(),
                        {{"order", opt.order}, {"seed", opt.seed}, {"trials", solve_trials}},
                        std::string(no_symmetry ? "plain" : "symmetric") + (impose_observed ? "+observed" : ""), [&] {
                          SolveOptions so;
                          so.trials = solve_trials;
                          so.seed = opt.seed;
                          so.symmetric = !no_symmetry;
                          so.observed = impose_observed;
                          so.threads = opt.threads;
                          return solve_json(solve_c(opt.order, so));
                        });
  });
  auto* cverify = conj->add_subcommand("verify", "check the observed families up to an order");
  add_common(cverify);
  cverify->add_option("--order", opt.order)->check(CLI::Range(1, 8));
  cverify->add_option("--seed", opt.seed);
  cverify->add_flag("--no-symmetry", no_symmetry, "do not impose the symmetry relations");
  cverify->callback([&] {
    result = runner.run("conjecture.verify", nlohmann::json::object(), {{"order", opt.order}, {"seed", opt.seed}},
                        no_symmetry ? "plain" : "symmetric", [&] {
                          std::vector<CSolution> tables;
                          bool consistent = true;
                          for (int k = 1; k <= opt.order; ++k) {
                            SolveOptions so;
                            so.seed = opt.seed;
                            so.symmetric = !no_symmetry;
                            so.threads = opt.threads;
                            tables.push_back(solve_c(k, so));
                            consistent = consistent && tables.back().consistent;
                          }
                          ObservedReport rep = verify_observed(tables);
                          Json checks = Json::array();
                          for (const auto& c : rep.checks)
                            checks.push_back(Json{{"family", c.family},
                                                  {"matched", c.matched},
                                                  {"mismatched", c.mismatched},
                                                  {"undetermined", c.undetermined},
                                                  {"mismatches", c.mismatches}});
                          Json nullity = Json::array();
                          for (const auto& t : tables) nullity.push_back(t.nullity());
                          return Json{{"pass", consistent && rep.pass()},
                                      {"order", opt.order},
                                      {"nullity", nullity},
                                      {"negative_or_fractional", rep.negative_or_fractional},
                                      {"checks", checks}};
                        });
  });

  // cache
  auto* cache = app.add_subcommand("cache", "inspect the result cache");
  cache->require_subcommand(1);
  cache->add_subcommand("stats", "number of cached results")->callback([&] {
    result = Json{{"entries", ResultCache().stats().entries}}.dump();
  });
  cache->add_subcommand("clear", "remove every cached result")->callback([&] {
    result = Json{{"removed", ResultCache().clear()}}.dump();
  });
  cache->add_subcommand("path", "cache directory")->callback([&] {
    result = Json{{"path", ResultCache().dir().string()}}.dump();
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NonGenericPoint& e) {
    err << "error: non-generic point: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    // Usage, domain, containment and truncation problems.
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  out << result << "\n";
  return verdict(result);
}

}  // namespace cbtau
