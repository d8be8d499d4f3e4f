#pragma once

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coclass/bar_complex.hpp"
#include "coclass/cache.hpp"
#include "coclass/cochain.hpp"
#include "coclass/group_model.hpp"
#include "coclass/verify.hpp"

namespace coclass {

enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitUsage = 2, kExitBudget = 3 };

struct RunConfig {
  unsigned p = 2;
  unsigned x = 1;
  std::size_t i = 0;
  std::size_t i_max = 0;
  unsigned r = 3;
  std::size_t max_degree = 4;
  std::size_t degree = 1;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string family = "quotient";
  std::string cache_dir;
  std::optional<std::size_t> budget_order;
  std::size_t budget_matrix = ResolutionBudget{}.max_matrix;
  std::size_t budget_degree = ResolutionBudget{}.max_degree;
  std::optional<std::size_t> tamper_level;
  bool exhaustive = false;

  SpaceGroupParams params() const { return SpaceGroupParams(p, x); }

  ResolutionOptions resolution_options() const {
    ResolutionOptions o;
    o.budget.max_order = budget_order.value_or(ResolutionBudget{}.max_order);
    o.budget.max_matrix = budget_matrix;
    o.budget.max_degree = budget_degree;
    if (!cache_dir.empty()) o.cache_dir = cache_dir;
    return o;
  }

  std::size_t enumeration_budget() const { return budget_order.value_or(kEnumerationBudget); }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void emit_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

inline FiniteGroup build_group(const RunConfig& c, std::size_t budget) {
  if (c.family == "quotient") return quotient_group(c.params(), c.i, budget);
  if (c.family == "b3r") return b3r(c.r, budget);
  if (c.family == "wreath") return wreath_group(c.params(), budget);
  throw UsageError("unknown family '" + c.family + "'");
}

inline std::size_t level_of(const RunConfig& c) { return c.family == "b3r" ? c.r - 3 : c.i; }

inline nlohmann::json census_json(const ElementTable& table) {
  nlohmann::json census = nlohmann::json::object();
  unsigned long long exponent = 1;
  for (const auto& [order, count] : order_census(table)) {
    census[std::to_string(order)] = count;
    exponent = std::max(exponent, order);
  }
  return {{"census", census},
          {"exponent", exponent},
          {"abelian", is_abelian(table)},
          {"frattiniRank", frattini_rank(table)}};
}

inline void betti_csv(std::ostream& out, unsigned p, unsigned x, std::size_t i, const std::vector<std::size_t>& b) {
  for (std::size_t n = 0; n < b.size(); ++n) out << p << ',' << x << ',' << i << ',' << n << ',' << b[n] << '\n';
}

inline int cmd_group(const std::string& action, const RunConfig& c, std::ostream& out) {
  if (c.family == "b3r" && c.r < 3) throw UsageError("--r must be at least 3");
  const FiniteGroup g = build_group(c, c.enumeration_budget());
  nlohmann::json report = {{"command", "group " + action}, {"descriptor", g.descriptor()},
                           {"order", integer_json(g.order())}};
  if (action == "build") {
    emit_json(out, report);
    return kExitOk;
  }
  const ElementTable table = enumerate(g, c.enumeration_budget());
  if (action == "census") {
    report.update(census_json(table));
  } else {
    nlohmann::json elements = nlohmann::json::array();
    for (const Element& e : table.elements()) elements.push_back(e);
    report["elements"] = std::move(elements);
    report["generators"] = table.generators();
  }
  emit_json(out, report);
  return kExitOk;
}

inline int cmd_filtration(const RunConfig& c, std::ostream& out) {
  const FiltrationReport report = verify_filtration(c.params(), c.i_max, c.tamper_level);
  emit_json(out, report.to_json());
  return report.passed() ? kExitOk : kExitFailed;
}

inline int cmd_betti(const RunConfig& c, std::ostream& out) {
  if (c.family == "wreath") throw UsageError("betti supports --family quotient or b3r");
  const FiniteGroup g = build_group(c, c.resolution_options().budget.max_order);
  const std::vector<std::size_t> b = betti_numbers(g, c.max_degree, c.resolution_options());
  const unsigned p = g.prime(), x = c.family == "b3r" ? 1 : c.x;
  if (c.format == "csv") {
    out << "p,x,i,n,beta\n";
    betti_csv(out, p, x, level_of(c), b);
  } else {
    emit_json(out, {{"command", "betti"}, {"descriptor", g.descriptor()}, {"maxDegree", c.max_degree}, {"betti", b}});
  }
  return kExitOk;
}

inline int cmd_theorem(const RunConfig& c, std::ostream& out) {
  const TheoremReport report = c.family == "b3r" ? verify_b3r_family(c.r, c.max_degree, c.resolution_options())
                                                 : verify_theorem(c.params(), c.i_max, c.max_degree, c.resolution_options());
  if (c.format == "csv") {
    out << "p,x,i,n,beta\n";
    const unsigned p = report.family.at("p").get<unsigned>(), x = report.family.at("x").get<unsigned>();
    for (const TheoremLevel& l : report.levels) betti_csv(out, p, x, l.level, l.betti);
    out << "# allEqual=" << (report.all_equal() ? "true" : "false") << '\n';
  } else {
    nlohmann::json j = report.to_json();
    j["command"] = "theorem";
    emit_json(out, j);
  }
  return report.all_equal() ? kExitOk : kExitFailed;
}

inline int cmd_equivariance(const std::string& which, const RunConfig& c, std::ostream& out) {
  EquivarianceReport report;
  if (which == "eta") {
    report = c.exhaustive ? check_eta_equivariance_exhaustive(c.params(), c.degree)
                          : check_eta_equivariance(c.params(), c.degree, c.trials, c.seed);
  } else if (which == "delta") {
    report = check_delta(c.params(), c.i_max, c.trials, c.seed);
  } else {
    report = check_inflation_equivariance(c.params(), c.i, c.degree, c.trials, c.seed);
  }
  emit_json(out, report.to_json());
  return report.passed() ? kExitOk : kExitFailed;
}

inline int cmd_cache(const std::string& action, const RunConfig& c, std::ostream& out) {
  if (c.cache_dir.empty()) throw UsageError("no cache directory: pass --cache-dir or set COCLASS_CACHE_DIR");
  const ResolutionCache cache(c.cache_dir);
  if (action == "clear") {
    emit_json(out, {{"command", "cache clear"}, {"removed", cache.clear()}});
    return kExitOk;
  }
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [key, manifest] : cache.list())
    entries.push_back({{"key", key},
                       {"descriptor", manifest.value("descriptor", nlohmann::json())},
                       {"maxDegree", manifest.value("maxDegree", 0)},
                       {"betti", manifest.value("betti", nlohmann::json::array())}});
  emit_json(out, {{"command", "cache list"}, {"entries", entries}});
  return kExitOk;
}

}  // namespace detail

/// Parses argv and runs one subcommand; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  if (const char* env = std::getenv("COCLASS_CACHE_DIR")) c.cache_dir = env;

  CLI::App app{"Cohomology of quotients of uniserial p-adic space groups", "coclass"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  auto space = [&](CLI::App* s) {
    s->add_option("--p", c.p, "Prime p")->capture_default_str();
    s->add_option("--x", c.x, "Point group order exponent x")->capture_default_str();
  };
  auto budgets = [&](CLI::App* s) {
    s->add_option("--budget-order", c.budget_order, "Largest group order to enumerate or resolve");
    s->add_option("--budget-matrix", c.budget_matrix, "Largest boundary matrix side")->capture_default_str();
    s->add_option("--budget-degree", c.budget_degree, "Largest resolution degree")->capture_default_str();
    s->add_option("--cache-dir", c.cache_dir, "Resolution cache directory (default $COCLASS_CACHE_DIR)");
  };
  auto family = [&](CLI::App* s) {
    s->add_option("--family", c.family, "quotient | b3r | wreath")
        ->check(CLI::IsMember({"quotient", "b3r", "wreath"}))
        ->capture_default_str();
    s->add_option("--r", c.r, "B(3,r) parameter")->capture_default_str();
  };
  auto format = [&](CLI::App* s) {
    s->add_option("--format", c.format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  };
  auto random = [&](CLI::App* s) {
    s->add_option("--trials", c.trials, "Random trials")->capture_default_str();
    s->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  };

  std::string action;
  CLI::App* group = app.add_subcommand("group", "Construct a group and report on it");
  group->add_option("action", action, "build | census | export")
      ->required()
      ->check(CLI::IsMember({"build", "census", "export"}));
  space(group);
  family(group);
  group->add_option("--i", c.i, "Filtration level")->capture_default_str();
  group->add_option("--budget-order", c.budget_order, "Largest group order to enumerate");

  CLI::App* filt = app.add_subcommand("filtration", "Verify filtration identities");
  filt->add_option("action", action, "verify")->required()->check(CLI::IsMember({"verify"}));
  space(filt);
  filt->add_option("--i-max", c.i_max, "Highest level")->capture_default_str();
  filt->add_option("--tamper-level", c.tamper_level)->group("");

  CLI::App* betti = app.add_subcommand("betti", "Betti numbers of one quotient");
  space(betti);
  family(betti);
  betti->add_option("--i", c.i, "Filtration level")->capture_default_str();
  betti->add_option("--max-degree", c.max_degree, "Top degree N")->capture_default_str();
  budgets(betti);
  format(betti);

  CLI::App* theorem = app.add_subcommand("theorem", "Compare Betti numbers across levels");
  space(theorem);
  family(theorem);
  theorem->add_option("--i-max", c.i_max, "Highest level (quotient family)")->capture_default_str();
  theorem->add_option("--max-degree", c.max_degree, "Top degree N")->capture_default_str();
  budgets(theorem);
  format(theorem);

  CLI::App* equi = app.add_subcommand("equivariance", "Check an equivariance identity");
  equi->add_option("identity", action, "eta | delta | inflation")
      ->required()
      ->check(CLI::IsMember({"eta", "delta", "inflation"}));
  space(equi);
  random(equi);
  equi->add_option("--degree", c.degree, "Cochain degree")->capture_default_str();
  equi->add_option("--i", c.i, "Level (inflation)")->capture_default_str();
  equi->add_option("--i-max", c.i_max, "Levels checked (delta)")->capture_default_str();
  equi->add_flag("--exhaustive", c.exhaustive, "Enumerate all cases (eta)");

  CLI::App* cache = app.add_subcommand("cache", "Inspect the resolution cache");
  cache->add_option("action", action, "list | clear")->required()->check(CLI::IsMember({"list", "clear"}));
  cache->add_option("--cache-dir", c.cache_dir, "Cache directory (default $COCLASS_CACHE_DIR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c.p < 2 || !is_prime(c.p)) throw UsageError("--p must be a prime");
    if (c.x < 1) throw UsageError("--x must be at least 1");
    if (c.trials == 0 && app.got_subcommand(equi)) throw UsageError("--trials must be positive");
    if (c.budget_matrix == 0 || (c.budget_order && *c.budget_order == 0)) throw UsageError("budgets must be positive");

    if (app.got_subcommand(group)) return detail::cmd_group(action, c, out);
    if (app.got_subcommand(filt)) return detail::cmd_filtration(c, out);
    if (app.got_subcommand(betti)) return detail::cmd_betti(c, out);
    if (app.got_subcommand(theorem)) return detail::cmd_theorem(c, out);
    if (app.got_subcommand(equi)) return detail::cmd_equivariance(action, c, out);
    if (app.got_subcommand(cache)) return detail::cmd_cache(action, c, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace coclass
