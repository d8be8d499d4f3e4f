#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "coclass/cache.hpp"
#include "coclass/cochain.hpp"
#include "coclass/finite_group.hpp"
#include "coclass/lattice.hpp"
#include "coclass/space_group.hpp"

namespace coclass {

// ---------------------------------------------------------------------------
// Betti vectors of R_0, ..., R_imax.

struct TheoremLevel {
  std::size_t level = 0;
  Integer order;
  std::vector<std::size_t> betti;
};

struct TheoremReport {
  nlohmann::json family;
  std::size_t max_degree = 0;
  std::vector<TheoremLevel> levels;

  bool all_equal() const {
    for (const TheoremLevel& l : levels)
      if (l.betti != levels.front().betti) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const TheoremLevel& l : levels)
      rows.push_back({{"i", l.level}, {"order", detail::integer_json(l.order)}, {"betti", l.betti}});
    nlohmann::json j = family;
    j["maxDegree"] = max_degree;
    j["levels"] = std::move(rows);
    j["allEqual"] = all_equal();
    j["commonBetti"] = all_equal() && !levels.empty() ? nlohmann::json(levels.front().betti) : nlohmann::json(nullptr);
    j["verdict"] = all_equal() ? "verified through degree " + std::to_string(max_degree) : "mismatch";
    return j;
  }
};

namespace detail {

inline TheoremReport betti_ladder(nlohmann::json family, std::size_t levels, std::size_t max_degree,
                                  const ResolutionOptions& options,
                                  const std::function<FiniteGroup(std::size_t)>& build) {
  TheoremReport report{std::move(family), max_degree, {}};
  for (std::size_t i = 0; i < levels; ++i) {
    try {
      const FiniteGroup g = build(i);
      report.levels.push_back({i, g.order(), betti_numbers(g, max_degree, options)});
    } catch (const BudgetExceeded& e) {
      throw BudgetExceeded("level i=" + std::to_string(i) + ": " + e.what());
    }
  }
  return report;
}

}  // namespace detail

/// Betti vectors of R_i for i = 0..i_max through degree N.
inline TheoremReport verify_theorem(const SpaceGroupParams& params, std::size_t i_max, std::size_t max_degree,
                                    const ResolutionOptions& options = {}) {
  return detail::betti_ladder({{"family", "quotient"}, {"p", params.p}, {"x", params.x}, {"iMax", i_max}},
                              i_max + 1, max_degree, options, [&](std::size_t i) {
                                return quotient_group(params, i, options.budget.max_order);
                              });
}

/// Betti vectors of B(3,r) for r = 3..r_max; level i is r - 3.
inline TheoremReport verify_b3r_family(unsigned r_max, std::size_t max_degree, const ResolutionOptions& options = {}) {
  if (r_max < 3) throw std::invalid_argument("B(3,r) requires r >= 3");
  return detail::betti_ladder({{"family", "b3r"}, {"p", 3}, {"x", 1}, {"rMax", r_max}}, r_max - 2, max_degree,
                              options, [&](std::size_t i) {
                                return b3r(static_cast<unsigned>(i + 3), options.budget.max_order);
                              });
}

// ---------------------------------------------------------------------------
// Filtration identities.

struct NamedCheck {
  std::string name;
  std::optional<std::size_t> level;
  bool passed = false;
};

struct FiltrationReport {
  SpaceGroupParams params;
  std::size_t i_max = 0;
  std::vector<NamedCheck> checks;

  bool passed() const {
    for (const NamedCheck& c : checks)
      if (!c.passed) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json list = nlohmann::json::array(), failed = nlohmann::json::array();
    for (const NamedCheck& c : checks) {
      nlohmann::json j = {{"name", c.name}, {"passed", c.passed}};
      if (c.level) j["i"] = *c.level;
      list.push_back(j);
      if (!c.passed) failed.push_back(c.level ? c.name + " @ i=" + std::to_string(*c.level) : c.name);
    }
    return {{"command", "filtration-verify"}, {"p", params.p}, {"x", params.x}, {"dimension", params.dimension()},
            {"iMax", i_max}, {"checks", list}, {"failed", failed}, {"passed", passed()}};
  }
};

/// Runs the filtration and theta-action identities for levels up to i_max.
/// Level 0 alone checks N_0 = pT; the step identities relate L_i and L_(i+1)
/// for i < i_max. `tamper_level` replaces that lattice by a wrong one.
inline FiltrationReport verify_filtration(const SpaceGroupParams& params, std::size_t i_max,
                                          std::optional<std::size_t> tamper_level = std::nullopt) {
  FiltrationReport report{params, i_max, {}};
  const ThetaAction action = companion_cyclotomic(params);
  const std::size_t d = params.dimension();
  const IntMatrix id = IntMatrix::identity(d);
  const IntMatrix step = action.minus_identity();
  const IntMatrix dl = delta(action);
  const Integer p = params.p;

  std::deque<Lattice> lattices;  // stable references
  auto lattice_at = [&](std::size_t i) -> const Lattice& {
    while (lattices.size() <= i) {
      const std::size_t k = lattices.size();
      Lattice l = filtration(action, k).lattice;
      if (tamper_level && *tamper_level == k) {
        IntMatrix b = l.basis();
        b.set_column(0, [&] {
          std::vector<Integer> col = b.column(0);
          for (auto& v : col) v *= p;
          return col;
        }());
        l = Lattice::from_columns(b);
      }
      lattices.push_back(std::move(l));
    }
    return lattices[i];
  };
  auto add = [&](std::string name, std::optional<std::size_t> level, bool ok) {
    report.checks.push_back({std::move(name), level, ok});
  };

  add("N0 = pT", 0, lattice_at(0) == Lattice::standard(d).scaled(p));

  for (std::size_t i = 0; i < i_max; ++i) {
    const Lattice& li = lattice_at(i);
    const Lattice& next = lattice_at(i + 1);
    const bool contained = li.contains(next);
    add("index p", i, contained && lattice_index(li, next) == p);
    add("strict containment", i, contained && !(li == next));
    add("(C-I) L_i = L_(i+1)", i, li.image(step) == next);
    add("delta(L_i) = L_(i+1)", i, li.image(dl) == next);
    add("p L_i = L_(i+d)", i, li.scaled(p) == lattice_at(i + d));
  }

  if (i_max >= 1) {
    add("C^(p^x) = I", std::nullopt, action.c.power(params.point_order()) == id);
    add("Phi(C) = 0", std::nullopt, evaluate_polynomial(cyclotomic_coefficients(params), action.c).is_zero());
    const Integer det = determinant(dl);
    add("det(I-C) = +-p", std::nullopt, det == p || det == -p);
    add("p (I-C)^-1 integral", std::nullopt, Lattice::from_columns(dl).contains(Lattice::standard(d).scaled(p)));
    add("delta C = C delta", std::nullopt, dl * action.c == action.c * dl);
  }
  return report;
}

// ---------------------------------------------------------------------------
// The commutator map delta on the quotients T_i.

/// For random v in Z^d and each level i < i_max (at least level 0):
/// the commutator [a, theta] in R_i equals (delta v mod N_i, 0); the diagram
/// T_i -> T_(i+1) commutes with the induced map; and
/// [theta a theta^-1, theta] = theta [a, theta] theta^-1.
inline EquivarianceReport check_delta(const SpaceGroupParams& params, std::size_t i_max, std::size_t trials,
                                      std::uint64_t seed) {
  EquivarianceReport report{"delta-equivariance", params.p, params.x, 1, 0};
  report.seed = seed;
  report.extra["iMax"] = i_max;
  std::mt19937_64 rng(seed);
  const ThetaAction action = companion_cyclotomic(params);
  const IntMatrix dl = delta(action);
  const std::size_t d = params.dimension();
  const Integer det = determinant(dl);
  report.extra["deltaDeterminant"] = detail::integer_json(det);
  report.extra["commutesWithC"] = dl * action.c == action.c * dl;
  std::size_t structural_failures = 0;
  if (!(det == Integer(params.p) || det == -Integer(params.p))) ++structural_failures;
  if (!(dl * action.c == action.c * dl)) ++structural_failures;

  const std::size_t levels = std::max<std::size_t>(i_max, 1);
  for (std::size_t i = 0; i < levels; ++i) {
    const FiniteGroup group = quotient_group(params, i, std::numeric_limits<std::size_t>::max());
    const TranslationQuotient& here = *group.translations();
    const TranslationQuotient there(filtration(action, i + 1).lattice);
    const Lattice& li = here.lattice();
    if (!(li.image(dl) == there.lattice())) ++structural_failures;
    const auto induced = here.induced(dl, there);

    Element theta = group.identity();
    theta.back() = 1;
    for (std::size_t trial = 0; trial < trials; ++trial) {
      std::vector<Integer> v(d);
      for (auto& c : v) c = static_cast<long long>(rng() % 101) - 50;
      const std::vector<long long> u = here.coordinates(v);
      Element a = u;
      a.push_back(0);

      Element expected = here.coordinates(dl.apply(v));
      expected.push_back(0);
      const Element comm = group.commutator(a, theta);

      std::vector<long long> mapped(there.rank(), 0);
      for (std::size_t r = 0; r < there.rank(); ++r) {
        __int128 acc = 0;
        for (std::size_t c = 0; c < u.size(); ++c) acc += static_cast<__int128>(induced[r][c]) * u[c];
        mapped[r] = static_cast<long long>(((acc % there.moduli()[r]) + there.moduli()[r]) % there.moduli()[r]);
      }
      const bool diagram = mapped == there.coordinates(dl.apply(v));

      const Element theta_inv = group.inverse(theta);
      const Element conj = group.multiply(group.multiply(theta, a), theta_inv);
      const bool equivariant =
          group.commutator(conj, theta) == group.multiply(group.multiply(theta, comm), theta_inv);

      ++report.trials;
      if (!(comm == expected && diagram && equivariant) && report.failures++ == 0)
        report.first_counterexample = {{"i", i},          {"v", detail::integer_json_vector(v)},
                                       {"commutator", comm == expected}, {"diagram", diagram},
                                       {"equivariant", equivariant}};
    }
  }
  report.failures += structural_failures;
  report.extra["structuralFailures"] = structural_failures;
  return report;
}

}  // namespace coclass
