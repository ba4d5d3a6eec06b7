#pragma once

// Property suites: random Reidemeister trials, the traffic oracle, and the
// symbolic move identities.

#include "rho1/grules.hpp"
#include "rho1/moves.hpp"
#include "rho1/samples.hpp"
#include "rho1/table.hpp"
#include "rho1/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace rho1 {

struct Counterexample {
  UprightDiagram diagram;
  MoveSpec move;
  std::string reason;
};

struct MoveTrialReport {
  int trials = 0;
  int passed = 0;
  std::map<MoveKind, int> used;
  std::optional<Counterexample> failure;  // minimized
};

/// Why applying `m` to `d` changes the invariants (or fails), if it does.
/// With `round_trip`, an insertion is also undone and checked.
inline std::optional<std::string> move_failure(const UprightDiagram& d, const MoveSpec& m,
                                               bool round_trip = true) {
  try {
    InvariantPair before = invariant_pair(d);
    Label relabel = 1;
    UprightDiagram e = apply_move(d, m, &relabel);
    InvariantPair after = invariant_pair(e);
    if (after.delta != before.delta) return "Delta changed: " + before.delta.str() + " -> " + after.delta.str();
    if (after.rho1 != before.rho1) return "rho1 changed: " + before.rho1.str() + " -> " + after.rho1.str();
    if (round_trip)
      if (auto inv = inverse_move(m, relabel)) {
        UprightDiagram f = apply_move(e, *inv);
        InvariantPair back = invariant_pair(f);
        if (back.delta != before.delta || back.rho1 != before.rho1)
          return "inverse " + to_string(*inv) + " changed the invariants";
      }
  } catch (const std::exception& e) {
    return std::string("exception: ") + e.what();
  }
  return std::nullopt;
}

/// Shrinks a failing case by removing crossings while some move of the same
/// kind still fails.
inline Counterexample minimize(Counterexample cx) {
  for (bool improved = true; improved;) {
    improved = false;
    for (MoveKind shrink : {MoveKind::R1l, MoveKind::R1r, MoveKind::R2b, MoveKind::R2c}) {
      for (const auto& s : enumerate_move_sites(cx.diagram, shrink)) {
        if (s.direction != Direction::forward) continue;
        UprightDiagram smaller = apply_move(cx.diagram, s);
        for (const auto& m : enumerate_move_sites(smaller, cx.move.kind))
          if (auto why = move_failure(smaller, m)) {
            cx = {smaller, m, *why};
            improved = true;
            break;
          }
        if (improved) break;
      }
      if (improved) break;
    }
  }
  return cx;
}

struct NamedDiagram {
  std::string name;
  UprightDiagram diagram;
};

/// Diagrams for the move trials: `from_table` seeded picks from the table and
/// `braids` closures of random positive 3-strand braids (8 to 12 crossings),
/// which carry third-move sites that table diagrams rarely have.
inline std::vector<NamedDiagram> trial_pool(const std::vector<TableRow>& rows, std::uint64_t seed,
                                            std::size_t from_table = 60, std::size_t braids = 20) {
  std::mt19937_64 rng(seed);
  std::vector<NamedDiagram> out;
  for (std::size_t k = 0; k < from_table && !rows.empty(); ++k) {
    const auto& r = rows[rng() % rows.size()];
    out.push_back({r.name, pd_to_upright(parse_dt(r.dt))});
  }
  while (braids > 0) {
    std::vector<int> word(8 + rng() % 5);
    for (int& g : word) g = 1 + static_cast<int>(rng() % 2);
    PDCode pd = braid_closure_pd(3, word);
    try {
      walk_pd(pd);
    } catch (const ParseError&) {
      continue;  // a link
    }
    std::string name = "braid";
    for (int g : word) name += std::to_string(g);
    out.push_back({name, pd_to_upright(pd)});
    --braids;
  }
  return out;
}

/// `trials` random moves, each on a diagram drawn from the pool, in a random
/// direction at a random applicable site. Stops at the first failure.
inline MoveTrialReport run_move_trials(const std::vector<NamedDiagram>& pool, int trials, std::uint64_t seed) {
  MoveTrialReport rep;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials && !pool.empty(); ++t) {
    const UprightDiagram& d = pool[rng() % pool.size()].diagram;
    std::vector<MoveKind> kinds = all_move_kinds();
    std::shuffle(kinds.begin(), kinds.end(), rng);
    std::optional<MoveSpec> chosen;
    for (MoveKind k : kinds) {
      auto sites = enumerate_move_sites(d, k);
      if (sites.empty()) continue;
      chosen = sites[rng() % sites.size()];
      break;
    }
    ++rep.trials;
    if (!chosen) {
      ++rep.passed;  // nothing applies; the diagram is trivially unchanged
      continue;
    }
    ++rep.used[chosen->kind];
    if (auto why = move_failure(d, *chosen)) {
      rep.failure = minimize({d, *chosen, *why});
      return rep;
    }
    ++rep.passed;
  }
  return rep;
}

/// The hand-made samples, their mirrors, and every table knot with at most
/// `max_crossings` crossings together with its mirror.
inline std::vector<NamedDiagram> small_corpus(const std::vector<TableRow>& rows, std::size_t max_crossings = 5) {
  std::vector<NamedDiagram> out{{"empty", empty_diagram()},
                                {"kink", kink_diagram()},
                                {"trefoil", trefoil_diagram()},
                                {"trefoil mirror", mirror(trefoil_diagram())}};
  for (const auto& r : rows) {
    auto seq = parse_dt_sequence(r.dt);
    if (seq.size() > max_crossings) continue;
    UprightDiagram d = pd_to_upright(parse_dt(r.dt));
    out.push_back({r.name, d});
    out.push_back({r.name + " mirror", mirror(d)});
  }
  return out;
}

namespace detail {

inline std::string sci(double x) {
  std::ostringstream out;
  out << std::setprecision(3) << x;
  return out.str();
}

}  // namespace detail

struct OracleReport {
  std::size_t comparisons = 0;
  double max_error = 0.0;
  std::vector<std::string> failures;  // one line per bad (diagram, T0, source)
};

/// Compares depth-truncated path sums against the exact Green function for
/// every index pair. A source whose traffic does not die down counts as a failure.
inline OracleReport run_oracle_suite(const std::vector<NamedDiagram>& corpus,
                                     const std::vector<double>& t0s = {0.8, 0.9, 1.1}, int depth = 2000,
                                     double tolerance = 1e-6) {
  OracleReport rep;
  for (const auto& [name, d] : corpus) {
    auto g = green(d);
    for (double t : t0s) {
      double det = g.denominator.eval(t);
      for (Label a : d.edges()) {
        TrafficState st = propagate(d, a, t, depth);
        if (!(st.residual < 1.0)) {
          rep.failures.push_back(name + " T0=" + std::to_string(t) + " source " + std::to_string(a) +
                                 ": path sums diverge (residual flux " + detail::sci(st.residual) + ")");
          continue;
        }
        for (Label b : d.edges()) {
          double exact = g.numerators(d.index_of(a), d.index_of(b)).eval(t) / det;
          double err = std::abs(st.counters.at(b) - exact);
          ++rep.comparisons;
          rep.max_error = std::max(rep.max_error, err);
          if (!(err < tolerance))
            rep.failures.push_back(name + " T0=" + std::to_string(t) + " g(" + std::to_string(a) + "," +
                                   std::to_string(b) + "): error " + std::to_string(err));
        }
      }
    }
  }
  return rep;
}

inline std::vector<grules::IdentityReport> run_grules_suite() {
  std::vector<grules::IdentityReport> out;
  for (MoveKind k : grules::proof_moves()) out.push_back(grules::check_move_identity(k));
  return out;
}

}  // namespace rho1
