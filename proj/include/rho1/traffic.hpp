#pragma once

// Car-traffic reading of the Green function at a numeric T.
//
// A unit of traffic injected on edge alpha flows along the strand. At a crossing
// (s, i, j) traffic arriving on the under-strand j continues on j+, and traffic
// arriving on the over-strand i continues on i+ with weight T^s and drops to j+
// with weight 1 - T^s. Traffic on the last edge leaves. The counter on edge beta
// accumulates everything that passes it; its limit is g_{alpha beta}.

#include "rho1/diagram.hpp"

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rho1 {

struct TrafficState {
  std::map<Label, double> intensity;  // flux currently on each edge
  std::map<Label, double> counters;   // accumulated readings
  double exited = 0.0;                // flux that left through the last edge
  double residual = 0.0;              // sum of |intensity| still on the road
};

struct TrafficDomainError : std::domain_error {
  using std::domain_error::domain_error;
};

namespace detail {

struct Route {
  long straight = -1;  // index of the continuing edge, -1 = leaves
  long drop = -1;      // index of the lower strand for over-passes, else -1
  double w_straight = 1.0, w_drop = 0.0;
};

inline std::vector<Route> traffic_routes(const UprightDiagram& d, double t0,
                                         const std::set<std::size_t>* only = nullptr) {
  std::vector<Route> routes(d.edge_count());
  for (std::size_t k = 0; k < d.crossing_count(); ++k) {
    if (only && !only->count(k)) continue;
    const auto& c = d.crossings()[k];
    double ts = std::pow(t0, c.s);
    long ip = static_cast<long>(d.index_of(d.successor(c.i)));
    long jp = static_cast<long>(d.index_of(d.successor(c.j)));
    routes[d.index_of(c.j)] = {jp, -1, 1.0, 0.0};
    routes[d.index_of(c.i)] = {ip, jp, ts, 1.0 - ts};
  }
  return routes;
}

inline void check_convergence(const UprightDiagram& d, double t0) {
  if (!(t0 > 0.0) || !std::isfinite(t0)) throw TrafficDomainError("T0 must be positive and finite");
  std::set<int> signs;
  for (const auto& c : d.crossings()) signs.insert(c.s);
  for (int s : signs)
    if (std::abs(1.0 - std::pow(t0, s)) >= 1.0)
      throw TrafficDomainError("T0 = " + std::to_string(t0) +
                               " is outside the convergence region |1 - T0^" +
                               std::to_string(s) + "| < 1");
}

}  // namespace detail

/// Propagates a unit injection at `source` for `depth` steps. Counters include the
/// injection itself (step 0) and the flux arriving at each step 1..depth.
inline TrafficState propagate(const UprightDiagram& d, Label source, double t0, int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  if (!d.has_edge(source)) throw std::invalid_argument("unknown source edge " + std::to_string(source));
  detail::check_convergence(d, t0);
  auto routes = detail::traffic_routes(d, t0);
  const std::size_t m = d.edge_count();
  std::vector<double> flux(m, 0.0), next(m), count(m, 0.0);
  double exited = 0.0;
  flux[d.index_of(source)] = 1.0;
  count[d.index_of(source)] = 1.0;
  for (int step = 1; step <= depth; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t e = 0; e < m; ++e) {
      if (flux[e] == 0.0) continue;
      const auto& r = routes[e];
      if (r.straight < 0) {
        exited += flux[e];
        continue;
      }
      next[r.straight] += r.w_straight * flux[e];
      if (r.drop >= 0) next[r.drop] += r.w_drop * flux[e];
    }
    flux.swap(next);
    for (std::size_t e = 0; e < m; ++e) count[e] += flux[e];
  }
  TrafficState st;
  for (std::size_t e = 0; e < m; ++e) {
    Label lab = d.edges()[e];
    st.counters[lab] = count[e];
    if (flux[e] != 0.0) st.intensity[lab] = flux[e];
  }
  st.exited = exited;
  for (double f : flux) st.residual += std::abs(f);
  return st;
}

/// Counter reading at beta for a unit injection at alpha. The sign condition on
/// T0 does not guarantee convergence for every diagram; when the traffic has not
/// died down after `depth` steps the reading is refused.
inline double green_oracle(const UprightDiagram& d, Label alpha, Label beta, double t0,
                           int depth = 2000) {
  if (!d.has_edge(beta)) throw std::invalid_argument("unknown edge " + std::to_string(beta));
  TrafficState st = propagate(d, alpha, t0, depth);
  if (depth >= 64 && !(st.residual < 1.0))
    throw TrafficDomainError("path sums diverge at T0 = " + std::to_string(t0) + " (residual flux " +
                             std::to_string(st.residual) + " after " + std::to_string(depth) +
                             " steps)");
  return st.counters.at(beta);
}

/// Traffic through a subset of crossings only: flux reaching an edge that does not
/// enter one of them leaves the region and is recorded per edge. The region must
/// not contain a cycle.
inline std::map<Label, double> local_exit_distribution(const UprightDiagram& d,
                                                       const std::set<std::size_t>& region,
                                                       Label source, double t0) {
  auto routes = detail::traffic_routes(d, t0, &region);
  std::map<Label, double> out;
  std::vector<std::pair<std::size_t, double>> front{{d.index_of(source), 1.0}};
  for (std::size_t guard = 0; !front.empty(); ++guard) {
    if (guard > 4 * d.edge_count()) throw std::logic_error("traffic region contains a cycle");
    std::vector<std::pair<std::size_t, double>> next;
    for (auto [e, f] : front) {
      const auto& r = routes[e];
      if (r.straight < 0) {
        out[d.edges()[e]] += f;
        continue;
      }
      next.emplace_back(r.straight, r.w_straight * f);
      if (r.drop >= 0) next.emplace_back(r.drop, r.w_drop * f);
    }
    front.swap(next);
  }
  return out;
}

}  // namespace rho1
