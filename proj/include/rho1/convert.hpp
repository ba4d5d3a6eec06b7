#pragma once

// PD code -> upright long-knot diagram.

#include "rho1/codes.hpp"
#include "rho1/invariant.hpp"
#include "rho1/planar.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>

namespace rho1 {

struct ConversionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Crossings of the long knot obtained by cutting the given arc, with edges
/// labelled 1..2n+1 along the strand. Rotation numbers are left at zero.
inline UprightDiagram cut_open(const PDCode& pd, int cut_arc) {
  PDWalk walk = walk_pd(pd);
  const std::size_t m = walk.visits.size();
  auto entry_arc = [&](const PDWalk::Visit& v) { return pd.crossings[v.crossing][v.entry_slot]; };
  std::size_t start = m;
  for (std::size_t k = 0; k < m; ++k)
    if (entry_arc(walk.visits[k]) == cut_arc) start = k;
  if (start == m) throw ConversionError("cut arc " + std::to_string(cut_arc) + " not found");

  const std::size_t n = pd.crossings.size();
  std::vector<Label> over_in(n, 0), under_in(n, 0);
  std::vector<int> sign(n, 0);
  for (std::size_t k = 0; k < m; ++k) {
    const auto& v = walk.visits[(start + k) % m];
    Label edge = static_cast<Label>(k + 1);
    if (v.entry_slot == 0) {
      under_in[v.crossing] = edge;
    } else {
      over_in[v.crossing] = edge;
      sign[v.crossing] = v.entry_slot == 3 ? 1 : -1;
    }
  }
  std::vector<Crossing> cs;
  for (std::size_t c = 0; c < n; ++c) cs.push_back({sign[c], over_in[c], under_in[c]});
  return UprightDiagram::with_consecutive_labels(std::move(cs));
}

}  // namespace detail

/// Converts a PD code to an upright diagram cut open at the given arc (default:
/// the smallest arc label). The first and last edges get rotation number 0
/// whenever the embedding allows it. The output is validated and its Alexander
/// polynomial checked for normalization.
inline UprightDiagram pd_to_upright(const PDCode& pd, std::optional<int> cut = std::nullopt) {
  if (pd.crossings.empty()) return UprightDiagram();
  validate_pd(pd);
  int cut_arc = cut ? *cut : pd.crossings[0][0];
  if (!cut)
    for (const auto& x : pd.crossings) cut_arc = std::min(cut_arc, *std::min_element(x.begin(), x.end()));

  UprightDiagram d = detail::cut_open(pd, cut_arc);
  std::set<Label> inner(d.edges().begin() + 1, d.edges().end() - 1);
  std::optional<UprightDiagram> solved = solve_rotations(d, inner);
  if (!solved) {
    inner.insert(d.first());
    solved = solve_rotations(d, inner);
  }
  if (!solved) {
    inner.insert(d.last());
    solved = solve_rotations(d, inner);
  }
  if (!solved) throw ConversionError("no consistent rotation numbers for PD " + to_string(pd));
  try {
    validate(*solved);
  } catch (const InvalidDiagram& e) {
    throw ConversionError(std::string("converted diagram is invalid: ") + e.what());
  }
  LaurentPoly delta;
  try {
    delta = alexander(*solved);
  } catch (const InvariantError& e) {
    throw ConversionError(std::string("converted diagram fails the Alexander check: ") + e.what());
  }
  if (delta.eval(Rational(1)) != 1 || !delta.is_palindromic())
    throw ConversionError("converted diagram has unnormalized Alexander polynomial " + delta.str());
  return *solved;
}

}  // namespace rho1
