#pragma once

// Upright Reidemeister moves.
//
// Patterns (forward = left side to right side):
//   R1l     (+1, i+, i) with phi(i+) = 1              <->  a plain edge
//   R1r     (+1, i, i+) with phi(i+) = -1             <->  a plain edge
//   R2b     (s, i, j), (-s, i+, j+), phi(i+) = phi(j+) = 0  <->  two plain edges
//   R2c     (-1, i, j+), (+1, i+, j), phi(i+) = 0, phi(j+) = 1  <->  two plain edges
//   R3      (+1, j, k), (+1, i, k+), (+1, i+, j+)      <->  (+1, i, j), (+1, i+, k), (+1, j+, k+)
//           with phi = 0 on i+, j+, k+ on both sides
//   SwPlus  full turn of a positive crossing: phi(i), phi(j) += 1; phi(i+), phi(j+) -= 1
//   SwMinus the same at a negative crossing
//
// Removing crossings merges the edges of each strand, summing rotation numbers
// (less the kink's own turn for R1). Inserting crossings splits edges; the
// rotation numbers of the outer pieces are recovered from the face equations.

#include "rho1/planar.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rho1 {

enum class MoveKind { R1l, R1r, R2b, R2c, R3, SwPlus, SwMinus };
enum class Direction { forward, backward };

inline const std::vector<MoveKind>& all_move_kinds() {
  static const std::vector<MoveKind> kinds{MoveKind::R1l, MoveKind::R1r, MoveKind::R2b,
                                           MoveKind::R2c, MoveKind::R3,  MoveKind::SwPlus,
                                           MoveKind::SwMinus};
  return kinds;
}

inline std::string to_string(MoveKind k) {
  switch (k) {
    case MoveKind::R1l: return "R1l";
    case MoveKind::R1r: return "R1r";
    case MoveKind::R2b: return "R2b";
    case MoveKind::R2c: return "R2c";
    case MoveKind::R3: return "R3";
    case MoveKind::SwPlus: return "SwPlus";
    case MoveKind::SwMinus: return "SwMinus";
  }
  return "?";
}

inline std::string to_string(Direction d) { return d == Direction::forward ? "forward" : "backward"; }

/// Site labels per kind and direction:
///   R1l, R1r    forward: {i}; backward: {edge to put the kink on}
///   R2b, R2c    forward: {i, j}; backward: {edge of the i strand, edge of the j strand}
///   R3          {i, j, k}
///   SwPlus/Minus {i, j} of the crossing
/// R2b also carries the sign s of its first crossing in `variant`.
struct MoveSpec {
  MoveKind kind = MoveKind::R1l;
  std::vector<Label> site;
  Direction direction = Direction::forward;
  int variant = 0;

  friend bool operator==(const MoveSpec&, const MoveSpec&) = default;
};

inline std::string to_string(const MoveSpec& m) {
  std::string s = to_string(m.kind) + " " + to_string(m.direction) + " [";
  for (std::size_t k = 0; k < m.site.size(); ++k) s += (k ? "," : "") + std::to_string(m.site[k]);
  s += "]";
  if (m.kind == MoveKind::R2b) s += m.variant > 0 ? " s=+1" : " s=-1";
  return s;
}

struct InapplicableMove : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::optional<std::size_t> find_crossing(const UprightDiagram& d, int s, Label i, Label j) {
  const auto& cs = d.crossings();
  for (std::size_t k = 0; k < cs.size(); ++k)
    if (cs[k].s == s && cs[k].i == i && cs[k].j == j) return k;
  return std::nullopt;
}

inline std::optional<Label> next_of(const UprightDiagram& d, Label e) {
  if (!d.has_edge(e) || e == d.last()) return std::nullopt;
  return d.successor(e);
}

/// Multiplies every label by 2 until each listed edge has room for `pieces`
/// new labels after it. Returns the diagram and the overall factor.
inline std::pair<UprightDiagram, Label> respace(const UprightDiagram& d,
                                                const std::vector<Label>& split, Label pieces) {
  auto roomy = [&](Label factor) {
    for (Label e : split) {
      std::size_t k = d.index_of(e);
      if (k + 1 < d.edge_count() && (d.edges()[k + 1] - e) * factor <= pieces) return false;
    }
    return true;
  };
  Label factor = 1;
  while (!roomy(factor)) factor *= 2;
  if (factor == 1) return {d, 1};
  std::vector<Label> edges;
  for (Label e : d.edges()) edges.push_back(e * factor);
  std::vector<Crossing> cs;
  for (auto c : d.crossings()) cs.push_back({c.s, c.i * factor, c.j * factor});
  std::map<Label, int> rot;
  for (auto [k, v] : d.rotations()) rot[k * factor] = v;
  return {UprightDiagram(std::move(edges), std::move(cs), std::move(rot)), factor};
}

/// Splits edge e into e, e+1, ..., e+pieces (labels must be free). Crossings that
/// took e as an incoming strand now take the last piece.
inline std::vector<Label> split_edge(UprightDiagram& d, Label e, Label pieces) {
  std::vector<Label> labels{e};
  for (Label k = 1; k <= pieces; ++k) labels.push_back(e + k);
  for (auto& c : d.mutable_crossings()) {
    if (c.i == e) c.i = labels.back();
    if (c.j == e) c.j = labels.back();
  }
  auto& edges = d.mutable_edges();
  auto pos = std::upper_bound(edges.begin(), edges.end(), e);
  edges.insert(pos, labels.begin() + 1, labels.end());
  return labels;
}

/// Removes the given crossings and merges each resulting run of edges into its
/// first edge. `turn_correction` is added to the rotation number of the run
/// containing the given label.
inline UprightDiagram remove_crossings(const UprightDiagram& d, std::set<std::size_t> removed,
                                       std::map<Label, int> turn_correction = {}) {
  std::vector<Crossing> kept_cs;
  std::set<Label> starts{d.first()};
  for (std::size_t k = 0; k < d.crossing_count(); ++k) {
    if (removed.count(k)) continue;
    const auto& c = d.crossings()[k];
    kept_cs.push_back(c);
    starts.insert(d.successor(c.i));
    starts.insert(d.successor(c.j));
  }
  std::map<Label, Label> run_of;
  std::map<Label, int> rot;
  std::vector<Label> edges;
  Label current = d.first();
  for (Label e : d.edges()) {
    if (starts.count(e)) {
      current = e;
      edges.push_back(e);
    }
    run_of[e] = current;
    rot[current] += d.rotation(e);
  }
  for (auto [lab, delta] : turn_correction) rot[run_of.at(lab)] += delta;
  for (auto& c : kept_cs) {
    c.i = run_of.at(c.i);
    c.j = run_of.at(c.j);
  }
  return UprightDiagram(std::move(edges), std::move(kept_cs), std::move(rot));
}

inline bool all_distinct(std::vector<Label> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

/// Inserts crossings on split edges and solves for the outer pieces' rotations.
/// `build` receives the piece labels of each split edge and returns the new
/// crossings plus the pinned rotations of inner pieces.
template <class Build>
std::optional<UprightDiagram> insert_crossings(const UprightDiagram& d0,
                                               const std::vector<Label>& split, Build build,
                                               Label* factor_out) {
  if (!all_distinct(split)) return std::nullopt;
  for (Label e : split)
    if (!d0.has_edge(e)) return std::nullopt;
  auto [d, factor] = respace(d0, split, 2);
  if (factor_out) *factor_out = factor;
  std::vector<std::vector<Label>> pieces;
  for (Label e : split) pieces.push_back(split_edge(d, e * factor, 2));
  auto [added, pinned] = build(pieces);
  for (const auto& c : added) d.mutable_crossings().push_back(c);
  std::set<Label> unknown;
  for (const auto& p : pieces) {
    int phi = d.rotation(p[0]);
    d.set_rotation(p[0], 0);
    d.set_rotation(p[2], phi);
    unknown.insert(p[0]);
    unknown.insert(p[2]);
  }
  for (auto [lab, phi] : pinned) d.set_rotation(lab, phi);
  try {
    validate_structure(d);
  } catch (const InvalidDiagram&) {
    return std::nullopt;
  }
  if (is_valid(d)) return d;
  auto solved = solve_rotations(d, unknown);
  if (!solved || !is_valid(*solved)) return std::nullopt;
  return solved;
}

struct R3Site {
  std::size_t c1, c2, c3;
};

/// Left side {(+1,j,k), (+1,i,k+), (+1,i+,j+)} or right side
/// {(+1,i,j), (+1,i+,k), (+1,j+,k+)} at labels i, j, k.
inline std::optional<R3Site> match_r3(const UprightDiagram& d, Label i, Label j, Label k,
                                      bool left_side) {
  auto ip = next_of(d, i), jp = next_of(d, j), kp = next_of(d, k);
  if (!ip || !jp || !kp) return std::nullopt;
  auto ipp = next_of(d, *ip), jpp = next_of(d, *jp), kpp = next_of(d, *kp);
  if (!ipp || !jpp || !kpp) return std::nullopt;
  if (!all_distinct({i, j, k, *ip, *jp, *kp, *ipp, *jpp, *kpp})) return std::nullopt;
  if (d.rotation(*ip) || d.rotation(*jp) || d.rotation(*kp)) return std::nullopt;
  std::optional<std::size_t> a, b, c;
  if (left_side) {
    a = find_crossing(d, 1, j, k);
    b = find_crossing(d, 1, i, *kp);
    c = find_crossing(d, 1, *ip, *jp);
  } else {
    a = find_crossing(d, 1, i, j);
    b = find_crossing(d, 1, *ip, k);
    c = find_crossing(d, 1, *jp, *kp);
  }
  if (!a || !b || !c) return std::nullopt;
  return R3Site{*a, *b, *c};
}

}  // namespace detail

/// Applies a move, returning a fresh diagram. Throws InapplicableMove when the
/// site does not match the pattern or the result is not a valid diagram.
/// Insertions may re-space all labels; the factor used is stored in `relabel`.
inline UprightDiagram apply_move(const UprightDiagram& d, const MoveSpec& m,
                                 Label* relabel = nullptr) {
  if (relabel) *relabel = 1;
  using detail::find_crossing;
  using detail::next_of;
  const bool fwd = m.direction == Direction::forward;
  auto fail = [&](const std::string& why) -> InapplicableMove {
    return InapplicableMove(to_string(m) + ": " + why);
  };
  auto need_sites = [&](std::size_t n) {
    if (m.site.size() != n) throw fail("expected " + std::to_string(n) + " site labels");
  };
  auto checked = [&](UprightDiagram out) {
    try {
      validate(out);
    } catch (const InvalidDiagram& e) {
      throw fail(std::string("result is invalid: ") + e.what());
    }
    return out;
  };

  switch (m.kind) {
    case MoveKind::R1l:
    case MoveKind::R1r: {
      need_sites(1);
      const bool left = m.kind == MoveKind::R1l;
      Label i = m.site[0];
      if (fwd) {
        auto ip = next_of(d, i);
        if (!ip || d.rotation(*ip) != (left ? 1 : -1)) throw fail("no kink here");
        auto c = left ? find_crossing(d, 1, *ip, i) : find_crossing(d, 1, i, *ip);
        if (!c) throw fail("no kink here");
        return checked(detail::remove_crossings(d, {*c}, {{i, left ? -1 : 1}}));
      }
      auto out = detail::insert_crossings(d, {i}, [&](const std::vector<std::vector<Label>>& p) {
        Label a = p[0][0], b = p[0][1];
        std::vector<Crossing> cs{left ? Crossing{1, b, a} : Crossing{1, a, b}};
        return std::pair{cs, std::map<Label, int>{{b, left ? 1 : -1}}};
      }, relabel);
      if (!out) throw fail("cannot insert a kink");
      return *out;
    }
    case MoveKind::R2b:
    case MoveKind::R2c: {
      need_sites(2);
      const bool braid = m.kind == MoveKind::R2b;
      const int s = m.variant >= 0 ? 1 : -1;
      Label i = m.site[0], j = m.site[1];
      if (fwd) {
        auto ip = next_of(d, i), jp = next_of(d, j);
        if (!ip || !jp || i == j) throw fail("no bigon here");
        std::optional<std::size_t> c1, c2;
        if (braid) {
          if (d.rotation(*ip) != 0 || d.rotation(*jp) != 0) throw fail("rotation mismatch");
          c1 = find_crossing(d, s, i, j);
          c2 = find_crossing(d, -s, *ip, *jp);
        } else {
          if (d.rotation(*ip) != 0 || d.rotation(*jp) != 1) throw fail("rotation mismatch");
          c1 = find_crossing(d, -1, i, *jp);
          c2 = find_crossing(d, 1, *ip, j);
        }
        if (!c1 || !c2) throw fail("no bigon here");
        return checked(detail::remove_crossings(d, {*c1, *c2}));
      }
      auto out = detail::insert_crossings(d, {i, j}, [&](const std::vector<std::vector<Label>>& p) {
        Label i0 = p[0][0], i1 = p[0][1], j0 = p[1][0], j1 = p[1][1];
        std::vector<Crossing> cs;
        std::map<Label, int> pinned;
        if (braid) {
          cs = {{s, i0, j0}, {-s, i1, j1}};
        } else {
          cs = {{-1, i0, j1}, {1, i1, j0}};
          pinned[j1] = 1;
        }
        return std::pair{cs, pinned};
      }, relabel);
      if (!out) throw fail("cannot insert a bigon");
      return *out;
    }
    case MoveKind::R3: {
      need_sites(3);
      Label i = m.site[0], j = m.site[1], k = m.site[2];
      auto site = detail::match_r3(d, i, j, k, fwd);
      if (!site) throw fail("no triangle here");
      Label ip = d.successor(i), jp = d.successor(j), kp = d.successor(k);
      UprightDiagram out = d;
      auto& cs = out.mutable_crossings();
      if (fwd) {
        cs[site->c1] = {1, i, j};
        cs[site->c2] = {1, ip, k};
        cs[site->c3] = {1, jp, kp};
      } else {
        cs[site->c1] = {1, j, k};
        cs[site->c2] = {1, i, kp};
        cs[site->c3] = {1, ip, jp};
      }
      return checked(out);
    }
    case MoveKind::SwPlus:
    case MoveKind::SwMinus: {
      need_sites(2);
      int s = m.kind == MoveKind::SwPlus ? 1 : -1;
      auto c = find_crossing(d, s, m.site[0], m.site[1]);
      if (!c) throw fail("no crossing of this sign here");
      int delta = fwd ? 1 : -1;
      UprightDiagram out = d;
      const auto& x = d.crossings()[*c];
      for (Label e : {x.i, x.j}) out.set_rotation(e, out.rotation(e) + delta);
      for (Label e : {d.successor(x.i), d.successor(x.j)}) out.set_rotation(e, out.rotation(e) - delta);
      return checked(out);
    }
  }
  throw fail("unknown move kind");
}

/// All applicable sites of a kind, in both directions.
inline std::vector<MoveSpec> enumerate_move_sites(const UprightDiagram& d, MoveKind kind) {
  std::vector<MoveSpec> out;
  auto try_add = [&](MoveSpec m) {
    try {
      (void)apply_move(d, m);
      out.push_back(std::move(m));
    } catch (const InapplicableMove&) {
    }
  };
  const auto& cs = d.crossings();
  switch (kind) {
    case MoveKind::R1l:
    case MoveKind::R1r:
      for (const auto& c : cs) {
        if (c.s != 1) continue;
        if (kind == MoveKind::R1l && detail::next_of(d, c.j) == c.i) try_add({kind, {c.j}, Direction::forward});
        if (kind == MoveKind::R1r && detail::next_of(d, c.i) == c.j) try_add({kind, {c.i}, Direction::forward});
      }
      for (Label e : d.edges()) try_add({kind, {e}, Direction::backward});
      break;
    case MoveKind::R2b:
    case MoveKind::R2c: {
      for (const auto& c : cs) {
        if (kind == MoveKind::R2b) try_add({kind, {c.i, c.j}, Direction::forward, c.s});
        else if (c.s == -1 && c.j != d.first())
          for (Label j : d.edges())
            if (detail::next_of(d, j) == c.j) try_add({kind, {c.i, j}, Direction::forward});
      }
      PlanarMap pm(d);
      const std::size_t m = d.edge_count();
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
          if (a == b) continue;
          std::set<std::size_t> fa{pm.left_face(a), pm.right_face(a)};
          if (!fa.count(pm.left_face(b)) && !fa.count(pm.right_face(b))) continue;
          Label ea = d.edges()[a], eb = d.edges()[b];
          if (kind == MoveKind::R2b) {
            try_add({kind, {ea, eb}, Direction::backward, 1});
            try_add({kind, {ea, eb}, Direction::backward, -1});
          } else {
            try_add({kind, {ea, eb}, Direction::backward});
          }
        }
      break;
    }
    case MoveKind::R3:
      for (const auto& c1 : cs) {
        if (c1.s != 1) continue;
        // c1 as the left side's (+1, j, k) or the right side's (+1, i, j)
        for (const auto& c2 : cs) {
          if (c2.s != 1) continue;
          if (auto kp = detail::next_of(d, c1.j); kp && c2.j == *kp)
            try_add({kind, {c2.i, c1.i, c1.j}, Direction::forward});
          if (auto ip = detail::next_of(d, c1.i); ip && c2.i == *ip)
            try_add({kind, {c1.i, c1.j, c2.j}, Direction::backward});
        }
      }
      break;
    case MoveKind::SwPlus:
    case MoveKind::SwMinus: {
      int s = kind == MoveKind::SwPlus ? 1 : -1;
      for (const auto& c : cs)
        if (c.s == s) {
          try_add({kind, {c.i, c.j}, Direction::forward});
          try_add({kind, {c.i, c.j}, Direction::backward});
        }
      break;
    }
  }
  return out;
}

/// The move that undoes `m` on its result. Insertions are undone at the
/// re-spaced labels of their site; removals are not invertible from the site alone.
inline std::optional<MoveSpec> inverse_move(const MoveSpec& m, Label relabel) {
  MoveSpec inv = m;
  inv.direction = m.direction == Direction::forward ? Direction::backward : Direction::forward;
  switch (m.kind) {
    case MoveKind::R3:
    case MoveKind::SwPlus:
    case MoveKind::SwMinus:
      return inv;
    default:
      break;
  }
  if (m.direction == Direction::forward) return std::nullopt;
  for (auto& e : inv.site) e *= relabel;
  return inv;
}

}  // namespace rho1
