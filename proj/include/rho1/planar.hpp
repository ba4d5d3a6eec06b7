#pragma once

// The planar map underlying an upright diagram, its faces, and the turning
// equations that tie rotation numbers to the embedding.
//
// Each crossing is drawn upright with four ports in counterclockwise order
// 0 = NE, 1 = NW, 2 = SW, 3 = SE. Ports 2 and 3 are incoming, 0 and 1 outgoing.
// The first edge arrives from infinity heading up and the last edge leaves to
// infinity heading up. An edge's total turning is b - a + 360 * phi, where a and
// b are its headings (in degrees) at its two ends.

#include "rho1/diagram.hpp"

#include <array>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rho1 {

struct Port {
  static constexpr int infinity = -1;
  int crossing = infinity;
  int slot = 0;
};

struct Traversal {
  std::size_t edge;  // index into edges()
  bool forward;
  friend bool operator==(const Traversal&, const Traversal&) = default;
};

struct Face {
  std::vector<Traversal> boundary;
  int corners = 0;
  bool at_infinity = false;
  int target() const { return at_infinity ? 0 : 360; }
};

class PlanarMap {
 public:
  explicit PlanarMap(const UprightDiagram& d) : diagram_(&d) {
    const std::size_t m = d.edge_count();
    start_.assign(m, Port{});
    end_.assign(m, Port{});
    ports_.assign(d.crossing_count(), {});
    for (std::size_t c = 0; c < d.crossing_count(); ++c) {
      const auto& x = d.crossings()[c];
      const int ci = static_cast<int>(c);
      // positive: over SW -> NE, under SE -> NW; negative: over SE -> NW, under SW -> NE
      const int over_in = x.s > 0 ? 2 : 3, under_in = x.s > 0 ? 3 : 2;
      const int over_out = x.s > 0 ? 0 : 1, under_out = x.s > 0 ? 1 : 0;
      attach(ci, over_in, d.index_of(x.i), false);
      attach(ci, under_in, d.index_of(x.j), false);
      attach(ci, over_out, d.index_of(d.successor(x.i)), true);
      attach(ci, under_out, d.index_of(d.successor(x.j)), true);
    }
    for (std::size_t e = 0; e < m; ++e) {
      bool start_inf = start_[e].crossing == Port::infinity;
      bool end_inf = end_[e].crossing == Port::infinity;
      if (start_inf != (e == 0) || end_inf != (e + 1 == m))
        throw InvalidDiagram("broken strand at edge " + std::to_string(d.edges()[e]));
    }
    trace_faces();
  }

  const UprightDiagram& diagram() const { return *diagram_; }
  const std::vector<Face>& faces() const { return faces_; }
  Port start(std::size_t e) const { return start_[e]; }
  Port end(std::size_t e) const { return end_[e]; }
  std::size_t edge_at(int crossing, int slot) const { return ports_[crossing][slot]; }

  /// Face to the left (forward traversal) and right (backward) of an edge.
  std::size_t left_face(std::size_t e) const { return face_of_[2 * e]; }
  std::size_t right_face(std::size_t e) const { return face_of_[2 * e + 1]; }
  std::size_t face_of(Traversal t) const { return face_of_[2 * t.edge + (t.forward ? 0 : 1)]; }

  bool is_planar() const { return faces_.size() == diagram_->crossing_count() + 2; }

  static int heading(Port p) {
    if (p.crossing == Port::infinity) return 90;
    return (p.slot == 0 || p.slot == 2) ? 45 : 135;
  }

  /// b - a for edge e, excluding the 360 * phi part.
  int base_turning(std::size_t e) const { return heading(end_[e]) - heading(start_[e]); }
  int turning(std::size_t e) const {
    return base_turning(e) + 360 * diagram_->rotation(diagram_->edges()[e]);
  }

  /// Signed excess of a face's turning over its target (zero when consistent).
  int residual(const Face& f) const {
    int total = 90 * f.corners;
    for (auto t : f.boundary) total += t.forward ? turning(t.edge) : -turning(t.edge);
    return total - f.target();
  }

  /// The traversal that follows t along the face on its left.
  Traversal next(Traversal t) const {
    const std::size_t m = start_.size();
    Port p = t.forward ? end_[t.edge] : start_[t.edge];
    if (p.crossing == Port::infinity) return t.forward ? Traversal{0, true} : Traversal{m - 1, false};
    int slot = (p.slot + 3) % 4;
    return {ports_[p.crossing][slot], slot < 2};
  }

 private:
  void attach(int c, int slot, std::size_t e, bool outgoing) {
    Port p{c, slot};
    Port& target = outgoing ? start_[e] : end_[e];
    if (target.crossing != Port::infinity)
      throw InvalidDiagram("broken strand at edge " + std::to_string(diagram_->edges()[e]));
    target = p;
    ports_[c][slot] = e;
  }

  void trace_faces() {
    const std::size_t m = start_.size();
    face_of_.assign(2 * m, static_cast<std::size_t>(-1));
    for (std::size_t k = 0; k < 2 * m; ++k) {
      if (face_of_[k] != static_cast<std::size_t>(-1)) continue;
      Face f;
      Traversal t{k / 2, k % 2 == 0};
      const std::size_t id = faces_.size();
      while (face_of_[2 * t.edge + (t.forward ? 0 : 1)] == static_cast<std::size_t>(-1)) {
        face_of_[2 * t.edge + (t.forward ? 0 : 1)] = id;
        f.boundary.push_back(t);
        Port p = t.forward ? end_[t.edge] : start_[t.edge];
        if (p.crossing == Port::infinity) f.at_infinity = true;
        else ++f.corners;
        t = next(t);
      }
      faces_.push_back(std::move(f));
    }
  }

  const UprightDiagram* diagram_;
  std::vector<Port> start_, end_;
  std::vector<std::array<std::size_t, 4>> ports_;
  std::vector<Face> faces_;
  std::vector<std::size_t> face_of_;
};

/// Full validation: structure, planarity and the turning equation of every face.
inline void validate(const UprightDiagram& d) {
  validate_structure(d);
  PlanarMap pm(d);
  if (!pm.is_planar())
    throw InvalidDiagram("diagram is not planar: " + std::to_string(pm.faces().size()) +
                         " faces, expected " + std::to_string(d.crossing_count() + 2));
  for (const auto& f : pm.faces())
    if (int r = pm.residual(f); r != 0)
      throw InvalidDiagram("rotation numbers inconsistent: face through edge " +
                           std::to_string(d.edges()[f.boundary.front().edge]) +
                           " turns by " + std::to_string(r + f.target()) + " degrees, expected " +
                           std::to_string(f.target()));
}

inline bool is_valid(const UprightDiagram& d) {
  try {
    validate(d);
    return true;
  } catch (const InvalidDiagram&) {
    return false;
  }
}

/// Solves the face equations for the rotation numbers of the given edges, keeping
/// all other rotation numbers fixed. Free choices are set to zero. Returns nullopt
/// if no integer solution exists.
inline std::optional<UprightDiagram> solve_rotations(const UprightDiagram& d,
                                                     const std::set<Label>& unknown) {
  PlanarMap pm(d);
  if (!pm.is_planar()) return std::nullopt;
  const auto& faces = pm.faces();
  const std::size_t nf = faces.size();

  // Face equation: 360 * (sum of phi over left edges - over right edges) = rhs.
  std::vector<long long> rhs(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    long long known = 90LL * faces[f].corners;
    for (auto t : faces[f].boundary) {
      Label lab = d.edges()[t.edge];
      long long th = pm.base_turning(t.edge);
      if (!unknown.count(lab)) th += 360LL * d.rotation(lab);
      known += t.forward ? th : -th;
    }
    rhs[f] = faces[f].target() - known;
  }

  // Each unknown edge is a dual edge from its right face to its left face.
  struct DualEdge { std::size_t edge, from, to; };
  std::vector<std::vector<std::size_t>> adj(nf);
  std::vector<DualEdge> dual;
  for (Label lab : unknown) {
    std::size_t e = d.index_of(lab);
    std::size_t l = pm.left_face(e), r = pm.right_face(e);
    if (l == r) continue;
    adj[l].push_back(dual.size());
    adj[r].push_back(dual.size());
    dual.push_back({e, r, l});
  }

  // Spanning forest by DFS, then solve from the leaves up.
  std::vector<int> parent_edge(nf, -1);
  std::vector<bool> seen(nf, false);
  std::vector<std::size_t> order;
  std::vector<std::size_t> roots;
  for (std::size_t root = 0; root < nf; ++root) {
    if (seen[root]) continue;
    roots.push_back(root);
    std::vector<std::size_t> stack{root};
    seen[root] = true;
    while (!stack.empty()) {
      std::size_t f = stack.back();
      stack.pop_back();
      order.push_back(f);
      for (std::size_t k : adj[f]) {
        std::size_t g = dual[k].from == f ? dual[k].to : dual[k].from;
        if (seen[g]) continue;
        seen[g] = true;
        parent_edge[g] = static_cast<int>(k);
        stack.push_back(g);
      }
    }
  }

  UprightDiagram out = d;
  for (Label lab : unknown) out.set_rotation(lab, 0);
  std::vector<long long> need = rhs;  // remaining 360*phi contribution per face
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::size_t f = *it;
    int pe = parent_edge[f];
    if (pe < 0) {
      if (need[f] != 0) return std::nullopt;
      continue;
    }
    const DualEdge& de = dual[pe];
    // f is an endpoint of de; its coefficient is +1 if f is the left face.
    long long coef = de.to == f ? 1 : -1;
    if (need[f] % 360 != 0) return std::nullopt;
    long long phi = coef * need[f] / 360;
    out.set_rotation(d.edges()[de.edge], static_cast<int>(phi));
    need[f] = 0;
    std::size_t g = de.to == f ? de.from : de.to;
    long long gcoef = -coef;
    need[g] -= gcoef * 360 * phi;
  }
  return out;
}

}  // namespace rho1
