#pragma once

// Three small diagrams with hand-checked invariants.

#include "rho1/diagram.hpp"

namespace rho1 {

/// No crossings: a single upward edge.
inline UprightDiagram empty_diagram() { return UprightDiagram(); }

/// One positive kink, (+1, 2, 1) with phi(2) = 1.
inline UprightDiagram kink_diagram() {
  return UprightDiagram::with_consecutive_labels({{1, 2, 1}}, {{2, 1}});
}

/// Right-handed trefoil, three positive crossings with phi(4) = -1.
inline UprightDiagram trefoil_diagram() {
  return UprightDiagram::with_consecutive_labels({{1, 1, 4}, {1, 3, 6}, {1, 5, 2}}, {{4, -1}});
}

}  // namespace rho1
