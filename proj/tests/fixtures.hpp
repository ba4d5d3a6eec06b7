#pragma once

// Small diagrams shared by several test files.

#include "rho1/samples.hpp"

namespace fixtures {

inline rho1::UprightDiagram d1() { return rho1::empty_diagram(); }
inline rho1::UprightDiagram d2() { return rho1::kink_diagram(); }
inline rho1::UprightDiagram d3() { return rho1::trefoil_diagram(); }

}  // namespace fixtures
