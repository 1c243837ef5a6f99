#pragma once

// Deterministic text output helpers: identical inputs must yield identical
// bytes on every platform and thread count, so all float formatting funnels
// through one place.

#include <string>

namespace holderlab {

std::string fmt17(double x);  // shortest-ish round-trippable form, %.17g

}  // namespace holderlab
