#pragma once

#include "spin7/form.hpp"

namespace spin7 {

// Fixed classes used by the tests, the corpus and the CLI.

// dz_{1 2 1bar 2bar}: a factor Y1 x pt of a product of two 2-tori.
Form product_class();
// dz_{1 2 3bar 4bar} + dz_{1bar 2bar 3 4}.
Form weil_class();
// weil_class() + omega^2 for the standard omega.
Form alfa_class();
// Poincare dual of the diagonal of Y x Y in flat coordinates: wedge_j (dx_j - dx_{j+4}).
Form diagonal_class();

}  // namespace spin7
