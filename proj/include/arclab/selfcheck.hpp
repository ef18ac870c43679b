#pragma once

#include <iosfwd>

namespace arclab {

// Built-in oracle suite behind `arclab check`: threshold enumerations
// against an independent literal evaluator, the product-splitting bound,
// the power-sum bound, mass conservation and homogeneous decay on small
// runs.  Prints one line per check; returns true when everything passed.
bool run_selfcheck(std::ostream& out);

} // namespace arclab
