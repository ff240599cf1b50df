#pragma once

#include "sweepout/constants.hpp"
#include "sweepout/surface.hpp"

namespace sweepout {

/// Empirical constants measured on a concrete surface: C0 as the maximal
/// observed comparison-ball volume over radius^n, and the covering map as the
/// maximal observed greedy covering count of 4s-balls by s-balls.  The
/// surface must outlive the returned bundle.  Deterministic for a fixed
/// surface.
ConstantBundle assemble_constants_empirical(const Surface& surface, int n, double K, double c);

/// Paper or empirical dispatch used by the front end.
ConstantBundle assemble_constants_for(const Surface* surface, int n, double K, double c,
                                      ConstantsMode mode);

}  // namespace sweepout
