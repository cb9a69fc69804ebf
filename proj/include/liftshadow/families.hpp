#pragma once

#include "liftshadow/lifts.hpp"

namespace liftshadow {

/// Colours 1..k; members are the k monochromatic symmetric edges. The
/// shadow class is the k-colourable graphs.
ForbFamily k_coloring_family(std::size_t k);

/// Colours 1..b; members are the b monochromatic symmetric edges and every
/// star with a leaves whose a+1 vertices carry a+1 distinct colours, one per
/// choice of centre colour and leaf colour set.
ForbFamily local_coloring_family(std::size_t a, std::size_t b);

}  // namespace liftshadow
