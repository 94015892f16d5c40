#pragma once

// Umbrella header. Serialization (io.hpp) is separate because it needs the
// vendored nlohmann/json.

#include <elastica/errors.hpp>
#include <elastica/tolerances.hpp>
#include <elastica/elliptic.hpp>
#include <elastica/weierstrass.hpp>
#include <elastica/brent.hpp>
#include <elastica/parametrization.hpp>
#include <elastica/curvature.hpp>
#include <elastica/functionals.hpp>
#include <elastica/parallel.hpp>
#include <elastica/geometry.hpp>
#include <elastica/knot_search.hpp>
