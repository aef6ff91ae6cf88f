#pragma once

// Curvature-regularized graph embedding: umbrella header.

#include "embedders.hpp"    // IWYU pragma: export
#include "evaluation.hpp"   // IWYU pragma: export
#include "geometry.hpp"     // IWYU pragma: export
#include "graph.hpp"        // IWYU pragma: export
#include "matrix.hpp"       // IWYU pragma: export
#include "paths.hpp"        // IWYU pragma: export
#include "regularizer.hpp"  // IWYU pragma: export
#include "rng.hpp"          // IWYU pragma: export
#include "synthetic.hpp"    // IWYU pragma: export
#include "trainer.hpp"      // IWYU pragma: export
