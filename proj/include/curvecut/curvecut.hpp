#pragma once

// Umbrella header for the curvecut library.

#include "curvecut/config.hpp"
#include "curvecut/csv.hpp"
#include "curvecut/energy.hpp"
#include "curvecut/geometry.hpp"
#include "curvecut/grid.hpp"
#include "curvecut/image_io.hpp"
#include "curvecut/maxflow.hpp"
#include "curvecut/neighborhood.hpp"
#include "curvecut/optimizer.hpp"
#include "curvecut/pipeline.hpp"
#include "curvecut/util.hpp"
