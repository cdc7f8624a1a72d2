#pragma once

// Convenience umbrella for the whole library.

#include "tristat/edge_list.hpp"
#include "tristat/errors.hpp"
#include "tristat/fitting.hpp"
#include "tristat/generators.hpp"
#include "tristat/graph.hpp"
#include "tristat/metrics.hpp"
#include "tristat/model_spec.hpp"
#include "tristat/powerlaw.hpp"
#include "tristat/report.hpp"
#include "tristat/rng.hpp"
#include "tristat/tri_stats.hpp"
#include "tristat/triangles.hpp"
