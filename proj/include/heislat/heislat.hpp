#pragma once

#include "heislat/correlation.hpp"
#include "heislat/counting.hpp"
#include "heislat/experiments.hpp"
#include "heislat/heis.hpp"
#include "heislat/lattice.hpp"
#include "heislat/linalg.hpp"
#include "heislat/orbit.hpp"
#include "heislat/parallel.hpp"
#include "heislat/region.hpp"
#include "heislat/report.hpp"
#include "heislat/rng.hpp"
#include "heislat/stats.hpp"
