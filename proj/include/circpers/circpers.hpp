#pragma once

#include "circpers/gf2.hpp"
#include "circpers/grid.hpp"
#include "circpers/interleaving.hpp"
#include "circpers/intervals.hpp"
#include "circpers/io.hpp"
#include "circpers/matching.hpp"
#include "circpers/matching_transfer.hpp"
#include "circpers/metric_plane.hpp"
#include "circpers/metric_quotient.hpp"
#include "circpers/random.hpp"
#include "circpers/rational.hpp"
#include "circpers/verify.hpp"
