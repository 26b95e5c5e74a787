#pragma once

#include "groves/errors.hpp"
#include "groves/rational.hpp"
#include "groves/lattice.hpp"
#include "groves/poly.hpp"
#include "groves/polygcd.hpp"
#include "groves/matrix.hpp"
#include "groves/series.hpp"
#include "groves/ratfunc.hpp"
#include "groves/conductance.hpp"
#include "groves/recurrence.hpp"
#include "groves/rng.hpp"
#include "groves/shuffle.hpp"
#include "groves/genfun.hpp"
#include "groves/spectral.hpp"
#include "groves/arctic.hpp"
#include "groves/config.hpp"
#include "groves/seriescheck.hpp"
