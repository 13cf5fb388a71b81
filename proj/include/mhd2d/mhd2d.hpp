#pragma once

#include "mhd2d/analytic.hpp"
#include "mhd2d/checkpoint.hpp"
#include "mhd2d/config.hpp"
#include "mhd2d/diagnostics.hpp"
#include "mhd2d/experiments.hpp"
#include "mhd2d/field.hpp"
#include "mhd2d/grid.hpp"
#include "mhd2d/inequalities.hpp"
#include "mhd2d/mollifier.hpp"
#include "mhd2d/params.hpp"
#include "mhd2d/random_field.hpp"
#include "mhd2d/solver.hpp"
#include "mhd2d/spectral.hpp"
#include "mhd2d/state.hpp"
