/// @file radswirl.hpp
/// @brief Umbrella header for the radial swirling-flow library.
#pragma once

#include "config.hpp"
#include "diagnostics.hpp"
#include "grid.hpp"
#include "initial_data.hpp"
#include "ledger_io.hpp"
#include "manufactured.hpp"
#include "physics.hpp"
#include "presets.hpp"
#include "run.hpp"
#include "solver.hpp"
#include "studies.hpp"
#include "threshold.hpp"
#include "tridiagonal.hpp"
#include "viscous.hpp"
