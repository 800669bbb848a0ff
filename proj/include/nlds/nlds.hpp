#pragma once

// Time-splitting Fourier pseudospectral solvers for the 1D nonlinear Dirac
// equation in the nonrelativistic regime, with the convergence-study harness.

#include "nlds/config.hpp"
#include "nlds/errors.hpp"
#include "nlds/expression.hpp"
#include "nlds/experiment.hpp"
#include "nlds/field.hpp"
#include "nlds/field_io.hpp"
#include "nlds/fourier.hpp"
#include "nlds/free_dirac.hpp"
#include "nlds/grid.hpp"
#include "nlds/initial.hpp"
#include "nlds/observables.hpp"
#include "nlds/potential.hpp"
#include "nlds/reference_cache.hpp"
#include "nlds/resonance.hpp"
#include "nlds/schemes.hpp"
#include "nlds/table_io.hpp"
