#pragma once

#include "radstri/bessel.hpp"
#include "radstri/common.hpp"
#include "radstri/counterexample.hpp"
#include "radstri/estimates.hpp"
#include "radstri/grid.hpp"
#include "radstri/maximal.hpp"
#include "radstri/norms.hpp"
#include "radstri/polynomials.hpp"
#include "radstri/profile.hpp"
#include "radstri/propagators.hpp"
#include "radstri/quadrature.hpp"
#include "radstri/report.hpp"
#include "radstri/riesz.hpp"
#include "radstri/scan_family.hpp"
#include "radstri/spectral.hpp"
#include "radstri/wave_explicit.hpp"
