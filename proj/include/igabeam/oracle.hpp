/**
 * @file oracle.hpp
 * @brief Closed-form reference frequencies used as independent ground truth.
 *
 * All values use the frequency-parameter convention lambda = sqrt(w~),
 * w~ = w L^2 sqrt(rho A / (E I)), so classical pinned-pinned roots are n*pi.
 */

#pragma once

#include "igabeam/beam_assembly.hpp"

#include <vector>

namespace igabeam {

/// Euler-Bernoulli frequency parameter. Pinned-pinned: n*pi. Clamped-clamped:
/// n-th positive root of cos(l) cosh(l) = 1, solved as cos(l) - sech(l) = 0.
double clt_frequency(BoundaryCondition bc, int mode);

/// cos(l) - sech(l): the clamped-clamped characteristic function, overflow-free.
double clamped_characteristic(double lambda);

enum class TimoshenkoBranch { Bending, Shear };

/// Simply supported Timoshenko beam with sin(n pi x / L) deflection: the two
/// roots of the resulting quadratic in w^2. `mode` >= 1 for the bending
/// branch, >= 0 for the shear branch (n = 0 is the uniform thickness-shear
/// mode v = 0, phi = const).
double timoshenko_pinned(double h_over_L, double nu, double kappa, int mode,
                         TimoshenkoBranch branch = TimoshenkoBranch::Bending);

/// The first `count` transverse frequency parameters of the simply supported
/// Timoshenko beam: both branches merged and sorted. For thick beams the
/// shear branch enters the low spectrum (e.g. h/L = 0.2 from the 7th mode).
std::vector<double> timoshenko_pinned_spectrum(double h_over_L, double nu, double kappa, int count);

/// Axial rod frequency parameter for mode n >= 1 of an end-fixed bar.
double axial_frequency(double h_over_L, int mode);

} // namespace igabeam
