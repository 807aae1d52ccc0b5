/**
 * @file eigensolver.hpp
 * @brief Dense generalized symmetric-definite eigenproblem K d = w^2 M d,
 *        non-dimensional frequencies and mode classification.
 */

#pragma once

#include "igabeam/beam_assembly.hpp"
#include "igabeam/nurbs.hpp"

#include <Eigen/Dense>

#include <string_view>
#include <vector>

namespace igabeam {

/// Raw eigenpairs, ascending in omega_sq; vectors are M-orthonormal columns.
struct EigenPairs {
    Eigen::VectorXd omega_sq;
    Eigen::MatrixXd vectors;
};

/// Cholesky reduction M = C C^T and a symmetric tridiagonal QL solve of
/// C^-1 K C^-T. Returns the `n_modes` smallest pairs (all if n_modes <= 0
/// or larger than the system). Squared frequencies in [-1e-8 * max|w^2|, 0)
/// are clamped to zero; anything more negative throws NumericalError.
EigenPairs solve_generalized(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M, int n_modes);

/// w~ = w L^2 sqrt(rho A / (E I)).
double nondimensionalize(double omega, const Section& section);

enum class ModeKind { Rigid, Axial, Bending };

std::string_view to_string(ModeKind kind) noexcept;

struct Spectrum {
    /// Ascending non-dimensional frequencies w~.
    std::vector<double> omega_nd;
    /// Frequency parameter lambda = sqrt(w~) (the classical nπ convention).
    std::vector<double> lambda;
    /// Eigenvectors in full DOF numbering, constrained DOFs zero-filled.
    std::vector<Eigen::VectorXd> modes;
    std::vector<ModeKind> kinds;

    [[nodiscard]] std::size_t size() const noexcept { return omega_nd.size(); }
};

/// Rigid if more than 0.99 of the mode's M-norm lies in the admissible
/// rigid-body subspace, or if w~ < 1e-6 of the first flexible w~. Otherwise
/// axial if the u share of the M-weighted norm exceeds 0.99, bending if the
/// (v, phi) share does. A mode that is none of these throws NumericalError.
std::vector<ModeKind> classify_modes(const Spectrum& spectrum, const GlobalSystem& system);

/// Solve the (reduced) system and package non-dimensional, classified modes.
Spectrum solve_spectrum(const GlobalSystem& system, const Section& section, int n_modes);

struct ModeSample {
    double x = 0.0;
    double u = 0.0;
    double v = 0.0;
    double phi = 0.0;
};

/// Fields at `n_points` uniform parameter values, scaled so max|v| = 1 with
/// v positive at its extremum (falls back to max|u| for axial modes).
std::vector<ModeSample> sample_mode(const Curve& curve, const Eigen::VectorXd& mode, int n_points);

} // namespace igabeam
