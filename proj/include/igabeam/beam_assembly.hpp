/**
 * @file beam_assembly.hpp
 * @brief Timoshenko beam element matrices over a NURBS patch, global
 *        assembly and boundary conditions.
 *
 * Each control point carries three DOFs ordered (u, v, phi): axial
 * displacement, transverse deflection and cross-section rotation. Global
 * numbering is control-point major: DOF 3*k + c.
 *
 * Strain measures per unit length:
 *   membrane  eps_m = u'
 *   bending   kappa = phi'
 *   shear     gamma = v' + phi
 */

#pragma once

#include "igabeam/nurbs.hpp"
#include "igabeam/quadrature.hpp"

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace igabeam {

inline constexpr int kDofsPerControlPoint = 3;

enum class Dof : int { U = 0, V = 1, Phi = 2 };

/// Isotropic rectangular section and material.
struct Section {
    double E = 1.0;
    double nu = 0.3;
    double rho = 1.0;
    double kappa = 5.0 / 6.0;
    double b = 1.0;
    double h = 0.1;
    double L = 1.0;

    [[nodiscard]] double area() const noexcept { return b * h; }
    [[nodiscard]] double inertia() const noexcept { return b * h * h * h / 12.0; }
    [[nodiscard]] double shear_modulus() const noexcept { return E / (2.0 * (1.0 + nu)); }

    /// Throws InputError unless all fields are positive and nu lies in (0, 0.5).
    void validate() const;

    /// Unit E, rho, b and L with thickness h/L: the non-dimensional benchmark setup.
    static Section normalized(double h_over_L, double nu = 0.3, double kappa = 5.0 / 6.0);
};

enum class BoundaryCondition { PinnedPinned, ClampedClamped, ClampedFree, FreeFree };

/// Short codes used on the command line: pp, cc, cf, ff.
std::string_view to_code(BoundaryCondition bc) noexcept;
BoundaryCondition parse_boundary_condition(std::string_view code);

/// Strain-displacement rows for the p+1 active control points, each of
/// length 3(p+1) in local (u, v, phi) ordering.
struct StrainRows {
    Eigen::RowVectorXd membrane;
    Eigen::RowVectorXd bending;
    Eigen::RowVectorXd shear;
};

StrainRows b_matrices(const BasisEval& basis, double jacobian);

struct ElementMatrices {
    Eigen::MatrixXd k;
    Eigen::MatrixXd m;
    std::vector<int> dof_indices;
};

/// Element by ordinal (0 .. num_elements-1), left to right.
Eigen::MatrixXd element_stiffness(const Section& section, const Curve& curve, int element,
                                  const QuadratureRule& rule);
Eigen::MatrixXd element_mass(const Section& section, const Curve& curve, int element,
                             const QuadratureRule& rule);

/// Both element matrices from a single pass over the quadrature points.
ElementMatrices element_matrices(const Section& section, const Curve& curve, int element,
                                 const QuadratureRule& rule);

/// Global DOF indices of an element's active control points.
std::vector<int> element_dofs(const Curve& curve, int element);

struct GlobalSystem {
    Eigen::MatrixXd K;
    Eigen::MatrixXd M;
    int num_control_points = 0;
    /// Full-numbering DOF index of each retained row/column.
    std::vector<int> dof_map;
    /// Full-numbering DOF indices eliminated by boundary conditions.
    std::vector<int> constrained;
    /// Columns: rigid-body vectors still admissible under the applied
    /// boundary conditions, in the current (reduced) numbering.
    Eigen::MatrixXd rigid_basis;

    [[nodiscard]] int full_size() const noexcept { return kDofsPerControlPoint * num_control_points; }
    [[nodiscard]] int size() const noexcept { return static_cast<int>(K.rows()); }
    [[nodiscard]] Dof component(int reduced_index) const noexcept {
        return static_cast<Dof>(dof_map[static_cast<std::size_t>(reduced_index)] % kDofsPerControlPoint);
    }
};

/// Element matrices computed in parallel (OpenMP); scatter-add in element
/// order, so the result is bit-identical to assemble_serial.
GlobalSystem assemble(const Section& section, const Curve& curve, const QuadratureRule& rule);

/// Single-threaded reference assembly.
GlobalSystem assemble_serial(const Section& section, const Curve& curve, const QuadratureRule& rule);

/// Row/column elimination of the end DOFs fixed by `bc`.
GlobalSystem apply_bc(const GlobalSystem& system, BoundaryCondition bc);

/// Rigid-body vectors of an unconstrained straight beam in full numbering:
/// axial translation, transverse translation, and rotation about x=0
/// (v_k = -x_k, phi_k = 1 so that v' + phi = 0).
std::vector<Eigen::VectorXd> rigid_body_modes(const Curve& curve);

/// Relative asymmetry max|A - A^T| / max|A|.
double relative_asymmetry(const Eigen::MatrixXd& a);

} // namespace igabeam
