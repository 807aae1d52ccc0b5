/**
 * @file nurbs.hpp
 * @brief Univariate B-spline / NURBS kernel: knot vectors, basis evaluation,
 *        the straight-beam geometry map, and h/p/k refinement.
 *
 * All analysis knot vectors are open (clamped) and live on [0, 1]; the
 * physical length of the beam enters only through the control abscissae.
 * Every type here is an immutable value once constructed.
 */

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace igabeam {

/// Open, non-decreasing knot sequence together with its polynomial degree.
///
/// Construction validates: non-decreasing, end multiplicity exactly p+1,
/// interior multiplicity at most p, and at least one non-zero span.
class KnotVector {
public:
    KnotVector(std::vector<double> knots, int degree);

    [[nodiscard]] int degree() const noexcept { return degree_; }
    [[nodiscard]] std::span<const double> knots() const noexcept { return knots_; }
    [[nodiscard]] std::size_t size() const noexcept { return knots_.size(); }

    /// Number of basis functions n; size() == n + p + 1.
    [[nodiscard]] int num_basis() const noexcept {
        return static_cast<int>(knots_.size()) - degree_ - 1;
    }

    [[nodiscard]] double front() const noexcept { return knots_.front(); }
    [[nodiscard]] double back() const noexcept { return knots_.back(); }

    /// Distinct knot values in ascending order (element boundaries).
    [[nodiscard]] std::vector<double> breakpoints() const;

    /// Knot-span index of each non-zero span, ordered left to right.
    [[nodiscard]] std::vector<int> element_spans() const;

    [[nodiscard]] int num_elements() const { return static_cast<int>(element_spans().size()); }

    /// Multiplicity of the value `xi` (exact comparison).
    [[nodiscard]] int multiplicity(double xi) const noexcept;

    friend bool operator==(const KnotVector&, const KnotVector&) = default;

private:
    std::vector<double> knots_;
    int degree_;
};

/// Nonzero basis values and first parametric derivatives at one point.
/// `values[j]` belongs to basis function `span - degree + j`.
struct BasisEval {
    int span = 0;
    std::vector<double> values;
    std::vector<double> derivs;

    [[nodiscard]] int first_index(int degree) const noexcept { return span - degree; }
};

/// Control abscissae and weights of a straight beam's geometry map xi -> x.
class Curve {
public:
    Curve(std::vector<double> control_x, std::vector<double> weights, KnotVector kv);

    /// Polynomial (unit-weight) curve.
    Curve(std::vector<double> control_x, KnotVector kv);

    [[nodiscard]] std::span<const double> control_x() const noexcept { return control_x_; }
    [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
    [[nodiscard]] const KnotVector& knot_vector() const noexcept { return kv_; }
    [[nodiscard]] int degree() const noexcept { return kv_.degree(); }
    [[nodiscard]] int num_control_points() const noexcept {
        return static_cast<int>(control_x_.size());
    }
    [[nodiscard]] bool is_polynomial() const noexcept;

    /// Greville abscissae (knot averages) of the basis, one per control point.
    [[nodiscard]] std::vector<double> greville_parameters() const;

private:
    std::vector<double> control_x_;
    std::vector<double> weights_;
    KnotVector kv_;
};

struct GeometryPoint {
    double x = 0.0;
    double jacobian = 0.0;  ///< dx/dxi
};

/// Open uniform knot vector on [0, 1] with `num_elements` equal spans.
KnotVector make_open_uniform(int degree, int num_elements);

/// Index i with knots[i] <= xi < knots[i+1]; xi == last knot maps to the
/// last non-zero span.
int find_span(const KnotVector& kv, double xi);

/// Cox-de Boor values and first derivatives of the p+1 nonzero B-splines.
BasisEval eval_basis(const KnotVector& kv, double xi);

/// Rational basis R_i = N_i q_i / W with quotient-rule derivatives.
BasisEval eval_nurbs(const Curve& curve, double xi);

/// Physical coordinate and Jacobian; throws NumericalError when J <= 0.
GeometryPoint geometry_map(const Curve& curve, double xi);

/// Single knot insertion (Boehm), carried out in homogeneous coordinates.
Curve insert_knot(const Curve& curve, double xi_new);

/// Raise the degree by one keeping the geometry and interior continuity.
Curve elevate_degree(const Curve& curve);

/// Elevate a single-element curve to `target_degree`, then insert uniform
/// knots to get `target_elements` spans with C^(p-1) continuity.
Curve k_refine(const Curve& curve, int target_degree, int target_elements);

/// Insert uniform knots first, then elevate: C^0 across interior knots.
Curve p_refine(const Curve& curve, int target_degree, int target_elements);

/// Degree-1, single-element straight beam from 0 to `length`.
Curve make_straight_beam(double length);

} // namespace igabeam
