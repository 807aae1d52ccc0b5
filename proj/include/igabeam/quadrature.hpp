#pragma once

#include <vector>

namespace igabeam {

/// Gauss-Legendre nodes and weights on [-1, 1] (or mapped onto a span).
struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;

    [[nodiscard]] int size() const noexcept { return static_cast<int>(points.size()); }
};

inline constexpr int kMaxQuadraturePoints = 16;

/// n-point rule, 1 <= n <= 16; exact for polynomials of degree 2n-1.
QuadratureRule gauss_legendre(int n);

/// Affine image of a [-1, 1] rule on [a, b]; weights scaled by (b-a)/2.
QuadratureRule map_to_span(const QuadratureRule& rule, double a, double b);

} // namespace igabeam
