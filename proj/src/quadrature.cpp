#include "igabeam/quadrature.hpp"

#include "igabeam/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace igabeam {

QuadratureRule gauss_legendre(int n) {
    if (n < 1 || n > kMaxQuadraturePoints) {
        throw InputError("gauss_legendre: point count must be in [1, " +
                         std::to_string(kMaxQuadraturePoints) + "], got " + std::to_string(n));
    }
    QuadratureRule rule;
    rule.points.assign(static_cast<std::size_t>(n), 0.0);
    rule.weights.assign(static_cast<std::size_t>(n), 0.0);

    // Newton on P_n from the Chebyshev-like initial guess; roots come in
    // +/- pairs so only the upper half is iterated.
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged root for the weight.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);

        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.points[lo] = -x;
        rule.points[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (n % 2 == 1) rule.points[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

QuadratureRule map_to_span(const QuadratureRule& rule, double a, double b) {
    if (!(b > a)) throw InputError("map_to_span: degenerate span");
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    QuadratureRule out;
    out.points.reserve(rule.points.size());
    out.weights.reserve(rule.weights.size());
    for (std::size_t g = 0; g < rule.points.size(); ++g) {
        out.points.push_back(mid + half * rule.points[g]);
        out.weights.push_back(half * rule.weights[g]);
    }
    return out;
}

} // namespace igabeam
