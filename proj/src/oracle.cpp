#include "igabeam/oracle.hpp"

#include "igabeam/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace igabeam {

double clamped_characteristic(double lambda) {
    // cos(l) cosh(l) = 1  <=>  cos(l) = sech(l); sech via exp(-l) avoids overflow.
    const double e = std::exp(-std::abs(lambda));
    const double sech = 2.0 * e / (1.0 + e * e);
    return std::cos(lambda) - sech;
}

double clt_frequency(BoundaryCondition bc, int mode) {
    if (mode < 1) throw InputError("clt_frequency: mode must be >= 1");
    constexpr double pi = std::numbers::pi;
    switch (bc) {
        case BoundaryCondition::PinnedPinned:
            return mode * pi;
        case BoundaryCondition::ClampedClamped: {
            // The n-th root lies within 0.1 of (n + 1/2) pi; cos changes sign
            // across that bracket while sech is already below 0.02.
            const double centre = (mode + 0.5) * pi;
            double lo = centre - 0.5;
            double hi = centre + 0.5;
            double flo = clamped_characteristic(lo);
            for (int it = 0; it < 200 && hi - lo > 1e-15 * centre; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = clamped_characteristic(mid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            // Newton polish on f(l) = cos l - sech l, f' = -sin l + sech l tanh l.
            double x = 0.5 * (lo + hi);
            for (int it = 0; it < 3; ++it) {
                const double e = std::exp(-x);
                const double sech = 2.0 * e / (1.0 + e * e);
                const double tanh = (1.0 - e * e) / (1.0 + e * e);
                const double df = -std::sin(x) + sech * tanh;
                if (df == 0.0) break;
                const double step = clamped_characteristic(x) / df;
                if (!std::isfinite(step) || std::abs(step) > 1e-6) break;
                x -= step;
            }
            return x;
        }
        default:
            throw InputError("clt_frequency: only pp and cc have tabulated classical roots");
    }
}

double timoshenko_pinned(double h_over_L, double nu, double kappa, int mode, TimoshenkoBranch branch) {
    if (!(h_over_L > 0.0 && h_over_L <= 0.5)) throw InputError("timoshenko_pinned: h/L must be in (0, 0.5]");
    const int min_mode = branch == TimoshenkoBranch::Bending ? 1 : 0;
    if (mode < min_mode) throw InputError("timoshenko_pinned: mode out of range for branch");

    // Unit E, rho, b, L: the frequency parameter does not depend on them.
    const Section s = Section::normalized(h_over_L, nu, kappa);
    const double A = s.area();
    const double I = s.inertia();
    const double kGA = s.kappa * s.shear_modulus() * A;
    const double EI = s.E * I;
    const double k = mode * std::numbers::pi / s.L;

    // v = V sin(kx), phi = Phi cos(kx) in
    //   rho A v_tt = kGA (v'' + phi')
    //   rho I phi_tt = EI phi'' - kGA (v' + phi)
    // gives (rhoI w2 - EI k2 - kGA)(rhoA w2 - kGA k2) - (kGA k)^2 = 0.
    const double a = s.rho * I * s.rho * A;
    const double b = -(s.rho * I * kGA * k * k + s.rho * A * (EI * k * k + kGA));
    // Constant term expanded: the (kGA k)^2 products cancel exactly.
    const double c = EI * kGA * k * k * k * k;
    const double disc = std::sqrt(std::max(0.0, b * b - 4.0 * a * c));
    const double large = (-b + disc) / (2.0 * a);
    const double small = c == 0.0 ? 0.0 : 2.0 * c / (-b + disc);

    const double w2 = branch == TimoshenkoBranch::Bending ? small : large;
    const double omega_nd = std::sqrt(w2) * s.L * s.L * std::sqrt(s.rho * A / EI);
    return std::sqrt(omega_nd);
}

std::vector<double> timoshenko_pinned_spectrum(double h_over_L, double nu, double kappa, int count) {
    if (count < 1) return {};
    std::vector<double> merged;
    // Both branches increase with n, so n <= count per branch suffices.
    for (int n = 0; n <= count; ++n) {
        if (n >= 1) merged.push_back(timoshenko_pinned(h_over_L, nu, kappa, n, TimoshenkoBranch::Bending));
        merged.push_back(timoshenko_pinned(h_over_L, nu, kappa, n, TimoshenkoBranch::Shear));
    }
    std::sort(merged.begin(), merged.end());
    merged.resize(static_cast<std::size_t>(count));
    return merged;
}

double axial_frequency(double h_over_L, int mode) {
    if (!(h_over_L > 0.0)) throw InputError("axial_frequency: h/L must be positive");
    if (mode < 1) throw InputError("axial_frequency: mode must be >= 1");
    // w = n pi / L sqrt(E / rho); sqrt(A / I) = sqrt(12) / h.
    const double omega_nd = mode * std::numbers::pi * std::sqrt(12.0) / h_over_L;
    return std::sqrt(omega_nd);
}

} // namespace igabeam
