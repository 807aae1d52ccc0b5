#include "igabeam/eigensolver.hpp"

#include "igabeam/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace igabeam {

namespace {

constexpr double kNegativeTolerance = 1e-8;
constexpr double kDominantShare = 0.99;
constexpr double kRigidRatio = 1e-6;

} // namespace

EigenPairs solve_generalized(const Eigen::MatrixXd& K, const Eigen::MatrixXd& M, int n_modes) {
    if (K.rows() != K.cols() || M.rows() != M.cols() || K.rows() != M.rows()) {
        throw InputError("solve_generalized: K and M must be square and of equal size");
    }
    const Eigen::Index n = K.rows();
    if (n == 0) return {};

    const Eigen::LLT<Eigen::MatrixXd> chol(M);
    if (chol.info() != Eigen::Success) {
        throw NumericalError("solve_generalized: mass matrix is not positive definite");
    }
    // A = C^-1 K C^-T, symmetrized against round-off before the solve.
    Eigen::MatrixXd A = chol.matrixL().solve(K);
    A = chol.matrixL().solve(A.transpose()).transpose();
    A = 0.5 * (A + A.transpose());

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A);
    if (eig.info() != Eigen::Success) {
        throw NumericalError("solve_generalized: symmetric eigensolver did not converge");
    }

    const Eigen::Index count = (n_modes <= 0 || n_modes > n) ? n : n_modes;
    EigenPairs out;
    out.omega_sq = eig.eigenvalues().head(count);
    // d = C^-T y keeps d^T M d = y^T y = 1.
    out.vectors = chol.matrixU().solve(eig.eigenvectors().leftCols(count));

    const double scale = eig.eigenvalues().cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < count; ++i) {
        if (out.omega_sq(i) < 0.0) {
            if (out.omega_sq(i) < -kNegativeTolerance * scale) {
                throw NumericalError("solve_generalized: negative squared frequency " +
                                     std::to_string(out.omega_sq(i)) + " (indefinite stiffness)");
            }
            out.omega_sq(i) = 0.0;
        }
    }
    return out;
}

double nondimensionalize(double omega, const Section& section) {
    return omega * section.L * section.L *
           std::sqrt(section.rho * section.area() / (section.E * section.inertia()));
}

std::string_view to_string(ModeKind kind) noexcept {
    switch (kind) {
        case ModeKind::Rigid: return "rigid";
        case ModeKind::Axial: return "axial";
        case ModeKind::Bending: return "bending";
    }
    return "?";
}

std::vector<ModeKind> classify_modes(const Spectrum& spectrum, const GlobalSystem& system) {
    const int n = system.size();
    const auto reduced = [&](std::size_t m) {
        Eigen::VectorXd d(n);
        for (int i = 0; i < n; ++i) d(i) = spectrum.modes[m](system.dof_map[static_cast<std::size_t>(i)]);
        return d;
    };

    // M-orthogonal projector onto the admissible rigid-body subspace. Flexible
    // modes are M-orthogonal to it; rigid ones lie in it up to round-off.
    const Eigen::MatrixXd& R = system.rigid_basis;
    const bool has_rigid = R.cols() > 0 && R.rows() == n;
    Eigen::MatrixXd MR;
    Eigen::LDLT<Eigen::MatrixXd> gram;
    if (has_rigid) {
        MR = system.M * R;
        gram.compute(R.transpose() * MR);
    }
    const auto rigid_share = [&](const Eigen::VectorXd& d) {
        if (!has_rigid) return 0.0;
        const Eigen::VectorXd c = gram.solve(MR.transpose() * d);
        return (MR.transpose() * d).dot(c) / d.dot(system.M * d);
    };

    std::vector<ModeKind> kinds(spectrum.size(), ModeKind::Bending);
    std::vector<bool> in_rigid_space(spectrum.size(), false);
    double first_nonzero = 0.0;
    for (std::size_t m = 0; m < spectrum.size(); ++m) {
        in_rigid_space[m] = rigid_share(reduced(m)) > kDominantShare;
        if (!in_rigid_space[m] && first_nonzero == 0.0 && spectrum.omega_nd[m] > 0.0) {
            first_nonzero = spectrum.omega_nd[m];
        }
    }

    Eigen::VectorXd is_u = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) is_u(i) = system.component(i) == Dof::U ? 1.0 : 0.0;

    for (std::size_t m = 0; m < spectrum.size(); ++m) {
        if (in_rigid_space[m] || spectrum.omega_nd[m] < kRigidRatio * first_nonzero) {
            kinds[m] = ModeKind::Rigid;
            continue;
        }
        const Eigen::VectorXd d = reduced(m);
        const Eigen::VectorXd du = d.cwiseProduct(is_u);
        const Eigen::VectorXd dt = d - du;
        const double eu = du.dot(system.M * du);
        const double et = dt.dot(system.M * dt);
        const double total = eu + et;
        if (eu > kDominantShare * total) {
            kinds[m] = ModeKind::Axial;
        } else if (et > kDominantShare * total) {
            kinds[m] = ModeKind::Bending;
        } else {
            throw NumericalError("classify_modes: mode " + std::to_string(m + 1) +
                                 " mixes axial and transverse motion");
        }
    }
    return kinds;
}

Spectrum solve_spectrum(const GlobalSystem& system, const Section& section, int n_modes) {
    // Order u DOFs first. The straight beam has no u/(v, phi) coupling, so
    // the permuted pencil is block diagonal and its tridiagonal form splits
    // exactly: eigenvectors never mix the blocks, even at near-coincident
    // axial and transverse frequencies.
    const int n = system.size();
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (system.component(i) == Dof::U) order.push_back(i);
    }
    for (int i = 0; i < n; ++i) {
        if (system.component(i) != Dof::U) order.push_back(i);
    }
    Eigen::MatrixXd Kp(n, n);
    Eigen::MatrixXd Mp(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            Kp(r, c) = system.K(order[static_cast<std::size_t>(r)], order[static_cast<std::size_t>(c)]);
            Mp(r, c) = system.M(order[static_cast<std::size_t>(r)], order[static_cast<std::size_t>(c)]);
        }
    }
    EigenPairs pairs = solve_generalized(Kp, Mp, n_modes);
    {
        Eigen::MatrixXd unpermuted(pairs.vectors.rows(), pairs.vectors.cols());
        for (int r = 0; r < n; ++r) unpermuted.row(order[static_cast<std::size_t>(r)]) = pairs.vectors.row(r);
        pairs.vectors = std::move(unpermuted);
    }

    Spectrum s;
    const auto count = static_cast<std::size_t>(pairs.omega_sq.size());
    s.omega_nd.reserve(count);
    s.lambda.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double w = std::sqrt(pairs.omega_sq(static_cast<Eigen::Index>(i)));
        const double wnd = nondimensionalize(w, section);
        s.omega_nd.push_back(wnd);
        s.lambda.push_back(std::sqrt(wnd));

        Eigen::VectorXd full = Eigen::VectorXd::Zero(system.full_size());
        for (int r = 0; r < system.size(); ++r) {
            full(system.dof_map[static_cast<std::size_t>(r)]) =
                pairs.vectors(r, static_cast<Eigen::Index>(i));
        }
        s.modes.push_back(std::move(full));
    }
    s.kinds = classify_modes(s, system);
    return s;
}

std::vector<ModeSample> sample_mode(const Curve& curve, const Eigen::VectorXd& mode, int n_points) {
    if (mode.size() != kDofsPerControlPoint * curve.num_control_points()) {
        throw InputError("sample_mode: mode length does not match the curve's DOF count");
    }
    if (n_points < 2) throw InputError("sample_mode: need at least two sample points");

    const KnotVector& kv = curve.knot_vector();
    const int p = curve.degree();
    std::vector<ModeSample> out(static_cast<std::size_t>(n_points));
    for (int s = 0; s < n_points; ++s) {
        const double t = static_cast<double>(s) / (n_points - 1);
        const double xi = (s == n_points - 1) ? kv.back() : kv.front() + t * (kv.back() - kv.front());
        const BasisEval b = eval_nurbs(curve, xi);
        ModeSample& ms = out[static_cast<std::size_t>(s)];
        ms.x = geometry_map(curve, xi).x;
        const int first = b.first_index(p);
        for (int j = 0; j <= p; ++j) {
            const double N = b.values[static_cast<std::size_t>(j)];
            const int cp = first + j;
            ms.u += N * mode(3 * cp + 0);
            ms.v += N * mode(3 * cp + 1);
            ms.phi += N * mode(3 * cp + 2);
        }
    }

    const auto peak = [&](auto field) {
        double best = 0.0;
        for (const ModeSample& ms : out) {
            if (std::abs(field(ms)) > std::abs(best)) best = field(ms);
        }
        return best;
    };
    double scale = peak([](const ModeSample& ms) { return ms.v; });
    if (scale == 0.0) scale = peak([](const ModeSample& ms) { return ms.u; });
    if (scale == 0.0) scale = peak([](const ModeSample& ms) { return ms.phi; });
    if (scale != 0.0) {
        for (ModeSample& ms : out) {
            ms.u /= scale;
            ms.v /= scale;
            ms.phi /= scale;
        }
    }
    return out;
}

} // namespace igabeam
