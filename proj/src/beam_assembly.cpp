#include "igabeam/beam_assembly.hpp"

#include "igabeam/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace igabeam {

void Section::validate() const {
    const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(E) || !positive(rho) || !positive(kappa) || !positive(b) || !positive(h) ||
        !positive(L)) {
        throw InputError("section: E, rho, kappa, b, h and L must be positive");
    }
    if (!(nu > 0.0 && nu < 0.5)) throw InputError("section: Poisson's ratio must lie in (0, 0.5)");
}

Section Section::normalized(double h_over_L, double nu, double kappa) {
    Section s;
    s.E = 1.0;
    s.rho = 1.0;
    s.b = 1.0;
    s.L = 1.0;
    s.h = h_over_L;
    s.nu = nu;
    s.kappa = kappa;
    s.validate();
    return s;
}

std::string_view to_code(BoundaryCondition bc) noexcept {
    switch (bc) {
        case BoundaryCondition::PinnedPinned: return "pp";
        case BoundaryCondition::ClampedClamped: return "cc";
        case BoundaryCondition::ClampedFree: return "cf";
        case BoundaryCondition::FreeFree: return "ff";
    }
    return "??";
}

BoundaryCondition parse_boundary_condition(std::string_view code) {
    if (code == "pp") return BoundaryCondition::PinnedPinned;
    if (code == "cc") return BoundaryCondition::ClampedClamped;
    if (code == "cf") return BoundaryCondition::ClampedFree;
    if (code == "ff") return BoundaryCondition::FreeFree;
    throw InputError("unknown boundary condition '" + std::string(code) + "' (expected pp, cc, cf or ff)");
}

StrainRows b_matrices(const BasisEval& basis, double jacobian) {
    if (!(jacobian > 0.0)) throw NumericalError("b_matrices: non-positive Jacobian");
    const auto n = static_cast<Eigen::Index>(basis.values.size());
    StrainRows rows{Eigen::RowVectorXd::Zero(3 * n), Eigen::RowVectorXd::Zero(3 * n),
                    Eigen::RowVectorXd::Zero(3 * n)};
    for (Eigen::Index a = 0; a < n; ++a) {
        const double N = basis.values[static_cast<std::size_t>(a)];
        const double dNdx = basis.derivs[static_cast<std::size_t>(a)] / jacobian;
        rows.membrane(3 * a + 0) = dNdx;
        rows.bending(3 * a + 2) = dNdx;
        rows.shear(3 * a + 1) = dNdx;
        rows.shear(3 * a + 2) = N;
    }
    return rows;
}

namespace {

struct ElementKernel {
    bool stiffness = true;
    bool mass = true;
};

ElementMatrices integrate_element(const Section& section, const Curve& curve, int element,
                                  const QuadratureRule& rule, ElementKernel which) {
    const KnotVector& kv = curve.knot_vector();
    const std::vector<int> spans = kv.element_spans();
    if (element < 0 || element >= static_cast<int>(spans.size())) {
        throw InputError("element index " + std::to_string(element) + " out of range");
    }
    const auto span = static_cast<std::size_t>(spans[static_cast<std::size_t>(element)]);
    const double a = kv.knots()[span];
    const double b = kv.knots()[span + 1];
    const QuadratureRule mapped = map_to_span(rule, a, b);

    const int p = curve.degree();
    const Eigen::Index nd = kDofsPerControlPoint * (p + 1);
    ElementMatrices out;
    out.k = Eigen::MatrixXd::Zero(nd, nd);
    out.m = Eigen::MatrixXd::Zero(nd, nd);
    out.dof_indices = element_dofs(curve, element);

    const double EA = section.E * section.area();
    const double EI = section.E * section.inertia();
    const double kGA = section.kappa * section.shear_modulus() * section.area();
    const double rhoA = section.rho * section.area();
    const double rhoI = section.rho * section.inertia();

    Eigen::RowVectorXd Nu(nd), Nv(nd), Nphi(nd);
    for (int g = 0; g < mapped.size(); ++g) {
        // Sample strictly inside the span so the basis is that of `element`.
        const double xi = mapped.points[static_cast<std::size_t>(g)];
        const BasisEval basis = eval_nurbs(curve, xi);
        const GeometryPoint geo = geometry_map(curve, xi);
        const double dV = geo.jacobian * mapped.weights[static_cast<std::size_t>(g)];

        if (which.stiffness) {
            const StrainRows B = b_matrices(basis, geo.jacobian);
            out.k.noalias() += (EA * dV) * B.membrane.transpose() * B.membrane;
            out.k.noalias() += (EI * dV) * B.bending.transpose() * B.bending;
            out.k.noalias() += (kGA * dV) * B.shear.transpose() * B.shear;
        }
        if (which.mass) {
            Nu.setZero();
            Nv.setZero();
            Nphi.setZero();
            for (int j = 0; j <= p; ++j) {
                const double N = basis.values[static_cast<std::size_t>(j)];
                Nu(3 * j + 0) = N;
                Nv(3 * j + 1) = N;
                Nphi(3 * j + 2) = N;
            }
            out.m.noalias() += (rhoA * dV) * Nu.transpose() * Nu;
            out.m.noalias() += (rhoA * dV) * Nv.transpose() * Nv;
            out.m.noalias() += (rhoI * dV) * Nphi.transpose() * Nphi;
        }
    }
    return out;
}

GlobalSystem empty_system(const Curve& curve) {
    GlobalSystem sys;
    sys.num_control_points = curve.num_control_points();
    const int n = sys.full_size();
    sys.K = Eigen::MatrixXd::Zero(n, n);
    sys.M = Eigen::MatrixXd::Zero(n, n);
    sys.dof_map.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) sys.dof_map[static_cast<std::size_t>(i)] = i;
    const std::vector<Eigen::VectorXd> rigid = rigid_body_modes(curve);
    sys.rigid_basis.resize(n, static_cast<Eigen::Index>(rigid.size()));
    for (std::size_t j = 0; j < rigid.size(); ++j) sys.rigid_basis.col(static_cast<Eigen::Index>(j)) = rigid[j];
    return sys;
}

void scatter(GlobalSystem& sys, const ElementMatrices& em) {
    const auto nd = em.dof_indices.size();
    for (std::size_t r = 0; r < nd; ++r) {
        const int gr = em.dof_indices[r];
        for (std::size_t c = 0; c < nd; ++c) {
            const int gc = em.dof_indices[c];
            sys.K(gr, gc) += em.k(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            sys.M(gr, gc) += em.m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
}

void check_assembly_inputs(const Section& section, const QuadratureRule& rule) {
    section.validate();
    if (rule.size() < 1) throw InputError("assemble: empty quadrature rule");
}

} // namespace

std::vector<int> element_dofs(const Curve& curve, int element) {
    const std::vector<int> spans = curve.knot_vector().element_spans();
    if (element < 0 || element >= static_cast<int>(spans.size())) {
        throw InputError("element index " + std::to_string(element) + " out of range");
    }
    const int p = curve.degree();
    const int first = spans[static_cast<std::size_t>(element)] - p;
    std::vector<int> dofs;
    dofs.reserve(static_cast<std::size_t>(kDofsPerControlPoint * (p + 1)));
    for (int a = 0; a <= p; ++a) {
        for (int c = 0; c < kDofsPerControlPoint; ++c) dofs.push_back(kDofsPerControlPoint * (first + a) + c);
    }
    return dofs;
}

Eigen::MatrixXd element_stiffness(const Section& section, const Curve& curve, int element,
                                  const QuadratureRule& rule) {
    section.validate();
    return integrate_element(section, curve, element, rule, {true, false}).k;
}

Eigen::MatrixXd element_mass(const Section& section, const Curve& curve, int element,
                             const QuadratureRule& rule) {
    section.validate();
    return integrate_element(section, curve, element, rule, {false, true}).m;
}

ElementMatrices element_matrices(const Section& section, const Curve& curve, int element,
                                 const QuadratureRule& rule) {
    section.validate();
    return integrate_element(section, curve, element, rule, {true, true});
}

GlobalSystem assemble_serial(const Section& section, const Curve& curve, const QuadratureRule& rule) {
    check_assembly_inputs(section, rule);
    GlobalSystem sys = empty_system(curve);
    const int ne = curve.knot_vector().num_elements();
    for (int e = 0; e < ne; ++e) {
        scatter(sys, integrate_element(section, curve, e, rule, {true, true}));
    }
    return sys;
}

GlobalSystem assemble(const Section& section, const Curve& curve, const QuadratureRule& rule) {
    check_assembly_inputs(section, rule);
    GlobalSystem sys = empty_system(curve);
    const int ne = curve.knot_vector().num_elements();
    std::vector<ElementMatrices> elements(static_cast<std::size_t>(ne));

#pragma omp parallel for schedule(static)
    for (int e = 0; e < ne; ++e) {
        elements[static_cast<std::size_t>(e)] = integrate_element(section, curve, e, rule, {true, true});
    }

    for (const ElementMatrices& em : elements) scatter(sys, em);
    return sys;
}

GlobalSystem apply_bc(const GlobalSystem& system, BoundaryCondition bc) {
    const int ncp = system.num_control_points;
    const int last = ncp - 1;
    std::vector<int> fixed;
    const auto pin = [&](int cp) {
        fixed.push_back(kDofsPerControlPoint * cp + static_cast<int>(Dof::U));
        fixed.push_back(kDofsPerControlPoint * cp + static_cast<int>(Dof::V));
    };
    const auto clamp = [&](int cp) {
        pin(cp);
        fixed.push_back(kDofsPerControlPoint * cp + static_cast<int>(Dof::Phi));
    };
    switch (bc) {
        case BoundaryCondition::PinnedPinned: pin(0); pin(last); break;
        case BoundaryCondition::ClampedClamped: clamp(0); clamp(last); break;
        case BoundaryCondition::ClampedFree: clamp(0); break;
        case BoundaryCondition::FreeFree: break;
    }

    std::vector<int> constrained = system.constrained;
    std::vector<int> keep;  // reduced indices of the input system to retain
    std::vector<int> drop;
    for (int i = 0; i < system.size(); ++i) {
        const int full = system.dof_map[static_cast<std::size_t>(i)];
        if (std::find(fixed.begin(), fixed.end(), full) != fixed.end()) {
            constrained.push_back(full);
            drop.push_back(i);
        } else {
            keep.push_back(i);
        }
    }
    std::sort(constrained.begin(), constrained.end());
    constrained.erase(std::unique(constrained.begin(), constrained.end()), constrained.end());

    GlobalSystem out;
    out.num_control_points = ncp;
    out.constrained = std::move(constrained);
    const auto nk = static_cast<Eigen::Index>(keep.size());
    out.K.resize(nk, nk);
    out.M.resize(nk, nk);
    for (Eigen::Index r = 0; r < nk; ++r) {
        const int sr = keep[static_cast<std::size_t>(r)];
        out.dof_map.push_back(system.dof_map[static_cast<std::size_t>(sr)]);
        for (Eigen::Index c = 0; c < nk; ++c) {
            const int sc = keep[static_cast<std::size_t>(c)];
            out.K(r, c) = system.K(sr, sc);
            out.M(r, c) = system.M(sr, sc);
        }
    }

    // A rigid vector survives only if it vanishes on every eliminated DOF.
    std::vector<Eigen::Index> admissible;
    for (Eigen::Index j = 0; j < system.rigid_basis.cols(); ++j) {
        bool ok = true;
        for (int i : drop) ok = ok && system.rigid_basis(i, j) == 0.0;
        if (ok) admissible.push_back(j);
    }
    out.rigid_basis.resize(nk, static_cast<Eigen::Index>(admissible.size()));
    for (std::size_t a = 0; a < admissible.size(); ++a) {
        for (Eigen::Index r = 0; r < nk; ++r) {
            out.rigid_basis(r, static_cast<Eigen::Index>(a)) =
                system.rigid_basis(keep[static_cast<std::size_t>(r)], admissible[a]);
        }
    }
    return out;
}

std::vector<Eigen::VectorXd> rigid_body_modes(const Curve& curve) {
    const int ncp = curve.num_control_points();
    const Eigen::Index n = kDofsPerControlPoint * ncp;
    const auto x = curve.control_x();
    std::vector<Eigen::VectorXd> modes(3, Eigen::VectorXd::Zero(n));
    for (int k = 0; k < ncp; ++k) {
        modes[0](3 * k + 0) = 1.0;
        modes[1](3 * k + 1) = 1.0;
        modes[2](3 * k + 1) = -x[static_cast<std::size_t>(k)];
        modes[2](3 * k + 2) = 1.0;
    }
    return modes;
}

double relative_asymmetry(const Eigen::MatrixXd& a) {
    const double scale = a.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    return (a - a.transpose()).cwiseAbs().maxCoeff() / scale;
}

} // namespace igabeam
