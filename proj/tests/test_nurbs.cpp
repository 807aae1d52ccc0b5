#include <gtest/gtest.h>

#include "igabeam/errors.hpp"
#include "igabeam/nurbs.hpp"
#include "support/reference_oracles.hpp"

#include <numeric>
#include <random>

using namespace igabeam;
using igabeam::testing::cox_de_boor;
using igabeam::testing::finite_difference;

namespace {

std::vector<double> knots_of(const KnotVector& kv) { return {kv.knots().begin(), kv.knots().end()}; }

std::vector<double> samples(int n) {
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) xs.push_back(static_cast<double>(i) / (n - 1));
    return xs;
}

// Curves used by the property tests: several degrees, uniform and graded
// knots, and one rational case.
std::vector<Curve> test_curves() {
    std::vector<Curve> curves;
    for (int p = 1; p <= 5; ++p) curves.push_back(k_refine(make_straight_beam(2.5), p, 5));
    curves.push_back(Curve({0.0, 0.1, 0.5, 0.7, 1.3, 2.0},
                           KnotVector({0, 0, 0, 0.1, 0.4, 0.4, 1, 1, 1}, 2)));
    curves.push_back(Curve({0.0, 0.3, 0.6, 1.0}, {1.0, 1.7, 0.8, 1.0},
                           KnotVector({0, 0, 0, 0.5, 1, 1, 1}, 2)));
    return curves;
}

double max_geometry_gap(const Curve& a, const Curve& b) {
    double gap = 0.0;
    for (double xi : samples(100)) gap = std::max(gap, std::abs(geometry_map(a, xi).x - geometry_map(b, xi).x));
    return gap;
}

} // namespace

TEST(KnotVector, OpenUniformExamples) {
    EXPECT_EQ(knots_of(make_open_uniform(2, 1)), (std::vector<double>{0, 0, 0, 1, 1, 1}));
    EXPECT_EQ(knots_of(make_open_uniform(2, 2)), (std::vector<double>{0, 0, 0, 0.5, 1, 1, 1}));
    const KnotVector kv = make_open_uniform(3, 4);
    EXPECT_EQ(kv.size(), 11u);
    EXPECT_EQ(kv.num_basis(), 7);
    EXPECT_EQ(kv.num_elements(), 4);
}

TEST(KnotVector, RejectsInvalidInput) {
    EXPECT_THROW(make_open_uniform(0, 3), InputError);
    EXPECT_THROW(make_open_uniform(2, 0), InputError);
    EXPECT_THROW(KnotVector({0, 0, 0.5, 0.4, 1, 1}, 1), InputError);       // decreasing
    EXPECT_THROW(KnotVector({0, 0, 1, 1, 1}, 1), InputError);              // end multiplicity
    EXPECT_THROW(KnotVector({0, 0, 0.5, 0.5, 1, 1}, 1), InputError);       // interior > p
    EXPECT_THROW(KnotVector({0, 0, 0, 0.5, 0.5, 0.5, 1, 1, 1}, 2), InputError);
    EXPECT_NO_THROW(KnotVector({0, 0, 0, 0.5, 0.5, 1, 1, 1}, 2));
}

TEST(FindSpan, Examples) {
    const KnotVector kv({0, 0, 0, 0.5, 1, 1, 1}, 2);
    EXPECT_EQ(find_span(kv, 0.25), 2);
    EXPECT_EQ(find_span(kv, 0.5), 3);
    EXPECT_EQ(find_span(kv, 1.0), 3);
    EXPECT_EQ(find_span(KnotVector({0, 0, 1, 1}, 1), 0.5), 1);
    EXPECT_THROW(find_span(kv, -1e-9), InputError);
    EXPECT_THROW(find_span(kv, 1.0 + 1e-12), InputError);
}

TEST(EvalBasis, Examples) {
    const BasisEval q = eval_basis(KnotVector({0, 0, 0, 1, 1, 1}, 2), 0.5);
    ASSERT_EQ(q.values.size(), 3u);
    EXPECT_DOUBLE_EQ(q.values[0], 0.25);
    EXPECT_DOUBLE_EQ(q.values[1], 0.5);
    EXPECT_DOUBLE_EQ(q.values[2], 0.25);

    const BasisEval l = eval_basis(KnotVector({0, 0, 1, 1}, 1), 0.3);
    EXPECT_NEAR(l.values[0], 0.7, 1e-15);
    EXPECT_NEAR(l.values[1], 0.3, 1e-15);
    EXPECT_NEAR(l.derivs[0], -1.0, 1e-15);
    EXPECT_NEAR(l.derivs[1], 1.0, 1e-15);
}

TEST(EvalBasis, MatchesTextbookRecursion) {
    for (const Curve& c : test_curves()) {
        const KnotVector& kv = c.knot_vector();
        const std::vector<double> U = knots_of(kv);
        for (double xi : samples(57)) {
            const BasisEval b = eval_basis(kv, xi);
            for (int i = 0; i < kv.num_basis(); ++i) {
                const int j = i - b.first_index(kv.degree());
                const double expected = cox_de_boor(U, i, kv.degree(), xi);
                const double got = (j >= 0 && j <= kv.degree()) ? b.values[static_cast<std::size_t>(j)] : 0.0;
                EXPECT_NEAR(got, expected, 1e-14) << "i=" << i << " xi=" << xi;
            }
        }
    }
}

TEST(EvalBasis, PartitionOfUnityNonNegativityLocalSupport) {
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (const Curve& c : test_curves()) {
        const KnotVector& kv = c.knot_vector();
        for (int s = 0; s < 1000; ++s) {
            const double xi = dist(rng);
            const BasisEval b = eval_basis(kv, xi);
            ASSERT_EQ(b.values.size(), static_cast<std::size_t>(kv.degree() + 1));
            EXPECT_NEAR(std::accumulate(b.values.begin(), b.values.end(), 0.0), 1.0, 1e-12);
            EXPECT_NEAR(std::accumulate(b.derivs.begin(), b.derivs.end(), 0.0), 0.0, 1e-10);
            for (double v : b.values) {
                EXPECT_GE(v, -1e-15);
                EXPECT_LE(v, 1.0 + 1e-15);
            }
            const BasisEval r = eval_nurbs(c, xi);
            EXPECT_NEAR(std::accumulate(r.values.begin(), r.values.end(), 0.0), 1.0, 1e-12);
            EXPECT_NEAR(std::accumulate(r.derivs.begin(), r.derivs.end(), 0.0), 0.0, 1e-10);
        }
    }
}

TEST(EvalBasis, DerivativesMatchFiniteDifferences) {
    const double h = 1e-6;
    for (const Curve& c : test_curves()) {
        const KnotVector& kv = c.knot_vector();
        const auto breaks = kv.breakpoints();
        for (double xi : samples(41)) {
            // Keep the stencil inside one span: derivatives of C^0 bases jump.
            const bool near_break = std::any_of(breaks.begin(), breaks.end(), [&](double k) {
                return std::abs(k - xi) < 2 * h && k != kv.front() && k != kv.back();
            });
            if (near_break) continue;
            const BasisEval r = eval_nurbs(c, xi);
            const int first = r.first_index(kv.degree());
            for (int j = 0; j <= kv.degree(); ++j) {
                const auto value_at = [&](double t) {
                    const BasisEval e = eval_nurbs(c, t);
                    const int k = first + j - e.first_index(kv.degree());
                    return (k >= 0 && k <= kv.degree()) ? e.values[static_cast<std::size_t>(k)] : 0.0;
                };
                const double fd = finite_difference(value_at, xi, h, kv.front(), kv.back());
                const double exact = r.derivs[static_cast<std::size_t>(j)];
                const double one_sided = (xi - h < kv.front() || xi + h > kv.back()) ? 1e-3 : 1e-5;
                EXPECT_NEAR(fd, exact, one_sided * std::max(1.0, std::abs(exact)))
                    << "xi=" << xi << " j=" << j;
            }
        }
    }
}

TEST(EvalNurbs, UnitWeightsReduceToBSplines) {
    const Curve c = k_refine(make_straight_beam(1.0), 3, 4);
    for (double xi : samples(33)) {
        const BasisEval b = eval_basis(c.knot_vector(), xi);
        const BasisEval r = eval_nurbs(c, xi);
        for (std::size_t j = 0; j < b.values.size(); ++j) {
            EXPECT_NEAR(r.values[j], b.values[j], 1e-15);
            EXPECT_NEAR(r.derivs[j], b.derivs[j], 1e-14);
        }
    }
}

TEST(EvalNurbs, RationalQuadraticByDirectSubstitution) {
    // N = {0.25, 0.5, 0.25} at xi = 0.5; W = 0.25*1 + 0.5*2 + 0.25*1 = 1.5;
    // R = {1/6, 2/3, 1/6}. Derivatives: N' = {-1, 0, 1}, W' = -1 + 0 + 1 = 0,
    // so R' = w N' / W = {-2/3, 0, 2/3}.
    const Curve c({0.0, 0.5, 1.0}, {1.0, 2.0, 1.0}, KnotVector({0, 0, 0, 1, 1, 1}, 2));
    const BasisEval r = eval_nurbs(c, 0.5);
    EXPECT_NEAR(r.values[0], 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(r.values[1], 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(r.values[2], 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(r.derivs[0], -2.0 / 3.0, 1e-15);
    EXPECT_NEAR(r.derivs[1], 0.0, 1e-15);
    EXPECT_NEAR(r.derivs[2], 2.0 / 3.0, 1e-15);
}

TEST(Curve, RejectsInvalidControlData) {
    const KnotVector kv({0, 0, 1, 1}, 1);
    EXPECT_THROW(Curve({0.0}, kv), InputError);
    EXPECT_THROW(Curve({0.0, 1.0}, {1.0, 0.0}, kv), InputError);
    EXPECT_THROW(Curve({1.0, 0.0}, kv), InputError);
}

TEST(GeometryMap, LinearMapAndEndInterpolation) {
    const Curve line = make_straight_beam(3.0);
    for (double xi : samples(11)) {
        const GeometryPoint g = geometry_map(line, xi);
        EXPECT_NEAR(g.x, 3.0 * xi, 1e-15);
        EXPECT_NEAR(g.jacobian, 3.0, 1e-15);
    }
    const Curve c = test_curves()[5];
    EXPECT_DOUBLE_EQ(geometry_map(c, 0.0).x, c.control_x().front());
    EXPECT_DOUBLE_EQ(geometry_map(c, 1.0).x, c.control_x().back());
}

TEST(GeometryMap, RejectsDegenerateJacobian) {
    // Coincident control points give J = 0 on the first span.
    const Curve flat({0.0, 0.0, 1.0}, KnotVector({0, 0, 0.5, 1, 1}, 1));
    EXPECT_THROW(geometry_map(flat, 0.25), NumericalError);
}

TEST(InsertKnot, QuadraticBezierExample) {
    const Curve c({0.0, 0.5, 1.0}, KnotVector({0, 0, 0, 1, 1, 1}, 2));
    const Curve r = insert_knot(c, 0.5);
    const std::vector<double> x(r.control_x().begin(), r.control_x().end());
    ASSERT_EQ(x.size(), 4u);
    EXPECT_NEAR(x[0], 0.0, 1e-15);
    EXPECT_NEAR(x[1], 0.25, 1e-15);
    EXPECT_NEAR(x[2], 0.75, 1e-15);
    EXPECT_NEAR(x[3], 1.0, 1e-15);
    EXPECT_EQ(r.knot_vector().size(), c.knot_vector().size() + 1);
    EXPECT_LE(max_geometry_gap(c, r), 1e-12);
}

TEST(InsertKnot, Errors) {
    const Curve c = k_refine(make_straight_beam(1.0), 2, 2);
    EXPECT_THROW(insert_knot(c, 0.0), InputError);
    EXPECT_THROW(insert_knot(c, 1.0), InputError);
    const Curve twice = insert_knot(c, 0.5);  // multiplicity 2 == p
    EXPECT_THROW(insert_knot(twice, 0.5), InputError);
}

TEST(Refinement, GeometryPreservationAndBookkeeping) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.01, 0.99);
    for (const Curve& c : test_curves()) {
        const int n = c.num_control_points();
        const int p = c.degree();

        double xi = dist(rng);
        while (c.knot_vector().multiplicity(xi) >= p) xi = dist(rng);
        const Curve ins = insert_knot(c, xi);
        EXPECT_EQ(ins.num_control_points(), n + 1);
        EXPECT_EQ(ins.knot_vector().size(), static_cast<std::size_t>(ins.num_control_points() + p + 1));
        EXPECT_LE(max_geometry_gap(c, ins), 1e-10);

        const Curve el = elevate_degree(c);
        const int distinct = static_cast<int>(c.knot_vector().breakpoints().size());
        EXPECT_EQ(el.degree(), p + 1);
        EXPECT_EQ(el.num_control_points(), n + distinct - 1);
        EXPECT_EQ(el.knot_vector().size(), static_cast<std::size_t>(el.num_control_points() + p + 2));
        for (double v : c.knot_vector().breakpoints()) {
            EXPECT_EQ(el.knot_vector().multiplicity(v), c.knot_vector().multiplicity(v) + 1);
        }
        EXPECT_LE(max_geometry_gap(c, el), 1e-10);
    }
}

TEST(ElevateDegree, LinearSegmentAsQuadratic) {
    const Curve q = elevate_degree(make_straight_beam(1.0));
    EXPECT_EQ(knots_of(q.knot_vector()), (std::vector<double>{0, 0, 0, 1, 1, 1}));
    ASSERT_EQ(q.num_control_points(), 3);
    EXPECT_NEAR(q.control_x()[0], 0.0, 1e-15);
    EXPECT_NEAR(q.control_x()[1], 0.5, 1e-15);
    EXPECT_NEAR(q.control_x()[2], 1.0, 1e-15);
}

TEST(ElevateDegree, TwoElementLinearCurve) {
    const Curve c({0.0, 0.3, 1.0}, KnotVector({0, 0, 0.5, 1, 1}, 1));
    const Curve e = elevate_degree(c);
    EXPECT_EQ(knots_of(e.knot_vector()), (std::vector<double>{0, 0, 0, 0.5, 0.5, 1, 1, 1}));
    EXPECT_LE(max_geometry_gap(c, e), 1e-10);
}

TEST(KRefine, CubicFourElements) {
    const Curve c = k_refine(make_straight_beam(1.0), 3, 4);
    EXPECT_EQ(knots_of(c.knot_vector()), (std::vector<double>{0, 0, 0, 0, 0.25, 0.5, 0.75, 1, 1, 1, 1}));
    EXPECT_EQ(c.num_control_points(), 7);
    EXPECT_LE(max_geometry_gap(make_straight_beam(1.0), c), 1e-10);
}

TEST(KRefine, SecondDerivativeContinuousAcrossInteriorKnot) {
    // For p = 3 and a simple knot, every basis function is C^2 at 0.5.
    // Second derivatives from one-sided finite differences of the exact
    // first derivatives must agree on both sides.
    const Curve c = k_refine(make_straight_beam(1.0), 3, 4);
    const KnotVector& kv = c.knot_vector();
    const double h = 1e-5;
    const auto deriv = [&](int i, double xi) {
        const BasisEval b = eval_basis(kv, xi);
        const int j = i - b.first_index(3);
        return (j >= 0 && j <= 3) ? b.derivs[static_cast<std::size_t>(j)] : 0.0;
    };
    const auto value = [&](int i, double xi) {
        const BasisEval b = eval_basis(kv, xi);
        const int j = i - b.first_index(3);
        return (j >= 0 && j <= 3) ? b.values[static_cast<std::size_t>(j)] : 0.0;
    };
    for (int i = 0; i < kv.num_basis(); ++i) {
        EXPECT_NEAR(value(i, 0.5 - 1e-12), value(i, 0.5 + 1e-12), 1e-10);
        EXPECT_NEAR(deriv(i, 0.5 - 1e-12), deriv(i, 0.5 + 1e-12), 1e-9);
        const double left = (deriv(i, 0.5 - 1e-12) - deriv(i, 0.5 - h)) / h;
        const double right = (deriv(i, 0.5 + h) - deriv(i, 0.5 + 1e-12)) / h;
        EXPECT_NEAR(left, right, 1e-2) << "basis " << i;
    }
}

TEST(KRefine, RejectsMisuse) {
    const Curve refined = k_refine(make_straight_beam(1.0), 2, 4);
    EXPECT_THROW(k_refine(refined, 3, 8), InputError);
    EXPECT_THROW(k_refine(make_straight_beam(1.0), 0, 4), InputError);
    EXPECT_THROW(k_refine(make_straight_beam(1.0), 2, 0), InputError);
}

TEST(PRefine, ZeroContinuityAtInteriorKnots) {
    const Curve c = p_refine(make_straight_beam(1.0), 3, 4);
    EXPECT_EQ(c.degree(), 3);
    for (double v : {0.25, 0.5, 0.75}) EXPECT_EQ(c.knot_vector().multiplicity(v), 3);
    EXPECT_EQ(c.num_control_points(), 13);
    EXPECT_LE(max_geometry_gap(make_straight_beam(1.0), c), 1e-10);
}
