#include "igabeam/nurbs.hpp"

#include "igabeam/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace igabeam {

namespace {

// Homogeneous coefficients: one row per control point, columns (w*x, w).
Eigen::MatrixXd to_homogeneous(const Curve& curve) {
    const auto x = curve.control_x();
    const auto w = curve.weights();
    Eigen::MatrixXd pw(static_cast<Eigen::Index>(x.size()), 2);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        pw(r, 0) = w[i] * x[i];
        pw(r, 1) = w[i];
    }
    return pw;
}

Curve from_homogeneous(const Eigen::MatrixXd& pw, KnotVector kv) {
    std::vector<double> x(static_cast<std::size_t>(pw.rows()));
    std::vector<double> w(x.size());
    for (Eigen::Index r = 0; r < pw.rows(); ++r) {
        w[static_cast<std::size_t>(r)] = pw(r, 1);
        x[static_cast<std::size_t>(r)] = pw(r, 0) / pw(r, 1);
    }
    return Curve(std::move(x), std::move(w), std::move(kv));
}

struct Coefficients {
    std::vector<double> knots;
    Eigen::MatrixXd rows;
};

// Boehm insertion of one knot into an arbitrary set of coefficient columns.
// Only the knot sequence and degree are needed; validation is the caller's.
Coefficients insert_into(const std::vector<double>& knots, int p,
                         const Eigen::MatrixXd& coeffs, double xi) {
    // span k with knots[k] <= xi < knots[k+1], restricted to the valid range
    const int n = static_cast<int>(coeffs.rows());
    int k = static_cast<int>(std::upper_bound(knots.begin(), knots.end(), xi) - knots.begin()) - 1;
    k = std::clamp(k, p, n - 1);

    Coefficients out;
    out.knots = knots;
    out.knots.insert(out.knots.begin() + k + 1, xi);
    out.rows.resize(n + 1, coeffs.cols());

    for (int i = 0; i <= k - p; ++i) out.rows.row(i) = coeffs.row(i);
    for (int i = k + 1; i <= n; ++i) out.rows.row(i) = coeffs.row(i - 1);
    for (int i = k - p + 1; i <= k; ++i) {
        const double denom = knots[static_cast<std::size_t>(i + p)] - knots[static_cast<std::size_t>(i)];
        const double alpha = (xi - knots[static_cast<std::size_t>(i)]) / denom;
        out.rows.row(i) = alpha * coeffs.row(i) + (1.0 - alpha) * coeffs.row(i - 1);
    }
    return out;
}

int count_equal(const std::vector<double>& knots, double v) {
    return static_cast<int>(std::count(knots.begin(), knots.end(), v));
}

// Insert every interior breakpoint up to multiplicity p; the result holds the
// Bernstein coefficients of each span, consecutive spans sharing an end row.
Coefficients bezier_extract(const std::vector<double>& knots, int p, const Eigen::MatrixXd& coeffs) {
    Coefficients c{knots, coeffs};
    std::vector<double> interior;
    const double a = knots.front();
    const double b = knots.back();
    for (double v : knots) {
        if (v > a && v < b && (interior.empty() || interior.back() != v)) interior.push_back(v);
    }
    for (double v : interior) {
        while (count_equal(c.knots, v) < p) c = insert_into(c.knots, p, c.rows, v);
    }
    return c;
}

} // namespace

// ---------------------------------------------------------------------------
// KnotVector
// ---------------------------------------------------------------------------

KnotVector::KnotVector(std::vector<double> knots, int degree)
    : knots_(std::move(knots)), degree_(degree) {
    if (degree_ < 0) throw InputError("knot vector: negative degree");
    const auto m = knots_.size();
    const auto p = static_cast<std::size_t>(degree_);
    if (m < 2 * (p + 1)) throw InputError("knot vector: too few knots for degree");
    for (std::size_t i = 1; i < m; ++i) {
        if (!(knots_[i] >= knots_[i - 1])) throw InputError("knot vector: knots must be non-decreasing");
    }
    if (!(knots_.back() > knots_.front())) throw InputError("knot vector: empty parametric range");
    if (multiplicity(knots_.front()) != degree_ + 1 || multiplicity(knots_.back()) != degree_ + 1) {
        throw InputError("knot vector: end knots must have multiplicity p+1");
    }
    for (double v : breakpoints()) {
        if (v != knots_.front() && v != knots_.back() && multiplicity(v) > degree_) {
            std::ostringstream os;
            os << "knot vector: interior knot " << v << " exceeds multiplicity p=" << degree_;
            throw InputError(os.str());
        }
    }
}

std::vector<double> KnotVector::breakpoints() const {
    std::vector<double> out;
    for (double v : knots_) {
        if (out.empty() || out.back() != v) out.push_back(v);
    }
    return out;
}

std::vector<int> KnotVector::element_spans() const {
    std::vector<int> spans;
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        if (knots_[i + 1] > knots_[i]) spans.push_back(static_cast<int>(i));
    }
    return spans;
}

int KnotVector::multiplicity(double xi) const noexcept {
    return count_equal(knots_, xi);
}

KnotVector make_open_uniform(int degree, int num_elements) {
    if (degree < 1) throw InputError("make_open_uniform: degree must be >= 1");
    if (num_elements < 1) throw InputError("make_open_uniform: need at least one element");
    std::vector<double> knots(static_cast<std::size_t>(degree), 0.0);
    for (int e = 0; e <= num_elements; ++e) {
        knots.push_back(static_cast<double>(e) / static_cast<double>(num_elements));
    }
    knots.insert(knots.end(), static_cast<std::size_t>(degree), 1.0);
    return KnotVector(std::move(knots), degree);
}

int find_span(const KnotVector& kv, double xi) {
    const auto knots = kv.knots();
    if (!(xi >= kv.front() && xi <= kv.back())) {
        std::ostringstream os;
        os << "find_span: parameter " << xi << " outside [" << kv.front() << ", " << kv.back() << "]";
        throw InputError(os.str());
    }
    const int n = kv.num_basis();
    if (xi == kv.back()) return n - 1;
    const auto it = std::upper_bound(knots.begin(), knots.end(), xi);
    return static_cast<int>(it - knots.begin()) - 1;
}

BasisEval eval_basis(const KnotVector& kv, double xi) {
    const int p = kv.degree();
    const int span = find_span(kv, xi);
    const auto U = kv.knots();
    const auto up = static_cast<std::size_t>(p);

    // Upper triangle ndu[r][j]: degree-j values N_{span-j+r, j}. Lower
    // triangle: knot differences reused by the derivative pass.
    std::vector<std::vector<double>> ndu(up + 1, std::vector<double>(up + 1, 0.0));
    std::vector<double> left(up + 1, 0.0);
    std::vector<double> right(up + 1, 0.0);
    ndu[0][0] = 1.0;
    for (std::size_t j = 1; j <= up; ++j) {
        left[j] = xi - U[static_cast<std::size_t>(span) + 1 - j];
        right[j] = U[static_cast<std::size_t>(span) + j] - xi;
        double saved = 0.0;
        for (std::size_t r = 0; r < j; ++r) {
            ndu[j][r] = right[r + 1] + left[j - r];
            const double temp = ndu[r][j - 1] / ndu[j][r];
            ndu[r][j] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu[j][j] = saved;
    }

    BasisEval out;
    out.span = span;
    out.values.resize(up + 1);
    out.derivs.assign(up + 1, 0.0);
    for (std::size_t j = 0; j <= up; ++j) out.values[j] = ndu[j][up];
    if (p == 0) return out;

    // N'_{i,p} = p * (N_{i,p-1}/(u_{i+p}-u_i) - N_{i+1,p-1}/(u_{i+p+1}-u_{i+1}))
    for (std::size_t r = 0; r <= up; ++r) {
        double d = 0.0;
        if (r >= 1) d += ndu[r - 1][up - 1] / ndu[up][r - 1];
        if (r <= up - 1) d -= ndu[r][up - 1] / ndu[up][r];
        out.derivs[r] = static_cast<double>(p) * d;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Curve
// ---------------------------------------------------------------------------

Curve::Curve(std::vector<double> control_x, std::vector<double> weights, KnotVector kv)
    : control_x_(std::move(control_x)), weights_(std::move(weights)), kv_(std::move(kv)) {
    const auto n = static_cast<std::size_t>(kv_.num_basis());
    if (control_x_.size() != n || weights_.size() != n) {
        throw InputError("curve: control point count must equal the number of basis functions");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(weights_[i] > 0.0)) throw InputError("curve: weights must be strictly positive");
        if (!std::isfinite(control_x_[i])) throw InputError("curve: non-finite control abscissa");
        if (i > 0 && control_x_[i] < control_x_[i - 1]) {
            throw InputError("curve: control abscissae must be non-decreasing");
        }
    }
}

Curve::Curve(std::vector<double> control_x, KnotVector kv)
    : Curve(control_x, std::vector<double>(control_x.size(), 1.0), std::move(kv)) {}

bool Curve::is_polynomial() const noexcept {
    return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w == 1.0; });
}

std::vector<double> Curve::greville_parameters() const {
    const int p = kv_.degree();
    const auto U = kv_.knots();
    std::vector<double> g(control_x_.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (p == 0) {
            g[i] = 0.5 * (U[i] + U[i + 1]);
            continue;
        }
        double s = 0.0;
        for (int k = 1; k <= p; ++k) s += U[i + static_cast<std::size_t>(k)];
        g[i] = s / p;
    }
    return g;
}

BasisEval eval_nurbs(const Curve& curve, double xi) {
    BasisEval b = eval_basis(curve.knot_vector(), xi);
    const int first = b.first_index(curve.degree());
    const auto w = curve.weights();

    double W = 0.0;
    double dW = 0.0;
    for (std::size_t j = 0; j < b.values.size(); ++j) {
        const double q = w[static_cast<std::size_t>(first) + j];
        W += b.values[j] * q;
        dW += b.derivs[j] * q;
    }
    if (!(W > 0.0)) throw NumericalError("eval_nurbs: weighting function vanished");

    for (std::size_t j = 0; j < b.values.size(); ++j) {
        const double q = w[static_cast<std::size_t>(first) + j];
        const double r = b.values[j] * q / W;
        b.derivs[j] = q * (b.derivs[j] * W - b.values[j] * dW) / (W * W);
        b.values[j] = r;
    }
    return b;
}

GeometryPoint geometry_map(const Curve& curve, double xi) {
    const BasisEval b = eval_nurbs(curve, xi);
    const int first = b.first_index(curve.degree());
    const auto cx = curve.control_x();
    GeometryPoint g;
    for (std::size_t j = 0; j < b.values.size(); ++j) {
        g.x += b.values[j] * cx[static_cast<std::size_t>(first) + j];
        g.jacobian += b.derivs[j] * cx[static_cast<std::size_t>(first) + j];
    }
    if (!(g.jacobian > 0.0)) {
        std::ostringstream os;
        os << "geometry_map: non-positive Jacobian " << g.jacobian << " at xi=" << xi;
        throw NumericalError(os.str());
    }
    return g;
}

// ---------------------------------------------------------------------------
// Refinement
// ---------------------------------------------------------------------------

Curve insert_knot(const Curve& curve, double xi_new) {
    const KnotVector& kv = curve.knot_vector();
    if (!(xi_new > kv.front() && xi_new < kv.back())) {
        throw InputError("insert_knot: new knot must lie strictly inside the parametric range");
    }
    if (kv.multiplicity(xi_new) + 1 > kv.degree()) {
        throw InputError("insert_knot: multiplicity would exceed the degree");
    }
    const std::vector<double> knots(kv.knots().begin(), kv.knots().end());
    Coefficients c = insert_into(knots, kv.degree(), to_homogeneous(curve), xi_new);
    return from_homogeneous(c.rows, KnotVector(std::move(c.knots), kv.degree()));
}

Curve elevate_degree(const Curve& curve) {
    const KnotVector& kv = curve.knot_vector();
    const int p = kv.degree();
    const std::vector<double> knots(kv.knots().begin(), kv.knots().end());

    // 1. Bernstein coefficients per span.
    const Coefficients bez = bezier_extract(knots, p, to_homogeneous(curve));
    const int num_spans = kv.num_elements();

    // 2. Raise each Bernstein segment from degree p to p+1.
    const int q = p + 1;
    Eigen::MatrixXd raised(num_spans * q + 1, bez.rows.cols());
    for (int e = 0; e < num_spans; ++e) {
        const auto seg = bez.rows.middleRows(e * p, p + 1);
        for (int i = 0; i <= q; ++i) {
            const double a = static_cast<double>(i) / q;
            Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(bez.rows.cols());
            if (i > 0) row += a * seg.row(i - 1);
            if (i < q) row += (1.0 - a) * seg.row(i);
            raised.row(e * q + i) = row;
        }
    }

    // 3. Reassemble: every distinct knot gains one multiplicity. The target
    //    space's own extraction operator maps its coefficients onto the raised
    //    Bernstein rows; that consistent overdetermined system has an exact
    //    solution, recovered by QR.
    std::vector<double> target;
    for (double v : kv.breakpoints()) {
        target.insert(target.end(), static_cast<std::size_t>(kv.multiplicity(v) + 1), v);
    }
    KnotVector elevated(target, q);
    const int n_new = elevated.num_basis();
    const Coefficients extraction =
        bezier_extract(target, q, Eigen::MatrixXd::Identity(n_new, n_new));
    if (extraction.rows.rows() != raised.rows()) {
        throw NumericalError("elevate_degree: extraction size mismatch");
    }
    const Eigen::MatrixXd pw = extraction.rows.colPivHouseholderQr().solve(raised);
    const double residual = (extraction.rows * pw - raised).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, raised.cwiseAbs().maxCoeff());
    if (residual > 1e-10 * scale) {
        throw NumericalError("elevate_degree: reassembly is inconsistent");
    }
    return from_homogeneous(pw, std::move(elevated));
}

namespace {

void check_refinement_targets(const Curve& curve, int target_degree, int target_elements,
                              const char* who) {
    if (target_degree < curve.degree()) {
        throw InputError(std::string(who) + ": target degree below current degree");
    }
    if (target_elements < 1) throw InputError(std::string(who) + ": need at least one element");
    if (curve.knot_vector().num_elements() != 1) {
        throw InputError(std::string(who) +
                         ": curve must be the single-element (coarsest) representation");
    }
}

Curve insert_uniform(Curve c, int target_elements) {
    const double a = c.knot_vector().front();
    const double b = c.knot_vector().back();
    for (int e = 1; e < target_elements; ++e) {
        c = insert_knot(c, a + (b - a) * static_cast<double>(e) / target_elements);
    }
    return c;
}

} // namespace

Curve k_refine(const Curve& curve, int target_degree, int target_elements) {
    check_refinement_targets(curve, target_degree, target_elements, "k_refine");
    Curve c = curve;
    while (c.degree() < target_degree) c = elevate_degree(c);
    return insert_uniform(std::move(c), target_elements);
}

Curve p_refine(const Curve& curve, int target_degree, int target_elements) {
    check_refinement_targets(curve, target_degree, target_elements, "p_refine");
    Curve c = insert_uniform(curve, target_elements);
    while (c.degree() < target_degree) c = elevate_degree(c);
    return c;
}

Curve make_straight_beam(double length) {
    if (!(length > 0.0)) throw InputError("make_straight_beam: length must be positive");
    return Curve({0.0, length}, KnotVector({0.0, 0.0, 1.0, 1.0}, 1));
}

} // namespace igabeam
