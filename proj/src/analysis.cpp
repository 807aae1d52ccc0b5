#include "igabeam/analysis.hpp"

#include "igabeam/csv.hpp"
#include "igabeam/errors.hpp"
#include "igabeam/oracle.hpp"
#include "igabeam/quadrature.hpp"

#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <string>

namespace igabeam {

namespace {

// Non-dimensional frequency parameters, nu = 0.3, kappa = 5/6.
// Rows: modes 1..10. Columns: h/L = 0.002, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2.
constexpr TableGrid kPinnedPinned = {{
    {3.1417, 3.1415, 3.1413, 3.1405, 3.135, 3.1157, 3.0453},
    {6.2839, 6.2828, 6.2811, 6.2747, 6.2314, 6.0907, 5.6716},
    {9.4271, 9.4234, 9.4177, 9.3964, 9.2554, 8.8405, 7.8395},
    {12.5718, 12.5632, 12.5497, 12.4995, 12.1814, 11.3431, 9.6571},
    {15.7187, 15.7017, 15.6755, 15.5787, 14.9928, 13.6132, 11.2221},
    {18.8682, 18.8388, 18.7937, 18.6286, 17.6812, 15.6792, 12.6023},
    {22.021, 21.9742, 21.9028, 21.645, 20.245, 17.5707, 13.0323},
    {25.1776, 25.1075, 25.0014, 24.6237, 22.6866, 19.3144, 13.4443},
    {28.3388, 28.2386, 28.0882, 27.5614, 25.0117, 20.9328, 13.8434},
    {31.5052, 31.3672, 31.162, 30.4553, 27.2271, 22.4445, 14.4378},
}};

constexpr TableGrid kClampedClamped = {{
    {4.72998, 4.72963, 4.72840, 4.72350, 4.68991, 4.57955, 4.24201},
    {7.9272, 7.8877, 7.8606, 7.8321, 7.7042, 7.3314, 6.418},
    {11.1019, 11.0423, 10.9991, 10.9396, 10.641, 9.8563, 8.2853},
    {14.2781, 14.1946, 14.1304, 14.0223, 13.4622, 12.1456, 9.9038},
    {17.4574, 17.3452, 17.2541, 17.0761, 16.1602, 14.2327, 11.3488},
    {20.6401, 20.4939, 20.3685, 20.0964, 18.7332, 16.149, 12.6403},
    {23.827, 23.6404, 23.4724, 23.0791, 21.184, 17.9218, 13.4567},
    {27.0187, 26.7843, 26.5644, 26.0209, 23.5185, 19.5727, 13.8102},
    {30.216, 29.9254, 29.6431, 28.9188, 25.7439, 21.1189, 14.4806},
    {33.4195, 33.0636, 32.7075, 31.7707, 27.8682, 22.5739, 14.9384},
}};

constexpr std::array<double, kTableModes> kPinnedClt = {3.14159, 6.28319, 9.42478, 12.5664, 15.708,
                                                       18.8496, 21.9911, 25.1327, 28.2743, 31.4159};
constexpr std::array<double, kTableModes> kClampedClt = {4.73004, 7.8532, 10.9956, 14.1372, 17.2788,
                                                        20.4204, 23.5619, 26.7035, 29.8451, 32.9867};

void check_table(int which) {
    if (which != 1 && which != 2) throw InputError("table must be 1 or 2, got " + std::to_string(which));
}

std::string describe(const AnalysisConfig& c) {
    std::ostringstream os;
    os << "analysis (bc=" << to_code(c.bc) << ", h/L=" << c.h_over_L << ", p=" << c.degree
       << ", elements=" << c.elements << ", refinement=" << to_code(c.refinement) << ")";
    return os.str();
}

// Runs body(i) for i in [0, n), optionally across OpenMP threads, and
// rethrows the first exception (by index) on the calling thread.
template <class Body>
void for_each_index(int n, bool parallel, Body&& body) {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace

Curve build_curve(const AnalysisConfig& config) {
    config.validate();
    const Curve coarse = make_straight_beam(1.0);
    switch (config.refinement) {
        case Refinement::H:
        case Refinement::K:
            return k_refine(coarse, config.degree, config.elements);
        case Refinement::P:
            return p_refine(coarse, config.degree, config.elements);
    }
    throw InputError("unknown refinement");
}

AnalysisResult run_analysis(const AnalysisConfig& config) {
    try {
        config.validate();
        AnalysisResult r{config, Section::normalized(config.h_over_L, config.nu, config.kappa),
                         build_curve(config), {}, 0, 0, {}, {}, {}};
        const QuadratureRule rule = gauss_legendre(config.quadrature_order());
        const GlobalSystem reduced = apply_bc(assemble(r.section, r.curve, rule), config.bc);
        r.dofs = reduced.size();
        r.spectrum = solve_spectrum(reduced, r.section, 0);

        for (std::size_t i = 0; i < r.spectrum.size(); ++i) {
            const ModeKind kind = r.spectrum.kinds[i];
            if (kind == ModeKind::Rigid) {
                ++r.rigid_modes;
            } else if (kind == ModeKind::Bending && static_cast<int>(r.lambda.size()) < config.n_modes) {
                r.lambda.push_back(r.spectrum.lambda[i]);
                r.omega_nd.push_back(r.spectrum.omega_nd[i]);
                r.spectrum_index.push_back(i);
            }
        }
        return r;
    } catch (const InputError& e) {
        throw InputError(describe(config) + ": " + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError(describe(config) + ": " + e.what());
    }
}

void write_analysis_csv(std::ostream& out, const AnalysisResult& result) {
    CsvWriter csv(out, {"mode", "kind", "lambda", "omega_nd"});
    for (std::size_t i = 0; i < result.spectrum.size(); ++i) {
        if (result.spectrum.kinds[i] != ModeKind::Rigid) continue;
        csv.cell(0).cell(std::string(to_string(ModeKind::Rigid))).cell(0.0).cell(0.0);
        csv.end_row();
    }
    for (std::size_t k = 0; k < result.lambda.size(); ++k) {
        csv.cell(static_cast<int>(k + 1))
            .cell(std::string(to_string(ModeKind::Bending)))
            .cell(result.lambda[k])
            .cell(result.omega_nd[k]);
        csv.end_row();
    }
}

const TableGrid& published_table(int which) {
    check_table(which);
    return which == 1 ? kPinnedPinned : kClampedClamped;
}

const std::array<double, kTableModes>& published_clt(int which) {
    check_table(which);
    return which == 1 ? kPinnedClt : kClampedClt;
}

BoundaryCondition table_boundary_condition(int which) {
    check_table(which);
    return which == 1 ? BoundaryCondition::PinnedPinned : BoundaryCondition::ClampedClamped;
}

TableResult reproduce_table(int which, const TableOptions& options) {
    TableResult table;
    table.which = which;
    const BoundaryCondition bc = table_boundary_condition(which);
    for (int m = 0; m < kTableModes; ++m) table.clt[static_cast<std::size_t>(m)] = clt_frequency(bc, m + 1);

    const int n = static_cast<int>(kTableRatios.size());
    for_each_index(n, options.parallel, [&](int j) {
        AnalysisConfig c;
        c.bc = bc;
        c.h_over_L = kTableRatios[static_cast<std::size_t>(j)];
        c.degree = options.degree;
        c.elements = options.elements;
        c.refinement = Refinement::K;
        c.n_modes = kTableModes;
        const AnalysisResult r = run_analysis(c);
        if (static_cast<int>(r.lambda.size()) < kTableModes) {
            throw InputError("discretization too coarse for " + std::to_string(kTableModes) + " modes");
        }
        for (int m = 0; m < kTableModes; ++m) {
            table.lambda[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] =
                r.lambda[static_cast<std::size_t>(m)];
        }
    });
    return table;
}

void write_table_csv(std::ostream& out, const TableResult& table) {
    const TableGrid& published = published_table(table.which);
    CsvWriter csv(out, {"mode", "clt", "h_over_L", "lambda", "published", "rel_dev"});
    for (std::size_t m = 0; m < kTableModes; ++m) {
        for (std::size_t j = 0; j < kTableRatios.size(); ++j) {
            const double value = table.lambda[m][j];
            const double ref = published[m][j];
            csv.cell(static_cast<int>(m + 1))
                .cell(table.clt[m])
                .cell(kTableRatios[j])
                .cell(value)
                .cell(ref)
                .cell((value - ref) / ref);
            csv.end_row();
        }
    }
}

bool is_nested_sweep(const std::vector<int>& element_counts) {
    for (std::size_t i = 1; i < element_counts.size(); ++i) {
        const int prev = element_counts[i - 1];
        const int next = element_counts[i];
        if (prev < 1 || next < prev || next % prev != 0) return false;
    }
    return true;
}

ConvergenceStudy convergence_study(const AnalysisConfig& base, const std::vector<int>& element_counts,
                                   bool parallel) {
    if (element_counts.empty()) throw InputError("convergence_study: no refinement levels given");
    base.validate();

    ConvergenceStudy study;
    study.nested = is_nested_sweep(element_counts);
    study.has_oracle = base.bc == BoundaryCondition::PinnedPinned;
    study.rows.resize(element_counts.size());

    std::vector<double> oracle;
    if (study.has_oracle) oracle = timoshenko_pinned_spectrum(base.h_over_L, base.nu, base.kappa, base.n_modes);

    for_each_index(static_cast<int>(element_counts.size()), parallel, [&](int i) {
        AnalysisConfig c = base;
        c.elements = element_counts[static_cast<std::size_t>(i)];
        const AnalysisResult r = run_analysis(c);
        ConvergenceRow& row = study.rows[static_cast<std::size_t>(i)];
        row.elements = c.elements;
        row.dofs = r.dofs;
        row.lambda = r.lambda;
        if (static_cast<int>(row.lambda.size()) < base.n_modes) {
            throw InputError("convergence_study: " + std::to_string(c.elements) + " elements resolve fewer than " +
                             std::to_string(base.n_modes) + " modes");
        }
        if (study.has_oracle) {
            for (std::size_t k = 0; k < row.lambda.size(); ++k) row.ratio_to_oracle.push_back(row.lambda[k] / oracle[k]);
        }
    });

    for (std::size_t i = 1; i < study.rows.size(); ++i) {
        const auto& prev = study.rows[i - 1].lambda;
        const auto& cur = study.rows[i].lambda;
        for (std::size_t k = 0; k < cur.size(); ++k) {
            if (cur[k] > prev[k] * (1.0 + 1e-12)) study.rows[i].monotone = false;
        }
    }
    return study;
}

void write_convergence_csv(std::ostream& out, const ConvergenceStudy& study) {
    const std::size_t modes = study.rows.empty() ? 0 : study.rows.front().lambda.size();
    std::vector<std::string> header = {"level", "elements", "dofs"};
    for (std::size_t k = 1; k <= modes; ++k) header.push_back("lambda_" + std::to_string(k));
    if (study.has_oracle) {
        for (std::size_t k = 1; k <= modes; ++k) header.push_back("ratio_" + std::to_string(k));
    }
    if (study.nested) header.push_back("monotone");

    CsvWriter csv(out, header);
    for (std::size_t i = 0; i < study.rows.size(); ++i) {
        const ConvergenceRow& row = study.rows[i];
        csv.cell(static_cast<int>(i)).cell(row.elements).cell(row.dofs);
        for (double v : row.lambda) csv.cell(v);
        for (double v : row.ratio_to_oracle) csv.cell(v);
        if (study.nested) csv.cell(row.monotone ? 1 : 0);
        csv.end_row();
    }
}

void write_mode_csv(std::ostream& out, const std::vector<ModeSample>& samples) {
    CsvWriter csv(out, {"x", "u", "v", "phi"});
    for (const ModeSample& s : samples) {
        csv.cell(s.x).cell(s.u).cell(s.v).cell(s.phi);
        csv.end_row();
    }
}

std::vector<std::filesystem::path> export_modes(const AnalysisConfig& config, const std::vector<int>& modes,
                                                int n_points, const std::filesystem::path& directory) {
    AnalysisConfig c = config;
    for (int k : modes) {
        if (k < 1) throw InputError("export_modes: mode numbers start at 1");
        c.n_modes = std::max(c.n_modes, k);
    }
    const AnalysisResult r = run_analysis(c);

    std::vector<std::filesystem::path> written;
    for (int k : modes) {
        if (k > static_cast<int>(r.lambda.size())) {
            throw InputError("export_modes: mode " + std::to_string(k) + " beyond the " +
                             std::to_string(r.lambda.size()) + " resolved transverse modes");
        }
        const auto& vec = r.spectrum.modes[r.spectrum_index[static_cast<std::size_t>(k - 1)]];
        const std::vector<ModeSample> samples = sample_mode(r.curve, vec, n_points);

        const std::filesystem::path path = directory / ("mode_" + std::to_string(k) + ".csv");
        std::ofstream out(path, std::ios::binary);
        if (!out) throw InputError("cannot write " + path.string());
        write_mode_csv(out, samples);
        if (!out) throw InputError("failed writing " + path.string());
        written.push_back(path);
    }
    return written;
}

} // namespace igabeam
