/**
 * @file analysis.hpp
 * @brief End-to-end drivers behind the command-line tool: single analyses,
 *        benchmark table reproduction, convergence sweeps and mode export.
 */

#pragma once

#include "igabeam/beam_assembly.hpp"
#include "igabeam/config.hpp"
#include "igabeam/eigensolver.hpp"
#include "igabeam/nurbs.hpp"

#include <array>
#include <filesystem>
#include <ostream>
#include <vector>

namespace igabeam {

/// Refined analysis geometry for a unit-length beam.
Curve build_curve(const AnalysisConfig& config);

struct AnalysisResult {
    AnalysisConfig config;
    Section section;
    Curve curve;
    Spectrum spectrum;
    int dofs = 0;         ///< retained DOFs after boundary conditions
    int rigid_modes = 0;
    /// Transverse (bending-class) modes, ascending, at most config.n_modes.
    std::vector<double> lambda;
    std::vector<double> omega_nd;
    std::vector<std::size_t> spectrum_index;  ///< position of each in `spectrum`
};

AnalysisResult run_analysis(const AnalysisConfig& config);

/// mode,kind,lambda,omega_nd; rigid modes are listed first with mode 0.
void write_analysis_csv(std::ostream& out, const AnalysisResult& result);

// ---------------------------------------------------------------------------
// Benchmark tables
// ---------------------------------------------------------------------------

inline constexpr int kTableModes = 10;
inline constexpr std::array<double, 7> kTableRatios = {0.002, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2};

using TableGrid = std::array<std::array<double, kTableRatios.size()>, kTableModes>;

/// Published frequency parameters: table 1 pinned-pinned, table 2
/// clamped-clamped, nu = 0.3, kappa = 5/6. Indexed [mode-1][ratio].
const TableGrid& published_table(int which);
/// Published classical-theory column for the same table.
const std::array<double, kTableModes>& published_clt(int which);

BoundaryCondition table_boundary_condition(int which);

struct TableOptions {
    int degree = 3;
    int elements = 64;
    bool parallel = true;
};

struct TableResult {
    int which = 1;
    TableGrid lambda{};
    std::array<double, kTableModes> clt{};
};

/// Runs the seven thickness ratios (in parallel unless options.parallel is false).
TableResult reproduce_table(int which, const TableOptions& options = {});

/// Long format, one row per (mode, ratio) ordered mode-major:
/// mode,clt,h_over_L,lambda,published,rel_dev
void write_table_csv(std::ostream& out, const TableResult& table);

// ---------------------------------------------------------------------------
// Convergence sweeps
// ---------------------------------------------------------------------------

struct ConvergenceRow {
    int elements = 0;
    int dofs = 0;
    std::vector<double> lambda;
    std::vector<double> ratio_to_oracle;  ///< empty when no closed form exists
    bool monotone = true;                 ///< vs previous level; meaningful only when nested
};

struct ConvergenceStudy {
    bool nested = true;
    bool has_oracle = false;
    std::vector<ConvergenceRow> rows;
};

/// True when every element count divides the next (uniform knot sets nest).
bool is_nested_sweep(const std::vector<int>& element_counts);

/// Re-runs `base` for each element count. Monotonicity (non-increasing
/// lambda, 1e-12 relative slack) is reported only for nested sweeps.
ConvergenceStudy convergence_study(const AnalysisConfig& base, const std::vector<int>& element_counts,
                                   bool parallel = true);

/// level,elements,dofs,lambda_1..,ratio_1.. (pp only),monotone (nested only)
void write_convergence_csv(std::ostream& out, const ConvergenceStudy& study);

// ---------------------------------------------------------------------------
// Mode shapes
// ---------------------------------------------------------------------------

/// Writes `mode_<k>.csv` (x,u,v,phi) into `directory` for each requested
/// transverse mode number k (1-based). Returns the written paths.
std::vector<std::filesystem::path> export_modes(const AnalysisConfig& config, const std::vector<int>& modes,
                                                int n_points, const std::filesystem::path& directory);

void write_mode_csv(std::ostream& out, const std::vector<ModeSample>& samples);

} // namespace igabeam
