#pragma once

#include "igabeam/beam_assembly.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace igabeam {

/// How the coarse single-element line is refined to the analysis mesh.
///   k: elevate to the target degree, then insert knots (C^(p-1))
///   h: same space as k; in sweeps the degree stays fixed while elements grow
///   p: insert knots on the linear mesh, then elevate (C^0, FEA-like)
enum class Refinement { H, P, K };

std::string_view to_code(Refinement r) noexcept;
Refinement parse_refinement(std::string_view code);

struct AnalysisConfig {
    BoundaryCondition bc = BoundaryCondition::PinnedPinned;
    double h_over_L = 0.1;
    int degree = 3;
    int elements = 64;
    Refinement refinement = Refinement::K;
    std::optional<int> quadrature_points;  ///< default: degree + 1
    int n_modes = 10;
    double nu = 0.3;
    double kappa = 5.0 / 6.0;

    void validate() const;
    [[nodiscard]] int quadrature_order() const noexcept { return quadrature_points.value_or(degree + 1); }

    friend bool operator==(const AnalysisConfig&, const AnalysisConfig&) = default;
};

/// Flat `key = value` text; doubles are written with 17 significant digits
/// so that parse_config(serialize_config(c)) == c.
std::string serialize_config(const AnalysisConfig& config);

/// Parse over the defaults. Blank lines and `#` comments are ignored;
/// unknown keys and malformed values throw InputError.
AnalysisConfig parse_config(std::string_view text, AnalysisConfig base = {});

AnalysisConfig load_config(const std::filesystem::path& path, AnalysisConfig base = {});

} // namespace igabeam
