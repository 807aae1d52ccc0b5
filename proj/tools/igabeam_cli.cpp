// igabeam: isogeometric Timoshenko beam free-vibration driver.
//
//   igabeam analyze  --bc pp --h-over-l 0.1 --degree 3 --elements 64
//   igabeam table    --which 1 [--serial] [--out table1.csv]
//   igabeam converge --bc pp --h-over-l 0.01 --levels 4,8,16,32,64
//   igabeam modes    --bc cc --modes 3 --points 101 --out modes/
//
// Exit codes: 0 success, 1 input error, 2 numerical failure.

#include "igabeam/analysis.hpp"
#include "igabeam/config.hpp"
#include "igabeam/errors.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace igabeam;

struct AnalysisFlags {
    std::string bc;
    double h_over_L = 0.0;
    int degree = 0;
    int elements = 0;
    int modes = 0;
    double nu = 0.0;
    double kappa = 0.0;
    int quad = 0;
    std::string refinement;
    std::string config_path;

    CLI::Option* bc_opt = nullptr;
    CLI::Option* h_opt = nullptr;
    CLI::Option* degree_opt = nullptr;
    CLI::Option* elements_opt = nullptr;
    CLI::Option* modes_opt = nullptr;
    CLI::Option* nu_opt = nullptr;
    CLI::Option* kappa_opt = nullptr;
    CLI::Option* quad_opt = nullptr;
    CLI::Option* refinement_opt = nullptr;

    void attach(CLI::App* app) {
        bc_opt = app->add_option("--bc", bc, "Boundary condition: pp, cc, cf or ff");
        h_opt = app->add_option("--h-over-l", h_over_L, "Thickness-to-length ratio h/L");
        degree_opt = app->add_option("--degree", degree, "Spline degree p");
        elements_opt = app->add_option("--elements", elements, "Number of elements (knot spans)");
        modes_opt = app->add_option("--modes", modes, "Number of transverse modes");
        nu_opt = app->add_option("--nu", nu, "Poisson's ratio (default 0.3)");
        kappa_opt = app->add_option("--kappa", kappa, "Shear correction factor (default 5/6)");
        quad_opt = app->add_option("--quad", quad, "Gauss points per element (default p+1)");
        refinement_opt = app->add_option("--refinement", refinement, "Refinement: k (default), h or p");
        app->add_option("--config", config_path, "Configuration file (key = value lines)");
    }

    // Config file first, explicit flags override.
    [[nodiscard]] AnalysisConfig resolve(AnalysisConfig base = {}) const {
        AnalysisConfig c = config_path.empty() ? base : load_config(config_path, base);
        if (bc_opt->count()) c.bc = parse_boundary_condition(bc);
        if (h_opt->count()) c.h_over_L = h_over_L;
        if (degree_opt->count()) c.degree = degree;
        if (elements_opt->count()) c.elements = elements;
        if (modes_opt->count()) c.n_modes = modes;
        if (nu_opt->count()) c.nu = nu;
        if (kappa_opt->count()) c.kappa = kappa;
        if (quad_opt->count()) c.quadrature_points = quad;
        if (refinement_opt->count()) c.refinement = parse_refinement(refinement);
        c.validate();
        return c;
    }
};

// Writes to `path` when given, stdout otherwise.
template <class Emit>
void emit_to(const std::string& path, Emit&& emit) {
    if (path.empty()) {
        emit(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    emit(out);
    if (!out) throw InputError("failed writing " + path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isogeometric free-vibration analysis of Timoshenko beams"};
    app.require_subcommand(1);

    bool serial = false;
    std::string out_path;
    app.add_flag("--serial", serial, "Single-threaded, deterministic execution");

    AnalysisFlags analyze_flags;
    CLI::App* analyze = app.add_subcommand("analyze", "Single analysis: transverse frequency parameters");
    analyze_flags.attach(analyze);
    analyze->add_option("--out", out_path, "Output CSV (default stdout)");
    analyze->add_flag("--serial", serial, "Single-threaded, deterministic execution");

    int which = 1;
    int table_degree = 3;
    int table_elements = 64;
    CLI::App* table = app.add_subcommand("table", "Reproduce a benchmark frequency table");
    table->add_option("--which", which, "1: pinned-pinned, 2: clamped-clamped")->required()
        ->check(CLI::IsMember({1, 2}));
    table->add_option("--degree", table_degree, "Spline degree (default 3)");
    table->add_option("--elements", table_elements, "Elements (default 64)");
    table->add_option("--out", out_path, "Output CSV (default stdout)");
    table->add_flag("--serial", serial, "Single-threaded, deterministic execution");

    AnalysisFlags converge_flags;
    std::vector<int> levels = {4, 8, 16, 32, 64};
    CLI::App* converge = app.add_subcommand("converge", "Convergence sweep over element counts");
    converge_flags.attach(converge);
    converge->add_option("--levels", levels, "Element counts, e.g. 4,8,16,32,64")->delimiter(',');
    converge->add_option("--out", out_path, "Output CSV (default stdout)");
    converge->add_flag("--serial", serial, "Single-threaded, deterministic execution");

    AnalysisFlags modes_flags;
    int points = 101;
    std::string mode_dir = ".";
    CLI::App* modes = app.add_subcommand("modes", "Export mode shapes (x,u,v,phi) as mode_<k>.csv");
    modes_flags.attach(modes);
    modes->add_option("--points", points, "Samples per mode (default 101)");
    modes->add_option("--out", mode_dir, "Output directory (default .)");
    modes->add_flag("--serial", serial, "Single-threaded, deterministic execution");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (serial) omp_set_num_threads(1);

    try {
        if (analyze->parsed()) {
            const AnalysisResult r = run_analysis(analyze_flags.resolve());
            emit_to(out_path, [&](std::ostream& os) { write_analysis_csv(os, r); });
        } else if (table->parsed()) {
            TableOptions opts;
            opts.degree = table_degree;
            opts.elements = table_elements;
            opts.parallel = !serial;
            const TableResult t = reproduce_table(which, opts);
            emit_to(out_path, [&](std::ostream& os) { write_table_csv(os, t); });
        } else if (converge->parsed()) {
            AnalysisConfig base = converge_flags.resolve();
            const ConvergenceStudy study = convergence_study(base, levels, !serial);
            if (!study.nested) {
                std::cerr << "note: element counts are not nested; monotonicity column omitted\n";
            }
            emit_to(out_path, [&](std::ostream& os) { write_convergence_csv(os, study); });
        } else if (modes->parsed()) {
            const AnalysisConfig c = modes_flags.resolve();
            std::vector<int> which_modes;
            for (int k = 1; k <= c.n_modes; ++k) which_modes.push_back(k);
            std::filesystem::create_directories(mode_dir);
            for (const auto& path : export_modes(c, which_modes, points, mode_dir)) {
                std::cout << path.string() << '\n';
            }
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
