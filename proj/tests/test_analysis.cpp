#include <gtest/gtest.h>

#include "igabeam/analysis.hpp"
#include "igabeam/csv.hpp"
#include "igabeam/errors.hpp"
#include "igabeam/oracle.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace igabeam;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
    return out;
}

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("igabeam_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST(Config, RoundTripsRandomConfigurations) {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> small(1, 12);
    const BoundaryCondition bcs[] = {BoundaryCondition::PinnedPinned, BoundaryCondition::ClampedClamped,
                                     BoundaryCondition::ClampedFree, BoundaryCondition::FreeFree};
    const Refinement refs[] = {Refinement::H, Refinement::P, Refinement::K};
    for (int trial = 0; trial < 200; ++trial) {
        AnalysisConfig c;
        c.bc = bcs[trial % 4];
        c.refinement = refs[trial % 3];
        c.h_over_L = 1e-4 + 0.4999 * unit(rng);
        c.degree = small(rng);
        c.elements = small(rng) * 7;
        c.n_modes = small(rng);
        c.nu = 0.01 + 0.48 * unit(rng);
        c.kappa = 0.5 + unit(rng);
        if (trial % 2 == 0) c.quadrature_points = small(rng);
        EXPECT_EQ(parse_config(serialize_config(c)), c) << serialize_config(c);
    }
}

TEST(Config, ParsesCommentsAndOverridesBase) {
    AnalysisConfig base;
    base.degree = 4;
    const AnalysisConfig c = parse_config("# thick beam\n\nbc = cc   # clamped\n  h_over_L=0.2\r\n", base);
    EXPECT_EQ(c.bc, BoundaryCondition::ClampedClamped);
    EXPECT_EQ(c.h_over_L, 0.2);
    EXPECT_EQ(c.degree, 4);
    EXPECT_FALSE(c.quadrature_points.has_value());
    EXPECT_EQ(c.quadrature_order(), 5);
}

TEST(Config, RejectsMalformedInput) {
    EXPECT_THROW(parse_config("colour = red\n"), InputError);
    EXPECT_THROW(parse_config("degree\n"), InputError);
    EXPECT_THROW(parse_config("degree = three\n"), InputError);
    EXPECT_THROW(parse_config("degree = 3.5\n"), InputError);
    EXPECT_THROW(parse_config("h_over_L = 0.1x\n"), InputError);
    EXPECT_THROW(parse_config("h_over_L = 0\n"), InputError);
    EXPECT_THROW(parse_config("h_over_L = 0.6\n"), InputError);
    EXPECT_THROW(parse_config("nu = 0.5\n"), InputError);
    EXPECT_THROW(parse_config("quadrature_points = 17\n"), InputError);
    EXPECT_THROW(parse_config("bc = sliding\n"), InputError);
    EXPECT_THROW(parse_config("refinement = q\n"), InputError);
    EXPECT_THROW(load_config("/nonexistent/igabeam.cfg"), InputError);
}

TEST(Csv, NumberFormatAndRowWidth) {
    EXPECT_EQ(format_number(3.14159265358979), "3.14159265");
    EXPECT_EQ(format_number(0.0), "0");
    EXPECT_EQ(format_number(1e-20), "1e-20");
    std::ostringstream os;
    CsvWriter w(os, {"a", "b"});
    w.cell(1).cell(std::string("x"));
    w.end_row();
    EXPECT_EQ(os.str(), "a,b\n1,x\n");
    w.cell(1.5);
    EXPECT_THROW(w.end_row(), std::logic_error);
}

TEST(BuildCurve, RefinementModes) {
    AnalysisConfig c;
    c.degree = 3;
    c.elements = 8;
    c.refinement = Refinement::K;
    EXPECT_EQ(build_curve(c).num_control_points(), 11);
    c.refinement = Refinement::H;
    EXPECT_EQ(build_curve(c).num_control_points(), 11);
    c.refinement = Refinement::P;
    EXPECT_EQ(build_curve(c).num_control_points(), 25);
}

TEST(RunAnalysis, PinnedThinBeamExample) {
    AnalysisConfig c;
    c.h_over_L = 0.01;
    const AnalysisResult r = run_analysis(c);
    ASSERT_EQ(r.lambda.size(), 10u);
    EXPECT_EQ(r.rigid_modes, 0);
    EXPECT_EQ(r.dofs, 3 * 67 - 4);
    for (int n = 1; n <= 10; ++n) {
        EXPECT_NEAR(r.lambda[n - 1], timoshenko_pinned(0.01, 0.3, 5.0 / 6.0, n), 1e-4 * n);
        EXPECT_NEAR(r.omega_nd[n - 1], r.lambda[n - 1] * r.lambda[n - 1], 1e-12 * r.omega_nd[n - 1]);
    }
}

TEST(RunAnalysis, FreeFreeCsvListsRigidModesFirst) {
    AnalysisConfig c;
    c.bc = BoundaryCondition::FreeFree;
    c.elements = 16;
    c.n_modes = 3;
    const AnalysisResult r = run_analysis(c);
    EXPECT_EQ(r.rigid_modes, 3);
    std::ostringstream os;
    write_analysis_csv(os, r);
    const auto lines = lines_of(os.str());
    ASSERT_EQ(lines.size(), 7u);
    EXPECT_EQ(lines[0], "mode,kind,lambda,omega_nd");
    EXPECT_EQ(lines[1], "0,rigid,0,0");
    EXPECT_EQ(lines[3], "0,rigid,0,0");
    EXPECT_EQ(split(lines[4])[0], "1");
    EXPECT_EQ(split(lines[4])[1], "bending");
    EXPECT_EQ(os.str().find('\r'), std::string::npos);
}

TEST(RunAnalysis, ErrorsCarryContext) {
    AnalysisConfig c;
    c.degree = 0;
    try {
        run_analysis(c);
        FAIL() << "expected InputError";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("bc=pp"), std::string::npos) << e.what();
    }
}

TEST(RunAnalysis, Deterministic) {
    AnalysisConfig c;
    c.bc = BoundaryCondition::ClampedClamped;
    c.h_over_L = 0.05;
    std::ostringstream a;
    std::ostringstream b;
    write_analysis_csv(a, run_analysis(c));
    write_analysis_csv(b, run_analysis(c));
    EXPECT_EQ(a.str(), b.str());
}

TEST(Table, CsvShapeAndSerialParallelAgreement) {
    TableOptions serial;
    serial.parallel = false;
    serial.elements = 32;
    TableOptions parallel = serial;
    parallel.parallel = true;
    const TableResult s = reproduce_table(2, serial);
    const TableResult p = reproduce_table(2, parallel);
    EXPECT_EQ(s.lambda, p.lambda);

    std::ostringstream os;
    write_table_csv(os, s);
    const auto lines = lines_of(os.str());
    ASSERT_EQ(lines.size(), 1u + kTableModes * kTableRatios.size());
    EXPECT_EQ(lines[0], "mode,clt,h_over_L,lambda,published,rel_dev");
    const auto first = split(lines[1]);
    ASSERT_EQ(first.size(), 6u);
    EXPECT_EQ(first[0], "1");
    EXPECT_EQ(first[2], "0.002");
    EXPECT_EQ(split(lines[8])[0], "2");
    EXPECT_THROW(reproduce_table(3), InputError);
}

TEST(Convergence, NestedSweepReportsMonotoneRatios) {
    EXPECT_TRUE(is_nested_sweep({4, 8, 16, 32}));
    EXPECT_TRUE(is_nested_sweep({3, 9, 27}));
    EXPECT_FALSE(is_nested_sweep({4, 6, 8}));

    AnalysisConfig c;
    c.h_over_L = 0.05;
    c.n_modes = 4;
    const ConvergenceStudy st = convergence_study(c, {4, 8, 16, 32});
    EXPECT_TRUE(st.nested);
    EXPECT_TRUE(st.has_oracle);
    ASSERT_EQ(st.rows.size(), 4u);
    for (const ConvergenceRow& row : st.rows) {
        EXPECT_TRUE(row.monotone);
        for (double ratio : row.ratio_to_oracle) EXPECT_GE(ratio, 1.0 - 1e-10);
    }
    EXPECT_NEAR(st.rows.back().ratio_to_oracle[0], 1.0, 1e-6);

    std::ostringstream os;
    write_convergence_csv(os, st);
    const auto lines = lines_of(os.str());
    EXPECT_EQ(lines[0],
              "level,elements,dofs,lambda_1,lambda_2,lambda_3,lambda_4,ratio_1,ratio_2,ratio_3,ratio_4,monotone");

    c.bc = BoundaryCondition::ClampedClamped;
    const ConvergenceStudy cc = convergence_study(c, {4, 6});
    EXPECT_FALSE(cc.nested);
    EXPECT_FALSE(cc.has_oracle);
    std::ostringstream os2;
    write_convergence_csv(os2, cc);
    EXPECT_EQ(lines_of(os2.str())[0], "level,elements,dofs,lambda_1,lambda_2,lambda_3,lambda_4");
    EXPECT_THROW(convergence_study(c, {}), InputError);
}

TEST(ExportModes, WritesSymmetricAndAntisymmetricShapes) {
    const auto dir = fresh_dir("modes");
    AnalysisConfig c;
    c.h_over_L = 0.02;
    c.elements = 32;
    const auto paths = export_modes(c, {1, 2}, 101, dir);
    ASSERT_EQ(paths.size(), 2u);
    EXPECT_EQ(paths[0].filename(), "mode_1.csv");

    for (std::size_t k = 0; k < 2; ++k) {
        std::ifstream in(paths[k]);
        std::stringstream buf;
        buf << in.rdbuf();
        const auto lines = lines_of(buf.str());
        ASSERT_EQ(lines.size(), 102u);
        EXPECT_EQ(lines[0], "x,u,v,phi");
        std::vector<double> v;
        for (std::size_t i = 1; i < lines.size(); ++i) v.push_back(std::stod(split(lines[i])[2]));
        const double parity = k == 0 ? 1.0 : -1.0;
        for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(v[i], parity * v[v.size() - 1 - i], 1e-8);
    }
    EXPECT_THROW(export_modes(c, {0}, 11, dir), InputError);
    c.elements = 2;
    c.degree = 1;
    EXPECT_THROW(export_modes(c, {9}, 11, dir), InputError);
    std::filesystem::remove_all(dir);
}
