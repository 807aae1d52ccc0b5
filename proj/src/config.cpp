#include "igabeam/config.hpp"

#include "igabeam/errors.hpp"
#include "igabeam/quadrature.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace igabeam {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view v) {
    // std::from_chars for double is available in libstdc++ 11.
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw InputError("config: bad real value '" + std::string(v) + "' for " + std::string(key));
    }
    return out;
}

int to_int(std::string_view key, std::string_view v) {
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw InputError("config: bad integer value '" + std::string(v) + "' for " + std::string(key));
    }
    return out;
}

std::string exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string_view to_code(Refinement r) noexcept {
    switch (r) {
        case Refinement::H: return "h";
        case Refinement::P: return "p";
        case Refinement::K: return "k";
    }
    return "?";
}

Refinement parse_refinement(std::string_view code) {
    if (code == "h") return Refinement::H;
    if (code == "p") return Refinement::P;
    if (code == "k") return Refinement::K;
    throw InputError("unknown refinement '" + std::string(code) + "' (expected h, p or k)");
}

void AnalysisConfig::validate() const {
    if (!(h_over_L > 0.0 && h_over_L <= 0.5)) throw InputError("config: h_over_L must lie in (0, 0.5]");
    if (degree < 1) throw InputError("config: degree must be >= 1");
    if (elements < 1) throw InputError("config: elements must be >= 1");
    if (n_modes < 1) throw InputError("config: n_modes must be >= 1");
    if (!(nu > 0.0 && nu < 0.5)) throw InputError("config: nu must lie in (0, 0.5)");
    if (!(kappa > 0.0)) throw InputError("config: kappa must be positive");
    if (quadrature_points && (*quadrature_points < 1 || *quadrature_points > kMaxQuadraturePoints)) {
        throw InputError("config: quadrature_points must lie in [1, 16]");
    }
}

std::string serialize_config(const AnalysisConfig& c) {
    std::ostringstream os;
    os << "# igabeam analysis configuration\n";
    os << "bc = " << to_code(c.bc) << '\n';
    os << "h_over_L = " << exact(c.h_over_L) << '\n';
    os << "degree = " << c.degree << '\n';
    os << "elements = " << c.elements << '\n';
    os << "refinement = " << to_code(c.refinement) << '\n';
    if (c.quadrature_points) os << "quadrature_points = " << *c.quadrature_points << '\n';
    os << "n_modes = " << c.n_modes << '\n';
    os << "nu = " << exact(c.nu) << '\n';
    os << "kappa = " << exact(c.kappa) << '\n';
    return os.str();
}

AnalysisConfig parse_config(std::string_view text, AnalysisConfig c) {
    int line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw InputError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));

        if (key == "bc") c.bc = parse_boundary_condition(value);
        else if (key == "h_over_L") c.h_over_L = to_double(key, value);
        else if (key == "degree") c.degree = to_int(key, value);
        else if (key == "elements") c.elements = to_int(key, value);
        else if (key == "refinement") c.refinement = parse_refinement(value);
        else if (key == "quadrature_points") c.quadrature_points = to_int(key, value);
        else if (key == "n_modes") c.n_modes = to_int(key, value);
        else if (key == "nu") c.nu = to_double(key, value);
        else if (key == "kappa") c.kappa = to_double(key, value);
        else throw InputError("config line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
    c.validate();
    return c;
}

AnalysisConfig load_config(const std::filesystem::path& path, AnalysisConfig base) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), base);
}

} // namespace igabeam
