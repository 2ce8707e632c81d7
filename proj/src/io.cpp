#include "lvwave/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lvwave/errors.hpp"

namespace lvwave {

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_profile_csv(std::ostream& os, const WaveProfile& w) {
    os << "xi,u,v\n";
    const Grid& g = w.grid();
    for (std::size_t i = 0; i < g.size(); ++i) {
        os << format_double(g.node(i)) << ',' << format_double(w.u()[i]) << ','
           << format_double(w.v()[i]) << '\n';
    }
}

void write_profile_csv(const std::filesystem::path& path, const WaveProfile& w) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    write_profile_csv(os, w);
}

void write_kpp_csv(std::ostream& os, const KppWave& w) {
    os << "# d1=" << format_double(w.spec.d1) << " d2=" << format_double(w.spec.d2)
       << " b=" << format_double(w.spec.b) << " c=" << format_double(w.c) << '\n';
    os << "xi,u,v\n";
    const Grid& g = w.profile.grid();
    for (std::size_t i = 0; i < g.size(); ++i) {
        const std::string s = format_double(w.profile[i]);
        os << format_double(g.node(i)) << ',' << s << ',' << s << '\n';
    }
}

namespace {

double parse_number(const std::string& s, std::size_t line) {
    double x = 0.0;
    const char* b = s.data();
    const char* e = b + s.size();
    auto res = std::from_chars(b, e, x);
    if (res.ec != std::errc() || res.ptr != e) {
        throw ValidationError("line " + std::to_string(line) + ": bad number '" + s + "'");
    }
    return x;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

WaveProfile read_profile_csv(std::istream& is) {
    std::string line;
    std::vector<double> xi, u, v;
    bool header = false;
    std::size_t no = 0;
    while (std::getline(is, line)) {
        ++no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line != "xi,u,v") throw ValidationError("profile CSV must start with xi,u,v");
            header = true;
            continue;
        }
        std::stringstream ss(line);
        std::string a, b, c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c)) {
            throw ValidationError("line " + std::to_string(no) + ": expected three columns");
        }
        xi.push_back(parse_number(trim(a), no));
        u.push_back(parse_number(trim(b), no));
        v.push_back(parse_number(trim(c), no));
    }
    if (xi.size() < 3) throw ValidationError("profile CSV has fewer than 3 rows");
    const Grid g(-xi.front(), xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        if (std::abs(xi[i] - g.node(i)) > 1e-9 * g.half_width()) {
            throw ValidationError("profile CSV is not on a uniform symmetric grid");
        }
    }
    return WaveProfile(g, std::move(u), std::move(v));
}

WaveProfile read_profile_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot read " + path.string());
    return read_profile_csv(is);
}

std::map<std::string, std::string> parse_config(std::istream& is) {
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t no = 0;
    while (std::getline(is, line)) {
        ++no;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        std::string key, value;
        if (auto eq = line.find('='); eq != std::string::npos) {
            key = trim(line.substr(0, eq));
            value = trim(line.substr(eq + 1));
        } else if (auto sp = line.find_first_of(" \t"); sp != std::string::npos) {
            key = trim(line.substr(0, sp));
            value = trim(line.substr(sp + 1));
        }
        if (key.empty() || value.empty()) {
            throw ValidationError("config line " + std::to_string(no) + ": expected key = value");
        }
        out[key] = value;
    }
    return out;
}

std::map<std::string, std::string> read_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot read config " + path.string());
    return parse_config(is);
}

Json to_json(const ModelParams& p) { return {{"a1", p.a1()}, {"a2", p.a2()}, {"r", p.r()}}; }

Json to_json(const HypothesisReport& r) {
    return {{"h1", r.h1},
            {"h2", r.h2},
            {"h3", r.h3},
            {"all", r.all()},
            {"h1_margin", r.h1_margin},
            {"h2_margin", r.h2_margin},
            {"h3_margin", r.h3_margin}};
}

Json to_json(const ExponentSet& e) {
    return {{"lambda_minus", e.lambda_minus},
            {"mu_u_plus", e.mu_u_plus},
            {"mu_v_plus", e.mu_v_plus},
            {"branch", std::string(to_string(e.branch))},
            {"critical_polynomial", e.critical_polynomial}};
}

Json to_json(const DecayFit& f) {
    return {{"end", std::string(to_string(f.end))},
            {"component", std::string(to_string(f.component))},
            {"rate", f.rate},
            {"line_rate", f.line_rate},
            {"polynomial_detected", f.polynomial_detected},
            {"log_coefficient", f.log_coefficient},
            {"window", {f.window.a, f.window.b}},
            {"fit_residual", f.fit_residual},
            {"amplitude", f.amplitude}};
}

Json to_json(const RateComparison& r) {
    return {{"end", std::string(to_string(r.end))},
            {"component", std::string(to_string(r.component))},
            {"predicted", r.predicted},
            {"fitted", r.fitted},
            {"relative_error", r.relative_error},
            {"expected_polynomial", r.expected_polynomial},
            {"pass", r.pass},
            {"fit", to_json(r.fit)}};
}

Json to_json(const std::vector<RateComparison>& rs) {
    Json a = Json::array();
    for (const auto& r : rs) a.push_back(to_json(r));
    return a;
}

Json to_json(const ResidualNorms& r) { return {{"u", r.u}, {"v", r.v}}; }

Json to_json(const ComparisonReport& r) {
    Json j{{"N", r.N}, {"mu_path", r.mu_path}, {"ordered", r.ordered}, {"touch", nullptr}};
    if (r.touch) {
        j["touch"] = {{"mu", r.touch->mu},
                      {"component", std::string(to_string(r.touch->component))},
                      {"node", r.touch->node},
                      {"xi", r.touch->xi},
                      {"gap", r.touch->gap}};
    }
    return j;
}

Json to_json(const UniquenessReport& r) {
    return {{"theta", r.theta}, {"distance", r.distance}, {"tolerance", r.tolerance},
            {"pass", r.pass}};
}

Json to_json(const MonotonicityReport& r) {
    auto opt = [](const std::optional<std::size_t>& x) -> Json {
        return x ? Json(*x) : Json(nullptr);
    };
    return {{"strictly_increasing", r.strictly_increasing},
            {"failures", r.failures},
            {"first_failure_u", opt(r.first_failure_u)},
            {"first_failure_v", opt(r.first_failure_v)},
            {"rounding_band_nodes", r.rounding_band_nodes},
            {"min_difference_u", r.min_difference_u},
            {"min_difference_v", r.min_difference_v},
            {"derivative_residual", r.derivative_residual}};
}

Json to_json(const SubcriticalDiagnostic& d) {
    return {{"c", d.c},
            {"discriminant", d.discriminant},
            {"roots", {{{"re", d.root_plus.real()}, {"im", d.root_plus.imag()}},
                       {{"re", d.root_minus.real()}, {"im", d.root_minus.imag()}}}},
            {"complex_roots", d.complex_roots},
            {"newton_converged", d.newton_converged},
            {"newton_residual", d.newton_residual},
            {"sign_changes_u", d.sign_changes_u},
            {"min_u", d.min_u},
            {"left_box", d.left_box},
            {"evidence", d.evidence}};
}

Json to_json(const TranslationReport& r) {
    return {{"T", r.T},
            {"claimed_speed", r.claimed_speed},
            {"realized_speed", r.realized_speed},
            {"speed_relative_error", r.speed_relative_error},
            {"shift", r.shift},
            {"shape_error", r.shape_error},
            {"speed_ok", r.speed_ok},
            {"shape_ok", r.shape_ok}};
}

Json to_json(const SpeedEstimate& s) {
    return {{"speed", s.speed}, {"stderr", s.stderr_}, {"samples", s.samples}};
}

Json wave_report(const ModelParams& p, double c, const OrderedPair& pair,
                 const IterationTrace& trace) {
    const SpeedSpec s = classify_speed(p, c);
    return {{"params", to_json(p)},
            {"c", c},
            {"regime", std::string(to_string(s.regime))},
            {"l", pair.l},
            {"nu", pair.nu},
            {"beta", trace.beta},
            {"iterations", trace.iterations},
            {"L", pair.lower.grid().half_width()},
            {"h", pair.lower.grid().spacing()},
            {"iteration_residual", to_json(trace.converged_residual)},
            {"final_residuals", to_json(trace.final_residual)},
            {"normalization_shift", trace.normalization_shift},
            {"left_boundary", {trace.left_u, trace.left_v}}};
}

void write_rates_csv(std::ostream& os, const std::vector<RateComparison>& rs) {
    os << "end,component,predicted,fitted,relative_error,polynomial_detected,expected_polynomial,"
          "window_a,window_b,amplitude,pass\n";
    for (const auto& r : rs) {
        os << to_string(r.end) << ',' << to_string(r.component) << ','
           << format_double(r.predicted) << ',' << format_double(r.fitted) << ','
           << format_double(r.relative_error) << ',' << (r.fit.polynomial_detected ? 1 : 0) << ','
           << (r.expected_polynomial ? 1 : 0) << ',' << format_double(r.fit.window.a) << ','
           << format_double(r.fit.window.b) << ',' << format_double(r.fit.amplitude) << ','
           << (r.pass ? 1 : 0) << '\n';
    }
}

void write_trace_csv(std::ostream& os, const SimTrace& tr) {
    os << "t,x_front\n";
    for (const auto& f : tr.fronts) os << format_double(f.t) << ',' << format_double(f.x) << '\n';
}

void write_json(const std::filesystem::path& path, const Json& j) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << j.dump(2) << '\n';
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ValidationError("cannot read " + path.string());
    try {
        return Json::parse(is);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

}  // namespace lvwave
