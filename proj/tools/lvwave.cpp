// lvwave: traveling waves of the competitive Lotka-Volterra system.
//
// Exit codes: 0 success, 1 mathematical failure, 2 usage error.

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "lvwave/asymptotics.hpp"
#include "lvwave/construction.hpp"
#include "lvwave/errors.hpp"
#include "lvwave/io.hpp"
#include "lvwave/model_params.hpp"
#include "lvwave/pde_sim.hpp"
#include "lvwave/verification.hpp"

namespace fs = std::filesystem;
using namespace lvwave;

namespace {

constexpr int kOk = 0;
constexpr int kMathFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string config;
    std::optional<double> a1, a2, r, c, L, h, tol;
    std::string out = "out";
    int jobs = 1;
};

void add_common(CLI::App* app, Common& o) {
    app->add_option("--config", o.config, "flat key = value file (a1, a2, r, c, L, h, tol)");
    app->add_option("--a1", o.a1, "competition coefficient a1");
    app->add_option("--a2", o.a2, "competition coefficient a2");
    app->add_option("--r", o.r, "growth-rate ratio r");
    app->add_option("--c", o.c, "wave speed");
    app->add_option("--L", o.L, "half-width of the wave grid (default 60)");
    app->add_option("--h", o.h, "mesh spacing of the wave grid (default 0.02)");
    app->add_option("--out", o.out, "output directory")->capture_default_str();
    app->add_option("--tol", o.tol, "tolerance of the command's pass/fail check");
    app->add_option("--jobs", o.jobs, "concurrent runs in a sweep")->check(CLI::PositiveNumber);
}

/// Values from the config file fill in whatever the flags left unset.
void merge_config(Common& o) {
    if (o.config.empty()) return;
    const auto kv = read_config(o.config);
    std::map<std::string, std::optional<double>*> slots{{"a1", &o.a1}, {"a2", &o.a2}, {"r", &o.r},
                                                        {"c", &o.c},   {"L", &o.L},   {"h", &o.h},
                                                        {"tol", &o.tol}};
    for (const auto& [key, value] : kv) {
        auto it = slots.find(key);
        if (it == slots.end()) throw UsageError("unknown config key '" + key + "'");
        if (it->second->has_value()) continue;
        std::size_t pos = 0;
        double x = 0.0;
        try {
            x = std::stod(value, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != value.size()) throw UsageError("config key '" + key + "': bad number '" + value + "'");
        *it->second = x;
    }
}

ModelParams params_of(const Common& o) {
    if (!o.a1 || !o.a2 || !o.r) throw UsageError("--a1, --a2 and --r are required");
    try {
        return ModelParams(*o.a1, *o.a2, *o.r);
    } catch (const ValidationError& e) {
        throw UsageError(e.what());
    }
}

double speed_of(const Common& o) {
    if (!o.c) throw UsageError("--c is required");
    return *o.c;
}

Grid grid_of(const Common& o) {
    try {
        return Grid::from_spacing(o.L.value_or(60.0), o.h.value_or(0.02));
    } catch (const ValidationError& e) {
        throw UsageError(e.what());
    }
}

/// Collects stages and artifacts; written last.
class Manifest {
public:
    Manifest(std::string command, fs::path dir) : dir_(std::move(dir)) {
        j_["command"] = std::move(command);
        j_["deterministic"] = true;
        j_["output_directory"] = dir_.string();
        j_["stages"] = Json::array();
    }

    void set(const std::string& key, Json value) { j_[key] = std::move(value); }

    void stage(const std::string& name, const std::string& status,
               const std::vector<std::string>& artifacts = {}) {
        j_["stages"].push_back({{"name", name}, {"status", status}, {"artifacts", artifacts}});
    }

    int finish(int code) {
        j_["exit_code"] = code;
        write_json(dir_ / "manifest.json", j_);
        return code;
    }

private:
    fs::path dir_;
    Json j_;
};

void prepare_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create output directory " + dir.string());
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << text;
}

Json grid_json(const Grid& g) { return {{"L", g.half_width()}, {"h", g.spacing()}, {"nodes", g.size()}}; }

// ---------------------------------------------------------------- validate

int cmd_validate(Common& o) {
    merge_config(o);
    const ModelParams p = params_of(o);
    const HypothesisReport rep = validate_hypotheses(p);
    Json j{{"params", to_json(p)}, {"hypotheses", to_json(rep)}};
    std::cout << j.dump(2) << '\n';
    const fs::path dir = o.out;
    prepare_dir(dir);
    write_json(dir / "validate.json", j);
    Manifest m("validate", dir);
    m.set("params", to_json(p));
    m.stage("validate", rep.all() ? "pass" : "fail", {"validate.json"});
    return m.finish(rep.all() ? kOk : kMathFailure);
}

// ---------------------------------------------------------------- wave

struct WaveOutcome {
    std::optional<WaveRun> run;
    std::vector<RateComparison> rates;
    std::optional<SubcriticalDiagnostic> diagnostic;
    std::optional<HypothesisReport> failed_hypotheses;
    std::string error;
    bool residual_ok = false;
    bool rates_ok = false;

    bool ok() const { return run && residual_ok && rates_ok; }
};

constexpr double kResidualTolerance = 1e-9;

WaveOutcome run_wave(const ModelParams& p, double c, const Grid& g, double tol,
                     std::optional<double> l = std::nullopt) {
    WaveOutcome out;
    const HypothesisReport hr = validate_hypotheses(p);
    if (!hr.all()) {
        out.failed_hypotheses = hr;
        out.error = "hypotheses fail";
        return out;
    }
    if (classify_speed(p, c).regime == SpeedRegime::subcritical) {
        out.error = "subcritical speed: no monotone wave below c* = 2 sqrt(1 - a1)";
        if (c > 0.0) out.diagnostic = subcritical_diagnostic(p, c);
        return out;
    }
    try {
        out.run = compute_wave(p, c, g, l);
    } catch (const NumericalError& e) {
        out.error = e.what();
        return out;
    }
    out.residual_ok = out.run->result.trace.final_residual.max() < kResidualTolerance;
    out.rates = compare_rates(out.run->result.wave, p, c, tol);
    out.rates_ok = true;
    for (const auto& r : out.rates) out.rates_ok = out.rates_ok && r.pass;
    return out;
}

int cmd_wave(Common& o, std::optional<double> l) {
    merge_config(o);
    const ModelParams p = params_of(o);
    const double c = speed_of(o);
    const Grid g = grid_of(o);
    const double tol = o.tol.value_or(0.03);
    const fs::path dir = o.out;
    prepare_dir(dir);
    Manifest m("wave", dir);
    m.set("params", to_json(p));
    m.set("speed", c);
    m.set("grid", grid_json(g));

    WaveOutcome w = run_wave(p, c, g, tol, l);
    if (w.failed_hypotheses) {
        write_json(dir / "validate.json", {{"params", to_json(p)}, {"hypotheses", to_json(*w.failed_hypotheses)}});
        m.stage("validate", "fail", {"validate.json"});
        std::cerr << "lvwave: hypotheses fail\n";
        return m.finish(kMathFailure);
    }
    m.stage("validate", "pass");
    if (w.diagnostic) {
        write_json(dir / "diagnostic.json", {{"params", to_json(p)}, {"diagnostic", to_json(*w.diagnostic)}});
        m.stage("construct", "fail", {"diagnostic.json"});
        std::cerr << "lvwave: " << w.error << '\n';
        return m.finish(kMathFailure);
    }
    if (!w.run) {
        write_json(dir / "failure.json", {{"params", to_json(p)}, {"c", c}, {"error", w.error}});
        m.stage("iterate", "fail", {"failure.json"});
        std::cerr << "lvwave: " << w.error << '\n';
        return m.finish(kMathFailure);
    }
    write_profile_csv(dir / "wave.csv", w.run->result.wave);
    Json rep = wave_report(p, c, w.run->pair, w.run->result.trace);
    rep["residual_tolerance"] = kResidualTolerance;
    rep["residual_ok"] = w.residual_ok;
    write_json(dir / "wave.json", rep);
    m.stage("construct", "pass");
    m.stage("iterate", w.residual_ok ? "pass" : "fail", {"wave.csv", "wave.json"});

    write_json(dir / "rates.json", {{"tolerance", tol}, {"comparisons", to_json(w.rates)}});
    std::ostringstream csv;
    write_rates_csv(csv, w.rates);
    write_text(dir / "rates.csv", csv.str());
    m.stage("fit", w.rates_ok ? "pass" : "fail", {"rates.json", "rates.csv"});

    std::cout << "iterations " << w.run->result.trace.iterations << ", residual "
              << format_double(w.run->result.trace.final_residual.max()) << '\n';
    for (const auto& r : w.rates) {
        std::cout << to_string(r.end) << ' ' << to_string(r.component) << ": fitted "
                  << format_double(r.fitted) << " predicted " << format_double(r.predicted)
                  << (r.fit.polynomial_detected ? " (polynomial)" : "") << (r.pass ? " pass" : " FAIL")
                  << '\n';
    }
    return m.finish(w.ok() ? kOk : kMathFailure);
}

// ---------------------------------------------------------------- sweep

std::vector<double> parse_range(const std::string& spec) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) {
        std::size_t pos = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == 0 || pos != item.size()) throw UsageError("bad --range '" + spec + "'");
        parts.push_back(x);
    }
    if (parts.size() != 3 || parts[2] < 1.0 || parts[2] != std::floor(parts[2])) {
        throw UsageError("--range expects lo:hi:count");
    }
    const auto n = static_cast<int>(parts[2]);
    std::vector<double> out;
    for (int i = 0; i < n; ++i) {
        out.push_back(n == 1 ? parts[0] : parts[0] + (parts[1] - parts[0]) * i / (n - 1));
    }
    return out;
}

int cmd_sweep(Common& o, std::vector<double> speeds, const std::string& range) {
    merge_config(o);
    const ModelParams p = params_of(o);
    const Grid g = grid_of(o);
    const double tol = o.tol.value_or(0.03);
    if (!range.empty()) {
        const auto more = parse_range(range);
        speeds.insert(speeds.end(), more.begin(), more.end());
    }
    if (speeds.empty()) throw UsageError("sweep needs a nonempty --speeds list or --range");
    const fs::path dir = o.out;
    prepare_dir(dir);

    std::vector<WaveOutcome> rows(speeds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < speeds.size(); i = next++) {
            try {
                rows[i] = run_wave(p, speeds[i], g, tol);
            } catch (const std::exception& e) {
                rows[i] = WaveOutcome{};
                rows[i].error = e.what();
            }
        }
    };
    const int jobs = std::min<int>(o.jobs, static_cast<int>(speeds.size()));
    std::vector<std::thread> pool;
    for (int k = 1; k < jobs; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::ostringstream csv;
    csv << "c,regime,status,iterations,residual_u,residual_v";
    for (const char* n : {"minus_u", "minus_v", "plus_u", "plus_v"}) {
        csv << ",fitted_" << n << ",predicted_" << n;
    }
    csv << ",polynomial_minus,discriminant,message\n";
    bool all = true;
    for (std::size_t i = 0; i < speeds.size(); ++i) {
        const WaveOutcome& w = rows[i];
        const double c = speeds[i];
        all = all && w.ok();
        csv << format_double(c) << ',' << to_string(classify_speed(p, c).regime) << ','
            << (w.ok() ? "pass" : "fail") << ',';
        if (w.run) {
            const auto& t = w.run->result.trace;
            csv << t.iterations << ',' << format_double(t.final_residual.u) << ','
                << format_double(t.final_residual.v);
        } else {
            csv << ",,";
        }
        for (std::size_t k = 0; k < 4; ++k) {
            if (k < w.rates.size()) {
                csv << ',' << format_double(w.rates[k].fitted) << ','
                    << format_double(w.rates[k].predicted);
            } else {
                csv << ",,";
            }
        }
        csv << ',' << (w.rates.empty() ? "" : (w.rates[0].fit.polynomial_detected ? "1" : "0")) << ',';
        if (w.diagnostic) csv << format_double(w.diagnostic->discriminant);
        std::string msg = w.error;
        for (char& ch : msg) {
            if (ch == ',' || ch == '\n') ch = ';';
        }
        csv << ',' << msg << '\n';
    }
    write_text(dir / "sweep.csv", csv.str());
    std::cout << csv.str();
    Manifest m("sweep", dir);
    m.set("params", to_json(p));
    m.set("speeds", speeds);
    m.set("grid", grid_json(g));
    m.stage("sweep", all ? "pass" : "fail", {"sweep.csv"});
    return m.finish(all ? kOk : kMathFailure);
}

// ---------------------------------------------------------------- simulate

struct SimOptions {
    double X = 400.0;
    double dx = 0.1;
    double dt = 0.1;
    double T = 200.0;
    double level = 0.5;
    double burn_in = 0.5;
    double snapshot_interval = 0.0;
    std::string init = "step";
    bool explicit_diffusion = false;
};

int cmd_simulate(Common& o, const SimOptions& so) {
    merge_config(o);
    const ModelParams p = params_of(o);
    const fs::path dir = o.out;
    prepare_dir(dir);
    Manifest m("simulate", dir);
    m.set("params", to_json(p));
    if (!validate_hypotheses(p).h1) {
        std::cerr << "lvwave: simulation needs 0 < a1 < 1 < a2, r > 0\n";
        m.stage("simulate", "fail");
        return m.finish(kMathFailure);
    }

    Json summary{{"params", to_json(p)}, {"init", so.init}, {"T", so.T}, {"level", so.level}};
    if (so.init == "wave") {
        const double c = speed_of(o);
        const Grid g = grid_of(o);
        m.set("speed", c);
        m.set("grid", grid_json(g));
        WaveOutcome w = run_wave(p, c, g, o.tol.value_or(0.03));
        if (!w.run) {
            std::cerr << "lvwave: " << w.error << '\n';
            m.stage("construct", "fail");
            return m.finish(kMathFailure);
        }
        m.stage("construct", "pass");
        const TranslationReport rep = wave_translation_test(p, c, w.run->result.wave, so.T);
        std::ostringstream csv;
        csv << "t,x_front\n";
        for (const auto& f : rep.fronts) csv << format_double(f.t) << ',' << format_double(f.x) << '\n';
        write_text(dir / "trace.csv", csv.str());
        summary["translation"] = to_json(rep);
        write_json(dir / "simulate.json", summary);
        std::cout << summary["translation"].dump(2) << '\n';
        m.stage("simulate", rep.ok() ? "pass" : "fail", {"trace.csv", "simulate.json"});
        return m.finish(rep.ok() ? kOk : kMathFailure);
    }

    SimConfig cfg;
    cfg.X = so.X;
    cfg.dx = so.dx;
    cfg.dt = so.dt;
    cfg.T = so.T;
    cfg.level = so.level;
    if (so.init == "step") {
        cfg.init = InitialKind::step;
    } else if (so.init == "smoothed_step") {
        cfg.init = InitialKind::smoothed_step;
    } else {
        throw UsageError("--init must be step, smoothed_step or wave");
    }
    cfg.scheme = so.explicit_diffusion ? DiffusionScheme::explicit_euler : DiffusionScheme::implicit;

    std::vector<std::string> artifacts{"trace.csv", "simulate.json"};
    std::ofstream snaps;
    if (so.snapshot_interval > 0.0) {
        snaps.open(dir / "snapshots.csv");
        snaps << "t,x,u,v\n";
        artifacts.push_back("snapshots.csv");
        cfg.snapshot_interval = so.snapshot_interval;
        const double x0 = cfg.x_min, dx = cfg.dx;
        cfg.sink = [&snaps, x0, dx](const Snapshot& s) {
            for (std::size_t i = 0; i < s.u.size(); ++i) {
                snaps << format_double(s.t) << ',' << format_double(x0 + static_cast<double>(i) * dx)
                      << ',' << format_double(s.u[i]) << ',' << format_double(s.v[i]) << '\n';
            }
        };
    }
    SimTrace tr;
    try {
        tr = simulate(p, cfg);
    } catch (const ValidationError& e) {
        throw UsageError(e.what());
    }
    snaps.close();
    std::ostringstream csv;
    write_trace_csv(csv, tr);
    write_text(dir / "trace.csv", csv.str());
    summary["X"] = so.X;
    summary["dx"] = so.dx;
    summary["dt"] = so.dt;
    summary["boundary_hit"] = tr.boundary_hit;
    summary["box_violation"] = tr.box_violation;
    summary["final_time"] = tr.final_time;
    summary["minimal_speed"] = minimal_speed(p);
    int code = kOk;
    try {
        const SpeedEstimate s = estimate_speed(tr, so.burn_in);
        summary["speed_estimate"] = to_json(s);
        summary["relative_to_minimal_speed"] = s.speed / minimal_speed(p);
    } catch (const std::exception& e) {
        summary["speed_estimate"] = nullptr;
        summary["error"] = e.what();
        code = kMathFailure;
    }
    write_json(dir / "simulate.json", summary);
    std::cout << summary.dump(2) << '\n';
    m.stage("simulate", code == kOk ? "pass" : "fail", artifacts);
    return m.finish(code);
}

// ---------------------------------------------------------------- verify / rates

struct LoadedRun {
    ModelParams p{0, 0, 0};
    double c = 0.0;
    double l = 0.0;
    WaveProfile wave{Grid(1.0, 3), {0, 0.5, 1}, {0, 0.5, 1}};
};

LoadedRun load_run(const fs::path& dir) {
    const Json j = read_json(dir / "wave.json");
    try {
        const auto& pj = j.at("params");
        return {ModelParams(pj.at("a1").get<double>(), pj.at("a2").get<double>(), pj.at("r").get<double>()),
                j.at("c").get<double>(), j.at("l").get<double>(), read_profile_csv(dir / "wave.csv")};
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("malformed wave.json: " + std::string(e.what()));
    }
}

int cmd_verify(Common& o, const std::string& run_dir, std::optional<double> c_sub) {
    merge_config(o);
    std::optional<LoadedRun> lr;
    if (!run_dir.empty()) {
        lr = load_run(run_dir);
    } else {
        const ModelParams p = params_of(o);
        const double c = speed_of(o);
        WaveOutcome w = run_wave(p, c, grid_of(o), 0.03);
        if (!w.run) {
            std::cerr << "lvwave: " << w.error << '\n';
            return kMathFailure;
        }
        lr = LoadedRun{p, c, w.run->pair.l, w.run->result.wave};
    }
    const ModelParams& p = lr->p;
    const double c = lr->c;
    const WaveProfile& wave = lr->wave;
    const Grid& g = wave.grid();
    const fs::path dir = o.out;
    prepare_dir(dir);
    Manifest m("verify", dir);
    m.set("params", to_json(p));
    m.set("speed", c);
    m.set("grid", grid_json(g));

    Json j{{"params", to_json(p)}, {"c", c}};
    const double N = g.half_width() - 5.0;
    const ComparisonReport cmp = sliding_comparison(wave.shifted(1.0), wave, p, c, N);
    j["sliding_comparison"] = to_json(cmp);

    // A second, independent construction from another l in the admissible interval.
    const LInterval iv = l_interval(p);
    double l2 = iv.lo + 0.2 * (iv.hi - iv.lo);
    if (std::abs(l2 - lr->l) < 0.05 * (iv.hi - iv.lo)) l2 = iv.lo + 0.8 * (iv.hi - iv.lo);
    if (!(l2 > 0.0)) l2 = 0.5 * iv.hi;
    const double utol = o.tol.value_or(1e-4);
    bool unique_ok = false;
    try {
        const WaveRun other = compute_wave(p, c, g, l2);
        const UniquenessReport u = uniqueness_check(wave, other.result.wave, utol);
        j["uniqueness"] = to_json(u);
        j["uniqueness"]["l_first"] = lr->l;
        j["uniqueness"]["l_second"] = l2;
        unique_ok = u.pass;
    } catch (const std::exception& e) {
        j["uniqueness"] = {{"error", e.what()}, {"pass", false}};
    }

    const MonotonicityReport mono = monotonicity_certificate(wave, p, c);
    j["monotonicity"] = to_json(mono);

    const double cs = c_sub.value_or(minimal_speed(p) / std::sqrt(2.0));
    bool sub_ok = false;
    try {
        const SubcriticalDiagnostic d = subcritical_diagnostic(p, cs);
        j["subcritical"] = to_json(d);
        sub_ok = d.evidence;
    } catch (const ValidationError& e) {
        throw UsageError(e.what());
    }
    const bool all = cmp.ordered && unique_ok && mono.strictly_increasing && sub_ok;
    j["all_pass"] = all;
    write_json(dir / "verify.json", j);
    std::cout << "sliding comparison " << (cmp.ordered ? "ordered" : "violated") << "\nuniqueness "
              << (unique_ok ? "pass" : "fail") << "\nmonotonicity "
              << (mono.strictly_increasing ? "pass" : "fail") << "\nsubcritical evidence "
              << (sub_ok ? "yes" : "no") << '\n';
    m.stage("verify", all ? "pass" : "fail", {"verify.json"});
    return m.finish(all ? kOk : kMathFailure);
}

int cmd_rates(Common& o, const std::string& run_dir, const std::string& profile) {
    merge_config(o);
    std::optional<LoadedRun> lr;
    if (!run_dir.empty()) {
        lr = load_run(run_dir);
    } else if (!profile.empty()) {
        lr = LoadedRun{params_of(o), speed_of(o), 0.0, read_profile_csv(profile)};
    } else {
        throw UsageError("rates needs --run DIR or --profile FILE");
    }
    const double tol = o.tol.value_or(0.03);
    if (classify_speed(lr->p, lr->c).regime == SpeedRegime::subcritical) {
        std::cerr << "lvwave: subcritical speed has no predicted rates\n";
        return kMathFailure;
    }
    const auto rates = compare_rates(lr->wave, lr->p, lr->c, tol);
    const fs::path dir = o.out;
    prepare_dir(dir);
    write_json(dir / "rates.json", {{"params", to_json(lr->p)}, {"c", lr->c}, {"tolerance", tol},
                                    {"predicted", to_json(predicted_exponents(lr->p, classify_speed(lr->p, lr->c)))},
                                    {"comparisons", to_json(rates)}});
    std::ostringstream csv;
    write_rates_csv(csv, rates);
    write_text(dir / "rates.csv", csv.str());
    std::cout << csv.str();
    bool all = true;
    for (const auto& r : rates) all = all && r.pass;
    Manifest m("rates", dir);
    m.set("params", to_json(lr->p));
    m.set("speed", lr->c);
    m.stage("fit", all ? "pass" : "fail", {"rates.json", "rates.csv"});
    return m.finish(all ? kOk : kMathFailure);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Traveling waves of the competitive Lotka-Volterra system"};
    // -h is the mesh spacing, so help is long-form only.
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);

    Common validate_o, wave_o, sweep_o, sim_o, verify_o, rates_o;
    auto* validate = app.add_subcommand("validate", "check the parameter hypotheses");
    add_common(validate, validate_o);

    auto* wave = app.add_subcommand("wave", "construct a wave and fit its tails");
    add_common(wave, wave_o);
    std::optional<double> l;
    wave->add_option("--l", l, "upper-solution parameter (default: midpoint of its interval)");

    auto* sweep = app.add_subcommand("sweep", "construct waves for a list of speeds");
    add_common(sweep, sweep_o);
    std::vector<double> speeds;
    std::string range;
    sweep->add_option("--speeds", speeds, "comma-separated speeds")->delimiter(',');
    sweep->add_option("--range", range, "lo:hi:count");

    auto* sim = app.add_subcommand("simulate", "integrate the parabolic system");
    add_common(sim, sim_o);
    SimOptions so;
    sim->add_option("--X", so.X, "domain length")->capture_default_str();
    sim->add_option("--dx", so.dx, "mesh spacing")->capture_default_str();
    sim->add_option("--dt", so.dt, "time step")->capture_default_str();
    sim->add_option("--T", so.T, "final time")->capture_default_str();
    sim->add_option("--level", so.level, "front tracking level")->capture_default_str();
    sim->add_option("--burn-in", so.burn_in, "fraction of samples discarded")->capture_default_str();
    sim->add_option("--snapshot-interval", so.snapshot_interval, "time between field snapshots");
    sim->add_option("--init", so.init, "step | smoothed_step | wave")->capture_default_str();
    sim->add_flag("--explicit", so.explicit_diffusion, "explicit diffusion (needs dt <= dx^2/2)");

    auto* verify = app.add_subcommand("verify", "comparison, uniqueness, monotonicity, subcritical checks");
    add_common(verify, verify_o);
    std::string verify_run;
    std::optional<double> c_sub;
    verify->add_option("--run", verify_run, "directory written by `wave`");
    verify->add_option("--c-sub", c_sub, "subcritical speed for the diagnostic (default c*/sqrt 2)");

    auto* rates = app.add_subcommand("rates", "fit tail rates of a stored profile");
    add_common(rates, rates_o);
    std::string rates_run, profile;
    rates->add_option("--run", rates_run, "directory written by `wave`");
    rates->add_option("--profile", profile, "profile CSV (needs --a1 --a2 --r --c)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*validate) return cmd_validate(validate_o);
        if (*wave) return cmd_wave(wave_o, l);
        if (*sweep) return cmd_sweep(sweep_o, speeds, range);
        if (*sim) return cmd_simulate(sim_o, so);
        if (*verify) return cmd_verify(verify_o, verify_run, c_sub);
        if (*rates) return cmd_rates(rates_o, rates_run, profile);
    } catch (const UsageError& e) {
        std::cerr << "lvwave: " << e.what() << '\n';
        return kUsage;
    } catch (const SubcriticalSpeedError& e) {
        std::cerr << "lvwave: " << e.what() << '\n';
        return kMathFailure;
    } catch (const ValidationError& e) {
        std::cerr << "lvwave: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "lvwave: " << e.what() << '\n';
        return kMathFailure;
    }
    return kUsage;
}
