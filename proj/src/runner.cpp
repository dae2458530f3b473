#include "gpv/runner.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gpv/inequalities.hpp"

namespace gpv {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---- config parsing -------------------------------------------------------

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
T require_field(const json& j, const std::string& field) {
    if (!j.contains(field))
        throw ConfigError("missing config field: " + field);
    try {
        return j.at(field).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("bad config field '" + field + "': " + e.what());
    }
}

template <class T>
T optional_field(const json& j, const std::string& field, T fallback) {
    if (!j.contains(field)) return fallback;
    try {
        return j.at(field).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("bad config field '" + field + "': " + e.what());
    }
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
}

}  // namespace

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> k = {
        "energy_conservation", "annular_bound", "localized_identity",
        "annular_budget",      "bg",            "gn",
        "freq_split",          "apriori",       "w_identity",
        "gronwall"};
    return k;
}

namespace {

RunConfig parse_run_config(const json& j) {
    RunConfig cfg;
    cfg.schema_version = optional_field<int>(j, "schema_version", 1);
    if (cfg.schema_version != 1)
        throw ConfigError("unsupported schema_version: " +
                          std::to_string(cfg.schema_version));

    json grid = require_field<json>(j, "grid");
    cfg.dim = require_field<int>(grid, "dim");
    cfg.n = require_field<int>(grid, "n");
    cfg.length = require_field<double>(grid, "length");

    json sc = require_field<json>(j, "scenario");
    cfg.scenario.kind =
        scenario_kind_from_string(require_field<std::string>(sc, "kind"));
    if (sc.contains("params")) {
        for (auto& [k, v] : sc.at("params").items()) {
            if (!v.is_number())
                throw ConfigError("scenario param '" + k + "' must be numeric");
            cfg.scenario.params[k] = v.get<double>();
        }
    }

    json integ = require_field<json>(j, "integrator");
    cfg.integrator.dt = require_field<double>(integ, "dt");
    cfg.integrator.t_end = require_field<double>(integ, "t_end");
    std::string method = optional_field<std::string>(integ, "method", "strang_split");
    if (method == "strang_split")
        cfg.integrator.method = Method::strang_split;
    else if (method == "rk4_oracle")
        cfg.integrator.method = Method::rk4_oracle;
    else
        throw ConfigError("unknown integrator method: " + method);
    cfg.integrator.save_every = optional_field<int>(integ, "save_every", 1);
    cfg.integrator.dealias = optional_field<bool>(integ, "dealias", true);

    cfg.checks = require_field<std::vector<std::string>>(j, "checks");
    for (const auto& c : cfg.checks) {
        const auto& k = known_checks();
        if (std::find(k.begin(), k.end(), c) == k.end())
            throw ConfigError("unknown check identifier: " + c);
    }
    cfg.bg_constant = optional_field<double>(j, "bg_constant", cfg.bg_constant);
    cfg.energy_tolerance =
        optional_field<double>(j, "energy_tolerance", cfg.energy_tolerance);
    cfg.localized_j =
        optional_field<std::vector<int>>(j, "localized_j", cfg.localized_j);
    cfg.output_dir = optional_field<std::string>(j, "output_dir", cfg.output_dir);
    cfg.format = optional_field<std::string>(j, "format", cfg.format);
    if (cfg.format != "csv" && cfg.format != "json")
        throw ConfigError("format must be csv or json");
    return cfg;
}

json run_config_to_json(const RunConfig& cfg) {
    json j;
    j["schema_version"] = cfg.schema_version;
    j["grid"] = {{"dim", cfg.dim}, {"n", cfg.n}, {"length", cfg.length}};
    json params = json::object();
    for (const auto& [k, v] : cfg.scenario.params) params[k] = v;
    j["scenario"] = {{"kind", to_string(cfg.scenario.kind)}, {"params", params}};
    j["integrator"] = {
        {"dt", cfg.integrator.dt},
        {"t_end", cfg.integrator.t_end},
        {"method", cfg.integrator.method == Method::strang_split ? "strang_split"
                                                                 : "rk4_oracle"},
        {"save_every", cfg.integrator.save_every},
        {"dealias", cfg.integrator.dealias}};
    j["checks"] = cfg.checks;
    j["bg_constant"] = cfg.bg_constant;
    j["energy_tolerance"] = cfg.energy_tolerance;
    j["localized_j"] = cfg.localized_j;
    j["output_dir"] = cfg.output_dir;
    j["format"] = cfg.format;
    return j;
}

}  // namespace

RunConfig parse_run_config_file(const std::string& path) {
    return parse_run_config(load_json(path));
}

std::string serialize_run_config(const RunConfig& cfg) {
    return run_config_to_json(cfg).dump(2);
}

// ---- output writers -------------------------------------------------------

namespace {

struct CheckSummary {
    std::string name;
    bool pass = true;
    json details = json::object();
};

struct TaggedVerdict {
    std::string check;
    double t = 0.0;
    InequalityVerdict v;
};

void write_frames(const RunConfig& cfg, const std::vector<DiagnosticsFrame>& frames) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    int J = frames.empty() ? 0 : frames.front().energy.annulus_count;
    if (cfg.format == "csv") {
        std::ofstream out(fs::path(cfg.output_dir) / "frames.csv");
        out << "# gpverify frames schema_version=1\n";
        out << "t,E_total,E_kin,E_pot,linf,grad_l2,lap_l2,w_l2";
        for (int j = 0; j < J; ++j) out << ",k_" << j;
        for (int j = 0; j < J; ++j) out << ",p_" << j;
        out << "\n";
        for (const auto& f : frames) {
            out << fmt_double(f.t) << ',' << fmt_double(f.energy.total) << ','
                << fmt_double(f.energy.kinetic) << ',' << fmt_double(f.energy.potential)
                << ',' << fmt_double(f.norms.linf) << ',' << fmt_double(f.norms.grad_l2)
                << ',' << fmt_double(f.norms.lap_l2) << ',' << fmt_double(f.w_l2);
            for (int j = 0; j < J; ++j)
                out << ',' << fmt_double(f.energy.annular_kinetic[std::size_t(j)]);
            for (int j = 0; j < J; ++j)
                out << ',' << fmt_double(f.energy.annular_potential[std::size_t(j)]);
            out << "\n";
        }
    } else {
        json arr = json::array();
        for (const auto& f : frames) {
            json fj;
            fj["t"] = f.t;
            fj["E_total"] = f.energy.total;
            fj["E_kin"] = f.energy.kinetic;
            fj["E_pot"] = f.energy.potential;
            fj["linf"] = f.norms.linf;
            fj["grad_l2"] = f.norms.grad_l2;
            fj["lap_l2"] = f.norms.lap_l2;
            fj["w_l2"] = f.w_l2;
            fj["k_j"] = f.energy.annular_kinetic;
            fj["p_j"] = f.energy.annular_potential;
            arr.push_back(std::move(fj));
        }
        std::ofstream out(fs::path(cfg.output_dir) / "frames.json");
        out << json{{"schema_version", 1}, {"frames", arr}}.dump(2) << "\n";
    }
}

void write_verdicts(const RunConfig& cfg, const std::vector<TaggedVerdict>& verdicts) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    if (cfg.format == "csv") {
        std::ofstream out(fs::path(cfg.output_dir) / "verdicts.csv");
        out << "# gpverify verdicts schema_version=1\n";
        out << "check,name,t,lhs,rhs,ratio,constant_used,pass\n";
        for (const auto& tv : verdicts) {
            out << tv.check << ',' << tv.v.name << ',' << fmt_double(tv.t) << ','
                << fmt_double(tv.v.lhs) << ',' << fmt_double(tv.v.rhs) << ','
                << fmt_double(tv.v.ratio) << ',' << fmt_double(tv.v.constant_used)
                << ',' << (tv.v.pass ? 1 : 0) << "\n";
        }
    } else {
        json arr = json::array();
        for (const auto& tv : verdicts) {
            arr.push_back({{"check", tv.check},
                           {"name", tv.v.name},
                           {"t", tv.t},
                           {"lhs", tv.v.lhs},
                           {"rhs", tv.v.rhs},
                           {"ratio", tv.v.ratio},
                           {"constant_used", tv.v.constant_used},
                           {"pass", tv.v.pass}});
        }
        std::ofstream out(fs::path(cfg.output_dir) / "verdicts.json");
        out << json{{"schema_version", 1}, {"verdicts", arr}}.dump(2) << "\n";
    }
}

void write_summary(const RunConfig& cfg, const std::vector<CheckSummary>& checks,
                   bool overall) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    json j;
    j["schema_version"] = 1;
    j["config"] = run_config_to_json(cfg);
    j["pass"] = overall;
    json cj = json::object();
    for (const auto& c : checks)
        cj[c.name] = {{"pass", c.pass}, {"details", c.details}};
    j["checks"] = cj;
    std::ofstream out(fs::path(cfg.output_dir) / "summary.json");
    out << j.dump(2) << "\n";
}

// Coarsen a trajectory by keeping every stride-th frame (always keeping the
// first); used to measure a residual's convergence order in the save cadence
// without rerunning.
Trajectory subsample(const Trajectory& traj, std::size_t stride) {
    Trajectory out;
    out.config = traj.config;
    for (std::size_t i = 0; i < traj.states.size(); i += stride) {
        out.times.push_back(traj.times[i]);
        out.states.push_back(traj.states[i]);
    }
    return out;
}

}  // namespace

// ---- run ------------------------------------------------------------------

namespace {

int run_impl(const RunConfig& cfg) {
    GridPtr grid = make_grid(cfg.dim, cfg.n, cfg.length);
    ComplexField u0 = generate(cfg.scenario, grid);

    std::vector<DiagnosticsFrame> frames;
    auto on_frame = [&frames](double t, const ComplexField& u) {
        DiagnosticsFrame f;
        f.t = t;
        f.energy = energy(u);
        f.norms = norms(u, 2);
        f.w_l2 = norm_l2(u_dot(u, false));
        frames.push_back(std::move(f));
    };
    Trajectory traj = evolve(u0, cfg.integrator, on_frame);

    const double e0 = frames.front().energy.total;
    std::vector<CheckSummary> summaries;
    std::vector<TaggedVerdict> verdicts;
    auto tag = [&](const std::string& check, double t, InequalityVerdict v) {
        verdicts.push_back({check, t, std::move(v)});
    };

    for (const std::string& check : cfg.checks) {
        CheckSummary cs;
        cs.name = check;
        if (check == "energy_conservation") {
            double drift = 0.0;
            for (const auto& f : frames)
                drift = std::max(drift, std::abs(f.energy.total - e0) /
                                            std::max(e0, 1e-10));
            auto v = make_verdict("energy_drift", drift, cfg.energy_tolerance);
            cs.pass = v.pass;
            cs.details["max_relative_drift"] = drift;
            tag(check, traj.times.back(), v);
        } else if (check == "annular_bound") {
            for (std::size_t i = 0; i < traj.states.size(); ++i) {
                for (auto& v : annular_volume_bound_check(traj.states[i])) {
                    cs.pass = cs.pass && v.pass;
                    tag(check, traj.times[i], std::move(v));
                }
            }
        } else if (check == "localized_identity") {
            json res = json::object();
            for (int j : cfg.localized_j) {
                // the smooth cutoff keeps the discrete integration-by-parts
                // defect below the O(dt^2) signal the order gate measures
                double fine = localized_energy_identity_residual(
                    traj, j, CutoffProfile::smooth);
                double order = std::numeric_limits<double>::quiet_NaN();
                if (traj.states.size() >= 5 && fine > 1e-12) {
                    double coarse = localized_energy_identity_residual(
                        subsample(traj, 2), j, CutoffProfile::smooth);
                    order = std::log2(coarse / std::max(fine, 1e-300));
                    cs.pass = cs.pass && order >= 1.5;
                }
                res["j" + std::to_string(j)] = {{"residual", fine}, {"order", order}};
                for (auto& v : flux_majorization_check(traj, j)) {
                    cs.pass = cs.pass && v.pass;
                    tag(check, 0.0, std::move(v));
                }
            }
            cs.details = res;
        } else if (check == "annular_budget") {
            auto r = annular_budget_check(traj, e0);
            for (auto& v : r.verdicts) {
                cs.pass = cs.pass && v.pass;
                tag(check, 0.0, std::move(v));
            }
            cs.details["K"] = r.budget.K;
            cs.details["P"] = r.budget.P;
            cs.details["horizon"] = r.budget.horizon;
        } else if (check == "bg") {
            double max_ratio = 0.0;
            for (std::size_t i = 0; i < traj.states.size(); ++i) {
                auto v = brezis_gallouet_bound(traj.states[i], cfg.bg_constant);
                max_ratio = std::max(max_ratio,
                                     brezis_gallouet_ratio(traj.states[i]));
                cs.pass = cs.pass && v.pass;
                tag(check, traj.times[i], std::move(v));
            }
            cs.details["fitted_constant"] = max_ratio;
        } else if (check == "gn") {
            for (std::size_t i = 0; i < traj.states.size(); ++i) {
                auto v = gagliardo_nirenberg_check(traj.states[i]);
                cs.pass = cs.pass && v.pass;
                tag(check, traj.times[i], std::move(v));
            }
        } else if (check == "freq_split") {
            for (std::size_t i = 0; i < traj.states.size(); ++i) {
                const ComplexField& u = traj.states[i];
                ComplexField phi;
                phi.grid = u.grid;
                phi.values.resize(u.values.size());
                for (std::size_t p = 0; p < u.values.size(); ++p)
                    phi.values[p] = cplx(1.0 - std::norm(u.values[p]), 0.0);
                double R = norms(phi, 1).lap_l2 + 1.0;
                auto v = frequency_split_bound(phi, R);
                cs.pass = cs.pass && v.pass;
                tag(check, traj.times[i], std::move(v));
            }
        } else if (check == "apriori") {
            for (std::size_t i = 0; i < traj.states.size(); ++i) {
                auto v = apriori_laplacian_bound(traj.states[i]);
                cs.pass = cs.pass && v.pass;
                tag(check, traj.times[i], std::move(v));
            }
        } else if (check == "w_identity") {
            double fine = w_energy_identity_residual(traj);
            double order = std::numeric_limits<double>::quiet_NaN();
            if (traj.states.size() >= 5 && fine > 1e-12) {
                double coarse = w_energy_identity_residual(subsample(traj, 2));
                order = std::log2(coarse / std::max(fine, 1e-300));
                cs.pass = cs.pass && order >= 1.5;
            }
            cs.details["residual"] = fine;
            cs.details["order"] = order;
            for (auto& v : w_majorization_check(traj)) {
                cs.pass = cs.pass && v.pass;
                tag(check, 0.0, std::move(v));
            }
        } else if (check == "gronwall") {
            std::vector<double> times, wl2;
            double sup_linf = 0.0;
            for (const auto& f : frames) {
                times.push_back(f.t);
                wl2.push_back(f.w_l2);
                sup_linf = std::max(sup_linf, f.norms.linf);
            }
            double c_fit = gronwall_rate_constant(cfg.bg_constant, e0, sup_linf);
            GronwallEnvelope env = gronwall_envelope(times, wl2, c_fit);
            for (std::size_t i = 0; i < times.size(); ++i) {
                auto v = make_verdict("gronwall_f" + std::to_string(i),
                                      wl2[i] * wl2[i], env.envelope[i], c_fit,
                                      1e-9 * std::max(1.0, env.envelope[i]));
                cs.pass = cs.pass && v.pass;
                tag(check, times[i], std::move(v));
            }
            cs.details["c_fit"] = c_fit;
            cs.details["envelope_final"] = env.envelope.back();
            cs.details["w2_final"] = wl2.back() * wl2.back();
            cs.details["margin"] =
                env.envelope.back() - wl2.back() * wl2.back();
            cs.details["double_exp_a"] = env.double_exp_a;
            cs.details["double_exp_b"] = env.double_exp_b;
        }
        summaries.push_back(std::move(cs));
    }

    bool overall = true;
    for (const auto& s : summaries) overall = overall && s.pass;
    write_frames(cfg, frames);
    write_verdicts(cfg, verdicts);
    write_summary(cfg, summaries, overall);
    return overall ? 0 : 2;
}

}  // namespace

int run(const std::string& config_path) {
    try {
        RunConfig cfg = parse_run_config_file(config_path);
        return run_impl(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

// ---- corpus scan ----------------------------------------------------------

namespace {

int worker_count(std::size_t tasks) {
    unsigned hw = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("GPV_WORKERS")) {
        int n = std::atoi(env);
        if (n >= 1) hw = unsigned(n);
    }
    if (hw == 0) hw = 1;
    return int(std::min<std::size_t>(hw, tasks));
}

}  // namespace

int corpus_scan(const std::string& config_path) {
    try {
        json j = load_json(config_path);
        int schema = optional_field<int>(j, "schema_version", 1);
        if (schema != 1) throw ConfigError("unsupported schema_version");
        json grid = require_field<json>(j, "grid");
        int dim = require_field<int>(grid, "dim");
        double length = require_field<double>(grid, "length");
        json corpus = require_field<json>(j, "corpus");
        std::uint64_t seed_start = require_field<std::uint64_t>(corpus, "seed_start");
        int seed_count = require_field<int>(corpus, "seed_count");
        if (seed_count <= 0) throw ConfigError("corpus.seed_count must be positive");
        auto amplitudes =
            optional_field<std::vector<double>>(corpus, "amplitudes", {0.3});
        int mode_cutoff = optional_field<int>(corpus, "mode_cutoff", 8);
        auto refine_n = require_field<std::vector<int>>(corpus, "refine_n");
        if (refine_n.empty()) throw ConfigError("corpus.refine_n must be nonempty");
        std::string target = optional_field<std::string>(j, "target", "bg");
        if (target != "bg" && target != "gn")
            throw ConfigError("corpus target must be bg or gn");
        std::string output_dir = optional_field<std::string>(j, "output_dir", "out");
        std::string format = optional_field<std::string>(j, "format", "csv");

        struct Row {
            std::uint64_t seed;
            double amplitude;
            int n;
            double ratio;
        };
        std::vector<Row> rows;
        for (int n : refine_n)
            for (double a : amplitudes)
                for (int s = 0; s < seed_count; ++s)
                    rows.push_back({seed_start + std::uint64_t(s), a, n, 0.0});

        std::size_t next = 0;
        std::mutex m;
        auto work = [&]() {
            for (;;) {
                std::size_t i;
                {
                    std::lock_guard<std::mutex> lock(m);
                    if (next >= rows.size()) return;
                    i = next++;
                }
                Row& r = rows[i];
                GridPtr g = make_grid(dim, r.n, length);
                ComplexField u =
                    random_zhidkov_field(r.seed, r.amplitude, mode_cutoff, g);
                r.ratio = target == "bg" ? brezis_gallouet_ratio(u)
                                         : gagliardo_nirenberg_check(u).ratio;
            }
        };
        {
            std::vector<std::thread> pool;
            for (int t = 0; t < worker_count(rows.size()); ++t)
                pool.emplace_back(work);
            for (auto& t : pool) t.join();
        }

        namespace fs = std::filesystem;
        fs::create_directories(output_dir);
        if (format == "csv") {
            std::ofstream out(fs::path(output_dir) / "corpus.csv");
            out << "# gpverify corpus schema_version=1\n";
            out << "seed,amplitude,n,ratio\n";
            for (const auto& r : rows)
                out << r.seed << ',' << fmt_double(r.amplitude) << ',' << r.n << ','
                    << fmt_double(r.ratio) << "\n";
        } else {
            json arr = json::array();
            for (const auto& r : rows)
                arr.push_back({{"seed", r.seed},
                               {"amplitude", r.amplitude},
                               {"n", r.n},
                               {"ratio", r.ratio}});
            std::ofstream out(fs::path(output_dir) / "corpus.json");
            out << json{{"schema_version", 1}, {"rows", arr}}.dump(2) << "\n";
        }

        json per_n = json::object();
        double prev_cstar = 0.0;
        double stability = 0.0;
        bool first = true;
        for (int n : refine_n) {
            double cstar = 0.0;
            for (const auto& r : rows)
                if (r.n == n) cstar = std::max(cstar, r.ratio);
            per_n["n" + std::to_string(n)] = cstar;
            if (!first)
                stability = std::max(stability, std::abs(cstar / prev_cstar - 1.0));
            prev_cstar = cstar;
            first = false;
        }
        json summary = {{"schema_version", 1},
                        {"target", target},
                        {"max_ratio_per_n", per_n},
                        {"refinement_stability", stability}};
        std::ofstream out(fs::path(output_dir) / "summary.json");
        out << summary.dump(2) << "\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace gpv
