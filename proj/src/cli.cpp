#include "probeboost/cli.hpp"

#include "probeboost/benchmark.hpp"
#include "probeboost/csv.hpp"
#include "probeboost/error.hpp"
#include "probeboost/kvconfig.hpp"
#include "probeboost/parallel.hpp"
#include "probeboost/probing.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <memory>
#include <optional>

namespace probeboost::cli {

namespace {

// Writes to `out` for "-", otherwise to the named file.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (path.empty() || path == "-") {
            stream_ = &fallback;
        } else {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw DataError("cannot write '" + path + "'");
            }
            stream_ = file_.get();
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

struct DataFlags {
    std::string input;
    std::string response = "y";
    std::vector<std::string> ignore;
    std::string output = "-";
};

struct BoostFlags {
    std::string loss = "squared";
    double nu = 0.1;
    std::size_t mstop = 100;
    bool center = true;
    CLI::Option* mstop_opt = nullptr;

    BoostConfig config() const {
        BoostConfig c;
        c.loss = parse_loss(loss);
        c.nu = nu;
        c.m_stop = mstop;
        c.center_covariates = center;
        return c;
    }
};

struct BoundFlags {
    std::size_t q = 0;
    double pi_thr = 0.0;
    double pfer = 0.0;
    CLI::Option* q_opt = nullptr;
    CLI::Option* pi_opt = nullptr;
    CLI::Option* pfer_opt = nullptr;

    bool any() const { return q_opt->count() + pi_opt->count() + pfer_opt->count() > 0; }

    PartialErrorBound partial() const {
        PartialErrorBound b;
        if (q_opt->count() > 0) {
            b.q = q;
        }
        if (pi_opt->count() > 0) {
            b.pi_thr = pi_thr;
        }
        if (pfer_opt->count() > 0) {
            b.pfer = pfer;
        }
        return b;
    }
};

void add_data_flags(CLI::App* cmd, DataFlags& f, bool needs_input) {
    auto* in = cmd->add_option("-i,--input", f.input, "Input CSV with a header row");
    if (needs_input) {
        in->required();
    }
    cmd->add_option("-r,--response", f.response, "Name of the response column")
        ->capture_default_str();
    cmd->add_option("--ignore", f.ignore, "Columns to drop before parsing (e.g. row labels)")
        ->delimiter(',');
    cmd->add_option("-o,--output", f.output, "Output file, '-' for stdout")->capture_default_str();
}

void add_boost_flags(CLI::App* cmd, BoostFlags& f, bool with_mstop, const std::string& mstop_help) {
    cmd->add_option("--loss", f.loss, "squared or logistic")->capture_default_str();
    cmd->add_option("--nu", f.nu, "Step length in (0, 1]")->capture_default_str();
    cmd->add_option("--center", f.center, "Center covariates before fitting")
        ->capture_default_str();
    if (with_mstop) {
        f.mstop_opt = cmd->add_option("--mstop", f.mstop, mstop_help)->capture_default_str();
    }
}

void add_bound_flags(CLI::App* cmd, BoundFlags& f) {
    f.q_opt = cmd->add_option("--q", f.q, "Per-fit cap on distinct selected variables");
    f.pi_opt = cmd->add_option("--pi-thr", f.pi_thr, "Selection-frequency threshold in (0.5, 1]");
    f.pfer_opt = cmd->add_option("--pfer", f.pfer, "Per-family error rate bound");
}

Dataset read_input(const DataFlags& f) {
    return load_csv(f.input, CsvOptions{f.response, f.ignore});
}

void write_trace_json(const std::string& path, const FitTrace& trace,
                      const std::vector<std::string>& names) {
    nlohmann::ordered_json j;
    j["loss"] = std::string(to_string(trace.loss));
    j["offset"] = trace.offset;
    j["iterations"] = trace.iterations_performed;
    nlohmann::ordered_json coef = nlohmann::ordered_json::object();
    for (Eigen::Index k = 0; k < trace.coefficients.size(); ++k) {
        if (trace.coefficients(k) != 0.0) {
            coef[names[static_cast<std::size_t>(k)]] = trace.coefficients(k);
        }
    }
    j["coefficients"] = std::move(coef);
    std::vector<std::string> path_names;
    for (const auto s : trace.selection_path) {
        path_names.push_back(names[s]);
    }
    j["selection_path"] = path_names;
    j["risk_path"] = trace.risk_path;
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write '" + path + "'");
    }
    out << j.dump(2) << '\n';
}

// Prepends "--key=value" for every entry of a --config file so that flags
// given on the command line (parsed later, take-last policy) win.
std::vector<std::string> expand_config(std::span<const std::string> args) {
    std::vector<std::string> out;
    std::vector<std::string> injected;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string path;
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            out.push_back(args[i]);
            continue;
        }
        std::ifstream in(path);
        if (!in) {
            throw ConfigError("cannot open config file '" + path + "'");
        }
        for (const auto& [key, value] : parse_kv(in)) {
            injected.push_back("--" + key + "=" + value);
        }
    }
    if (out.empty()) {
        return injected;
    }
    // subcommand name stays first
    std::vector<std::string> merged{out.front()};
    merged.insert(merged.end(), injected.begin(), injected.end());
    merged.insert(merged.end(), out.begin() + 1, out.end());
    return merged;
}

}  // namespace

int run(std::span<const std::string> raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Component-wise boosting with probing, stability selection and bootstrap CV",
                 "probeboost"};
    app.option_defaults()->take_last();
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");
    app.add_option("--config", "Flat key = value file with flag values (see README)");

    std::function<void()> action;

    // fit
    DataFlags fit_data;
    BoostFlags fit_boost;
    std::string fit_trace;
    auto* fit = app.add_subcommand("fit", "Boost for a fixed number of iterations");
    add_data_flags(fit, fit_data, true);
    add_boost_flags(fit, fit_boost, true, "Number of boosting iterations");
    fit->add_option("--trace", fit_trace, "Write the fitted path as JSON");
    fit->callback([&] {
        action = [&] {
            const auto data = read_input(fit_data);
            const auto trace = boost_fit(data, fit_boost.config());
            Sink sink(fit_data.output, out);
            write_selection_csv(sink.get(), data.column_names, distinct_selected(trace));
            if (!fit_trace.empty()) {
                write_trace_json(fit_trace, trace, data.column_names);
            }
            err << "fit: " << trace.iterations_performed << " iterations, "
                << distinct_selected(trace).size() << " variables selected\n";
        };
    });

    // probe
    DataFlags probe_data;
    BoostFlags probe_boost;
    Seed probe_seed = 0;
    std::string probe_trace;
    auto* probe = app.add_subcommand("probe", "Select variables up to the first shadow selection");
    add_data_flags(probe, probe_data, true);
    add_boost_flags(probe, probe_boost, true, "Safety cap on iterations [default: min(10n, 10000)]");
    probe->add_option("--seed", probe_seed, "Shadow permutation seed")->capture_default_str();
    probe->add_option("--trace", probe_trace, "Write the kept path as JSON");
    probe->callback([&] {
        action = [&] {
            const auto data = read_input(probe_data);
            auto config = probe_boost.config();
            if (probe_boost.mstop_opt->count() == 0) {
                config.m_stop = default_probe_cap(data.rows());
            }
            const auto shadows = make_shadows(data, probe_seed);
            const auto result = probe_select(shadows, config);
            Sink sink(probe_data.output, out);
            write_selection_csv(sink.get(), data.column_names, result.selected);
            if (!probe_trace.empty()) {
                write_trace_json(probe_trace, result.trace, shadows.base.column_names);
            }
            err << "probe: " << result.selected.size() << " variables selected; ";
            if (result.capped) {
                err << "no shadow selected within " << config.m_stop << " iterations (capped)\n";
            } else {
                err << "first shadow chosen at iteration " << result.stop_iteration << '\n';
            }
        };
    });

    // stabsel
    DataFlags stab_data;
    BoostFlags stab_boost;
    BoundFlags stab_bound;
    StabilityConfig stab_defaults;
    std::size_t stab_threads = default_threads();
    auto* stabsel = app.add_subcommand("stabsel", "Stability selection over half-subsamples");
    add_data_flags(stabsel, stab_data, true);
    add_boost_flags(stabsel, stab_boost, false, "");
    add_bound_flags(stabsel, stab_bound);
    stabsel->add_option("--subsamples", stab_defaults.b_subsamples, "Number of subsamples B")
        ->capture_default_str();
    stabsel->add_option("--mstop-cap", stab_defaults.m_stop_cap, "Iteration cap per subsample fit")
        ->capture_default_str();
    stabsel->add_option("--seed", stab_defaults.seed, "Subsampling seed")->capture_default_str();
    stabsel->add_option("--threads", stab_threads, "Worker threads")->capture_default_str();
    stabsel->callback([&] {
        action = [&] {
            const auto data = read_input(stab_data);
            auto stab = StabilityConfig::from_bound(complete_config(stab_bound.partial(), data.cols()));
            stab.b_subsamples = stab_defaults.b_subsamples;
            stab.m_stop_cap = stab_defaults.m_stop_cap;
            stab.seed = stab_defaults.seed;
            const auto result = stability_select(data, stab_boost.config(), stab, stab_threads);
            Sink sink(stab_data.output, out);
            write_selection_csv(sink.get(), data.column_names, result.stable_set, result.frequencies);
            err << "stabsel: q = " << stab.q << ", pi_thr = " << format_double(stab.pi_thr)
                << ", pfer = " << format_double(stab.pfer) << "; " << result.stable_set.size()
                << " stable variables\n";
            for (const auto& w : result.warnings) {
                err << "warning: " << w << '\n';
            }
        };
    });

    // cv
    DataFlags cv_data;
    BoostFlags cv_boost;
    CvConfig cv_config;
    std::size_t cv_threads = default_threads();
    std::string cv_risk;
    bool cv_augmented = false;
    Seed cv_shadow_seed = 0;
    auto* cv = app.add_subcommand("cv", "Choose mstop by bootstrap out-of-bag risk");
    add_data_flags(cv, cv_data, true);
    add_boost_flags(cv, cv_boost, false, "");
    cv->add_option("--folds", cv_config.folds, "Bootstrap replicates")->capture_default_str();
    cv->add_option("--m-max", cv_config.m_max, "Largest mstop considered")->capture_default_str();
    cv->add_option("--seed", cv_config.seed, "Bootstrap seed")->capture_default_str();
    cv->add_option("--threads", cv_threads, "Worker threads")->capture_default_str();
    cv->add_option("--risk-output", cv_risk, "Write mstop,mean_risk as CSV");
    cv->add_flag("--augmented", cv_augmented, "Run on the shadow-augmented design");
    cv->add_option("--shadow-seed", cv_shadow_seed, "Shadow seed for --augmented")
        ->capture_default_str();
    cv->callback([&] {
        action = [&] {
            const auto raw = read_input(cv_data);
            const auto data = cv_augmented ? make_shadows(raw, cv_shadow_seed).base : raw;
            const auto result = bootstrap_cv(data, cv_boost.config(), cv_config, cv_threads);
            IndexList selected;
            for (const auto j : distinct_selected(result.final_trace)) {
                if (!data.shadow_mask[j]) {
                    selected.push_back(j);
                }
            }
            Sink sink(cv_data.output, out);
            write_selection_csv(sink.get(), raw.column_names, selected);
            if (!cv_risk.empty()) {
                std::ofstream risk(cv_risk);
                if (!risk) {
                    throw DataError("cannot write '" + cv_risk + "'");
                }
                risk << "mstop,mean_risk\n";
                for (Eigen::Index m = 0; m < result.mean_risk.size(); ++m) {
                    risk << m << ',' << format_double(result.mean_risk(m)) << '\n';
                }
            }
            err << "cv: m_opt = " << result.m_opt << ", " << selected.size()
                << " variables selected\n";
        };
    });

    // simulate
    SimulationScenario sim;
    std::size_t sim_replicate = 0;
    std::string sim_output = "-";
    std::string sim_truth;
    std::string sim_kind = "binary";
    auto* simulate = app.add_subcommand("simulate", "Draw one Toeplitz-design instance as CSV");
    simulate->add_option("--n", sim.n, "Rows")->capture_default_str();
    simulate->add_option("--p", sim.p, "Covariates")->capture_default_str();
    simulate->add_option("--p-inf", sim.p_inf, "Informative covariates")->capture_default_str();
    simulate->add_option("--rho", sim.rho, "Toeplitz correlation")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "Seed")->capture_default_str();
    simulate->add_option("--replicate", sim_replicate, "Replicate id")->capture_default_str();
    simulate->add_option("--replications", sim.replications, "Ignored; accepted for scenario files");
    simulate->add_option("--response-kind", sim_kind, "binary or gaussian")
        ->check(CLI::IsMember({"binary", "gaussian"}))
        ->capture_default_str();
    simulate->add_option("-o,--output", sim_output, "Output CSV, '-' for stdout")
        ->capture_default_str();
    simulate->add_option("--truth", sim_truth, "Write variable,beta,informative as CSV");
    simulate->callback([&] {
        action = [&] {
            auto inst = simulate_instance(sim, sim_replicate);
            if (sim_kind == "gaussian") {
                inst.data.y = gen_response_gaussian(inst.data.x, inst.beta,
                                                    derive_seed(sim.seed, {sim_replicate, 3}));
            }
            Sink sink(sim_output, out);
            write_csv(sink.get(), inst.data, "y");
            if (!sim_truth.empty()) {
                std::ofstream truth(sim_truth);
                if (!truth) {
                    throw DataError("cannot write '" + sim_truth + "'");
                }
                truth << "variable,beta,informative\n";
                for (std::size_t j = 0; j < inst.data.cols(); ++j) {
                    const double b = inst.beta(static_cast<Eigen::Index>(j));
                    truth << inst.data.column_names[j] << ',' << format_double(b) << ','
                          << (b != 0.0 ? 1 : 0) << '\n';
                }
            }
        };
    });

    // benchmark
    std::string bench_scenarios;
    std::vector<std::size_t> bench_n{100};
    std::vector<std::size_t> bench_p{100};
    std::vector<std::size_t> bench_pinf{5};
    std::vector<double> bench_rho{0.9};
    std::size_t bench_reps = 100;
    std::vector<std::string> bench_methods{"probing", "cv", "stabsel"};
    bool paper_grid = false;
    BoundFlags bench_bound;
    BenchmarkConfig bench;
    bench.threads = default_threads();
    std::size_t probe_cap = 0;
    std::string timing = "on";
    std::string bench_output = "-";
    std::string bench_summary;
    bool bench_cv_augmented = false;
    auto* benchmark = app.add_subcommand("benchmark", "Simulation study: TPR/FDR/runtime per method");
    benchmark->add_option("--scenarios", bench_scenarios,
                          "Scenario grid file (n, p, p-inf, rho may be comma lists)");
    benchmark->add_option("--n", bench_n, "Sample sizes")->delimiter(',')->capture_default_str();
    benchmark->add_option("--p", bench_p, "Covariate counts")->delimiter(',')->capture_default_str();
    benchmark->add_option("--p-inf", bench_pinf, "Informative counts")
        ->delimiter(',')
        ->capture_default_str();
    benchmark->add_option("--rho", bench_rho, "Toeplitz correlations")
        ->delimiter(',')
        ->capture_default_str();
    benchmark->add_option("--replications", bench_reps, "Replications per scenario")
        ->capture_default_str();
    benchmark->add_option("--methods", bench_methods, "probing, cv, cv-augmented, stabsel")
        ->delimiter(',')
        ->check(CLI::IsMember({"probing", "cv", "cv-augmented", "stabsel"}))
        ->capture_default_str();
    benchmark->add_flag("--paper-grid", paper_grid,
                        "Stability selection over PFER {1,2.5,8} x pi_thr {0.6,0.75,0.9}");
    benchmark->add_flag("--cv-augmented", bench_cv_augmented,
                        "Also run bootstrap CV on the shadow-augmented design");
    add_bound_flags(benchmark, bench_bound);
    benchmark->add_option("--nu", bench.boost.nu, "Step length")->capture_default_str();
    benchmark->add_option("--subsamples", bench.stability_subsamples, "Stability subsamples B")
        ->capture_default_str();
    benchmark->add_option("--mstop-cap", bench.stability_m_stop_cap, "Stability iteration cap")
        ->capture_default_str();
    benchmark->add_option("--folds", bench.cv.folds, "Bootstrap CV replicates")->capture_default_str();
    benchmark->add_option("--m-max", bench.cv.m_max, "Bootstrap CV grid maximum")
        ->capture_default_str();
    auto* cap_opt = benchmark->add_option("--probe-cap", probe_cap,
                                          "Probing iteration cap [default: min(10n, 10000)]");
    benchmark->add_option("--seed", bench.seed, "Root seed")->capture_default_str();
    benchmark->add_option("--threads", bench.threads, "Worker threads [env PROBEBOOST_THREADS]")
        ->capture_default_str();
    benchmark->add_option("--timing", timing, "on: record wall-clock; off: write 0")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    benchmark->add_option("-o,--output", bench_output, "Metrics CSV, '-' for stdout")
        ->capture_default_str();
    benchmark->add_option("--summary", bench_summary, "Per-scenario summary JSON");
    benchmark->callback([&] {
        action = [&] {
            if (!bench_scenarios.empty()) {
                std::ifstream in(bench_scenarios);
                if (!in) {
                    throw ConfigError("cannot open scenario file '" + bench_scenarios + "'");
                }
                bench.scenarios = scenario_grid_from_kv(parse_kv(in));
            } else {
                for (const auto n : bench_n) {
                    for (const auto p : bench_p) {
                        for (const auto pinf : bench_pinf) {
                            for (const auto rho : bench_rho) {
                                SimulationScenario s{n, p, pinf, rho, bench_reps, 0};
                                s.validate();
                                bench.scenarios.push_back(s);
                            }
                        }
                    }
                }
            }
            for (const auto& m : bench_methods) {
                if (m == "probing") {
                    bench.methods.push_back(probing_method());
                } else if (m == "cv") {
                    bench.methods.push_back(cv_method());
                } else if (m == "cv-augmented") {
                    bench.methods.push_back(cv_augmented_method());
                } else if (m == "stabsel") {
                    if (paper_grid) {
                        for (auto& g : standard_stability_grid()) {
                            bench.methods.push_back(std::move(g));
                        }
                    } else {
                        if (!bench_bound.any()) {
                            throw ConfigError("stabsel needs two of --q, --pi-thr, --pfer or --paper-grid");
                        }
                        bench.methods.push_back(stability_method(bench_bound.partial()));
                    }
                }
            }
            if (bench_cv_augmented &&
                std::none_of(bench.methods.begin(), bench.methods.end(), [](const MethodSpec& s) {
                    return s.kind == MethodKind::CvAugmented;
                })) {
                bench.methods.push_back(cv_augmented_method());
            }
            if (cap_opt->count() > 0) {
                bench.probe_cap = probe_cap;
            }
            bench.timing = timing == "on";
            const auto rows = run_benchmark(bench);
            {
                Sink sink(bench_output, out);
                write_metrics_csv(sink.get(), rows);
            }
            if (!bench_summary.empty()) {
                std::ofstream summary(bench_summary);
                if (!summary) {
                    throw DataError("cannot write '" + bench_summary + "'");
                }
                summary << summarize(rows).dump(2) << '\n';
            }
            const auto failed = std::count_if(rows.begin(), rows.end(),
                                              [](const SelectionMetrics& r) { return !r.ok(); });
            err << "benchmark: " << rows.size() << " runs, " << failed << " failed\n";
        };
    });

    try {
        auto args = expand_config(raw_args);
        std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        if (action) {
            action();
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kOk;
}

}  // namespace probeboost::cli
