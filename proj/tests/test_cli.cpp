#include "probeboost/benchmark.hpp"
#include "probeboost/cli.hpp"
#include "probeboost/csv.hpp"
#include "probeboost/kvconfig.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace probeboost;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / "probeboost_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::size_t count_lines(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("help and parse errors") {
    CHECK(invoke({"--help"}).code == cli::kOk);
    CHECK(invoke({"fit", "--help"}).code == cli::kOk);
    CHECK(invoke({}).code == cli::kConfigError);
    CHECK(invoke({"fit", "--input", "x.csv", "--bogus"}).code == cli::kConfigError);
    CHECK(invoke({"frobnicate"}).code == cli::kConfigError);
}

TEST_CASE("data errors and config errors map to distinct exit codes") {
    CHECK(invoke({"fit", "--input", "/nonexistent/file.csv"}).code == cli::kDataError);
    const auto bad = scratch("bad.csv");
    std::ofstream(bad) << "a,y\n1,0\n,1\n";
    const auto r = invoke({"fit", "--input", bad.string()});
    CHECK(r.code == cli::kDataError);
    CHECK(r.err.find("line 3") != std::string::npos);

    const auto data = scratch("sim_small.csv");
    REQUIRE(invoke({"simulate", "--n", "40", "--p", "10", "--p-inf", "2", "--seed", "3", "-o", data.string()}).code == 0);
    CHECK(invoke({"fit", "--input", data.string(), "--nu", "2"}).code == cli::kConfigError);
    CHECK(invoke({"stabsel", "--input", data.string(), "--pfer", "1"}).code == cli::kConfigError);
    CHECK(invoke({"stabsel", "--input", data.string(), "--q", "9", "--pfer", "1"}).code == cli::kConfigError);
    CHECK(invoke({"fit", "--input", data.string(), "--loss", "poisson"}).code == cli::kConfigError);
}

TEST_CASE("simulate then fit, probe, stabsel and cv") {
    const auto data = scratch("sim.csv");
    const auto truth = scratch("truth.csv");
    REQUIRE(invoke({"simulate", "--n", "100", "--p", "20", "--p-inf", "3", "--seed", "5", "-o", data.string(),
                 "--truth", truth.string()})
                .code == 0);
    const auto loaded = load_csv(data, {"y", {}});
    CHECK(loaded.cols() == 20);
    CHECK(loaded.rows() == 100);
    CHECK(count_lines(slurp(truth)) == 21);

    auto r = invoke({"fit", "--input", data.string(), "--loss", "logistic", "--mstop", "50"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("variable,selected\n", 0) == 0);
    CHECK(count_lines(r.out) == 21);

    const auto trace = scratch("trace.json");
    r = invoke({"probe", "--input", data.string(), "--loss", "logistic", "--seed", "1", "--trace", trace.string()});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("probe:") != std::string::npos);
    CHECK(slurp(trace).find("selection_path") != std::string::npos);

    r = invoke({"stabsel", "--input", data.string(), "--loss", "logistic", "--pfer", "2", "--pi-thr", "0.75",
             "--subsamples", "20"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("variable,selected,frequency\n", 0) == 0);

    const auto risk = scratch("risk.csv");
    r = invoke({"cv", "--input", data.string(), "--loss", "logistic", "--folds", "5", "--m-max", "50",
             "--risk-output", risk.string()});
    REQUIRE(r.code == 0);
    CHECK(count_lines(slurp(risk)) == 52);

    r = invoke({"cv", "--input", data.string(), "--loss", "logistic", "--folds", "5", "--m-max", "50", "--augmented"});
    REQUIRE(r.code == 0);
    CHECK(count_lines(r.out) == 21);
}

TEST_CASE("config file values match explicit flags; flags override the file") {
    const auto data = scratch("sim_cfg.csv");
    REQUIRE(invoke({"simulate", "--n", "60", "--p", "8", "--p-inf", "2", "--seed", "9", "-o", data.string()}).code == 0);

    const BoostConfig boost{0.3, 17, LossKind::Logistic, true};
    const auto cfg = scratch("fit.cfg");
    {
        std::ofstream out(cfg);
        write_kv(out, to_kv(boost));
    }
    const auto via_file = invoke({"fit", "--config", cfg.string(), "--input", data.string()});
    const auto via_flags = invoke({"fit", "--input", data.string(), "--nu", "0.3", "--mstop", "17", "--loss", "logistic"});
    REQUIRE(via_file.code == 0);
    CHECK(via_file.out == via_flags.out);
    CHECK(via_file.err == via_flags.err);

    const auto override = invoke({"fit", "--config", cfg.string(), "--input", data.string(), "--mstop", "1"});
    CHECK(override.err.find("1 iterations") != std::string::npos);

    const auto missing = invoke({"fit", "--config", "/nonexistent.cfg", "--input", data.string()});
    CHECK(missing.code == cli::kConfigError);
}

TEST_CASE("benchmark shape contract") {
    const auto metrics = scratch("one.csv");
    const auto r = invoke({"benchmark", "--n", "60", "--p", "20", "--p-inf", "3", "--replications", "1",
                        "--methods", "probing", "-o", metrics.string()});
    REQUIRE(r.code == 0);
    const auto text = slurp(metrics);
    CHECK(count_lines(text) == 2);
    CHECK(text.rfind(std::string(kMetricsHeader) + "\n", 0) == 0);
}

TEST_CASE("methods on one replicate share the instance") {
    BenchmarkConfig config;
    config.scenarios = {{60, 15, 3, 0.9, 2, 4}};
    config.methods = {probing_method(), probing_method(), cv_method()};
    config.cv = {5, 50, 0};
    config.timing = false;
    const auto rows = run_benchmark(config);
    REQUIRE(rows.size() == 6);
    for (std::size_t r = 0; r < 2; ++r) {
        CHECK(rows[r * 3].n_selected == rows[r * 3 + 1].n_selected);
        CHECK(rows[r * 3].tpr == rows[r * 3 + 1].tpr);
        CHECK(rows[r * 3].fdr == rows[r * 3 + 1].fdr);
    }

    // same instance as a direct simulation with the documented seed
    auto sim = config.scenarios[0];
    sim.seed = instance_seed(config.seed, 0, config.scenarios[0]);
    const auto inst = simulate_instance(sim, 1);
    const auto outcome = run_method(probing_method(), inst.data, config, derive_seed(sim.seed, {1, 0x5ad0}), 0);
    const auto direct = evaluate_selection(config.scenarios[0], 1, "probing", outcome.selected, inst.informative_set, 0);
    CHECK(direct.n_selected == rows[3].n_selected);
    CHECK(direct.fdr == rows[3].fdr);
    CHECK(direct.tpr == rows[3].tpr);
}

TEST_CASE("benchmark rows are ordered and thread-independent; failures are recorded") {
    BenchmarkConfig config;
    config.scenarios = {{50, 12, 2, 0.5, 3, 1}, {50, 12, 0, 0.5, 2, 2}};
    // q = 20 exceeds p = 12 -> config error rows
    config.methods = {probing_method(), stability_method({20, 0.9, std::nullopt})};
    config.stability_subsamples = 10;
    config.timing = false;
    const auto serial = run_benchmark(config);
    config.threads = 3;
    const auto threaded = run_benchmark(config);
    REQUIRE(serial.size() == 10);
    std::ostringstream a;
    std::ostringstream b;
    write_metrics_csv(a, serial);
    write_metrics_csv(b, threaded);
    CHECK(a.str() == b.str());
    CHECK(serial[0].method == "probing");
    CHECK(serial[1].status == "error:config");
    CHECK(serial[8].replicate == 1);
    CHECK_FALSE(serial[8].tpr.has_value());
}

TEST_CASE("nine-cell stability grid labels") {
    const auto grid = standard_stability_grid();
    REQUIRE(grid.size() == 9);
    CHECK(grid.front().label() == "stabsel_pfer1_pi0.6");
    CHECK(grid.back().label() == "stabsel_pfer8_pi0.9");
    const auto cfg = complete_config(grid[4].bound, 100);
    CHECK(cfg.q == 11);  // floor(sqrt(2.5 * 0.5 * 100)) = floor(11.18)
}
