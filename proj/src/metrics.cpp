#include "probeboost/metrics.hpp"

#include "probeboost/csv.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace probeboost {

namespace {

std::set<std::size_t> as_set(const IndexList& v) {
    return {v.begin(), v.end()};
}

struct Moments {
    double mean = 0.0;
    double sd = 0.0;
};

Moments moments(const std::vector<double>& v) {
    Moments m;
    if (v.empty()) {
        return m;
    }
    for (const auto x : v) {
        m.mean += x;
    }
    m.mean /= static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (const auto x : v) {
            ss += (x - m.mean) * (x - m.mean);
        }
        m.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    return m;
}

}  // namespace

double tpr(const IndexList& selected, const IndexList& informative) {
    const auto truth = as_set(informative);
    if (truth.empty()) {
        throw std::invalid_argument("tpr: informative set is empty");
    }
    std::size_t hits = 0;
    for (const auto j : as_set(selected)) {
        hits += truth.count(j);
    }
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

std::size_t false_positives(const IndexList& selected, const IndexList& informative) {
    const auto truth = as_set(informative);
    std::size_t fp = 0;
    for (const auto j : as_set(selected)) {
        fp += truth.count(j) == 0 ? 1 : 0;
    }
    return fp;
}

double fdr(const IndexList& selected, const IndexList& informative) {
    const auto chosen = as_set(selected);
    if (chosen.empty()) {
        return 0.0;
    }
    return static_cast<double>(false_positives(selected, informative)) /
           static_cast<double>(chosen.size());
}

SelectionMetrics evaluate_selection(const SimulationScenario& scenario, std::size_t replicate,
                                    std::string method, const IndexList& selected,
                                    const IndexList& informative, double runtime_seconds) {
    SelectionMetrics m;
    m.scenario = scenario;
    m.replicate = replicate;
    m.method = std::move(method);
    m.n_selected = as_set(selected).size();
    if (!informative.empty()) {
        m.tpr = tpr(selected, informative);
    }
    m.fdr = fdr(selected, informative);
    m.runtime_seconds = runtime_seconds;
    return m;
}

void write_metrics_csv(std::ostream& out, const std::vector<SelectionMetrics>& rows) {
    out << kMetricsHeader << '\n';
    for (const auto& r : rows) {
        out << r.scenario.id() << ',' << r.scenario.n << ',' << r.scenario.p << ','
            << r.scenario.p_inf << ',' << format_double(r.scenario.rho) << ',' << r.replicate << ','
            << r.method << ',';
        if (r.ok()) {
            out << r.n_selected << ',' << (r.tpr ? format_double(*r.tpr) : "NA") << ','
                << format_double(r.fdr) << ',';
        } else {
            out << "NA,NA,NA,";
        }
        out << format_double(r.runtime_seconds) << ',' << r.status << '\n';
    }
}

nlohmann::ordered_json summarize(const std::vector<SelectionMetrics>& rows) {
    struct Bucket {
        std::vector<double> tpr;
        std::vector<double> fdr;
        std::vector<double> runtime;
        std::size_t runs = 0;
        std::size_t failed = 0;
    };
    // ordered by first appearance so the JSON mirrors the CSV order
    std::vector<std::string> scenario_order;
    std::map<std::string, std::vector<std::string>> method_order;
    std::map<std::pair<std::string, std::string>, Bucket> buckets;

    for (const auto& r : rows) {
        const auto sid = r.scenario.id();
        if (std::find(scenario_order.begin(), scenario_order.end(), sid) == scenario_order.end()) {
            scenario_order.push_back(sid);
        }
        auto& methods = method_order[sid];
        if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) {
            methods.push_back(r.method);
        }
        auto& b = buckets[{sid, r.method}];
        ++b.runs;
        if (!r.ok()) {
            ++b.failed;
            continue;
        }
        if (r.tpr) {
            b.tpr.push_back(*r.tpr);
        }
        b.fdr.push_back(r.fdr);
        b.runtime.push_back(r.runtime_seconds);
    }

    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& sid : scenario_order) {
        auto& node = out[sid];
        for (const auto& method : method_order[sid]) {
            const auto& b = buckets[{sid, method}];
            nlohmann::ordered_json entry;
            if (b.tpr.empty()) {
                entry["tpr_mean"] = nullptr;
                entry["tpr_sd"] = nullptr;
            } else {
                const auto t = moments(b.tpr);
                entry["tpr_mean"] = t.mean;
                entry["tpr_sd"] = t.sd;
            }
            const auto f = moments(b.fdr);
            entry["fdr_mean"] = f.mean;
            entry["fdr_sd"] = f.sd;
            entry["runtime_mean"] = moments(b.runtime).mean;
            entry["runs"] = b.runs;
            entry["failed"] = b.failed;
            node[method] = std::move(entry);
        }
    }
    return out;
}

}  // namespace probeboost
