#include "probeboost/kvconfig.hpp"

#include "probeboost/csv.hpp"
#include "probeboost/error.hpp"

#include <charconv>
#include <cmath>
#include <string_view>

namespace probeboost {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string_view strip_quotes(std::string_view s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\''))) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

template <typename T>
T parse_number(const std::string& key, std::string_view text) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError("config key '" + key + "': cannot parse '" + std::string(text) + "'");
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value)) {
            throw ConfigError("config key '" + key + "': value must be finite");
        }
    }
    return value;
}

bool parse_bool(const std::string& key, std::string_view text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no" || text == "off") {
        return false;
    }
    throw ConfigError("config key '" + key + "': expected a boolean, got '" + std::string(text) + "'");
}

template <typename T>
void read_into(const KeyValues& kv, const std::string& key, T& target) {
    const auto it = kv.find(key);
    if (it == kv.end()) {
        return;
    }
    if constexpr (std::is_same_v<T, bool>) {
        target = parse_bool(key, it->second);
    } else {
        target = parse_number<T>(key, it->second);
    }
}

template <typename T>
std::vector<T> read_list(const KeyValues& kv, const std::string& key, T fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) {
        return {fallback};
    }
    std::vector<T> out;
    std::string_view rest = it->second;
    for (;;) {
        const auto comma = rest.find(',');
        out.push_back(parse_number<T>(key, trim(rest.substr(0, comma))));
        if (comma == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

KeyValues parse_kv(std::istream& in) {
    KeyValues out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty() || text.front() == '#' || text.front() == ';') {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = trim(text.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        }
        out[std::string(key)] = std::string(strip_quotes(trim(text.substr(eq + 1))));
    }
    return out;
}

void write_kv(std::ostream& out, const KeyValues& values) {
    for (const auto& [key, value] : values) {
        out << key << " = " << value << '\n';
    }
}

KeyValues to_kv(const BoostConfig& config) {
    return {{"nu", format_double(config.nu)},
            {"mstop", std::to_string(config.m_stop)},
            {"loss", std::string(to_string(config.loss))},
            {"center", config.center_covariates ? "true" : "false"}};
}

KeyValues to_kv(const StabilityConfig& config) {
    return {{"subsamples", std::to_string(config.b_subsamples)},
            {"q", std::to_string(config.q)},
            {"pi-thr", format_double(config.pi_thr)},
            {"pfer", format_double(config.pfer)},
            {"mstop-cap", std::to_string(config.m_stop_cap)},
            {"seed", std::to_string(config.seed)}};
}

KeyValues to_kv(const CvConfig& config) {
    return {{"folds", std::to_string(config.folds)},
            {"m-max", std::to_string(config.m_max)},
            {"seed", std::to_string(config.seed)}};
}

KeyValues to_kv(const SimulationScenario& scenario) {
    return {{"n", std::to_string(scenario.n)},
            {"p", std::to_string(scenario.p)},
            {"p-inf", std::to_string(scenario.p_inf)},
            {"rho", format_double(scenario.rho)},
            {"replications", std::to_string(scenario.replications)},
            {"seed", std::to_string(scenario.seed)}};
}

BoostConfig boost_config_from_kv(const KeyValues& kv, BoostConfig base) {
    read_into(kv, "nu", base.nu);
    read_into(kv, "mstop", base.m_stop);
    read_into(kv, "center", base.center_covariates);
    if (const auto it = kv.find("loss"); it != kv.end()) {
        base.loss = parse_loss(it->second);
    }
    return base;
}

StabilityConfig stability_config_from_kv(const KeyValues& kv, StabilityConfig base) {
    read_into(kv, "subsamples", base.b_subsamples);
    read_into(kv, "q", base.q);
    read_into(kv, "pi-thr", base.pi_thr);
    read_into(kv, "pfer", base.pfer);
    read_into(kv, "mstop-cap", base.m_stop_cap);
    read_into(kv, "seed", base.seed);
    return base;
}

CvConfig cv_config_from_kv(const KeyValues& kv, CvConfig base) {
    read_into(kv, "folds", base.folds);
    read_into(kv, "m-max", base.m_max);
    read_into(kv, "seed", base.seed);
    return base;
}

SimulationScenario scenario_from_kv(const KeyValues& kv, SimulationScenario base) {
    read_into(kv, "n", base.n);
    read_into(kv, "p", base.p);
    read_into(kv, "p-inf", base.p_inf);
    read_into(kv, "rho", base.rho);
    read_into(kv, "replications", base.replications);
    read_into(kv, "seed", base.seed);
    return base;
}

std::vector<SimulationScenario> scenario_grid_from_kv(const KeyValues& kv) {
    const SimulationScenario defaults;
    const auto ns = read_list<std::size_t>(kv, "n", defaults.n);
    const auto ps = read_list<std::size_t>(kv, "p", defaults.p);
    const auto pinfs = read_list<std::size_t>(kv, "p-inf", defaults.p_inf);
    const auto rhos = read_list<double>(kv, "rho", defaults.rho);
    SimulationScenario base;
    read_into(kv, "replications", base.replications);
    read_into(kv, "seed", base.seed);

    std::vector<SimulationScenario> grid;
    for (const auto n : ns) {
        for (const auto p : ps) {
            for (const auto p_inf : pinfs) {
                for (const auto rho : rhos) {
                    auto s = base;
                    s.n = n;
                    s.p = p;
                    s.p_inf = p_inf;
                    s.rho = rho;
                    s.validate();
                    grid.push_back(s);
                }
            }
        }
    }
    return grid;
}

KeyValues merge(KeyValues a, const KeyValues& b) {
    for (const auto& [k, v] : b) {
        a[k] = v;
    }
    return a;
}

}  // namespace probeboost
