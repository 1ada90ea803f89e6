#include "tanhwave/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tanhwave {

namespace {

std::vector<double> parse_eps_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(std::stod(item));
    return out;
}

std::string eps_list_text(const std::vector<double>& eps) {
    std::string out;
    for (size_t i = 0; i < eps.size(); ++i) {
        if (i)
            out += ",";
        out += format_double(eps[i]);
    }
    return out;
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void ExperimentConfig::validate_common(std::vector<std::string>& warnings) const {
    if (eps_list.empty())
        throw std::invalid_argument("config: eps_list is empty");
    for (size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("config: eps_list must be strictly decreasing");
    for (double e : eps_list)
        if (!(e > 0.0 && e < 1.0))
            throw std::invalid_argument("config: eps must lie in (0,1)");
    if (!(k0 > 0.0))
        throw std::invalid_argument("config: k0 must be positive");
    const double d = delta > 0.0 ? delta : 0.9 * k0 / 20.0;
    if (!(d < k0 / 20.0))
        throw std::invalid_argument("config: delta must satisfy delta < k0/20");
    // The small-eps guard of the approximation theory requires eps < delta.
    // Runs above it are still meaningful scaling probes; record, don't refuse.
    for (double e : eps_list)
        if (e >= d)
            warnings.push_back("eps = " + format_double(e) +
                               " exceeds delta = " + format_double(d) +
                               "; outside the eps0 < delta regime of the theory");
    if (!(dt > 0.0) || !(T0 > 0.0))
        throw std::invalid_argument("config: dt and T0 must be positive");
    if (s < 1)
        throw std::invalid_argument("config: s must be >= 1");
    if (order != "basic" && order != "corrected2")
        throw std::invalid_argument("config: order must be basic or corrected2");
}

std::string ExperimentConfig::canonical_text() const {
    std::ostringstream out;
    out << "experiment=" << experiment << "\n";
    out << "eps_list=" << eps_list_text(eps_list) << "\n";
    out << "k0=" << format_double(k0) << "\n";
    out << "delta=" << format_double(delta) << "\n";
    out << "T0=" << format_double(T0) << "\n";
    out << "s=" << s << "\n";
    out << "grid_n=" << grid_n << "\n";
    out << "slow_length=" << format_double(slow_length) << "\n";
    out << "dt=" << format_double(dt) << "\n";
    out << "dt_auto_halvings=" << dt_auto_halvings << "\n";
    out << "envelope=" << envelope << "\n";
    out << "order=" << order << "\n";
    out << "observer_time=" << format_double(observer_time) << "\n";
    out << "seed=" << seed << "\n";
    if (!tamper.empty())
        out << "tamper=" << tamper << "\n";
    return out.str();
}

std::string ExperimentConfig::hash() const { return fnv1a_hex(canonical_text()); }

void apply_override(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "experiment")
        cfg.experiment = value;
    else if (key == "eps_list" || key == "eps")
        cfg.eps_list = parse_eps_list(value);
    else if (key == "k0")
        cfg.k0 = std::stod(value);
    else if (key == "delta")
        cfg.delta = std::stod(value);
    else if (key == "T0")
        cfg.T0 = std::stod(value);
    else if (key == "s")
        cfg.s = std::stoi(value);
    else if (key == "grid_n")
        cfg.grid_n = std::stoi(value);
    else if (key == "slow_length")
        cfg.slow_length = std::stod(value);
    else if (key == "dt")
        cfg.dt = std::stod(value);
    else if (key == "dt_auto_halvings")
        cfg.dt_auto_halvings = std::stoi(value);
    else if (key == "envelope")
        cfg.envelope = value;
    else if (key == "order")
        cfg.order = value;
    else if (key == "observer_time")
        cfg.observer_time = std::stod(value);
    else if (key == "output_dir" || key == "out")
        cfg.output_dir = value;
    else if (key == "seed")
        cfg.seed = std::stoull(value);
    else if (key == "tamper")
        cfg.tamper = value;
    else
        throw std::invalid_argument("config: unknown key '" + key + "'");
    cfg.extra[key] = value;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos)
            line = line.substr(0, hash_pos);
        // trim
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        const auto kl = key.find_last_not_of(" \t");
        key = key.substr(0, kl + 1);
        const auto vf = value.find_first_not_of(" \t");
        value = vf == std::string::npos ? "" : value.substr(vf);
        apply_override(cfg, key, value);
    }
    return cfg;
}

} // namespace tanhwave
