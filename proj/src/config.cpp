#include "fucik/config.hpp"

#include <fstream>
#include <sstream>

namespace fucik {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

std::string fmt_list(const std::vector<double>& v) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

} // namespace

void RunConfig::normalize() {
    if (s_grid.empty()) {
        for (int i = 0; i <= 10; ++i) s_grid.push_back(0.1 * i);
        s_grid.insert(s_grid.end(), {2.0, 4.0, 8.0});
    }
    if (alpha_list.empty()) alpha_list = {0.9, 0.95, 0.99};
    if (resolution < 8) throw ConfigError("resolution must be >= 8");
    if (path_samples < 17) throw ConfigError("path_samples must be >= 17");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    validate(domain);
}

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
    const std::string k = trim(key), v = trim(value);
    try {
        if (k == "n" || k == "dim") cfg.domain.dim = std::stoi(v);
        else if (k == "omega_min") cfg.domain.omega_min = {parse_list(v).at(0),
            parse_list(v).size() > 1 ? parse_list(v)[1] : cfg.domain.omega_min[1]};
        else if (k == "omega_max") cfg.domain.omega_max = {parse_list(v).at(0),
            parse_list(v).size() > 1 ? parse_list(v)[1] : cfg.domain.omega_max[1]};
        else if (k == "epsilon") cfg.domain.epsilon = std::stod(v);
        else if (k == "alpha") cfg.domain.alpha = std::stod(v);
        else if (k == "p") cfg.domain.p = std::stod(v);
        else if (k == "truncation_radius") cfg.domain.truncation_radius = std::stod(v);
        else if (k == "resolution") cfg.resolution = std::stoi(v);
        else if (k == "rel_tol") cfg.rel_tol = std::stod(v);
        else if (k == "grad_tol") cfg.grad_tol = std::stod(v);
        else if (k == "path_samples") cfg.path_samples = std::stoi(v);
        else if (k == "max_sweeps") cfg.max_sweeps = std::stoi(v);
        else if (k == "s_grid") cfg.s_grid = parse_list(v);
        else if (k == "alpha_list") cfg.alpha_list = parse_list(v);
        else if (k == "nonlinearity") cfg.nonlinearity = v;
        else if (k == "nl_c") cfg.nl_c = std::stod(v);
        else if (k == "nl_amp") cfg.nl_amp = std::stod(v);
        else if (k == "nl_a") cfg.nl_a = std::stod(v);
        else if (k == "nl_b") cfg.nl_b = std::stod(v);
        else if (k == "output_dir") cfg.output_dir = v;
        else if (k == "seed") cfg.seed = static_cast<unsigned>(std::stoul(v));
        else if (k == "threads") cfg.threads = std::stoi(v);
        else throw ConfigError("unknown configuration key: " + k);
    } catch (const std::invalid_argument&) {
        throw ConfigError("malformed value for key " + k + ": " + v);
    } catch (const std::out_of_range&) {
        throw ConfigError("out-of-range value for key " + k + ": " + v);
    }
}

RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        apply_override(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open configuration file: " + path);
    return parse_config(in);
}

std::string canonical_text(const RunConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "n=" << cfg.domain.dim
       << ";omega_min=" << cfg.domain.omega_min[0] << "," << cfg.domain.omega_min[1]
       << ";omega_max=" << cfg.domain.omega_max[0] << "," << cfg.domain.omega_max[1]
       << ";epsilon=" << cfg.domain.epsilon << ";alpha=" << cfg.domain.alpha
       << ";p=" << cfg.domain.p << ";truncation_radius=" << cfg.domain.truncation_radius
       << ";resolution=" << cfg.resolution << ";rel_tol=" << cfg.rel_tol
       << ";grad_tol=" << cfg.grad_tol << ";path_samples=" << cfg.path_samples
       << ";max_sweeps=" << cfg.max_sweeps << ";s_grid=" << fmt_list(cfg.s_grid)
       << ";alpha_list=" << fmt_list(cfg.alpha_list)
       << ";nonlinearity=" << cfg.nonlinearity << ";nl_c=" << cfg.nl_c
       << ";nl_amp=" << cfg.nl_amp << ";nl_a=" << cfg.nl_a << ";nl_b=" << cfg.nl_b
       << ";seed=" << cfg.seed << ";threads=" << cfg.threads;
    return os.str();
}

std::uint64_t config_hash(const RunConfig& cfg) {
    const std::string text = canonical_text(cfg);
    std::uint64_t h = 1469598103934665603ull; // FNV-1a offset basis
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace fucik
