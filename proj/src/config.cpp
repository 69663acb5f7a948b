#include "fima/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace fima {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw ConfigError("config: '" + key + "' is not a number: '" + v + "'");
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size() || x < 0) throw std::invalid_argument("");
        return static_cast<std::uint64_t>(x);
    } catch (...) {
        throw ConfigError("config: '" + key + "' is not a nonnegative integer: '" + v + "'");
    }
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double(key, item));
    }
    return out;
}

}  // namespace

Kernel parse_kernel_spec(const std::string& spec) {
    const auto open = spec.find('(');
    const auto close = spec.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw ConfigError("kernel spec must look like name(args): '" + spec + "'");
    const std::string name = trim(spec.substr(0, open));
    const auto args = to_list("kernel", spec.substr(open + 1, close - open - 1));
    try {
        if (name == "exp" && args.size() == 1) return kernels::exponential(args[0]);
        if (name == "gamma" && args.size() == 2) return kernels::gamma_type(args[0], args[1]);
        if (name == "truncexp" && args.size() == 2)
            return kernels::truncated_exponential(args[0], args[1]);
        if (name == "indicator" && args.size() == 2) return kernels::indicator(args[0], args[1]);
        if (name == "zero") return kernels::zero();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("kernel spec rejected: ") + e.what());
    }
    throw ConfigError("unknown kernel spec '" + spec +
                      "'; vocabulary: exp(c), gamma(k,c), truncexp(c,b), indicator(a,b), zero()");
}

Kernel ExperimentConfig::make_kernel() const { return parse_kernel_spec(kernel_spec); }

StableLaw ExperimentConfig::make_law() const {
    try {
        return StableLaw(alpha, sigma);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

FracOrder ExperimentConfig::make_order() const {
    try {
        return FracOrder(d, alpha);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

FimaModel ExperimentConfig::make_model() const {
    return FimaModel(make_kernel(), make_order(), make_law());
}

QuadSpec ExperimentConfig::make_quad() const {
    QuadSpec q;
    q.rel_tol = rel_tol;
    q.abs_tol = abs_tol;
    q.max_subdivisions = max_subdivisions;
    return q;
}

void ExperimentConfig::validate() const {
    make_model();  // alpha, d, sigma, kernel constraints with their own messages
    if (!(dt > 0.0)) throw ConfigError("grid.dt must be positive");
    if (!(t_start < t_end)) throw ConfigError("grid requires t_start < t_end");
    if (!(trunc_T >= 0.0)) throw ConfigError("grid.trunc_T must be >= 0");
    if (replicas < 1) throw ConfigError("ensemble.replicas must be >= 1");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw ConfigError("quadrature tolerances must be positive");
    if (max_subdivisions < 8) throw ConfigError("quadrature.max_subdivisions must be >= 8");
    if (!lags.empty()) {
        if (!std::is_sorted(lags.begin(), lags.end()) || lags.front() <= 0.0)
            throw ConfigError("dependence.lags must be positive and sorted ascending");
    }
    if (lln_times != "natural" && lln_times != "power")
        throw ConfigError("lln.times must be 'natural' or 'power'");
    if (!(lln_growth_K > 0.0) || !(lln_growth_beta > 0.0))
        throw ConfigError("lln growth constants K and beta must be positive");
    if (!(lln_p > 0.0) || !(lln_p < alpha)) {
        std::ostringstream os;
        os << "lln.p must lie in (0, alpha) = (0, " << alpha << ")";
        throw ConfigError(os.str());
    }
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string full = section.empty() ? key : section + "." + key;

        if (full == "experiment") cfg.experiment = value;
        else if (full == "model.alpha") cfg.alpha = to_double(full, value);
        else if (full == "model.d") cfg.d = to_double(full, value);
        else if (full == "model.sigma") cfg.sigma = to_double(full, value);
        else if (full == "model.kernel") cfg.kernel_spec = value;
        else if (full == "grid.dt") cfg.dt = to_double(full, value);
        else if (full == "grid.t_start") cfg.t_start = to_double(full, value);
        else if (full == "grid.t_end") cfg.t_end = to_double(full, value);
        else if (full == "grid.trunc_T") cfg.trunc_T = to_double(full, value);
        else if (full == "ensemble.replicas") cfg.replicas = to_u64(full, value);
        else if (full == "ensemble.master_seed") cfg.master_seed = to_u64(full, value);
        else if (full == "ensemble.threads") cfg.threads = static_cast<int>(to_u64(full, value));
        else if (full == "quadrature.rel_tol") cfg.rel_tol = to_double(full, value);
        else if (full == "quadrature.abs_tol") cfg.abs_tol = to_double(full, value);
        else if (full == "quadrature.max_subdivisions")
            cfg.max_subdivisions = static_cast<int>(to_u64(full, value));
        else if (full == "output.dir") cfg.out_dir = value;
        else if (full == "dependence.theta1") cfg.theta1 = to_double(full, value);
        else if (full == "dependence.theta2") cfg.theta2 = to_double(full, value);
        else if (full == "dependence.lags") cfg.lags = to_list(full, value);
        else if (full == "lln.times") cfg.lln_times = value;
        else if (full == "lln.growth_K") cfg.lln_growth_K = to_double(full, value);
        else if (full == "lln.growth_beta") cfg.lln_growth_beta = to_double(full, value);
        else if (full == "lln.n_max") cfg.lln_n_max = to_u64(full, value);
        else if (full == "lln.p") cfg.lln_p = to_double(full, value);
        else throw ConfigError("config: unknown key '" + full + "'");
    }
    if (cfg.experiment.empty()) throw ConfigError("config: missing 'experiment' key");
    return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& file) {
    std::ifstream is(file);
    if (!is) throw ConfigError("cannot open config file: " + file.string());
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace fima
