#include "linkbox/config.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace linkbox {

void PipelineConfig::validate() const {
    if (aggregation.beta <= 0.0) throw std::invalid_argument("filter.beta must be > 0");
    if (aggregation.threshold < 0.0 || aggregation.threshold > 1.0)
        throw std::invalid_argument("filter.threshold must lie in [0,1]");
    if (taxonomy.alpha_edge <= 0.0 || taxonomy.alpha_edge > 1.0)
        throw std::invalid_argument("taxonomy.alpha_edge must lie in (0,1]");
    if (cluster.significance <= 0.0 || cluster.significance >= 0.5)
        throw std::invalid_argument("cluster.significance must lie in (0,0.5)");
    if (cluster.max_iter == 0) throw std::invalid_argument("cluster.max_iter must be >= 1");
    if (label.zeta <= 0.0 || label.zeta > 1.0)
        throw std::invalid_argument("label.zeta must lie in (0,1]");
    if (ecg.tau < 0.0 || ecg.tau >= 1.0)
        throw std::invalid_argument("ecg.tau must lie in [0,1)");
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(std::size_t line_no, const std::string& message) {
    std::ostringstream os;
    os << "config:" << line_no << ": " << message;
    throw std::runtime_error(os.str());
}

double to_double(std::size_t line_no, const std::string& value) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) fail(line_no, "bad number '" + value + "'");
        return parsed;
    } catch (const std::logic_error&) {
        fail(line_no, "bad number '" + value + "'");
    }
}

std::size_t to_count(std::size_t line_no, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long parsed = std::stoll(value, &used);
        if (used != value.size() || parsed < 0) fail(line_no, "bad count '" + value + "'");
        return static_cast<std::size_t>(parsed);
    } catch (const std::logic_error&) {
        fail(line_no, "bad count '" + value + "'");
    }
}

bool to_flag(std::size_t line_no, const std::string& value) {
    if (value == "on" || value == "true" || value == "1") return true;
    if (value == "off" || value == "false" || value == "0") return false;
    fail(line_no, "bad flag '" + value + "' (want on|off)");
}

}  // namespace

PipelineConfig parse_config(std::istream& in) {
    PipelineConfig config;
    std::string section;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value");
        const std::string key = section + "." + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) fail(line_no, "empty value for " + key);

        if (key == "relatedness.pmi_floor") {
            config.relatedness.pmi_floor = to_double(line_no, value);
        } else if (key == "relatedness.sr_noise_threshold") {
            config.relatedness.sr_noise_threshold = to_double(line_no, value);
        } else if (key == "filter.beta") {
            config.aggregation.beta = to_double(line_no, value);
        } else if (key == "filter.threshold") {
            config.aggregation.threshold = to_double(line_no, value);
        } else if (key == "taxonomy.alpha_edge") {
            config.taxonomy.alpha_edge = to_double(line_no, value);
        } else if (key == "taxonomy.max_depth") {
            config.taxonomy.max_depth = to_count(line_no, value);
        } else if (key == "cluster.significance") {
            config.cluster.significance = to_double(line_no, value);
        } else if (key == "cluster.max_iter") {
            config.cluster.max_iter = to_count(line_no, value);
        } else if (key == "cluster.rng_seed") {
            config.cluster.rng_seed = static_cast<std::uint64_t>(to_count(line_no, value));
        } else if (key == "cluster.min_cluster_size") {
            config.cluster.min_cluster_size = to_count(line_no, value);
        } else if (key == "cluster.ad_min_points") {
            config.cluster.ad_min_points = to_count(line_no, value);
        } else if (key == "label.zeta") {
            config.label.zeta = to_double(line_no, value);
        } else if (key == "label.max_level") {
            config.label.max_level = to_count(line_no, value);
        } else if (key == "ecg.tau") {
            config.ecg.tau = to_double(line_no, value);
        } else if (key == "ecg.neighbor_mode") {
            if (value == "out") {
                config.ecg.neighbor_mode = NeighborMode::Out;
            } else if (value == "undirected") {
                config.ecg.neighbor_mode = NeighborMode::Undirected;
            } else {
                fail(line_no, "bad neighbor_mode '" + value + "'");
            }
        } else if (key == "pipeline.reuse") {
            config.reuse = to_flag(line_no, value);
        } else {
            fail(line_no, "unknown key '" + key + "'");
        }
    }
    config.validate();
    return config;
}

PipelineConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_config(in);
}

void write_config(const PipelineConfig& config, std::ostream& out) {
    out << "[relatedness]\n"
        << "pmi_floor = " << config.relatedness.pmi_floor << "\n"
        << "sr_noise_threshold = " << config.relatedness.sr_noise_threshold << "\n\n"
        << "[filter]\n"
        << "beta = " << config.aggregation.beta << "\n"
        << "threshold = " << config.aggregation.threshold << "\n\n"
        << "[taxonomy]\n"
        << "alpha_edge = " << config.taxonomy.alpha_edge << "\n"
        << "max_depth = " << config.taxonomy.max_depth << "\n\n"
        << "[cluster]\n"
        << "significance = " << config.cluster.significance << "\n"
        << "max_iter = " << config.cluster.max_iter << "\n"
        << "rng_seed = " << config.cluster.rng_seed << "\n"
        << "min_cluster_size = " << config.cluster.min_cluster_size << "\n"
        << "ad_min_points = " << config.cluster.ad_min_points << "\n\n"
        << "[label]\n"
        << "zeta = " << config.label.zeta << "\n"
        << "max_level = " << config.label.max_level << "\n\n"
        << "[ecg]\n"
        << "tau = " << config.ecg.tau << "\n"
        << "neighbor_mode = "
        << (config.ecg.neighbor_mode == NeighborMode::Out ? "out" : "undirected") << "\n\n"
        << "[pipeline]\n"
        << "reuse = " << (config.reuse ? "on" : "off") << "\n";
}

}  // namespace linkbox
