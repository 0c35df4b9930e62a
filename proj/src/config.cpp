#include "mimogames/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mimogames {

bool operator==(const RunConfig& a, const RunConfig& b) {
    const SweepSpec& x = a.sweep;
    const SweepSpec& y = b.sweep;
    return x.kinds == y.kinds && x.k_values == y.k_values && x.nrx_values == y.nrx_values &&
           x.trials == y.trials && x.base_seed == y.base_seed &&
           x.overrides.n_tx == y.overrides.n_tx &&
           x.overrides.packet_len == y.overrides.packet_len &&
           x.overrides.info_len == y.overrides.info_len && x.overrides.rate == y.overrides.rate &&
           x.overrides.noise_psd == y.overrides.noise_psd &&
           x.overrides.p_max == y.overrides.p_max && x.channel_model == y.channel_model &&
           x.placement.d_min == y.placement.d_min && x.placement.d_max == y.placement.d_max &&
           x.placement.fixed == y.placement.fixed && x.solve.power_tol == y.solve.power_tol &&
           x.solve.max_power_rounds == y.solve.max_power_rounds &&
           x.solve.max_outer_rounds == y.solve.max_outer_rounds &&
           x.solve.beam_tol == y.solve.beam_tol &&
           x.solve.max_beam_sweeps == y.solve.max_beam_sweeps &&
           x.solve.p0_fraction == y.solve.p0_fraction && x.threads == y.threads &&
           a.out_dir == b.out_dir && a.write_csv == b.write_csv && a.write_json == b.write_json;
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value, const std::string& path) {
    std::vector<std::string> items;
    std::string current;
    std::istringstream in(value);
    while (std::getline(in, current, ',')) {
        current = trim(current);
        if (current.empty()) throw ConfigError("config: empty list item in " + path);
        items.push_back(current);
    }
    if (items.empty()) throw ConfigError("config: " + path + " must not be empty");
    return items;
}

double parse_double(const std::string& value, const std::string& path) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end != value.c_str() + value.size() || value.empty() || !std::isfinite(v))
        throw ConfigError("config: " + path + " is not a finite number: '" + value + "'");
    return v;
}

long long parse_int(const std::string& value, const std::string& path) {
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (end != value.c_str() + value.size() || value.empty())
        throw ConfigError("config: " + path + " is not an integer: '" + value + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& value, const std::string& path) {
    if (value.empty() || value.front() == '-')
        throw ConfigError("config: " + path + " must be a nonnegative integer: '" + value + "'");
    char* end = nullptr;
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (end != value.c_str() + value.size())
        throw ConfigError("config: " + path + " is not an integer: '" + value + "'");
    return v;
}

int parse_int_min(const std::string& value, const std::string& path, long long min_value) {
    const long long v = parse_int(value, path);
    if (v < min_value)
        throw ConfigError("config: " + path + " must be >= " + std::to_string(min_value));
    if (v > 1000000000LL) throw ConfigError("config: " + path + " is implausibly large");
    return static_cast<int>(v);
}

double parse_positive(const std::string& value, const std::string& path) {
    const double v = parse_double(value, path);
    if (!(v > 0.0)) throw ConfigError("config: " + path + " must be positive");
    return v;
}

std::string fmt_double(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

struct Parser {
    RunConfig cfg;
    std::vector<std::string> unknown;
    bool saw_p_max_w = false;
    bool saw_p_max_dbw = false;
    bool saw_distances = false;
    std::string placement_mode = "uniform_distance";

    void key_value(const std::string& section, const std::string& key, const std::string& value) {
        const std::string path = section + "." + key;
        SweepSpec& sw = cfg.sweep;
        if (section == "sweep") {
            if (key == "trials") sw.trials = parse_int_min(value, path, 1);
            else if (key == "seed") sw.base_seed = parse_u64(value, path);
            else if (key == "threads") sw.threads = parse_int_min(value, path, 1);
            else if (key == "games") {
                sw.kinds.clear();
                for (const std::string& item : split_list(value, path)) {
                    try {
                        sw.kinds.push_back(game_kind_from_name(item));
                    } catch (const std::invalid_argument& e) {
                        throw ConfigError("config: " + path + ": " + e.what());
                    }
                }
            } else if (key == "k") {
                sw.k_values.clear();
                for (const std::string& item : split_list(value, path))
                    sw.k_values.push_back(parse_int_min(item, path, 1));
            } else if (key == "nrx") {
                sw.nrx_values.clear();
                for (const std::string& item : split_list(value, path))
                    sw.nrx_values.push_back(parse_int_min(item, path, 1));
            } else unknown.push_back(path);
        } else if (section == "params") {
            ParamOverrides& o = sw.overrides;
            if (key == "n_tx") o.n_tx = parse_int_min(value, path, 1);
            else if (key == "packet_len") o.packet_len = parse_int_min(value, path, 2);
            else if (key == "info_len") o.info_len = parse_int_min(value, path, 1);
            else if (key == "rate") o.rate = parse_positive(value, path);
            else if (key == "noise_psd") o.noise_psd = parse_positive(value, path);
            else if (key == "p_max_w") {
                o.p_max = parse_positive(value, path);
                saw_p_max_w = true;
            } else if (key == "p_max_dbw") {
                o.p_max = std::pow(10.0, parse_double(value, path) / 10.0);
                saw_p_max_dbw = true;
            } else unknown.push_back(path);
        } else if (section == "model") {
            if (key == "channel_model") {
                try {
                    sw.channel_model = channel_model_from_name(value);
                } catch (const std::invalid_argument& e) {
                    throw ConfigError("config: " + path + ": " + e.what());
                }
            } else if (key == "placement") {
                if (value != "uniform_distance" && value != "fixed")
                    throw ConfigError("config: " + path +
                                      " must be 'uniform_distance' or 'fixed'");
                placement_mode = value;
            } else if (key == "distances") {
                sw.placement.fixed.clear();
                for (const std::string& item : split_list(value, path))
                    sw.placement.fixed.push_back(parse_positive(item, path));
                saw_distances = true;
            } else if (key == "d_min") sw.placement.d_min = parse_positive(value, path);
            else if (key == "d_max") sw.placement.d_max = parse_positive(value, path);
            else unknown.push_back(path);
        } else if (section == "solver") {
            SolveOptions& so = sw.solve;
            if (key == "power_tol") so.power_tol = parse_positive(value, path);
            else if (key == "max_power_rounds") so.max_power_rounds = parse_int_min(value, path, 1);
            else if (key == "max_outer_rounds") so.max_outer_rounds = parse_int_min(value, path, 1);
            else if (key == "beam_tol") so.beam_tol = parse_positive(value, path);
            else if (key == "max_beam_sweeps") so.max_beam_sweeps = parse_int_min(value, path, 1);
            else if (key == "p0_fraction") {
                so.p0_fraction = parse_positive(value, path);
                if (so.p0_fraction > 1.0)
                    throw ConfigError("config: " + path + " must be in (0, 1]");
            } else unknown.push_back(path);
        } else if (section == "output") {
            if (key == "dir") {
                if (value.empty()) throw ConfigError("config: " + path + " must not be empty");
                cfg.out_dir = value;
            } else if (key == "formats") {
                cfg.write_csv = false;
                cfg.write_json = false;
                for (const std::string& item : split_list(value, path)) {
                    if (item == "csv") cfg.write_csv = true;
                    else if (item == "json") cfg.write_json = true;
                    else throw ConfigError("config: " + path + ": unknown format '" + item + "'");
                }
            } else unknown.push_back(path);
        }
    }

    void finish() {
        if (!unknown.empty()) {
            std::string joined;
            for (const std::string& u : unknown) {
                if (!joined.empty()) joined += ", ";
                joined += u;
            }
            throw ConfigError("config: unknown keys: " + joined);
        }
        if (saw_p_max_w && saw_p_max_dbw)
            throw ConfigError("config: params.p_max_w and params.p_max_dbw both given");
        if (placement_mode == "fixed" && !saw_distances)
            throw ConfigError("config: model.placement = fixed requires model.distances");
        if (placement_mode != "fixed" && saw_distances)
            throw ConfigError("config: model.distances requires model.placement = fixed");
        if (placement_mode != "fixed") cfg.sweep.placement.fixed.clear();
        if (!(cfg.sweep.placement.d_max > cfg.sweep.placement.d_min))
            throw ConfigError("config: model.d_max must exceed model.d_min");
        validate(cfg.sweep);
    }
};

}  // namespace

RunConfig parse_config(const std::string& text) {
    Parser parser;
    std::string section;
    bool section_known = true;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: line " + std::to_string(lineno) +
                                  ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            section_known = section == "sweep" || section == "params" || section == "model" ||
                            section == "solver" || section == "output";
            if (!section_known) parser.unknown.push_back("[" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                              ": expected 'key = value'");
        if (section.empty())
            throw ConfigError("config: line " + std::to_string(lineno) +
                              ": key outside any section");
        if (!section_known) continue;  // whole section already reported
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config: line " + std::to_string(lineno) + ": empty key");
        parser.key_value(section, key, value);
    }
    parser.finish();
    return parser.cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig& config) {
    const SweepSpec& sw = config.sweep;
    std::ostringstream out;
    out << "[sweep]\n";
    out << "trials = " << sw.trials << "\n";
    out << "seed = " << sw.base_seed << "\n";
    out << "games = ";
    for (std::size_t i = 0; i < sw.kinds.size(); ++i)
        out << (i ? ", " : "") << game_kind_name(sw.kinds[i]);
    out << "\n" << "k = ";
    for (std::size_t i = 0; i < sw.k_values.size(); ++i)
        out << (i ? ", " : "") << sw.k_values[i];
    out << "\n" << "nrx = ";
    for (std::size_t i = 0; i < sw.nrx_values.size(); ++i)
        out << (i ? ", " : "") << sw.nrx_values[i];
    out << "\n";
    out << "threads = " << sw.threads << "\n";

    out << "\n[params]\n";
    const ParamOverrides& o = sw.overrides;
    if (o.n_tx) out << "n_tx = " << *o.n_tx << "\n";
    if (o.packet_len) out << "packet_len = " << *o.packet_len << "\n";
    if (o.info_len) out << "info_len = " << *o.info_len << "\n";
    if (o.rate) out << "rate = " << fmt_double(*o.rate) << "\n";
    if (o.noise_psd) out << "noise_psd = " << fmt_double(*o.noise_psd) << "\n";
    if (o.p_max) out << "p_max_w = " << fmt_double(*o.p_max) << "\n";

    out << "\n[model]\n";
    out << "channel_model = " << channel_model_name(sw.channel_model) << "\n";
    if (sw.placement.fixed.empty()) {
        out << "placement = uniform_distance\n";
    } else {
        out << "placement = fixed\n" << "distances = ";
        for (std::size_t i = 0; i < sw.placement.fixed.size(); ++i)
            out << (i ? ", " : "") << fmt_double(sw.placement.fixed[i]);
        out << "\n";
    }
    out << "d_min = " << fmt_double(sw.placement.d_min) << "\n";
    out << "d_max = " << fmt_double(sw.placement.d_max) << "\n";

    out << "\n[solver]\n";
    out << "power_tol = " << fmt_double(sw.solve.power_tol) << "\n";
    out << "max_power_rounds = " << sw.solve.max_power_rounds << "\n";
    out << "max_outer_rounds = " << sw.solve.max_outer_rounds << "\n";
    out << "beam_tol = " << fmt_double(sw.solve.beam_tol) << "\n";
    out << "max_beam_sweeps = " << sw.solve.max_beam_sweeps << "\n";
    out << "p0_fraction = " << fmt_double(sw.solve.p0_fraction) << "\n";

    out << "\n[output]\n";
    out << "dir = " << config.out_dir << "\n";
    out << "formats = ";
    if (config.write_csv && config.write_json) out << "csv, json";
    else if (config.write_csv) out << "csv";
    else out << "json";
    out << "\n";
    return out.str();
}

}  // namespace mimogames
