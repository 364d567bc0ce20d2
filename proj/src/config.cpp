#include "tns/config.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "tns/nonlinear.hpp"

namespace tns {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects a number, got '" + value + "'");
    }
    if (pos != value.size())
        throw ConfigError("config: key '" + key + "' expects a number, got '" + value + "'");
    return x;
}

long long parse_int(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    long long x = 0;
    try {
        x = std::stoll(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + value + "'");
    }
    if (pos != value.size())
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + value + "'");
    return x;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    unsigned long long x = 0;
    try {
        x = std::stoull(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects a non-negative integer, got '" + value + "'");
    }
    if (pos != value.size())
        throw ConfigError("config: key '" + key + "' expects a non-negative integer, got '" + value + "'");
    return x;
}

void validate(const SolverConfig& cfg) {
    if (cfg.resolution < 8 || cfg.resolution % 2 != 0)
        throw ConfigError("config: resolution must be an even integer >= 8");
    if (!(cfg.nu > 0.0))
        throw ConfigError("config: nu must be positive");
    if (cfg.dt && !(*cfg.dt > 0.0))
        throw ConfigError("config: dt must be positive");
    if (!(cfg.cfl_safety > 0.0) || cfg.cfl_safety > 1.0)
        throw ConfigError("config: cfl_safety must lie in (0, 1]");
    if (!(cfg.dt_max > 0.0))
        throw ConfigError("config: dt_max must be positive");
    if (!(cfg.t_end > 0.0))
        throw ConfigError("config: t_end must be positive");
    if (cfg.sample_every < 1)
        throw ConfigError("config: sample_every must be >= 1");
    if (!(cfg.ic.amplitude > 0.0))
        throw ConfigError("config: ic amplitude must be positive");
    if (cfg.ic.kind == InitialConditionSpec::Kind::random_band) {
        if (cfg.ic.band_min < 1 || cfg.ic.band_min > cfg.ic.band_max)
            throw ConfigError("config: random_band needs 1 <= band_min <= band_max");
        if (cfg.ic.band_max > dealias_limit(cfg.resolution))
            throw ConfigError("config: band_max exceeds the dealias limit floor(N/3)");
    }
    if (!(cfg.monitor.c1_value > 0.0))
        throw ConfigError("config: c1_value must be positive");
    if (cfg.monitor.c2_value && !(*cfg.monitor.c2_value > 0.0))
        throw ConfigError("config: c2_value must be positive");
    if (!(cfg.monitor.c_local > 0.0))
        throw ConfigError("config: c_local must be positive");
    if (cfg.monitor.hysteresis && *cfg.monitor.hysteresis < 0.0)
        throw ConfigError("config: hysteresis must be >= 0");
    if (cfg.monitor.min_interval < 0.0)
        throw ConfigError("config: min_interval must be >= 0");
    if (cfg.output.checkpoint_every_sample < 0)
        throw ConfigError("config: checkpoint_every_sample must be >= 0");
}

} // namespace

SolverConfig parse_config(const std::string& text) {
    SolverConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::set<std::string> seen;
    int line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos)
            line = line.substr(0, comment);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(line_no) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            static const std::set<std::string> known{"grid", "time", "ic", "monitor", "output"};
            if (!known.count(section))
                throw ConfigError("config: unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string qualified = section + "." + key;
        if (!seen.insert(qualified).second)
            throw ConfigError("config: duplicate key '" + qualified + "'");

        if (qualified == "grid.resolution") {
            cfg.resolution = static_cast<int>(parse_int(qualified, value));
        } else if (qualified == "time.nu") {
            cfg.nu = parse_double(qualified, value);
        } else if (qualified == "time.dt") {
            if (value == "cfl")
                cfg.dt.reset();
            else
                cfg.dt = parse_double(qualified, value);
        } else if (qualified == "time.cfl_safety") {
            cfg.cfl_safety = parse_double(qualified, value);
        } else if (qualified == "time.dt_max") {
            cfg.dt_max = parse_double(qualified, value);
        } else if (qualified == "time.t_end") {
            cfg.t_end = parse_double(qualified, value);
        } else if (qualified == "time.sample_every") {
            cfg.sample_every = static_cast<int>(parse_int(qualified, value));
        } else if (qualified == "ic.kind") {
            if (value == "taylor_green")
                cfg.ic.kind = InitialConditionSpec::Kind::taylor_green;
            else if (value == "abc")
                cfg.ic.kind = InitialConditionSpec::Kind::abc;
            else if (value == "random_band")
                cfg.ic.kind = InitialConditionSpec::Kind::random_band;
            else
                throw ConfigError("config: unknown ic kind '" + value + "'");
        } else if (qualified == "ic.amplitude") {
            cfg.ic.amplitude = parse_double(qualified, value);
        } else if (qualified == "ic.band_min") {
            cfg.ic.band_min = static_cast<int>(parse_int(qualified, value));
        } else if (qualified == "ic.band_max") {
            cfg.ic.band_max = static_cast<int>(parse_int(qualified, value));
        } else if (qualified == "ic.slope") {
            cfg.ic.slope = parse_double(qualified, value);
        } else if (qualified == "ic.seed") {
            cfg.ic.seed = parse_uint(qualified, value);
        } else if (qualified == "monitor.c1_mode") {
            if (value == "exact_lattice")
                cfg.monitor.c1_mode = MonitorConfig::C1Mode::exact_lattice;
            else if (value == "integral")
                cfg.monitor.c1_mode = MonitorConfig::C1Mode::integral;
            else
                throw ConfigError("config: unknown c1_mode '" + value + "'");
        } else if (qualified == "monitor.c1_value") {
            cfg.monitor.c1_value = parse_double(qualified, value);
        } else if (qualified == "monitor.c2_value") {
            if (value == "auto")
                cfg.monitor.c2_value.reset();
            else
                cfg.monitor.c2_value = parse_double(qualified, value);
        } else if (qualified == "monitor.c_local") {
            cfg.monitor.c_local = parse_double(qualified, value);
        } else if (qualified == "monitor.hysteresis") {
            if (value == "auto")
                cfg.monitor.hysteresis.reset();
            else
                cfg.monitor.hysteresis = parse_double(qualified, value);
        } else if (qualified == "monitor.min_interval") {
            cfg.monitor.min_interval = parse_double(qualified, value);
        } else if (qualified == "output.directory") {
            cfg.output.directory = value;
        } else if (qualified == "output.checkpoint_every_sample") {
            cfg.output.checkpoint_every_sample = static_cast<int>(parse_int(qualified, value));
        } else {
            throw ConfigError("config: unknown key '" + qualified + "'");
        }
    }

    validate(cfg);
    return cfg;
}

SolverConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string emit_config(const SolverConfig& cfg) {
    std::ostringstream out;
    out << "[grid]\n";
    out << "resolution = " << cfg.resolution << "\n";
    out << "\n[time]\n";
    out << "nu = " << format_double(cfg.nu) << "\n";
    out << "dt = " << (cfg.dt ? format_double(*cfg.dt) : std::string("cfl")) << "\n";
    out << "cfl_safety = " << format_double(cfg.cfl_safety) << "\n";
    out << "dt_max = " << format_double(cfg.dt_max) << "\n";
    out << "t_end = " << format_double(cfg.t_end) << "\n";
    out << "sample_every = " << cfg.sample_every << "\n";
    out << "\n[ic]\n";
    const char* kind = cfg.ic.kind == InitialConditionSpec::Kind::taylor_green ? "taylor_green"
                       : cfg.ic.kind == InitialConditionSpec::Kind::abc        ? "abc"
                                                                               : "random_band";
    out << "kind = " << kind << "\n";
    out << "amplitude = " << format_double(cfg.ic.amplitude) << "\n";
    out << "band_min = " << cfg.ic.band_min << "\n";
    out << "band_max = " << cfg.ic.band_max << "\n";
    out << "slope = " << format_double(cfg.ic.slope) << "\n";
    out << "seed = " << cfg.ic.seed << "\n";
    out << "\n[monitor]\n";
    out << "c1_mode = " << (cfg.monitor.c1_mode == MonitorConfig::C1Mode::integral ? "integral" : "exact_lattice")
        << "\n";
    out << "c1_value = " << format_double(cfg.monitor.c1_value) << "\n";
    out << "c2_value = " << (cfg.monitor.c2_value ? format_double(*cfg.monitor.c2_value) : std::string("auto"))
        << "\n";
    out << "c_local = " << format_double(cfg.monitor.c_local) << "\n";
    out << "hysteresis = " << (cfg.monitor.hysteresis ? format_double(*cfg.monitor.hysteresis) : std::string("auto"))
        << "\n";
    out << "min_interval = " << format_double(cfg.monitor.min_interval) << "\n";
    out << "\n[output]\n";
    out << "directory = " << cfg.output.directory << "\n";
    out << "checkpoint_every_sample = " << cfg.output.checkpoint_every_sample << "\n";
    return out.str();
}

RunSettings run_settings(const SolverConfig& cfg) {
    RunSettings s;
    s.nu = cfg.nu;
    s.fixed_dt = cfg.dt;
    s.cfl_safety = cfg.cfl_safety;
    s.dt_max = cfg.dt_max;
    s.t_end = cfg.t_end;
    s.sample_every = cfg.sample_every;
    return s;
}

} // namespace tns
