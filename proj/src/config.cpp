#include "hyperfront/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hyperfront/errors.hpp"

namespace hyperfront {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& v, const std::string& key,
                    const std::string& where) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        while (pos < v.size() && std::isspace(static_cast<unsigned char>(v[pos]))) ++pos;
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ValidationError(where + ": invalid number '" + v + "' for key '" + key +
                              "'");
    }
}

int parse_int(const std::string& v, const std::string& key, const std::string& where) {
    try {
        std::size_t pos = 0;
        const int i = std::stoi(v, &pos);
        while (pos < v.size() && std::isspace(static_cast<unsigned char>(v[pos]))) ++pos;
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ValidationError(where + ": invalid integer '" + v + "' for key '" + key +
                              "'");
    }
}

bool parse_bool(const std::string& v, const std::string& key, const std::string& where) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ValidationError(where + ": invalid boolean '" + v + "' for key '" + key +
                          "' (use true/false)");
}

std::vector<double> parse_list(const std::string& v, const std::string& key,
                               const std::string& where) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(v);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw ValidationError(where + ": empty entry in list for key '" + key + "'");
        out.push_back(parse_double(item, key, where));
    }
    if (out.empty())
        throw ValidationError(where + ": empty list for key '" + key + "'");
    return out;
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += format_double(v[i]);
    }
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void ExperimentConfig::set(const std::string& key, const std::string& value,
                           const std::string& where) {
    if (key == "epsilon")
        epsilon = parse_double(value, key, where);
    else if (key == "epsilons")
        epsilons = parse_list(value, key, where);
    else if (key == "speed")
        speed = parse_double(value, key, where);
    else if (key == "growth")
        growth = value;
    else if (key == "rate")
        rate = parse_double(value, key, where);
    else if (key == "a")
        a = parse_double(value, key, where);
    else if (key == "b")
        b = parse_double(value, key, where);
    else if (key == "dx")
        dx = parse_double(value, key, where);
    else if (key == "t_end")
        t_end = parse_double(value, key, where);
    else if (key == "cfl")
        cfl = parse_double(value, key, where);
    else if (key == "snapshot_every")
        snapshot_every = parse_double(value, key, where);
    else if (key == "ic")
        ic = value;
    else if (key == "level")
        level = parse_double(value, key, where);
    else if (key == "discard")
        discard = parse_double(value, key, where);
    else if (key == "out")
        out = value;
    else if (key == "jobs")
        jobs = parse_int(value, key, where);
    else if (key == "mode")
        mode = value;
    else if (key == "amplitude")
        amplitude = parse_double(value, key, where);
    else if (key == "width")
        width = parse_double(value, key, where);
    else if (key == "center")
        center = parse_double(value, key, where);
    else if (key == "critical")
        critical = parse_bool(value, key, where);
    else
        throw ValidationError(where + ": unknown key '" + key + "'");
}

void ExperimentConfig::validate() const {
    if (!(epsilon > 0.0)) throw ValidationError("config: epsilon must be positive");
    for (double e : epsilons)
        if (!(e > 0.0)) throw ValidationError("config: epsilons must be positive");
    if (speed && !(*speed > 0.0))
        throw ValidationError("config: speed must be positive");
    if (growth != "logistic")
        throw ValidationError("config: unknown growth model '" + growth +
                              "' (available: logistic)");
    if (!(rate > 0.0)) throw ValidationError("config: rate must be positive");
    if (!(a < b)) throw ValidationError("config: require a < b");
    if (!(dx > 0.0) || !(dx <= b - a))
        throw ValidationError("config: dx must lie in (0, b - a]");
    if (!(t_end >= 0.0)) throw ValidationError("config: t_end must be nonnegative");
    if (!(cfl > 0.0) || !(cfl < 1.0))
        throw ValidationError("config: cfl must lie in (0, 1)");
    if (!(snapshot_every >= 0.0))
        throw ValidationError("config: snapshot_every must be nonnegative");
    if (ic != "step" && ic != "front")
        throw ValidationError("config: ic must be 'step' or 'front'");
    if (!(level > 0.0) || !(level < 1.0))
        throw ValidationError("config: level must lie in (0, 1)");
    if (!(discard >= 0.0) || !(discard < 1.0))
        throw ValidationError("config: discard must lie in [0, 1)");
    if (jobs < 0) throw ValidationError("config: jobs must be nonnegative");
    if (mode != "linearized" && mode != "nonlinear")
        throw ValidationError("config: mode must be 'linearized' or 'nonlinear'");
    // Signed: a negative amplitude carves density out instead of adding it.
    if (!std::isfinite(amplitude))
        throw ValidationError("config: amplitude must be finite");
    if (!(width > 0.0)) throw ValidationError("config: width must be positive");
}

std::string ExperimentConfig::render(const std::string& prefix) const {
    std::string s;
    auto line = [&](const std::string& k, const std::string& v) {
        s += prefix + k + " = " + v + "\n";
    };
    line("epsilon", format_double(epsilon));
    if (!epsilons.empty()) line("epsilons", join(epsilons));
    if (speed) line("speed", format_double(*speed));
    line("growth", growth);
    line("rate", format_double(rate));
    line("a", format_double(a));
    line("b", format_double(b));
    line("dx", format_double(dx));
    line("t_end", format_double(t_end));
    line("cfl", format_double(cfl));
    line("snapshot_every", format_double(snapshot_every));
    line("ic", ic);
    line("level", format_double(level));
    line("discard", format_double(discard));
    line("out", out);
    line("jobs", std::to_string(jobs));
    line("mode", mode);
    line("amplitude", format_double(amplitude));
    line("width", format_double(width));
    if (center) line("center", format_double(*center));
    line("critical", critical ? "true" : "false");
    return s;
}

void parse_config_text(const std::string& text, const std::string& name,
                       ExperimentConfig& cfg) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::size_t hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const std::string where = name + ":" + std::to_string(lineno);
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ValidationError(where + ": empty key");
        cfg.set(key, value, where);
    }
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    ExperimentConfig cfg;
    parse_config_text(buf.str(), path, cfg);
    return cfg;
}

void apply_preset(ExperimentConfig& cfg, const std::string& name) {
    double t_end = 60.0;
    if (name == "fig1a")
        cfg.epsilon = 0.5;
    else if (name == "fig1b")
        cfg.epsilon = 1.0;
    else if (name == "fig1c") {
        cfg.epsilon = 2.0;
        t_end = 120.0;  // the slow front needs longer to settle
    } else
        throw ValidationError("unknown preset '" + name +
                              "' (available: fig1a, fig1b, fig1c)");
    cfg.speed.reset();
    cfg.rate = 1.0;
    cfg.a = -30.0;
    cfg.b = 120.0;
    cfg.dx = 0.05;
    cfg.t_end = t_end;
    cfg.cfl = 0.9;
    cfg.snapshot_every = 1.0;
    cfg.ic = "step";
    cfg.critical = false;
}

}  // namespace hyperfront
