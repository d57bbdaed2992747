#include "cntrx/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "cntrx/csv.hpp"

namespace cntrx {

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

using Table = std::map<std::pair<std::string, std::string>, Entry>;

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg) {
    throw std::invalid_argument(name + ":" + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Table tokenize(const std::string& text, const std::string& name) {
    Table table;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty())
            continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                fail(name, line, "malformed section header '" + s + "'");
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty())
                fail(name, line, "empty section name");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            fail(name, line, "expected 'key = value', got '" + s + "'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty())
            fail(name, line, "missing key before '='");
        if (section.empty())
            fail(name, line, "key '" + key + "' appears before any [section]");
        const auto [it, inserted] = table.insert({{section, key}, Entry{value, line}});
        if (!inserted)
            fail(name, line,
                 "duplicate key '" + key + "' in section '" + section + "' (first at line " +
                     std::to_string(it->second.line) + ")");
    }
    return table;
}

class Reader {
public:
    Reader(Table table, std::string name) : table_(std::move(table)), name_(std::move(name)) {}

    bool take(const std::string& section, const std::string& key, Entry& out) {
        const auto it = table_.find({section, key});
        if (it == table_.end())
            return false;
        out = it->second;
        table_.erase(it);
        return true;
    }

    double number(const std::string& section, const std::string& key, double fallback,
                  bool* present = nullptr) {
        Entry e;
        if (!take(section, key, e)) {
            if (present)
                *present = false;
            return fallback;
        }
        if (present)
            *present = true;
        return parse_number(e, section, key);
    }

    int integer(const std::string& section, const std::string& key, int fallback) {
        Entry e;
        if (!take(section, key, e))
            return fallback;
        int v = 0;
        const char* first = e.value.data();
        const char* last = first + e.value.size();
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc{} || res.ptr != last)
            fail(name_, e.line, "value for " + section + "." + key + " is not an integer: '" +
                                    e.value + "'");
        return v;
    }

    bool boolean(const std::string& section, const std::string& key, bool fallback) {
        Entry e;
        if (!take(section, key, e))
            return fallback;
        if (e.value == "true")
            return true;
        if (e.value == "false")
            return false;
        fail(name_, e.line,
             "value for " + section + "." + key + " must be 'true' or 'false', got '" + e.value +
                 "'");
    }

    std::string text(const std::string& section, const std::string& key,
                     const std::string& fallback) {
        Entry e;
        if (!take(section, key, e))
            return fallback;
        return e.value;
    }

    std::vector<double> number_list(const std::string& section, const std::string& key) {
        Entry e;
        if (!take(section, key, e))
            return {};
        std::vector<double> out;
        for (const std::string& item : split_commas(e.value))
            out.push_back(parse_number(Entry{item, e.line}, section, key));
        return out;
    }

    std::vector<int> integer_list(const std::string& section, const std::string& key,
                                  std::vector<int> fallback) {
        Entry e;
        if (!take(section, key, e))
            return fallback;
        std::vector<int> out;
        for (const std::string& item : split_commas(e.value)) {
            int v = 0;
            const char* first = item.data();
            const auto res = std::from_chars(first, first + item.size(), v);
            if (res.ec != std::errc{} || res.ptr != first + item.size())
                fail(name_, e.line, "list entry for " + section + "." + key +
                                        " is not an integer: '" + item + "'");
            out.push_back(v);
        }
        return out;
    }

    void reject_leftovers() const {
        if (table_.empty())
            return;
        const auto& [loc, entry] = *table_.begin();
        fail(name_, entry.line,
             "unknown key '" + loc.second + "' in section '" + loc.first + "'");
    }

    const std::string& name() const { return name_; }

private:
    double parse_number(const Entry& e, const std::string& section, const std::string& key) {
        double v = 0.0;
        const char* first = e.value.data();
        const char* last = first + e.value.size();
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc{} || res.ptr != last)
            fail(name_, e.line,
                 "value for " + section + "." + key + " is not a number: '" + e.value + "'");
        return v;
    }

    static std::vector<std::string> split_commas(const std::string& s) {
        std::vector<std::string> out;
        std::string item;
        std::istringstream in(s);
        while (std::getline(in, item, ','))
            out.push_back(trim(item));
        return out;
    }

    Table table_;
    std::string name_;
};

[[noreturn]] void fail_field(const std::string& name, const std::string& field,
                             const std::string& msg) {
    throw std::invalid_argument(name + ": " + field + ": " + msg);
}

}  // namespace

const char* to_string(NoiseModel m) {
    return m == NoiseModel::Direct ? "direct" : "path";
}

const char* to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::DeltaTheta: return "delta_theta";
        case SweepAxis::ThetaMinus: return "theta_minus";
        case SweepAxis::ThetaC: return "theta_c";
        case SweepAxis::Eta: return "eta";
        case SweepAxis::Periods: return "s";
        case SweepAxis::Sigma: return "sigma";
    }
    return "?";
}

ScenarioConfig parse_config_text(const std::string& text, const std::string& name) {
    Reader r(tokenize(text, name), name);
    ScenarioConfig c;

    c.params.mass = r.number("model", "mass", c.params.mass);
    c.params.viscosity = r.number("model", "viscosity", c.params.viscosity);
    c.params.elasticity = r.number("model", "elasticity", c.params.elasticity);
    c.params.charge = r.number("model", "charge", c.params.charge);
    c.params.current_offset = r.number("model", "current_offset", c.params.current_offset);
    c.params.current_gain = r.number("model", "current_gain", c.params.current_gain);

    c.amplitude = r.number("incoming", "amplitude", c.amplitude);
    c.angular_frequency = r.number("incoming", "angular_frequency", c.angular_frequency);

    c.variant = r.text("design", "variant", c.variant);
    c.eta = r.number("design", "eta", c.eta);
    c.carrier_phase = r.number("design", "carrier_phase", 0.0, &c.has_carrier_phase);
    c.phase_plus = r.number("design", "phase_plus", 0.0, &c.has_phase_plus);
    c.phase_minus = r.number("design", "phase_minus", 0.0, &c.has_phase_minus);

    c.sigma = r.number("noise", "sigma", c.sigma);
    const std::string noise_model = r.text("noise", "model", "direct");
    if (noise_model == "direct")
        c.noise_model = NoiseModel::Direct;
    else if (noise_model == "path")
        c.noise_model = NoiseModel::Path;
    else
        fail_field(name, "noise.model", "must be 'direct' or 'path', got '" + noise_model + "'");
    c.path_steps_per_period = r.integer("noise", "path_steps_per_period", c.path_steps_per_period);

    c.periods = r.integer("run", "periods", c.periods);
    c.steps_per_period = r.integer("run", "steps_per_period", c.steps_per_period);
    c.trials = r.integer("run", "trials", c.trials);
    c.sigma_values = r.number_list("run", "sigma_values");
    const std::string axis = r.text("run", "axis", "delta_theta");
    bool axis_ok = false;
    for (SweepAxis a : {SweepAxis::DeltaTheta, SweepAxis::ThetaMinus, SweepAxis::ThetaC,
                        SweepAxis::Eta, SweepAxis::Periods, SweepAxis::Sigma}) {
        if (axis == to_string(a)) {
            c.axis = a;
            axis_ok = true;
            break;
        }
    }
    if (!axis_ok)
        fail_field(name, "run.axis", "unknown sweep axis '" + axis + "'");
    c.points = r.integer("run", "points", c.points);
    c.eta_min = r.number("run", "eta_min", c.eta_min);
    c.eta_max = r.number("run", "eta_max", c.eta_max);
    c.s_values = r.integer_list("run", "s_values", c.s_values);
    c.with_numeric = r.boolean("run", "with_numeric", c.with_numeric);
    c.trajectory_out = r.text("run", "trajectory_out", c.trajectory_out);

    r.reject_leftovers();

    // Cross-field validation with field diagnostics.
    try {
        validate_params(c.params);
    } catch (const std::invalid_argument& e) {
        fail_field(name, "model", e.what());
    }
    if (!(c.amplitude != 0.0) || !std::isfinite(c.amplitude))
        fail_field(name, "incoming.amplitude", "must be finite and nonzero");
    if (!(c.angular_frequency > 0.0))
        fail_field(name, "incoming.angular_frequency", "must be positive");
    if (c.variant != "no_carrier" && c.variant != "no_reference")
        fail_field(name, "design.variant",
                   "must be 'no_carrier' or 'no_reference', got '" + c.variant + "'");
    if (!(c.sigma >= 0.0))
        fail_field(name, "noise.sigma", "must be nonnegative");
    if (c.path_steps_per_period < 8)
        fail_field(name, "noise.path_steps_per_period", "must be at least 8");
    if (c.periods < 1)
        fail_field(name, "run.periods", "must be at least 1");
    if (c.steps_per_period < 200)
        fail_field(name, "run.steps_per_period", "must be at least 200");
    if (c.trials < 1)
        fail_field(name, "run.trials", "must be at least 1");
    if (c.points < 2)
        fail_field(name, "run.points", "must be at least 2");
    for (double s : c.sigma_values)
        if (!(s >= 0.0))
            fail_field(name, "run.sigma_values", "entries must be nonnegative");
    if (c.s_values.empty())
        fail_field(name, "run.s_values", "must not be empty");
    for (int s : c.s_values)
        if (s < 1)
            fail_field(name, "run.s_values", "entries must be at least 1");
    if (!(c.eta_min <= c.eta_max))
        fail_field(name, "run.eta_min", "must not exceed run.eta_max");
    return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("failed reading config file: " + path.string());
    return parse_config_text(buf.str(), path.filename().string());
}

std::string ScenarioConfig::resolved_ini() const {
    std::ostringstream out;
    out << "[model]\n";
    out << "mass = " << format_double(params.mass) << "\n";
    out << "viscosity = " << format_double(params.viscosity) << "\n";
    out << "elasticity = " << format_double(params.elasticity) << "\n";
    out << "charge = " << format_double(params.charge) << "\n";
    out << "current_offset = " << format_double(params.current_offset) << "\n";
    out << "current_gain = " << format_double(params.current_gain) << "\n";
    out << "[incoming]\n";
    out << "amplitude = " << format_double(amplitude) << "\n";
    out << "angular_frequency = " << format_double(angular_frequency) << "\n";
    out << "[design]\n";
    out << "variant = " << variant << "\n";
    out << "eta = " << format_double(eta) << "\n";
    if (has_carrier_phase)
        out << "carrier_phase = " << format_double(carrier_phase) << "\n";
    if (has_phase_plus)
        out << "phase_plus = " << format_double(phase_plus) << "\n";
    if (has_phase_minus)
        out << "phase_minus = " << format_double(phase_minus) << "\n";
    out << "[noise]\n";
    out << "sigma = " << format_double(sigma) << "\n";
    out << "model = " << to_string(noise_model) << "\n";
    out << "path_steps_per_period = " << path_steps_per_period << "\n";
    out << "[run]\n";
    out << "periods = " << periods << "\n";
    out << "steps_per_period = " << steps_per_period << "\n";
    out << "trials = " << trials << "\n";
    if (!sigma_values.empty()) {
        out << "sigma_values = ";
        for (std::size_t i = 0; i < sigma_values.size(); ++i)
            out << (i ? "," : "") << format_double(sigma_values[i]);
        out << "\n";
    }
    out << "axis = " << to_string(axis) << "\n";
    out << "points = " << points << "\n";
    out << "eta_min = " << format_double(eta_min) << "\n";
    out << "eta_max = " << format_double(eta_max) << "\n";
    out << "s_values = ";
    for (std::size_t i = 0; i < s_values.size(); ++i)
        out << (i ? "," : "") << s_values[i];
    out << "\n";
    out << "with_numeric = " << (with_numeric ? "true" : "false") << "\n";
    if (!trajectory_out.empty())
        out << "trajectory_out = " << trajectory_out << "\n";
    return out.str();
}

std::string ScenarioConfig::summary_line() const {
    std::string ini = resolved_ini();
    std::string flat;
    flat.reserve(ini.size());
    for (char ch : ini) {
        if (ch == '\n')
            flat += ' ';
        else
            flat += ch;
    }
    while (!flat.empty() && flat.back() == ' ')
        flat.pop_back();
    return "seed=" + format_u64(seed) + " " + flat;
}

}  // namespace cntrx
