#include "fvlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "fvlab/dp.hpp"
#include "fvlab/hyperbolic.hpp"
#include "fvlab/scenarios.hpp"

namespace fvlab {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

// --- Minimal TOML subset ----------------------------------------------------
// Supported: comments, [table] headers, dotted keys, strings, booleans,
// numbers, and single-line arrays of those. Enough for run files; anything
// else is reported with its line number.

struct TomlValue {
    enum class Kind { boolean, number, string, array } kind = Kind::string;
    bool b = false;
    double num = 0.0;
    std::string str;
    std::vector<TomlValue> arr;
};

using TomlTable = std::map<std::string, TomlValue>;

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& line) {
    bool in_str = false;
    for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_str = !in_str;
        if (line[i] == '#' && !in_str) return line.substr(0, i);
    }
    return line;
}

bool parse_scalar(const std::string& text, TomlValue* out, std::string* err) {
    std::string t = trim(text);
    if (t.empty()) {
        *err = "empty value";
        return false;
    }
    if (t.front() == '"') {
        if (t.size() < 2 || t.back() != '"') {
            *err = "unterminated string";
            return false;
        }
        out->kind = TomlValue::Kind::string;
        out->str = t.substr(1, t.size() - 2);
        return true;
    }
    if (t == "true" || t == "false") {
        out->kind = TomlValue::Kind::boolean;
        out->b = (t == "true");
        return true;
    }
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end && *end == '\0') {
        out->kind = TomlValue::Kind::number;
        out->num = v;
        return true;
    }
    *err = "cannot parse value '" + t + "'";
    return false;
}

bool parse_value(const std::string& text, TomlValue* out, std::string* err) {
    std::string t = trim(text);
    if (!t.empty() && t.front() == '[') {
        if (t.back() != ']') {
            *err = "unterminated array (arrays must be single-line)";
            return false;
        }
        out->kind = TomlValue::Kind::array;
        std::string body = t.substr(1, t.size() - 2);
        std::string item;
        bool in_str = false;
        std::vector<std::string> items;
        for (char c : body) {
            if (c == '"') in_str = !in_str;
            if (c == ',' && !in_str) {
                items.push_back(item);
                item.clear();
            } else {
                item += c;
            }
        }
        if (!trim(item).empty()) items.push_back(item);
        for (const auto& it : items) {
            TomlValue v;
            if (!parse_scalar(it, &v, err)) return false;
            out->arr.push_back(v);
        }
        return true;
    }
    return parse_scalar(t, out, err);
}

TomlTable parse_toml(std::istream& in, std::vector<std::string>* issues) {
    TomlTable table;
    std::string line, prefix;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(strip_comment(line));
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                issues->push_back("line " + std::to_string(lineno) + ": malformed table header");
                continue;
            }
            prefix = trim(t.substr(1, t.size() - 2));
            continue;
        }
        size_t eq = std::string::npos;
        bool in_str = false;
        for (size_t i = 0; i < t.size(); ++i) {
            if (t[i] == '"') in_str = !in_str;
            if (t[i] == '=' && !in_str) {
                eq = i;
                break;
            }
        }
        if (eq == std::string::npos) {
            issues->push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        std::string key = trim(t.substr(0, eq));
        if (key.empty()) {
            issues->push_back("line " + std::to_string(lineno) + ": empty key");
            continue;
        }
        TomlValue v;
        std::string err;
        if (!parse_value(t.substr(eq + 1), &v, &err)) {
            issues->push_back("line " + std::to_string(lineno) + ": " + err);
            continue;
        }
        std::string full = prefix.empty() ? key : prefix + "." + key;
        table[full] = v;
    }
    return table;
}

// --- RunConfig assembly -----------------------------------------------------

class Reader {
  public:
    Reader(const TomlTable& t, std::vector<std::string>* issues) : t_(t), issues_(issues) {}

    bool has(const std::string& key) const { return t_.count(key) > 0; }

    void number(const std::string& key, double* out) {
        auto it = t_.find(key);
        if (it == t_.end()) return;
        seen_.insert(key);
        if (it->second.kind != TomlValue::Kind::number) {
            issues_->push_back(key + ": expected a number");
            return;
        }
        *out = it->second.num;
    }

    void integer(const std::string& key, int* out) {
        double v = *out;
        size_t before = issues_->size();
        number(key, &v);
        if (issues_->size() != before || !has(key)) return;
        if (v != static_cast<double>(static_cast<int>(v))) {
            issues_->push_back(key + ": expected an integer");
            return;
        }
        *out = static_cast<int>(v);
    }

    void boolean(const std::string& key, bool* out, bool* was_set = nullptr) {
        auto it = t_.find(key);
        if (it == t_.end()) return;
        seen_.insert(key);
        if (it->second.kind != TomlValue::Kind::boolean) {
            issues_->push_back(key + ": expected true/false");
            return;
        }
        *out = it->second.b;
        if (was_set) *was_set = true;
    }

    void string(const std::string& key, std::string* out) {
        auto it = t_.find(key);
        if (it == t_.end()) return;
        seen_.insert(key);
        if (it->second.kind != TomlValue::Kind::string) {
            issues_->push_back(key + ": expected a string");
            return;
        }
        *out = it->second.str;
    }

    void string_list(const std::string& key, std::vector<std::string>* out) {
        auto it = t_.find(key);
        if (it == t_.end()) return;
        seen_.insert(key);
        if (it->second.kind != TomlValue::Kind::array) {
            issues_->push_back(key + ": expected an array of strings");
            return;
        }
        out->clear();
        for (const auto& v : it->second.arr) {
            if (v.kind != TomlValue::Kind::string) {
                issues_->push_back(key + ": expected an array of strings");
                return;
            }
            out->push_back(v.str);
        }
    }

    void number_map_prefix(const std::string& prefix, std::map<std::string, double>* out) {
        for (const auto& [key, v] : t_) {
            if (key.rfind(prefix + ".", 0) != 0) continue;
            seen_.insert(key);
            if (v.kind != TomlValue::Kind::number) {
                issues_->push_back(key + ": expected a number");
                continue;
            }
            (*out)[key.substr(prefix.size() + 1)] = v.num;
        }
    }

    void report_unknown() {
        for (const auto& [key, v] : t_)
            if (!seen_.count(key)) issues_->push_back(key + ": unknown key");
    }

  private:
    const TomlTable& t_;
    std::vector<std::string>* issues_;
    std::set<std::string> seen_;
};

const std::vector<std::string>& known_diagnostics() {
    static const std::vector<std::string> names = {
        "max_principle", "kruzkov_production", "boundary_entropy",
        "trace_defects", "p_bounds",           "dp_energy",
        "elliptic_exact", "elliptic_agreement"};
    return names;
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error("configuration errors:\n  " + join(issues, "\n  ")),
      issues_(std::move(issues)) {}

void validate_config(RunConfig& config) {
    std::vector<std::string> issues;

    const Scenario* scn = nullptr;
    if (config.scenario.empty()) {
        issues.push_back("scenario: missing (required); valid scenarios: " +
                         join(scenario_names(), ", "));
    } else {
        try {
            scn = &find_scenario(config.scenario);
        } catch (const std::exception& e) {
            issues.push_back(std::string("scenario: ") + e.what());
        }
    }

    if (scn) {
        if (config.T < 0.0) config.T = scn->default_T;
        if (config.scheme.empty()) config.scheme = scheme_name(scn->default_scheme);
        bool is_dp = scn->kind == ScenarioKind::dp;
        if (config.dp_flag_set && config.dp_enabled != is_dp)
            issues.push_back(std::string("dp.enabled: scenario '") + config.scenario +
                             (is_dp ? "' is a coupled run" : "' is not a coupled run"));
        config.dp_enabled = is_dp;
        if (scn->kind != ScenarioKind::elliptic && config.T <= 0.0)
            issues.push_back("time.T: must be positive");
    }

    if (config.n_cells < 8) issues.push_back("grid.n_cells: must be at least 8");
    if (config.cfl <= 0.0 || config.cfl > 1.0) issues.push_back("time.cfl: need 0 < cfl <= 1");
    if (config.output_count < 2) issues.push_back("time.output_count: need at least 2");
    if (config.max_steps < 1) issues.push_back("time.max_steps: must be positive");
    if (config.eps < 0.0) issues.push_back("eps: must be nonnegative");

    if (!config.scheme.empty()) {
        try {
            parse_scheme(config.scheme);
        } catch (const std::exception&) {
            issues.push_back("scheme: unknown scheme '" + config.scheme +
                             "'; valid schemes: " + join(scheme_names(), ", "));
        }
    }
    try {
        parse_elliptic_backend(config.elliptic_backend);
    } catch (const std::exception&) {
        issues.push_back("dp.elliptic_backend: unknown backend '" + config.elliptic_backend +
                         "'; valid backends: green, fd");
    }

    for (const auto& d : config.diagnostics) {
        const auto& known = known_diagnostics();
        if (std::find(known.begin(), known.end(), d) == known.end())
            issues.push_back("diagnostics: unknown check '" + d +
                             "'; valid checks: " + join(known, ", "));
    }
    for (const auto& [name, tol] : config.tolerances) {
        if (tol < 0.0) issues.push_back("tolerances." + name + ": must be nonnegative");
    }

    if (!issues.empty()) throw ConfigError(std::move(issues));
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file '" + path + "'"});

    std::vector<std::string> issues;
    TomlTable table = parse_toml(in, &issues);

    RunConfig config;
    Reader r(table, &issues);
    r.string("scenario", &config.scenario);
    r.string("scheme", &config.scheme);
    r.number("eps", &config.eps);
    r.integer("grid.n_cells", &config.n_cells);
    bool has_T = r.has("time.T");
    r.number("time.T", &config.T);
    if (has_T && config.T <= 0.0) issues.push_back("time.T: must be positive");
    r.number("time.cfl", &config.cfl);
    r.integer("time.output_count", &config.output_count);
    double max_steps = static_cast<double>(config.max_steps);
    r.number("time.max_steps", &max_steps);
    config.max_steps = static_cast<long>(max_steps);
    r.boolean("dp.enabled", &config.dp_enabled, &config.dp_flag_set);
    r.string("dp.elliptic_backend", &config.elliptic_backend);
    r.string_list("diagnostics", &config.diagnostics);
    r.number_map_prefix("tolerances", &config.tolerances);
    r.string("output.dir", &config.output_dir);
    r.string_list("output.formats", &config.output_formats);
    r.report_unknown();

    if (!issues.empty()) throw ConfigError(std::move(issues));
    validate_config(config);
    return config;
}

} // namespace fvlab
