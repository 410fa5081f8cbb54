#include "irsa/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "irsa/errors.hpp"

namespace irsa {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

RawConfig RawConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError("config: cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

RawConfig RawConfig::parse_text(const std::string& text) {
    RawConfig cfg;
    cfg.text_ = text;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    bool any_content = false;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        any_content = true;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigParseError("config line " + std::to_string(line_no) +
                                       ": unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                throw ConfigParseError("config line " + std::to_string(line_no) +
                                       ": empty section name");
            }
            cfg.sections_[section];  // record even if empty
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigParseError("config line " + std::to_string(line_no) +
                                   ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigParseError("config line " + std::to_string(line_no) + ": empty key");
        }
        auto& sec = cfg.sections_[section];
        if (sec.count(key)) {
            throw ConfigParseError("config line " + std::to_string(line_no) + ": duplicate key '" +
                                   key + "' in section [" + section + "]");
        }
        sec[key] = value;
    }
    if (!any_content) throw ConfigParseError("config: file is empty");
    return cfg;
}

bool RawConfig::has_section(const std::string& section) const {
    return sections_.count(section) > 0;
}

bool RawConfig::has_key(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    return it != sections_.end() && it->second.count(key) > 0;
}

std::optional<std::string> RawConfig::find_string(const std::string& section,
                                                  const std::string& key) const {
    auto it = sections_.find(section);
    if (it == sections_.end()) return std::nullopt;
    auto kit = it->second.find(key);
    if (kit == it->second.end()) return std::nullopt;
    return kit->second;
}

std::string RawConfig::get_string(const std::string& section, const std::string& key) const {
    auto v = find_string(section, key);
    if (!v) {
        throw ConfigParseError("config: missing key '" + key + "' in section [" + section + "]");
    }
    return *v;
}

double RawConfig::get_double(const std::string& section, const std::string& key) const {
    const std::string v = get_string(section, key);
    try {
        size_t used = 0;
        double x = std::stod(v, &used);
        if (trim(v.substr(used)).empty()) return x;
    } catch (const std::exception&) {
    }
    throw ConfigParseError("config: key '" + key + "' in [" + section + "] is not a number: '" +
                           v + "'");
}

double RawConfig::get_double_or(const std::string& section, const std::string& key,
                                double fallback) const {
    return has_key(section, key) ? get_double(section, key) : fallback;
}

int RawConfig::get_int(const std::string& section, const std::string& key) const {
    double x = get_double(section, key);
    int i = static_cast<int>(std::lround(x));
    if (std::fabs(x - i) > 1e-9) {
        throw ConfigParseError("config: key '" + key + "' in [" + section + "] must be an integer");
    }
    return i;
}

int RawConfig::get_int_or(const std::string& section, const std::string& key, int fallback) const {
    return has_key(section, key) ? get_int(section, key) : fallback;
}

long RawConfig::get_long_or(const std::string& section, const std::string& key,
                            long fallback) const {
    if (!has_key(section, key)) return fallback;
    double x = get_double(section, key);
    long i = std::lround(x);
    if (std::fabs(x - static_cast<double>(i)) > 1e-9) {
        throw ConfigParseError("config: key '" + key + "' in [" + section + "] must be an integer");
    }
    return i;
}

bool RawConfig::get_bool_or(const std::string& section, const std::string& key,
                            bool fallback) const {
    if (!has_key(section, key)) return fallback;
    std::string v = get_string(section, key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigParseError("config: key '" + key + "' in [" + section + "] must be a boolean");
}

std::vector<double> RawConfig::get_double_list(const std::string& section,
                                               const std::string& key) const {
    std::istringstream in(get_string(section, key));
    std::vector<double> values;
    std::string token;
    while (in >> token) {
        try {
            size_t used = 0;
            values.push_back(std::stod(token, &used));
            if (used != token.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ConfigParseError("config: key '" + key + "' in [" + section +
                                   "] has a non-numeric entry '" + token + "'");
        }
    }
    if (values.empty()) {
        throw ConfigParseError("config: key '" + key + "' in [" + section + "] is empty");
    }
    return values;
}

double parse_ratio_linear(const std::string& value, const std::string& where) {
    std::istringstream in(value);
    double x = 0.0;
    std::string unit;
    if (!(in >> x)) throw ConfigParseError("config: " + where + ": not a number: '" + value + "'");
    in >> unit;
    std::string rest;
    if (in >> rest) throw ConfigParseError("config: " + where + ": trailing content in '" + value + "'");
    if (unit == "dB" || unit == "db") return std::pow(10.0, x / 10.0);
    if (unit == "lin" || unit == "linear") return x;
    throw ConfigParseError("config: " + where +
                           ": power ratios need an explicit unit, write e.g. '" +
                           std::to_string(x) + " dB' or '" + std::to_string(x) + " lin'");
}

double RawConfig::get_ratio_linear(const std::string& section, const std::string& key) const {
    return parse_ratio_linear(get_string(section, key), "key '" + key + "' in [" + section + "]");
}

}  // namespace irsa
