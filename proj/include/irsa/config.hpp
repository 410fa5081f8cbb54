#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace irsa {

// Sectioned key = value experiment configuration.
//
//   command = monte-carlo
//   [protocol]
//   distribution = 2:0.5102 4:0.4898
//   ...
//
// '#' starts a comment. Keys before the first section header live in the ""
// section. Duplicate keys within a section are rejected.
class RawConfig {
public:
    static RawConfig parse_file(const std::string& path);
    static RawConfig parse_text(const std::string& text);

    const std::string& text() const { return text_; }

    bool has_section(const std::string& section) const;
    bool has_key(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key) const;
    std::optional<std::string> find_string(const std::string& section, const std::string& key) const;

    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key) const;
    int get_int_or(const std::string& section, const std::string& key, int fallback) const;
    long get_long_or(const std::string& section, const std::string& key, long fallback) const;
    bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<double> get_double_list(const std::string& section, const std::string& key) const;

    // Power-ratio value with a mandatory unit suffix: "7 dB" or "5 lin".
    // Returned in linear scale; a bare number is rejected as ambiguous.
    double get_ratio_linear(const std::string& section, const std::string& key) const;

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
    std::string text_;
};

double parse_ratio_linear(const std::string& value, const std::string& where);

}  // namespace irsa
