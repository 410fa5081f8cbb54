#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace irsa {

// CSV table with full-precision numeric formatting (17 significant digits)
// and optional '#' metadata header lines.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> columns);

    void add_meta(const std::string& key, const std::string& value);
    void add_row(const std::vector<double>& values);
    void add_mixed_row(const std::vector<std::string>& values);

    std::string body() const;                   // rows only, deterministic
    void write(const std::string& path) const;  // meta + header + body

    static std::string format(double value);

private:
    std::vector<std::string> columns_;
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::string> rows_;
};

// FNV-1a hash of a string, used to fingerprint configs in output metadata.
std::uint64_t fnv1a(const std::string& text);

}  // namespace irsa
