#include "irsa/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "irsa/errors.hpp"

namespace irsa {

CsvWriter::CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvWriter::add_meta(const std::string& key, const std::string& value) {
    meta_.emplace_back(key, value);
}

std::string CsvWriter::format(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void CsvWriter::add_row(const std::vector<double>& values) {
    if (values.size() != columns_.size()) throw ValidationError("csv: row width mismatch");
    std::string row;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) row += ',';
        row += format(values[i]);
    }
    rows_.push_back(std::move(row));
}

void CsvWriter::add_mixed_row(const std::vector<std::string>& values) {
    if (values.size() != columns_.size()) throw ValidationError("csv: row width mismatch");
    std::string row;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) row += ',';
        row += values[i];
    }
    rows_.push_back(std::move(row));
}

std::string CsvWriter::body() const {
    std::ostringstream out;
    for (size_t i = 0; i < columns_.size(); ++i) {
        if (i) out << ',';
        out << columns_[i];
    }
    out << '\n';
    for (const auto& row : rows_) out << row << '\n';
    return out.str();
}

void CsvWriter::write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ValidationError("csv: cannot open " + path + " for writing");
    for (const auto& [key, value] : meta_) out << "# " << key << "=" << value << '\n';
    out << body();
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

}  // namespace irsa
