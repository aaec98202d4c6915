#include "weylscope/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "weylscope/errors.hpp"

namespace weylscope {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_number(std::uint64_t v) { return std::to_string(v); }
std::string format_number(std::int64_t v) { return std::to_string(v); }

std::string csv_escape(const std::string& field) {
    bool needs = field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_document(const std::vector<std::string>& columns,
                         const std::vector<std::vector<std::string>>& rows, int schema) {
    std::string out = "# schema=" + std::to_string(schema) + "\r\n";
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(columns[i]);
    }
    out += "\r\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(row[i]);
        }
        out += "\r\n";
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw invalid_input("cannot open output file: " + path);
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw invalid_input("failed writing output file: " + path);
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace weylscope
