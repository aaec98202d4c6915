#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace weylscope {

/// Round-trip decimal formatting; infinities and NaN render as "inf"/"nan"
/// (the JSON output encodes them as those strings, never as JSON NaN).
std::string format_number(double v);
std::string format_number(std::uint64_t v);
std::string format_number(std::int64_t v);

/// RFC-4180 field quoting (only when needed), '.' decimal separator.
std::string csv_escape(const std::string& field);

/// One CSV document: "# schema=1" comment, header row, data rows.
std::string csv_document(const std::vector<std::string>& columns,
                         const std::vector<std::vector<std::string>>& rows, int schema = 1);

void write_text_file(const std::string& path, const std::string& content);

/// FNV-1a 64-bit, used to fingerprint canonical config text.
std::uint64_t fnv1a64(const std::string& text);

} // namespace weylscope
