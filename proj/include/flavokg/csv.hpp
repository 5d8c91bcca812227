#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace flavokg::csv {

// One parsed record. `line` is the 1-based physical line on which the record
// starts; quoted fields may span several lines.
struct Row {
  std::size_t line = 0;
  std::vector<std::string> cells;
};

// RFC 4180 reader: comma separator, double-quote quoting with "" escapes,
// LF or CRLF line endings, optional UTF-8 byte order mark. Lines that are
// entirely empty are skipped. Throws ParseError on an unterminated quote or
// stray characters after a closing quote.
std::vector<Row> parse(std::string_view text, std::string_view file_name = {});

// Quotes a field only when it contains a comma, quote, CR or LF, or has
// leading/trailing spaces.
std::string escape_field(std::string_view field);

// Writes one record terminated by LF.
void append_row(std::string& out, const std::vector<std::string>& cells);

std::string write(const std::vector<std::vector<std::string>>& rows);

// Splits tab-separated text into lines of fields, one Row per physical line
// (blank lines included, with zero cells). CR before LF is dropped and a
// trailing newline does not produce an extra line. No quoting.
std::vector<Row> split_tsv(std::string_view text);

std::string trim(std::string_view s);
std::string ascii_lower(std::string_view s);

}  // namespace flavokg::csv
