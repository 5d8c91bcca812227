#include "flavokg/csv.hpp"

#include <algorithm>

#include "flavokg/error.hpp"

namespace flavokg::csv {

std::vector<Row> parse(std::string_view text, std::string_view file_name) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<Row> rows;
  Row current;
  std::string field;
  std::size_t line = 1;
  std::size_t pos = 0;
  bool field_started = false;  // any content or quotes seen for this record

  auto end_field = [&] {
    current.cells.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    bool blank = current.cells.size() == 1 && current.cells[0].empty() &&
                 !field_started;
    if (!blank) rows.push_back(std::move(current));
    current = Row{};
    field_started = false;
  };

  while (pos < text.size()) {
    if (current.cells.empty() && field.empty() && !field_started) {
      current.line = line;
    }
    char c = text[pos];
    if (c == '"' && field.empty()) {
      // Quoted field.
      field_started = true;
      std::size_t start_line = line;
      ++pos;
      bool closed = false;
      while (pos < text.size()) {
        char q = text[pos];
        if (q == '"') {
          if (pos + 1 < text.size() && text[pos + 1] == '"') {
            field.push_back('"');
            pos += 2;
            continue;
          }
          ++pos;
          closed = true;
          break;
        }
        if (q == '\n') ++line;
        field.push_back(q);
        ++pos;
      }
      if (!closed) {
        throw ParseError(std::string(file_name), start_line,
                         "unterminated quoted field");
      }
      if (pos < text.size() && text[pos] != ',' && text[pos] != '\n' &&
          text[pos] != '\r') {
        throw ParseError(std::string(file_name), line,
                         "unexpected character after closing quote");
      }
      continue;
    }
    if (c == ',') {
      field_started = true;
      end_field();
      ++pos;
    } else if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') {
      end_record();
      pos += 2;
      ++line;
    } else if (c == '\n') {
      end_record();
      ++pos;
      ++line;
    } else {
      field_started = true;
      field.push_back(c);
      ++pos;
    }
  }
  if (field_started || !field.empty() || !current.cells.empty()) end_record();
  return rows;
}

std::string escape_field(std::string_view field) {
  bool needs_quotes =
      field.find_first_of(",\"\r\n") != std::string_view::npos ||
      (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void append_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += escape_field(cells[i]);
  }
  // A single empty cell would read back as a blank line.
  if (cells.size() == 1 && cells[0].empty()) out += "\"\"";
  out.push_back('\n');
}

std::string write(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) append_row(out, row);
  return out;
}

std::vector<Row> split_tsv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<Row> rows;
  std::size_t line = 1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view content =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                       : eol - pos);
    if (content.ends_with('\r')) content.remove_suffix(1);
    Row row;
    row.line = line;
    if (!content.empty()) {
      std::size_t start = 0;
      while (true) {
        std::size_t tab = content.find('\t', start);
        if (tab == std::string_view::npos) {
          row.cells.emplace_back(content.substr(start));
          break;
        }
        row.cells.emplace_back(content.substr(start, tab - start));
        start = tab + 1;
      }
    }
    rows.push_back(std::move(row));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
    ++line;
  }
  return rows;
}

std::string trim(std::string_view s) {
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
           c == '\v';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return std::string(s);
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c);
  });
  return out;
}

}  // namespace flavokg::csv
