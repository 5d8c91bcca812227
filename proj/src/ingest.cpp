#include "flavokg/ingest.hpp"

#include <charconv>
#include <cmath>
#include <unordered_map>

#include "flavokg/csv.hpp"
#include "flavokg/error.hpp"

namespace flavokg {
namespace {

// Resolved positions of the expected columns within one table.
class TableLayout {
 public:
  TableLayout(const csv::Row& header, std::string_view file,
              const std::vector<std::string_view>& required,
              const std::vector<std::string_view>& optional,
              const ColumnRenames& renames)
      : file_(file) {
    std::unordered_map<std::string, std::size_t> by_name;
    for (std::size_t i = 0; i < header.cells.size(); ++i) {
      std::string name = csv::ascii_lower(csv::trim(header.cells[i]));
      for (const auto& [from, to] : renames) {
        if (csv::ascii_lower(from) == name) {
          name = csv::ascii_lower(to);
          break;
        }
      }
      by_name.emplace(name, i);
    }
    auto lookup = [&](std::string_view column, bool must) {
      auto it = by_name.find(csv::ascii_lower(column));
      if (it == by_name.end()) {
        if (must) {
          throw ParseError(file_, header.line,
                           "missing column '" + std::string(column) + "'");
        }
        return kAbsent;
      }
      return it->second;
    };
    for (auto column : required) positions_.push_back(lookup(column, true));
    for (auto column : optional) positions_.push_back(lookup(column, false));
  }

  // Trimmed cell for the i-th declared column; short rows read as empty.
  std::string cell(const csv::Row& row, std::size_t column) const {
    std::size_t pos = positions_[column];
    if (pos == kAbsent || pos >= row.cells.size()) return {};
    return csv::trim(row.cells[pos]);
  }

  std::string required_cell(const csv::Row& row, std::size_t column,
                            std::string_view name) const {
    std::string value = cell(row, column);
    if (value.empty()) {
      throw ParseError(file_, row.line,
                       "empty required cell '" + std::string(name) + "'");
    }
    return value;
  }

  SourceProvenance provenance(const csv::Row& row) const {
    return {file_, row.line};
  }

 private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::string file_;
  std::vector<std::size_t> positions_;
};

struct Table {
  csv::Row header;
  std::vector<csv::Row> rows;
};

Table split_table(std::string_view text, std::string_view file) {
  std::vector<csv::Row> rows = csv::parse(text, file);
  if (rows.empty()) throw ParseError(std::string(file), 1, "missing header row");
  Table table;
  table.header = std::move(rows.front());
  table.rows.assign(std::make_move_iterator(rows.begin() + 1),
                    std::make_move_iterator(rows.end()));
  return table;
}

double parse_mean(const std::string& cell, const std::string& file,
                  std::size_t line) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError(file, line, "mean '" + cell + "' is not a number");
  }
  if (value < 0.0) {
    throw ParseError(file, line, "mean '" + cell + "' is negative");
  }
  return value == 0.0 ? 0.0 : value;  // folds -0
}

}  // namespace

std::vector<FoodRecord> parse_food_table(std::string_view csv_text,
                                         std::string_view file_name,
                                         const ColumnRenames& renames) {
  Table table = split_table(csv_text, file_name);
  TableLayout layout(table.header, file_name,
                     {"FoodCode", "Description", "FoodGroup"}, {}, renames);
  std::vector<FoodRecord> out;
  out.reserve(table.rows.size());
  std::unordered_map<std::string, std::size_t> seen;
  for (const auto& row : table.rows) {
    FoodRecord record;
    record.food_code = layout.required_cell(row, 0, "FoodCode");
    record.description = layout.required_cell(row, 1, "Description");
    record.food_group = layout.required_cell(row, 2, "FoodGroup");
    record.source = layout.provenance(row);
    auto [it, inserted] = seen.emplace(record.food_code, row.line);
    if (!inserted) {
      throw ParseError(std::string(file_name), row.line,
                       "duplicate FoodCode '" + record.food_code +
                           "' (lines " + std::to_string(it->second) + " and " +
                           std::to_string(row.line) + ")");
    }
    out.push_back(std::move(record));
  }
  return out;
}

std::vector<ContentRecord> parse_flavonoid_table(std::string_view csv_text,
                                                 std::string_view file_name,
                                                 const ColumnRenames& renames) {
  Table table = split_table(csv_text, file_name);
  TableLayout layout(
      table.header, file_name,
      {"FoodCode", "FlavonoidName", "Subclass", "Mean_mg_100g", "Method", "State"},
      {}, renames);
  std::vector<ContentRecord> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    ContentRecord record;
    record.food_code = layout.required_cell(row, 0, "FoodCode");
    record.flavonoid_name = layout.required_cell(row, 1, "FlavonoidName");
    record.subclass = layout.required_cell(row, 2, "Subclass");
    record.mean_mg_per_100g =
        parse_mean(layout.cell(row, 3), std::string(file_name), row.line);
    record.method = layout.cell(row, 4);
    record.state = layout.cell(row, 5);
    record.source = layout.provenance(row);
    out.push_back(std::move(record));
  }
  return out;
}

std::vector<AssociationRecord> parse_disease_associations(
    std::string_view csv_text, std::string_view file_name,
    const ColumnRenames& renames) {
  Table table = split_table(csv_text, file_name);
  TableLayout layout(
      table.header, file_name,
      {"FlavonoidName", "DiseaseLabel", "DiseaseId", "Effect", "Citation"}, {},
      renames);
  std::vector<AssociationRecord> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    AssociationRecord record;
    record.flavonoid_name = layout.required_cell(row, 0, "FlavonoidName");
    record.disease_label = layout.required_cell(row, 1, "DiseaseLabel");
    std::string id = layout.cell(row, 2);
    if (!id.empty()) record.external_disease_id = std::move(id);
    record.effect = layout.cell(row, 3);
    record.citation_key = layout.cell(row, 4);
    record.source = layout.provenance(row);
    out.push_back(std::move(record));
  }
  return out;
}

std::vector<DrugRecord> parse_drug_table(std::string_view csv_text,
                                         std::string_view file_name,
                                         const ColumnRenames& renames) {
  Table table = split_table(csv_text, file_name);
  TableLayout layout(table.header, file_name,
                     {"DrugName", "CompositionOfFoodCode"},
                     {"TrialId", "DiseaseLabel"}, renames);
  std::vector<DrugRecord> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    DrugRecord record;
    record.drug_name = layout.required_cell(row, 0, "DrugName");
    record.composition_food_code =
        layout.required_cell(row, 1, "CompositionOfFoodCode");
    record.trial_id = layout.cell(row, 2);
    record.disease_label = layout.cell(row, 3);
    if (!record.disease_label.empty() && record.trial_id.empty()) {
      throw ParseError(std::string(file_name), row.line,
                       "DiseaseLabel given without TrialId");
    }
    record.source = layout.provenance(row);
    out.push_back(std::move(record));
  }
  return out;
}

std::string write_food_table(const std::vector<FoodRecord>& records) {
  std::string out;
  csv::append_row(out, {"FoodCode", "Description", "FoodGroup"});
  for (const auto& r : records) {
    csv::append_row(out, {r.food_code, r.description, r.food_group});
  }
  return out;
}

std::string write_flavonoid_table(const std::vector<ContentRecord>& records) {
  std::string out;
  csv::append_row(out, {"FoodCode", "FlavonoidName", "Subclass",
                        "Mean_mg_100g", "Method", "State"});
  for (const auto& r : records) {
    csv::append_row(out, {r.food_code, r.flavonoid_name, r.subclass,
                          format_decimal(r.mean_mg_per_100g), r.method,
                          r.state});
  }
  return out;
}

std::string write_disease_associations(
    const std::vector<AssociationRecord>& records) {
  std::string out;
  csv::append_row(out, {"FlavonoidName", "DiseaseLabel", "DiseaseId", "Effect",
                        "Citation"});
  for (const auto& r : records) {
    csv::append_row(out, {r.flavonoid_name, r.disease_label,
                          r.external_disease_id.value_or(""), r.effect,
                          r.citation_key});
  }
  return out;
}

std::string write_drug_table(const std::vector<DrugRecord>& records) {
  std::string out;
  csv::append_row(out,
                  {"DrugName", "CompositionOfFoodCode", "TrialId", "DiseaseLabel"});
  for (const auto& r : records) {
    csv::append_row(out, {r.drug_name, r.composition_food_code, r.trial_id,
                          r.disease_label});
  }
  return out;
}

std::string format_decimal(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

}  // namespace flavokg
