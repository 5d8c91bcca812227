#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flavokg {

struct SourceProvenance {
  std::string file_name;
  std::size_t line_number = 0;

  auto operator<=>(const SourceProvenance&) const = default;
};

struct FoodRecord {
  std::string food_code;
  std::string description;
  std::string food_group;
  SourceProvenance source;

  bool operator==(const FoodRecord&) const = default;
};

// One flavonoid measurement for one food. Mean content is mg per 100 g.
struct ContentRecord {
  std::string food_code;
  std::string flavonoid_name;
  std::string subclass;
  double mean_mg_per_100g = 0.0;
  std::string method;
  std::string state;
  SourceProvenance source;

  bool operator==(const ContentRecord&) const = default;
};

struct AssociationRecord {
  std::string flavonoid_name;
  std::string disease_label;
  std::optional<std::string> external_disease_id;
  std::string effect;
  std::string citation_key;
  SourceProvenance source;

  bool operator==(const AssociationRecord&) const = default;
};

// Optional drug table: a drug formulated from a food's composition, the trial
// it was evaluated in and the disease that trial targets.
struct DrugRecord {
  std::string drug_name;
  std::string composition_food_code;
  std::string trial_id;
  std::string disease_label;
  SourceProvenance source;

  bool operator==(const DrugRecord&) const = default;
};

// Maps source header names (case-insensitive) to the normative header names,
// e.g. {"food_code" -> "FoodCode"}.
using ColumnRenames = std::map<std::string, std::string>;

std::vector<FoodRecord> parse_food_table(std::string_view csv_text,
                                         std::string_view file_name = "foods.csv",
                                         const ColumnRenames& renames = {});

std::vector<ContentRecord> parse_flavonoid_table(
    std::string_view csv_text, std::string_view file_name = "contents.csv",
    const ColumnRenames& renames = {});

std::vector<AssociationRecord> parse_disease_associations(
    std::string_view csv_text, std::string_view file_name = "associations.csv",
    const ColumnRenames& renames = {});

std::vector<DrugRecord> parse_drug_table(std::string_view csv_text,
                                         std::string_view file_name = "drugs.csv",
                                         const ColumnRenames& renames = {});

// Serializers emit the normative headers; parsing their output yields the
// same records (provenance aside, which is recomputed from line positions).
std::string write_food_table(const std::vector<FoodRecord>& records);
std::string write_flavonoid_table(const std::vector<ContentRecord>& records);
std::string write_disease_associations(
    const std::vector<AssociationRecord>& records);
std::string write_drug_table(const std::vector<DrugRecord>& records);

// Shortest decimal text that parses back to the same double.
std::string format_decimal(double value);

}  // namespace flavokg
