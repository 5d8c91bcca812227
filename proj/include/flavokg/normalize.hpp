#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flavokg/ingest.hpp"

namespace flavokg {

enum class EntityKind { food, food_group, flavonoid, flavonoid_subclass, disease, drug };

inline constexpr EntityKind kAllEntityKinds[] = {
    EntityKind::food,    EntityKind::food_group, EntityKind::flavonoid,
    EntityKind::flavonoid_subclass, EntityKind::disease, EntityKind::drug};

std::string_view to_string(EntityKind kind);
std::optional<EntityKind> parse_entity_kind(std::string_view name);

// Food, food group and disease labels lose a trailing plural; chemical names
// never do.
bool strips_plurals(EntityKind kind);

// Rule-based label canonicalization plus the curation inputs that refine it:
// plural exceptions (words never singularized) and overrides (raw label ->
// canonical key, consulted before the rules).
class Normalizer {
 public:
  Normalizer() = default;

  void add_plural_exception(std::string_view word);
  void add_override(std::string_view raw_label, EntityKind kind,
                    std::string_view canonical_key);

  // plural_exceptions.txt: one word per line, blank lines and '#' comments
  // ignored.
  void load_plural_exceptions(std::string_view text);
  // curation_overrides.tsv: raw_label TAB kind TAB canonical_key.
  void load_overrides(std::string_view text, std::string_view file_name = {});

  // NFC, lowercase, whitespace collapse, trailing punctuation strip and (for
  // plural-stripping kinds) singularization of the final word, iterated to a
  // fixed point. Throws Error when the label is empty after trimming.
  std::string canonicalize(std::string_view raw, EntityKind kind) const;

  // Override lookup on the exact raw label first, then canonicalize().
  std::string key_for(std::string_view raw, EntityKind kind) const;

  bool has_override(std::string_view raw, EntityKind kind) const;

 private:
  std::set<std::string, std::less<>> plural_exceptions_;
  std::map<std::pair<std::string, EntityKind>, std::string> overrides_;
};

// Canonicalization with no exceptions or overrides.
std::string canonicalize_label(std::string_view raw, EntityKind kind);

struct LabelOccurrence {
  std::string raw_label;
  EntityKind kind;
  SourceProvenance source;
};

struct CanonicalEntity {
  std::string canonical_key;
  std::string display_label;
  EntityKind kind;
  std::vector<std::pair<std::string, SourceProvenance>> merged_from;

  bool operator==(const CanonicalEntity&) const = default;
};

struct NearDuplicate {
  std::string first;
  std::string second;
  std::size_t distance;
  std::optional<EntityKind> kind;

  auto operator<=>(const NearDuplicate&) const = default;
};

struct EntityMerge {
  std::string canonical_key;
  EntityKind kind;
  std::string display_label;
  std::vector<std::string> absorbed_labels;
};

struct MergeReport {
  std::vector<EntityMerge> merges;
  std::vector<NearDuplicate> review_queue;
};

struct MergeResult {
  std::vector<CanonicalEntity> entities;
  MergeReport report;
};

// Groups occurrences by canonical key. The display label is the most frequent
// raw form (ties: lexicographically smallest). Output is sorted by key. A key
// shared by two kinds is an error. When `review_distance` > 0 the review queue
// holds per-kind near-duplicate keys within that edit distance.
MergeResult merge_entities(const std::vector<LabelOccurrence>& occurrences,
                           const Normalizer& normalizer = {},
                           std::size_t review_distance = 0);

// Levenshtein distance over Unicode code points.
std::size_t edit_distance(std::string_view a, std::string_view b);

// All unordered pairs of distinct labels with distance in [1, max_distance],
// sorted by (distance, first, second) with first < second.
std::vector<NearDuplicate> detect_near_duplicates(
    const std::vector<std::string>& labels, std::size_t max_distance);

std::string write_merge_report(const MergeReport& report);

}  // namespace flavokg
