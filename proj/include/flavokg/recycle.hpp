#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "flavokg/normalize.hpp"

namespace flavokg {

struct VocabTerm {
  std::string curie;
  std::string label;
  std::vector<std::string> synonyms;
};

struct Vocabulary {
  std::string name;
  std::vector<VocabTerm> terms;
};

// True for `prefix:local` with a non-empty prefix of [A-Za-z0-9_.-] starting
// with a letter or underscore, and a non-empty local part without whitespace.
bool is_valid_curie(std::string_view text);

// Rows are `curie TAB label TAB synonym1|synonym2|...`; the synonym column may
// be empty or absent. Blank lines and lines starting with '#' are skipped.
Vocabulary load_vocabulary(std::string_view tsv_text, std::string name);

// Match tiers, best first. The numeric value is the match quality.
enum class MatchOutcome { exact_label = 1, normalized_label = 2, synonym = 3, minted = 4 };

std::string_view to_string(MatchOutcome outcome);
std::optional<MatchOutcome> parse_match_outcome(std::string_view name);

struct MappingResult {
  std::string entity_key;
  EntityKind kind = EntityKind::food;
  MatchOutcome outcome = MatchOutcome::minted;
  std::string iri_or_curie;
  std::optional<std::string> vocabulary;

  int match_quality() const { return static_cast<int>(outcome); }
  bool operator==(const MappingResult&) const = default;
};

// namespace + slug. [a-z0-9] is kept, a space after [a-z0-9] becomes '-', a
// '-' not after [a-z0-9] is kept, and every other byte is percent-encoded
// (uppercase hex, UTF-8 bytes). Injective over keys. The namespace must end
// with '/' or '#'.
std::string mint_local_iri(std::string_view canonical_key, std::string_view ns);

// Lookup tables over one vocabulary, keyed for every match tier. Each entry
// holds the lexicographically smallest CURIE for that key.
class VocabularyIndex {
 public:
  VocabularyIndex(const Vocabulary& vocabulary, const Normalizer& normalizer);

  const std::string& name() const { return name_; }
  const Vocabulary& vocabulary() const { return *vocabulary_; }

  const std::string* exact(std::string_view label) const;
  const std::string* normalized(std::string_view key, EntityKind kind) const;
  const std::string* synonym(std::string_view key, EntityKind kind) const;
  bool contains(std::string_view curie) const;

 private:
  using Table = std::unordered_map<std::string, std::string>;
  static void offer(Table& table, std::string key, const std::string& curie);

  std::string name_;
  const Vocabulary* vocabulary_;
  Table exact_;
  // Index 0: plural-stripping canonicalization, 1: chemical (no stripping).
  Table normalized_[2];
  Table synonyms_[2];
  std::unordered_set<std::string> curies_;
};

// Precedence exact_label > normalized_label > synonym > minted; within a tier
// the earlier vocabulary wins. Exact matching compares term labels with the
// entity's display label and raw forms byte for byte.
MappingResult map_term(const CanonicalEntity& entity,
                       std::span<const VocabularyIndex* const> vocabularies,
                       std::string_view ns);

// Convenience overload that indexes the vocabularies on every call.
MappingResult map_term(const CanonicalEntity& entity,
                       std::span<const Vocabulary> vocabularies,
                       std::string_view ns, const Normalizer& normalizer = {});

struct MappingReport {
  // (kind, outcome) -> count; every kind present in the input gets all tiers.
  std::map<std::pair<EntityKind, MatchOutcome>, std::size_t> counts;
  double mapped_fraction = 0.0;  // non-minted / total; 0 for no input
};

MappingReport mapping_report(std::span<const MappingResult> results);
std::string write_mapping_report(const MappingReport& report);

std::string write_mappings(std::span<const MappingResult> results);
std::vector<MappingResult> read_mappings(std::string_view tsv_text,
                                         std::string_view file_name = {});

}  // namespace flavokg
