#include "flavokg/recycle.hpp"

#include <algorithm>
#include <array>

#include "flavokg/csv.hpp"
#include "flavokg/error.hpp"

namespace flavokg {
namespace {

bool is_prefix_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_prefix_char(char c) {
  return is_prefix_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

std::vector<std::string> split_synonyms(std::string_view cell) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= cell.size()) {
    std::size_t bar = cell.find('|', start);
    std::string_view part = cell.substr(
        start, bar == std::string_view::npos ? cell.size() - start : bar - start);
    std::string trimmed = csv::trim(part);
    if (!trimmed.empty()) out.push_back(std::move(trimmed));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return out;
}

int family(EntityKind kind) { return strips_plurals(kind) ? 0 : 1; }

}  // namespace

bool is_valid_curie(std::string_view text) {
  std::size_t colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size()) {
    return false;
  }
  if (!is_prefix_start(text[0])) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    if (!is_prefix_char(text[i])) return false;
  }
  for (std::size_t i = colon + 1; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (c <= ' ' || c == 0x7f) return false;
  }
  return true;
}

Vocabulary load_vocabulary(std::string_view tsv_text, std::string name) {
  Vocabulary vocab{std::move(name), {}};
  std::unordered_map<std::string, std::size_t> seen;
  for (const auto& row : csv::split_tsv(tsv_text)) {
    if (row.cells.empty() || row.cells[0].starts_with('#')) continue;
    if (row.cells.size() == 1 && csv::trim(row.cells[0]).empty()) continue;
    std::string curie = csv::trim(row.cells[0]);
    if (!is_valid_curie(curie)) {
      throw ParseError(vocab.name, row.line, "malformed CURIE '" + curie + "'");
    }
    if (row.cells.size() < 2 || csv::trim(row.cells[1]).empty()) {
      throw ParseError(vocab.name, row.line, "term " + curie + " has no label");
    }
    if (row.cells.size() > 3) {
      throw ParseError(vocab.name, row.line, "expected at most 3 columns");
    }
    auto [it, inserted] = seen.emplace(curie, row.line);
    if (!inserted) {
      throw ParseError(vocab.name, row.line,
                       "duplicate CURIE " + curie + " (first at line " +
                           std::to_string(it->second) + ")");
    }
    VocabTerm term;
    term.curie = std::move(curie);
    term.label = csv::trim(row.cells[1]);
    if (row.cells.size() == 3) term.synonyms = split_synonyms(row.cells[2]);
    vocab.terms.push_back(std::move(term));
  }
  return vocab;
}

std::string_view to_string(MatchOutcome outcome) {
  switch (outcome) {
    case MatchOutcome::exact_label: return "exact_label";
    case MatchOutcome::normalized_label: return "normalized_label";
    case MatchOutcome::synonym: return "synonym";
    case MatchOutcome::minted: return "minted";
  }
  return "unknown";
}

std::optional<MatchOutcome> parse_match_outcome(std::string_view name) {
  for (auto outcome : {MatchOutcome::exact_label, MatchOutcome::normalized_label,
                       MatchOutcome::synonym, MatchOutcome::minted}) {
    if (to_string(outcome) == name) return outcome;
  }
  return std::nullopt;
}

std::string mint_local_iri(std::string_view canonical_key, std::string_view ns) {
  if (canonical_key.empty()) throw Error("cannot mint an IRI for an empty key");
  if (ns.empty() || (ns.back() != '/' && ns.back() != '#')) {
    throw Error("namespace '" + std::string(ns) + "' must end with '/' or '#'");
  }
  static constexpr char kHex[] = "0123456789ABCDEF";
  auto plain = [](unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); };
  auto encode = [&](std::string& out, unsigned char c) {
    out.push_back('%');
    out.push_back(kHex[c >> 4]);
    out.push_back(kHex[c & 0xF]);
  };
  // A '-' in the slug reads as a space after [a-z0-9] and as a hyphen
  // anywhere else, so the other one gets percent-encoded in each position.
  std::string out(ns);
  bool after_plain = false;
  for (char ch : canonical_key) {
    auto c = static_cast<unsigned char>(ch);
    if (plain(c)) {
      out.push_back(static_cast<char>(c));
    } else if (c == ' ') {
      if (after_plain) out.push_back('-');
      else encode(out, c);
    } else if (c == '-') {
      if (after_plain) encode(out, c);
      else out.push_back('-');
    } else {
      encode(out, c);
    }
    after_plain = plain(c);
  }
  return out;
}

VocabularyIndex::VocabularyIndex(const Vocabulary& vocabulary,
                                 const Normalizer& normalizer)
    : name_(vocabulary.name), vocabulary_(&vocabulary) {
  // One representative kind per canonicalization family.
  constexpr std::array<EntityKind, 2> kFamilies = {EntityKind::food,
                                                   EntityKind::flavonoid};
  auto canonical = [&](const std::string& text, EntityKind kind) -> std::string {
    try {
      return normalizer.canonicalize(text, kind);
    } catch (const Error&) {
      return {};
    }
  };
  for (const auto& term : vocabulary.terms) {
    curies_.insert(term.curie);
    offer(exact_, term.label, term.curie);
    for (int f = 0; f < 2; ++f) {
      std::string key = canonical(term.label, kFamilies[f]);
      if (!key.empty()) offer(normalized_[f], std::move(key), term.curie);
      for (const auto& syn : term.synonyms) {
        std::string syn_key = canonical(syn, kFamilies[f]);
        if (!syn_key.empty()) offer(synonyms_[f], std::move(syn_key), term.curie);
      }
    }
  }
}

void VocabularyIndex::offer(Table& table, std::string key, const std::string& curie) {
  auto [it, inserted] = table.try_emplace(std::move(key), curie);
  if (!inserted && curie < it->second) it->second = curie;
}

const std::string* VocabularyIndex::exact(std::string_view label) const {
  auto it = exact_.find(std::string(label));
  return it == exact_.end() ? nullptr : &it->second;
}

const std::string* VocabularyIndex::normalized(std::string_view key,
                                               EntityKind kind) const {
  const Table& table = normalized_[family(kind)];
  auto it = table.find(std::string(key));
  return it == table.end() ? nullptr : &it->second;
}

const std::string* VocabularyIndex::synonym(std::string_view key,
                                            EntityKind kind) const {
  const Table& table = synonyms_[family(kind)];
  auto it = table.find(std::string(key));
  return it == table.end() ? nullptr : &it->second;
}

bool VocabularyIndex::contains(std::string_view curie) const {
  return curies_.contains(std::string(curie));
}

MappingResult map_term(const CanonicalEntity& entity,
                       std::span<const VocabularyIndex* const> vocabularies,
                       std::string_view ns) {
  MappingResult result;
  result.entity_key = entity.canonical_key;
  result.kind = entity.kind;

  auto found = [&](MatchOutcome outcome, const VocabularyIndex& vocab,
                   const std::string& curie) {
    result.outcome = outcome;
    result.iri_or_curie = curie;
    result.vocabulary = vocab.name();
    return result;
  };

  for (const auto* vocab : vocabularies) {
    const std::string* best = vocab->exact(entity.display_label);
    for (const auto& [raw, source] : entity.merged_from) {
      const std::string* hit = vocab->exact(raw);
      if (hit != nullptr && (best == nullptr || *hit < *best)) best = hit;
    }
    if (best != nullptr) return found(MatchOutcome::exact_label, *vocab, *best);
  }
  for (const auto* vocab : vocabularies) {
    if (const auto* hit = vocab->normalized(entity.canonical_key, entity.kind)) {
      return found(MatchOutcome::normalized_label, *vocab, *hit);
    }
  }
  for (const auto* vocab : vocabularies) {
    if (const auto* hit = vocab->synonym(entity.canonical_key, entity.kind)) {
      return found(MatchOutcome::synonym, *vocab, *hit);
    }
  }
  result.outcome = MatchOutcome::minted;
  result.iri_or_curie = mint_local_iri(entity.canonical_key, ns);
  result.vocabulary.reset();
  return result;
}

MappingResult map_term(const CanonicalEntity& entity,
                       std::span<const Vocabulary> vocabularies,
                       std::string_view ns, const Normalizer& normalizer) {
  std::vector<VocabularyIndex> indexes;
  indexes.reserve(vocabularies.size());
  for (const auto& v : vocabularies) indexes.emplace_back(v, normalizer);
  std::vector<const VocabularyIndex*> ptrs;
  for (const auto& index : indexes) ptrs.push_back(&index);
  return map_term(entity, ptrs, ns);
}

MappingReport mapping_report(std::span<const MappingResult> results) {
  MappingReport report;
  std::size_t mapped = 0;
  for (const auto& r : results) {
    for (auto outcome : {MatchOutcome::exact_label, MatchOutcome::normalized_label,
                         MatchOutcome::synonym, MatchOutcome::minted}) {
      report.counts.try_emplace({r.kind, outcome}, 0);
    }
    ++report.counts[{r.kind, r.outcome}];
    if (r.outcome != MatchOutcome::minted) ++mapped;
  }
  report.mapped_fraction =
      results.empty() ? 0.0
                      : static_cast<double>(mapped) / static_cast<double>(results.size());
  return report;
}

std::string write_mapping_report(const MappingReport& report) {
  std::string out = "kind\toutcome\tcount\n";
  for (const auto& [key, count] : report.counts) {
    out += std::string(to_string(key.first)) + '\t' +
           std::string(to_string(key.second)) + '\t' + std::to_string(count) + '\n';
  }
  out += "overall\tmapped_fraction\t" + format_decimal(report.mapped_fraction) + '\n';
  return out;
}

std::string write_mappings(std::span<const MappingResult> results) {
  std::string out = "entity_key\tkind\toutcome\tiri_or_curie\tvocabulary\tmatch_quality\n";
  for (const auto& r : results) {
    out += r.entity_key + '\t' + std::string(to_string(r.kind)) + '\t' +
           std::string(to_string(r.outcome)) + '\t' + r.iri_or_curie + '\t' +
           r.vocabulary.value_or("") + '\t' + std::to_string(r.match_quality()) + '\n';
  }
  return out;
}

std::vector<MappingResult> read_mappings(std::string_view tsv_text,
                                         std::string_view file_name) {
  std::vector<MappingResult> out;
  bool header = true;
  for (const auto& row : csv::split_tsv(tsv_text)) {
    if (row.cells.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    if (row.cells.size() != 6) {
      throw ParseError(std::string(file_name), row.line, "expected 6 columns");
    }
    MappingResult r;
    r.entity_key = row.cells[0];
    auto kind = parse_entity_kind(row.cells[1]);
    auto outcome = parse_match_outcome(row.cells[2]);
    if (!kind || !outcome) {
      throw ParseError(std::string(file_name), row.line, "unknown kind or outcome");
    }
    r.kind = *kind;
    r.outcome = *outcome;
    r.iri_or_curie = row.cells[3];
    if (!row.cells[4].empty()) r.vocabulary = row.cells[4];
    if ((r.outcome == MatchOutcome::minted) != !r.vocabulary.has_value()) {
      throw ParseError(std::string(file_name), row.line,
                       "minted outcome must have no vocabulary and vice versa");
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace flavokg
