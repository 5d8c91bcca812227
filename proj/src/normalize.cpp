#include "flavokg/normalize.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <map>
#include <unordered_map>

#include "flavokg/csv.hpp"
#include "flavokg/error.hpp"

namespace flavokg {
namespace {

const icu::Normalizer2& nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* instance = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || instance == nullptr) {
    throw Error("ICU NFC normalizer unavailable");
  }
  return *instance;
}

icu::UnicodeString normalize_nfc(const icu::UnicodeString& in) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = nfc().normalize(in, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  return out;
}

std::u32string to_code_points(const icu::UnicodeString& s) {
  std::u32string out;
  out.reserve(static_cast<std::size_t>(s.length()));
  for (int32_t i = 0; i < s.length(); i = s.moveIndex32(i, 1)) {
    out.push_back(static_cast<char32_t>(s.char32At(i)));
  }
  return out;
}

std::u32string decode_utf8(std::string_view s) {
  return to_code_points(icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size()))));
}

std::string encode_utf8(const std::u32string& s) {
  icu::UnicodeString u;
  for (char32_t c : s) u.append(static_cast<UChar32>(c));
  std::string out;
  u.toUTF8String(out);
  return out;
}

bool is_trailing_punct(char32_t c) {
  return c == U'.' || c == U',' || c == U';' || c == U':' || c == U'!' ||
         c == U'?';
}

bool ends_with(const std::u32string& s, std::u32string_view suffix) {
  return s.size() >= suffix.size() &&
         std::u32string_view(s).substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::string_view to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::food: return "food";
    case EntityKind::food_group: return "food_group";
    case EntityKind::flavonoid: return "flavonoid";
    case EntityKind::flavonoid_subclass: return "flavonoid_subclass";
    case EntityKind::disease: return "disease";
    case EntityKind::drug: return "drug";
  }
  return "unknown";
}

std::optional<EntityKind> parse_entity_kind(std::string_view name) {
  for (EntityKind kind : kAllEntityKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

bool strips_plurals(EntityKind kind) {
  return kind == EntityKind::food || kind == EntityKind::food_group ||
         kind == EntityKind::disease;
}

void Normalizer::add_plural_exception(std::string_view word) {
  std::string trimmed = csv::trim(word);
  if (trimmed.empty()) return;
  // Stored in the same form the final word has during canonicalization.
  icu::UnicodeString u = normalize_nfc(icu::UnicodeString::fromUTF8(trimmed));
  u.toLower(icu::Locale::getRoot());
  std::string folded;
  normalize_nfc(u).toUTF8String(folded);
  plural_exceptions_.insert(std::move(folded));
}

void Normalizer::add_override(std::string_view raw_label, EntityKind kind,
                              std::string_view canonical_key) {
  std::string key = csv::trim(canonical_key);
  if (key.empty()) throw Error("override for '" + std::string(raw_label) +
                               "' has an empty canonical key");
  overrides_[{csv::trim(raw_label), kind}] = std::move(key);
}

void Normalizer::load_plural_exceptions(std::string_view text) {
  for (const auto& row : csv::split_tsv(text)) {
    if (row.cells.empty()) continue;
    std::string word = csv::trim(row.cells[0]);
    if (word.empty() || word.starts_with('#')) continue;
    add_plural_exception(word);
  }
}

void Normalizer::load_overrides(std::string_view text, std::string_view file_name) {
  for (const auto& row : csv::split_tsv(text)) {
    if (row.cells.empty() || row.cells[0].starts_with('#')) continue;
    if (row.cells.size() != 3) {
      throw ParseError(std::string(file_name), row.line,
                       "expected raw_label TAB kind TAB canonical_key");
    }
    auto kind = parse_entity_kind(csv::trim(row.cells[1]));
    if (!kind) {
      throw ParseError(std::string(file_name), row.line,
                       "unknown entity kind '" + row.cells[1] + "'");
    }
    add_override(row.cells[0], *kind, row.cells[2]);
  }
}

std::string Normalizer::canonicalize(std::string_view raw, EntityKind kind) const {
  if (csv::trim(raw).empty()) throw Error("cannot canonicalize an empty label");

  icu::UnicodeString u = normalize_nfc(icu::UnicodeString::fromUTF8(
      icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size()))));
  u.toLower(icu::Locale::getRoot());
  std::u32string cps = to_code_points(normalize_nfc(u));

  // Collapse whitespace runs and trim.
  std::u32string text;
  text.reserve(cps.size());
  bool pending_space = false;
  for (char32_t c : cps) {
    if (u_isUWhiteSpace(static_cast<UChar32>(c))) {
      pending_space = !text.empty();
      continue;
    }
    if (pending_space) text.push_back(U' ');
    pending_space = false;
    text.push_back(c);
  }

  const bool plurals = strips_plurals(kind);
  while (true) {
    std::size_t before = text.size();
    while (!text.empty() && (is_trailing_punct(text.back()) || text.back() == U' ')) {
      text.pop_back();
    }
    if (plurals && !text.empty()) {
      std::size_t start = text.rfind(U' ');
      start = start == std::u32string::npos ? 0 : start + 1;
      std::u32string word = text.substr(start);
      bool exempt = word.size() <= 3 || plural_exceptions_.contains(encode_utf8(word));
      if (!exempt) {
        if (ends_with(word, U"ies")) {
          text.resize(text.size() - 3);
          text.push_back(U'y');
        } else if (ends_with(word, U"s") && !ends_with(word, U"ss") &&
                   !ends_with(word, U"us")) {
          text.pop_back();
        }
      }
    }
    if (text.size() == before) break;
  }
  if (text.empty()) {
    throw Error("label '" + std::string(raw) + "' has no content after canonicalization");
  }
  return encode_utf8(text);
}

std::string Normalizer::key_for(std::string_view raw, EntityKind kind) const {
  auto it = overrides_.find({csv::trim(raw), kind});
  if (it != overrides_.end()) return it->second;
  return canonicalize(raw, kind);
}

bool Normalizer::has_override(std::string_view raw, EntityKind kind) const {
  return overrides_.contains({csv::trim(raw), kind});
}

std::string canonicalize_label(std::string_view raw, EntityKind kind) {
  static const Normalizer plain;
  return plain.canonicalize(raw, kind);
}

MergeResult merge_entities(const std::vector<LabelOccurrence>& occurrences,
                           const Normalizer& normalizer,
                           std::size_t review_distance) {
  struct Group {
    EntityKind kind;
    const LabelOccurrence* first;
    std::vector<const LabelOccurrence*> members;
  };
  std::map<std::string, Group> groups;
  // Raw labels repeat heavily (one per content row); canonicalize each once.
  std::map<std::pair<std::string_view, EntityKind>, std::string> key_cache;

  for (const auto& occ : occurrences) {
    auto [cached, fresh] = key_cache.try_emplace({occ.raw_label, occ.kind});
    if (fresh) cached->second = normalizer.key_for(occ.raw_label, occ.kind);
    const std::string& key = cached->second;
    auto [it, inserted] = groups.try_emplace(key, Group{occ.kind, &occ, {}});
    Group& group = it->second;
    if (group.kind != occ.kind) {
      const auto& a = group.first->source;
      const auto& b = occ.source;
      throw Error("canonical key '" + key + "' is shared by " +
                  std::string(to_string(group.kind)) + " '" +
                  group.first->raw_label + "' (" + a.file_name + ":" +
                  std::to_string(a.line_number) + ") and " +
                  std::string(to_string(occ.kind)) + " '" + occ.raw_label +
                  "' (" + b.file_name + ":" + std::to_string(b.line_number) + ")");
    }
    group.members.push_back(&occ);
  }

  MergeResult result;
  result.entities.reserve(groups.size());
  std::map<EntityKind, std::vector<std::string>> keys_by_kind;
  for (auto& [key, group] : groups) {
    std::map<std::string, std::size_t> counts;
    for (const auto* occ : group.members) ++counts[occ->raw_label];
    // std::map iterates in lexicographic order, so the first maximum wins ties.
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it) {
      if (it->second > best->second) best = it;
    }

    CanonicalEntity entity;
    entity.canonical_key = key;
    entity.display_label = best->first;
    entity.kind = group.kind;
    for (const auto* occ : group.members) {
      entity.merged_from.emplace_back(occ->raw_label, occ->source);
    }
    std::sort(entity.merged_from.begin(), entity.merged_from.end(),
              [](const auto& a, const auto& b) {
                return std::tie(a.second, a.first) < std::tie(b.second, b.first);
              });

    if (counts.size() > 1) {
      EntityMerge merge{key, group.kind, entity.display_label, {}};
      for (const auto& [label, count] : counts) {
        if (label != entity.display_label) merge.absorbed_labels.push_back(label);
      }
      result.report.merges.push_back(std::move(merge));
    }
    keys_by_kind[group.kind].push_back(key);
    result.entities.push_back(std::move(entity));
  }

  if (review_distance > 0) {
    for (const auto& [kind, keys] : keys_by_kind) {
      for (auto pair : detect_near_duplicates(keys, review_distance)) {
        pair.kind = kind;
        result.report.review_queue.push_back(std::move(pair));
      }
    }
    std::sort(result.report.review_queue.begin(), result.report.review_queue.end(),
              [](const NearDuplicate& a, const NearDuplicate& b) {
                return std::tie(a.distance, a.first, a.second, a.kind) <
                       std::tie(b.distance, b.first, b.second, b.kind);
              });
  }
  return result;
}

namespace {

// Levenshtein distance capped at `bound`: returns bound + 1 as soon as the
// true distance is known to exceed it. Only a diagonal band is evaluated.
std::size_t bounded_distance(const std::u32string& a, const std::u32string& b,
                             std::size_t bound) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  const std::size_t diff = n > m ? n - m : m - n;
  if (diff > bound) return bound + 1;
  const std::size_t inf = bound + 1;
  std::vector<std::size_t> prev(m + 1, inf), curr(m + 1, inf);
  for (std::size_t j = 0; j <= std::min(m, bound); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t lo = i > bound ? i - bound : 0;
    std::size_t hi = std::min(m, i + bound);
    std::fill(curr.begin(), curr.end(), inf);
    if (lo == 0) curr[0] = i;
    std::size_t row_min = lo == 0 ? curr[0] : inf;
    for (std::size_t j = std::max<std::size_t>(lo, 1); j <= hi; ++j) {
      std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      std::size_t v = std::min({prev[j] + 1, curr[j - 1] + 1, prev[j - 1] + cost});
      curr[j] = std::min(v, inf);
      row_min = std::min(row_min, curr[j]);
    }
    if (row_min > bound) return inf;
    std::swap(prev, curr);
  }
  return std::min(prev[m], inf);
}

}  // namespace

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::u32string ca = decode_utf8(a);
  std::u32string cb = decode_utf8(b);
  return bounded_distance(ca, cb, std::max(ca.size(), cb.size()));
}

std::vector<NearDuplicate> detect_near_duplicates(
    const std::vector<std::string>& labels, std::size_t max_distance) {
  if (max_distance < 1) throw Error("near-duplicate distance bound must be >= 1");
  std::vector<std::string> unique(labels);
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  std::vector<std::u32string> decoded;
  decoded.reserve(unique.size());
  for (const auto& s : unique) decoded.push_back(decode_utf8(s));

  // Bucket by length so only labels within max_distance in length are compared.
  std::vector<std::size_t> order(unique.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return decoded[x].size() < decoded[y].size();
  });

  std::vector<NearDuplicate> out;
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const std::size_t i = order[oi];
    for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
      const std::size_t j = order[oj];
      if (decoded[j].size() - decoded[i].size() > max_distance) break;
      std::size_t d = bounded_distance(decoded[i], decoded[j], max_distance);
      if (d >= 1 && d <= max_distance) {
        const auto& x = unique[i];
        const auto& y = unique[j];
        out.push_back(x < y ? NearDuplicate{x, y, d, std::nullopt}
                            : NearDuplicate{y, x, d, std::nullopt});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const NearDuplicate& a, const NearDuplicate& b) {
    return std::tie(a.distance, a.first, a.second) < std::tie(b.distance, b.first, b.second);
  });
  return out;
}

std::string write_merge_report(const MergeReport& report) {
  std::string out = "action\tkind\tfirst\tsecond\tdetail\n";
  for (const auto& merge : report.merges) {
    std::string absorbed;
    for (const auto& label : merge.absorbed_labels) {
      if (!absorbed.empty()) absorbed += '|';
      absorbed += label;
    }
    out += "merge\t" + std::string(to_string(merge.kind)) + '\t' +
           merge.canonical_key + '\t' + merge.display_label + '\t' + absorbed + '\n';
  }
  for (const auto& pair : report.review_queue) {
    out += "review\t" +
           std::string(pair.kind ? to_string(*pair.kind) : std::string_view{}) +
           '\t' + pair.first + '\t' + pair.second + '\t' +
           std::to_string(pair.distance) + '\n';
  }
  return out;
}

}  // namespace flavokg
