#include "flavokg/prefixes.hpp"

#include "flavokg/csv.hpp"
#include "flavokg/error.hpp"

namespace flavokg {
namespace {

bool is_hex(char c) {
  return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'F') || (c >= 'a' && c <= 'f');
}

bool is_valid_prefix_name(std::string_view p) {
  if (p.empty()) return true;  // the empty prefix ":" is legal Turtle
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
  if (!alpha(p.front()) || p.back() == '.') return false;
  for (char c : p) {
    if (!(alpha(c) || (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.')) {
      return false;
    }
  }
  return true;
}

}  // namespace

PrefixMap PrefixMap::standard() {
  PrefixMap map;
  map.add("rdf", kRdf);
  map.add("rdfs", kRdfs);
  map.add("owl", kOwl);
  map.add("oboInOwl", kOboInOwl);
  return map;
}

PrefixMap PrefixMap::load(std::string_view tsv_text, std::string_view file_name) {
  PrefixMap map;
  for (const auto& row : csv::split_tsv(tsv_text)) {
    if (row.cells.empty() || row.cells[0].starts_with('#')) continue;
    if (row.cells.size() != 2) {
      throw ParseError(std::string(file_name), row.line,
                       "expected prefix TAB IRI-base");
    }
    try {
      map.add(csv::trim(row.cells[0]), csv::trim(row.cells[1]));
    } catch (const Error& e) {
      throw ParseError(std::string(file_name), row.line, e.what());
    }
  }
  return map;
}

std::string PrefixMap::write() const {
  std::string out;
  for (const auto& [prefix, base] : entries_) out += prefix + '\t' + base + '\n';
  return out;
}

void PrefixMap::add(std::string_view prefix, std::string_view base) {
  if (!is_valid_prefix_name(prefix)) {
    throw Error("invalid prefix name '" + std::string(prefix) + "'");
  }
  if (base.empty() || base.find_first_of(" <>\"{}|^`\\") != std::string_view::npos) {
    throw Error("invalid IRI base '" + std::string(base) + "' for prefix '" +
                std::string(prefix) + "'");
  }
  auto it = entries_.find(prefix);
  if (it != entries_.end()) {
    if (it->second != base) {
      throw Error("prefix '" + std::string(prefix) + "' bound to both <" +
                  it->second + "> and <" + std::string(base) + ">");
    }
    return;
  }
  entries_.emplace(std::string(prefix), std::string(base));
}

void PrefixMap::add_missing(const PrefixMap& other) {
  for (const auto& [prefix, base] : other.entries_) {
    if (!contains(prefix)) entries_.emplace(prefix, base);
  }
}

bool PrefixMap::contains(std::string_view prefix) const {
  return entries_.find(prefix) != entries_.end();
}

std::optional<std::string> PrefixMap::expand(std::string_view curie) const {
  std::size_t colon = curie.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  auto it = entries_.find(curie.substr(0, colon));
  if (it == entries_.end()) return std::nullopt;
  return it->second + std::string(curie.substr(colon + 1));
}

std::optional<std::string> PrefixMap::compact(std::string_view iri) const {
  const std::string* best_prefix = nullptr;
  std::size_t best_len = 0;
  for (const auto& [prefix, base] : entries_) {
    if (!iri.starts_with(base) || base.size() < best_len) continue;
    if (best_prefix != nullptr && base.size() == best_len) continue;  // smaller name kept
    if (!is_turtle_local_name(iri.substr(base.size()))) continue;
    best_prefix = &prefix;
    best_len = base.size();
  }
  if (best_prefix == nullptr) return std::nullopt;
  return *best_prefix + ":" + std::string(iri.substr(best_len));
}

bool is_turtle_local_name(std::string_view local) {
  if (local.empty()) return true;
  if (local.back() == '.') return false;
  if (local.front() == '-' || local.front() == '.') return false;
  for (std::size_t i = 0; i < local.size(); ++i) {
    char c = local[i];
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
        c == '_' || c == '-' || c == '.' || c == ':') {
      continue;
    }
    if (c == '%' && i + 2 < local.size() && is_hex(local[i + 1]) &&
        is_hex(local[i + 2])) {
      i += 2;
      continue;
    }
    return false;
  }
  return true;
}

std::string expand_curie_or_obo(std::string_view curie, const PrefixMap& prefixes) {
  if (auto iri = prefixes.expand(curie)) return *iri;
  std::size_t colon = curie.find(':');
  if (colon == std::string_view::npos) {
    throw Error("'" + std::string(curie) + "' is not a CURIE");
  }
  return std::string(kObo) + std::string(curie.substr(0, colon)) + "_" +
         std::string(curie.substr(colon + 1));
}

}  // namespace flavokg
