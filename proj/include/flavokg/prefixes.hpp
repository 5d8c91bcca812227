#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace flavokg {

inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kOboInOwl = "http://www.geneontology.org/formats/oboInOwl#";
inline constexpr std::string_view kObo = "http://purl.obolibrary.org/obo/";

// prefix -> IRI base. Prefix names are unique; bases need not be.
class PrefixMap {
 public:
  // rdf, rdfs, owl and oboInOwl.
  static PrefixMap standard();

  // prefixes.tsv: prefix TAB IRI-base, '#' comments and blank lines skipped.
  static PrefixMap load(std::string_view tsv_text, std::string_view file_name = {});
  std::string write() const;

  // Throws Error if the prefix is already bound to a different base.
  void add(std::string_view prefix, std::string_view base);
  // Adds entries of `other` whose prefix is not bound yet.
  void add_missing(const PrefixMap& other);

  bool contains(std::string_view prefix) const;
  const std::map<std::string, std::string, std::less<>>& entries() const {
    return entries_;
  }

  // "prefix:local" -> base + local, or nullopt when the prefix is unbound.
  std::optional<std::string> expand(std::string_view curie) const;

  // Longest matching base whose remainder is a valid Turtle local name; ties
  // go to the smaller prefix name.
  std::optional<std::string> compact(std::string_view iri) const;

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

// True if `local` can follow "prefix:" in Turtle without escaping. Only a
// conservative subset is accepted: [A-Za-z0-9_-], '.', ':' and %HH escapes,
// not ending with '.'.
bool is_turtle_local_name(std::string_view local);

// Expands a CURIE through the map, falling back to the OBO convention
// http://purl.obolibrary.org/obo/PREFIX_local for unbound prefixes.
std::string expand_curie_or_obo(std::string_view curie, const PrefixMap& prefixes);

}  // namespace flavokg
