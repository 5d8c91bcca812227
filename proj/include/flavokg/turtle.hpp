#pragma once

#include <string>
#include <string_view>

#include "flavokg/owl.hpp"
#include "flavokg/prefixes.hpp"

namespace flavokg {

// Canonical Turtle. The prefix block lists every entry of `prefixes` plus the
// rdf/rdfs/owl/oboInOwl defaults, sorted by prefix name. Subjects follow in
// expanded-IRI order, one blank line apart; the first line of a subject block
// carries its first triple and every further predicate-object pair gets its
// own line. Predicates are ordered rdf:type, rdfs:label, rdfs:subClassOf,
// then by expanded IRI; objects are sorted (IRIs before literals). Output is
// UTF-8 with LF line ends and no trailing whitespace.
std::string serialize_turtle(const OwlDocument& doc, const PrefixMap& prefixes);

struct ParsedTurtle {
  OwlDocument document;
  PrefixMap prefixes;
};

// Reads the Turtle subset the serializer produces, plus ',' object lists,
// PREFIX/BASE-free SPARQL-style prefix lines and comments. Triples map back to
// axioms: `a owl:Class` -> ClassDeclaration, rdfs:label literal -> Label,
// rdfs:subClassOf -> SubClassOf, other literal objects -> Annotation, other
// IRI objects -> Relation. Blank nodes, numbers and collections are rejected
// with a ParseError.
ParsedTurtle parse_turtle(std::string_view text, std::string_view file_name = {});

}  // namespace flavokg
