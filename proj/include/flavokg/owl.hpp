#pragma once

#include <compare>
#include <set>
#include <span>
#include <string>
#include <string_view>

namespace flavokg {

enum class AxiomKind { class_declaration, label, subclass_of, annotation, relation };

// One axiom over absolute IRIs. Field use by kind:
//   class_declaration: subject
//   label:             subject, object = label text
//   subclass_of:       subject = sub, object = super
//   annotation:        subject, property, object = literal text
//   relation:          subject, property, object = IRI
struct Axiom {
  AxiomKind kind;
  std::string subject;
  std::string property;
  std::string object;

  auto operator<=>(const Axiom&) const = default;

  static Axiom class_declaration(std::string iri);
  static Axiom label(std::string iri, std::string text);
  static Axiom subclass_of(std::string sub, std::string super);
  static Axiom annotation(std::string iri, std::string property, std::string value);
  static Axiom relation(std::string subject, std::string property, std::string object);
};

// A set of axioms; duplicates collapse.
class OwlDocument {
 public:
  using const_iterator = std::set<Axiom>::const_iterator;

  bool insert(Axiom axiom) { return axioms_.insert(std::move(axiom)).second; }
  void insert(const OwlDocument& other) { axioms_.insert(other.begin(), other.end()); }
  bool contains(const Axiom& axiom) const { return axioms_.contains(axiom); }

  std::size_t size() const { return axioms_.size(); }
  bool empty() const { return axioms_.empty(); }
  const_iterator begin() const { return axioms_.begin(); }
  const_iterator end() const { return axioms_.end(); }

  bool operator==(const OwlDocument&) const = default;

 private:
  std::set<Axiom> axioms_;
};

// Set union. Throws Error listing both labels when one IRI ends up with two
// different labels.
OwlDocument merge_documents(std::span<const OwlDocument> docs);
OwlDocument merge_documents(const OwlDocument& a, const OwlDocument& b);

}  // namespace flavokg
