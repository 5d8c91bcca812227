#include "flavokg/owl.hpp"

#include <map>

#include "flavokg/error.hpp"

namespace flavokg {

Axiom Axiom::class_declaration(std::string iri) {
  return {AxiomKind::class_declaration, std::move(iri), {}, {}};
}

Axiom Axiom::label(std::string iri, std::string text) {
  return {AxiomKind::label, std::move(iri), {}, std::move(text)};
}

Axiom Axiom::subclass_of(std::string sub, std::string super) {
  return {AxiomKind::subclass_of, std::move(sub), {}, std::move(super)};
}

Axiom Axiom::annotation(std::string iri, std::string property, std::string value) {
  return {AxiomKind::annotation, std::move(iri), std::move(property), std::move(value)};
}

Axiom Axiom::relation(std::string subject, std::string property, std::string object) {
  return {AxiomKind::relation, std::move(subject), std::move(property), std::move(object)};
}

OwlDocument merge_documents(std::span<const OwlDocument> docs) {
  OwlDocument merged;
  for (const auto& doc : docs) merged.insert(doc);

  // Labels are ordered by (subject, text) inside the set, so conflicts are
  // adjacent.
  const Axiom* previous = nullptr;
  for (const auto& axiom : merged) {
    if (axiom.kind != AxiomKind::label) continue;
    if (previous != nullptr && previous->subject == axiom.subject) {
      throw Error("conflicting labels for <" + axiom.subject + ">: \"" +
                  previous->object + "\" and \"" + axiom.object + "\"");
    }
    previous = &axiom;
  }
  return merged;
}

OwlDocument merge_documents(const OwlDocument& a, const OwlDocument& b) {
  const OwlDocument docs[] = {a, b};
  return merge_documents(docs);
}

}  // namespace flavokg
