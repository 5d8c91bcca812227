#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flavokg/graph.hpp"
#include "flavokg/owl.hpp"
#include "flavokg/recycle.hpp"

namespace flavokg {

enum class Severity { error, warning };

namespace finding_code {
inline constexpr std::string_view kCycle = "CYCLE";
inline constexpr std::string_view kDanglingEdge = "DANGLING_EDGE";
inline constexpr std::string_view kDuplicateId = "DUPLICATE_ID";
inline constexpr std::string_view kMultipleParents = "MULTIPLE_PARENTS";
inline constexpr std::string_view kLabelConflict = "LABEL_CONFLICT";
inline constexpr std::string_view kUnknownSubclass = "UNKNOWN_SUBCLASS";
inline constexpr std::string_view kOrphanNode = "ORPHAN_NODE";
inline constexpr std::string_view kRedundantEdge = "REDUNDANT_EDGE";
inline constexpr std::string_view kUnmappedTerm = "UNMAPPED_TERM";
}  // namespace finding_code

// Fixed per code; throws Error for an unknown code.
Severity severity_of(std::string_view code);
std::string_view to_string(Severity severity);

struct Finding {
  std::string code;
  Severity severity;
  std::string subject;  // IRI, or space-separated IRIs for edges
  std::string message;

  auto operator<=>(const Finding&) const = default;
};

Finding make_finding(std::string_view code, std::string subject, std::string message);

// By (code, subject, message), duplicates dropped.
void sort_findings(std::vector<Finding>& findings);

struct GraphCheckOptions {
  SubclassRegistry subclasses;
};

// Structural checks over parent_of and identifier links; sorted by
// (code, subject).
std::vector<Finding> check_graph(const KnowledgeGraph& graph,
                                 const GraphCheckOptions& options = {});

// LABEL_CONFLICT and ORPHAN_NODE over an axiom set.
std::vector<Finding> check_ontology(const OwlDocument& doc);

bool has_errors(std::span<const Finding> findings);

// code TAB severity TAB subject TAB message, with a header row.
std::string write_findings(std::span<const Finding> findings);

struct CoverageStats {
  std::map<std::string, std::size_t> nodes_by_kind;
  std::map<std::string, std::size_t> edges_by_kind;
  // kind -> (mapped, total)
  std::map<EntityKind, std::pair<std::size_t, std::size_t>> mapping_by_kind;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t association_count = 0;
};

CoverageStats coverage_stats(const KnowledgeGraph& graph,
                             std::span<const MappingResult> mappings);

// metric TAB key TAB value rows with a header row.
std::string write_coverage(const CoverageStats& stats);

}  // namespace flavokg
