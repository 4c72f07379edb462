#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace intellichain {

enum class NodeKind { Concept, Principle, Example };
enum class Relation { PrerequisiteOf, InstanceOf, RelatedTo, AppliesTo };

std::string_view to_string(NodeKind kind);
std::string_view to_string(Relation relation);
std::optional<NodeKind> parse_node_kind(std::string_view name);
std::optional<Relation> parse_relation(std::string_view name);

struct KnowledgeNode {
  std::string id;
  NodeKind kind = NodeKind::Concept;
  std::string label;
  std::string description;
  std::vector<std::string> aliases;

  friend bool operator==(const KnowledgeNode&, const KnowledgeNode&) = default;
};

struct KnowledgeEdge {
  std::string source;
  std::string target;
  Relation relation = Relation::RelatedTo;
  std::optional<std::string> note;

  friend bool operator==(const KnowledgeEdge&, const KnowledgeEdge&) = default;
};

/// A (subject, relation, object) triple; the unit of grounding cited on turns.
struct FactRef {
  std::string subject;
  Relation relation = Relation::RelatedTo;
  std::string object;

  friend auto operator<=>(const FactRef&, const FactRef&) = default;
};

struct Fact {
  FactRef ref;
  std::size_t hop = 0;
  std::string sentence;

  friend bool operator==(const Fact&, const Fact&) = default;
};

struct ContextBundle {
  std::vector<std::string> seeds;
  std::vector<Fact> facts;
  std::size_t hop_limit = 0;
  bool truncated = false;

  std::vector<FactRef> fact_refs() const;

  friend bool operator==(const ContextBundle&, const ContextBundle&) = default;
};

inline constexpr std::size_t kDefaultHopLimit = 1;
inline constexpr std::size_t kDefaultFactCap = 12;

/// Validated, immutable mathematics knowledge graph.
///
/// Nodes keep their document order; edges keep theirs. The alias index maps
/// every normalized alias (labels included) to exactly one node id. Instances
/// are only produced by load_graph/parse_graph and are safe to share across
/// threads.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  const std::vector<KnowledgeNode>& nodes() const { return nodes_; }
  const std::vector<KnowledgeEdge>& edges() const { return edges_; }
  const std::map<std::string, std::string>& alias_index() const { return alias_index_; }

  const KnowledgeNode* find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }

  // Edge indices incident to a node, in document order.
  const std::vector<std::size_t>& incident_edges(std::string_view id) const;

  std::size_t max_alias_tokens() const { return max_alias_tokens_; }

  // Structural equality: same nodes and edges in the same order.
  friend bool operator==(const KnowledgeGraph& a, const KnowledgeGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  friend KnowledgeGraph build_graph(std::vector<KnowledgeNode>, std::vector<KnowledgeEdge>);

  std::vector<KnowledgeNode> nodes_;
  std::vector<KnowledgeEdge> edges_;
  std::unordered_map<std::string, std::size_t> node_pos_;
  std::unordered_map<std::string, std::vector<std::size_t>> incidence_;
  std::map<std::string, std::string> alias_index_;
  std::size_t max_alias_tokens_ = 0;
};

// Validates nodes and edges and builds the indices. Throws Error with
// DuplicateNodeId, DuplicateAlias, DanglingEdge, SelfLoopEdge or
// MalformedDocument (bad ids, empty aliases).
KnowledgeGraph build_graph(std::vector<KnowledgeNode> nodes, std::vector<KnowledgeEdge> edges);

// Parses the JSON graph document.
KnowledgeGraph load_graph(std::string_view document);
KnowledgeGraph load_graph_file(const std::string& path);

// Canonical document text; load_graph(serialize_graph(g)) == g.
std::string serialize_graph(const KnowledgeGraph& graph);

/// Knowledge points mentioned in free text.
///
/// An alias matches when its normalized token sequence occurs as a contiguous
/// token run in the normalized text. Overlapping matches are resolved
/// longest alias first (normalized length in bytes), then by node id, then by
/// earliest position. Ids come back in order of first accepted match, each
/// at most once.
std::vector<std::string> link_knowledge_points(std::string_view text, const KnowledgeGraph& graph);

// Breadth-first expansion over undirected edge incidence. An edge is a
// candidate fact when both endpoints lie within hop_limit of a seed; its hop
// is the larger endpoint distance. Facts sort by (hop, relation name, subject,
// object) and are cut at cap. Throws UnknownSeed.
ContextBundle query_context(const KnowledgeGraph& graph, const std::vector<std::string>& seeds,
                            std::size_t hop_limit = kDefaultHopLimit,
                            std::size_t cap = kDefaultFactCap);

// "<subject label> —<relation>→ <object label>: <object description>"
std::string render_fact(const FactRef& fact, const KnowledgeGraph& graph);

// One rendered line per fact, joined with '\n'; empty bundle gives "".
std::string render_facts(const ContextBundle& bundle, const KnowledgeGraph& graph);

}  // namespace intellichain
