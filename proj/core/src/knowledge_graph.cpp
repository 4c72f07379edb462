#include "intellichain/knowledge_graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "intellichain/error.hpp"
#include "intellichain/text.hpp"

namespace intellichain {

using nlohmann::json;

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Concept: return "concept";
    case NodeKind::Principle: return "principle";
    case NodeKind::Example: return "example";
  }
  return "concept";
}

std::string_view to_string(Relation relation) {
  switch (relation) {
    case Relation::PrerequisiteOf: return "prerequisite_of";
    case Relation::InstanceOf: return "instance_of";
    case Relation::RelatedTo: return "related_to";
    case Relation::AppliesTo: return "applies_to";
  }
  return "related_to";
}

std::optional<NodeKind> parse_node_kind(std::string_view name) {
  if (name == "concept") return NodeKind::Concept;
  if (name == "principle") return NodeKind::Principle;
  if (name == "example") return NodeKind::Example;
  return std::nullopt;
}

std::optional<Relation> parse_relation(std::string_view name) {
  if (name == "prerequisite_of") return Relation::PrerequisiteOf;
  if (name == "instance_of") return Relation::InstanceOf;
  if (name == "related_to") return Relation::RelatedTo;
  if (name == "applies_to") return Relation::AppliesTo;
  return std::nullopt;
}

std::vector<FactRef> ContextBundle::fact_refs() const {
  std::vector<FactRef> out;
  out.reserve(facts.size());
  for (const auto& f : facts) out.push_back(f.ref);
  return out;
}

const KnowledgeNode* KnowledgeGraph::find(std::string_view id) const {
  auto it = node_pos_.find(std::string(id));
  return it == node_pos_.end() ? nullptr : &nodes_[it->second];
}

const std::vector<std::size_t>& KnowledgeGraph::incident_edges(std::string_view id) const {
  static const std::vector<std::size_t> kNone;
  auto it = incidence_.find(std::string(id));
  return it == incidence_.end() ? kNone : it->second;
}

namespace {

bool valid_id(const std::string& id) {
  if (id.empty()) return false;
  return std::none_of(id.begin(), id.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
  });
}

}  // namespace

KnowledgeGraph build_graph(std::vector<KnowledgeNode> nodes, std::vector<KnowledgeEdge> edges) {
  KnowledgeGraph g;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto& node = nodes[i];
    if (!valid_id(node.id)) {
      throw Error(ErrorCode::MalformedDocument,
                  "node id must be non-empty without whitespace: '" + node.id + "'");
    }
    if (!g.node_pos_.emplace(node.id, i).second) {
      throw Error(ErrorCode::DuplicateNodeId, "duplicate node id '" + node.id + "'");
    }
    if (std::find(node.aliases.begin(), node.aliases.end(), node.label) == node.aliases.end()) {
      node.aliases.insert(node.aliases.begin(), node.label);
    }
    // A node may list the same surface form twice (or label + alias that
    // normalize alike); only cross-node collisions are errors.
    std::set<std::string> own;
    for (const auto& alias : node.aliases) {
      auto key = text::normalize(alias);
      if (key.empty()) {
        throw Error(ErrorCode::MalformedDocument,
                    "alias '" + alias + "' of node '" + node.id + "' normalizes to empty");
      }
      if (!own.insert(key).second) continue;
      auto [it, inserted] = g.alias_index_.emplace(key, node.id);
      if (!inserted) {
        throw Error(ErrorCode::DuplicateAlias, "alias '" + key + "' shared by nodes '" +
                                                   it->second + "' and '" + node.id + "'");
      }
      g.max_alias_tokens_ = std::max(g.max_alias_tokens_, text::tokens(key).size());
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    for (const auto* end : {&e.source, &e.target}) {
      if (!g.node_pos_.contains(*end)) {
        throw Error(ErrorCode::DanglingEdge, "edge " + e.source + " -> " + e.target +
                                                 " references undeclared node '" + *end + "'");
      }
    }
    if (e.source == e.target) {
      throw Error(ErrorCode::SelfLoopEdge, "self-loop on node '" + e.source + "'");
    }
    g.incidence_[e.source].push_back(i);
    g.incidence_[e.target].push_back(i);
  }
  g.nodes_ = std::move(nodes);
  g.edges_ = std::move(edges);
  return g;
}

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorCode::MalformedDocument, where + " is missing \"" + key + "\"");
  }
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_string()) {
    throw Error(ErrorCode::MalformedDocument, where + " field \"" + key + "\" must be a string");
  }
  return v.get<std::string>();
}

}  // namespace

KnowledgeGraph load_graph(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedDocument, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::MalformedDocument, "top level must be an object");
  const auto& jnodes = require(doc, "nodes", "document");
  const auto& jedges = require(doc, "edges", "document");
  if (!jnodes.is_array() || !jedges.is_array()) {
    throw Error(ErrorCode::MalformedDocument, "\"nodes\" and \"edges\" must be arrays");
  }

  std::vector<KnowledgeNode> nodes;
  nodes.reserve(jnodes.size());
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    const auto& jn = jnodes[i];
    auto where = "nodes[" + std::to_string(i) + "]";
    if (!jn.is_object()) throw Error(ErrorCode::MalformedDocument, where + " must be an object");
    KnowledgeNode n;
    n.id = require_string(jn, "id", where);
    auto kind = parse_node_kind(require_string(jn, "kind", where));
    if (!kind) throw Error(ErrorCode::MalformedDocument, where + " has unknown kind");
    n.kind = *kind;
    n.label = require_string(jn, "label", where);
    n.description = require_string(jn, "description", where);
    const auto& aliases = require(jn, "aliases", where);
    if (!aliases.is_array()) {
      throw Error(ErrorCode::MalformedDocument, where + " \"aliases\" must be an array");
    }
    for (const auto& a : aliases) {
      if (!a.is_string()) throw Error(ErrorCode::MalformedDocument, where + " alias not a string");
      n.aliases.push_back(a.get<std::string>());
    }
    nodes.push_back(std::move(n));
  }

  std::vector<KnowledgeEdge> edges;
  edges.reserve(jedges.size());
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    const auto& je = jedges[i];
    auto where = "edges[" + std::to_string(i) + "]";
    if (!je.is_object()) throw Error(ErrorCode::MalformedDocument, where + " must be an object");
    KnowledgeEdge e;
    e.source = require_string(je, "source", where);
    e.target = require_string(je, "target", where);
    auto rel = parse_relation(require_string(je, "relation", where));
    if (!rel) throw Error(ErrorCode::MalformedDocument, where + " has unknown relation");
    e.relation = *rel;
    if (auto it = je.find("note"); it != je.end() && !it->is_null()) {
      if (!it->is_string()) throw Error(ErrorCode::MalformedDocument, where + " note not a string");
      e.note = it->get<std::string>();
    }
    edges.push_back(std::move(e));
  }
  return build_graph(std::move(nodes), std::move(edges));
}

KnowledgeGraph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open graph file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_graph(buf.str());
}

std::string serialize_graph(const KnowledgeGraph& graph) {
  json doc = {{"nodes", json::array()}, {"edges", json::array()}};
  for (const auto& n : graph.nodes()) {
    doc["nodes"].push_back({{"id", n.id},
                            {"kind", to_string(n.kind)},
                            {"label", n.label},
                            {"description", n.description},
                            {"aliases", n.aliases}});
  }
  for (const auto& e : graph.edges()) {
    json je = {{"source", e.source}, {"target", e.target}, {"relation", to_string(e.relation)}};
    if (e.note) je["note"] = *e.note;
    doc["edges"].push_back(std::move(je));
  }
  return doc.dump(2) + "\n";
}

std::vector<std::string> link_knowledge_points(std::string_view input, const KnowledgeGraph& graph) {
  const auto toks = text::tokens(text::normalize(input));
  if (toks.empty() || graph.alias_index().empty()) return {};

  struct Match {
    std::size_t start;
    std::size_t end;  // exclusive, in tokens
    std::size_t length;
    const std::string* id;
  };
  std::vector<Match> matches;
  const auto& index = graph.alias_index();
  for (std::size_t i = 0; i < toks.size(); ++i) {
    std::string phrase;
    for (std::size_t n = 1; n <= graph.max_alias_tokens() && i + n <= toks.size(); ++n) {
      if (n > 1) phrase.push_back(' ');
      phrase += toks[i + n - 1];
      if (auto it = index.find(phrase); it != index.end()) {
        matches.push_back({i, i + n, phrase.size(), &it->second});
      }
    }
  }

  std::sort(matches.begin(), matches.end(), [](const Match& a, const Match& b) {
    return std::tie(b.length, *a.id, a.start) < std::tie(a.length, *b.id, b.start);
  });
  std::vector<bool> taken(toks.size(), false);
  std::vector<Match> accepted;
  for (const auto& m : matches) {
    if (std::any_of(taken.begin() + m.start, taken.begin() + m.end, [](bool t) { return t; })) {
      continue;
    }
    std::fill(taken.begin() + m.start, taken.begin() + m.end, true);
    accepted.push_back(m);
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const Match& a, const Match& b) { return a.start < b.start; });

  std::vector<std::string> ids;
  for (const auto& m : accepted) {
    if (std::find(ids.begin(), ids.end(), *m.id) == ids.end()) ids.push_back(*m.id);
  }
  return ids;
}

ContextBundle query_context(const KnowledgeGraph& graph, const std::vector<std::string>& seeds,
                            std::size_t hop_limit, std::size_t cap) {
  if (cap == 0) throw Error(ErrorCode::InvalidArgument, "fact cap must be at least 1");
  ContextBundle bundle;
  bundle.hop_limit = hop_limit;

  std::unordered_map<std::string, std::size_t> dist;
  std::deque<std::string> frontier;
  for (const auto& s : seeds) {
    if (!graph.contains(s)) throw Error(ErrorCode::UnknownSeed, "seed '" + s + "' is not in the graph");
    if (dist.emplace(s, 0).second) {
      bundle.seeds.push_back(s);
      frontier.push_back(s);
    }
  }
  while (!frontier.empty()) {
    auto current = std::move(frontier.front());
    frontier.pop_front();
    auto d = dist[current];
    if (d == hop_limit) continue;
    for (auto ei : graph.incident_edges(current)) {
      const auto& e = graph.edges()[ei];
      const auto& other = e.source == current ? e.target : e.source;
      if (dist.emplace(other, d + 1).second) frontier.push_back(other);
    }
  }

  // Only edges incident to visited nodes can qualify, so the cost tracks the
  // neighbourhood rather than the whole graph.
  std::set<std::tuple<std::size_t, std::string_view, std::string, std::string>> ordered;
  for (const auto& [node, _] : dist) {
    for (auto ei : graph.incident_edges(node)) {
      const auto& e = graph.edges()[ei];
      auto ds = dist.find(e.source);
      auto dt = dist.find(e.target);
      if (ds == dist.end() || dt == dist.end()) continue;
      ordered.emplace(std::max(ds->second, dt->second), to_string(e.relation), e.source, e.target);
    }
  }
  for (const auto& [hop, rel, subject, object] : ordered) {
    if (bundle.facts.size() == cap) {
      bundle.truncated = true;
      break;
    }
    FactRef ref{subject, *parse_relation(rel), object};
    auto sentence = render_fact(ref, graph);
    bundle.facts.push_back({std::move(ref), hop, std::move(sentence)});
  }
  return bundle;
}

std::string render_fact(const FactRef& fact, const KnowledgeGraph& graph) {
  const auto* subject = graph.find(fact.subject);
  const auto* object = graph.find(fact.object);
  if (subject == nullptr || object == nullptr) {
    throw Error(ErrorCode::InvalidArgument, "fact references a node outside this graph");
  }
  std::string line = subject->label;
  line += " —";
  line += to_string(fact.relation);
  line += "→ ";
  line += object->label;
  line += ": ";
  line += object->description;
  return line;
}

std::string render_facts(const ContextBundle& bundle, const KnowledgeGraph& graph) {
  std::vector<std::string> lines;
  lines.reserve(bundle.facts.size());
  for (const auto& f : bundle.facts) lines.push_back(render_fact(f.ref, graph));
  return text::join(lines, "\n");
}

}  // namespace intellichain
