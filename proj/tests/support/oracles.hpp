#pragma once

// Reference implementations used only by tests. Each one takes a different
// route from the library code it checks: plain loops over the raw document
// data instead of the library's indices.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace oracle {

// Exhaustive search over chickens in [0, heads].
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> brute_force_heads_legs(
    std::uint64_t heads, std::uint64_t legs) {
  std::optional<std::pair<std::uint64_t, std::uint64_t>> found;
  for (std::uint64_t c = 0; c <= heads; ++c) {
    const std::uint64_t r = heads - c;
    if (2 * c + 4 * r == legs) {
      if (found) return std::nullopt;  // not unique
      found = {c, r};
    }
  }
  return found;
}

struct RawEdge {
  std::string source;
  std::string target;
  std::string relation;
};

// Distances by repeated relaxation (Bellman-Ford style) over an undirected
// edge list, bounded by hop_limit.
inline std::map<std::string, std::size_t> relaxed_distances(const std::vector<RawEdge>& edges,
                                                            const std::vector<std::string>& seeds,
                                                            std::size_t hop_limit) {
  std::map<std::string, std::size_t> dist;
  for (const auto& s : seeds) dist[s] = 0;
  for (std::size_t round = 0; round < hop_limit; ++round) {
    auto next = dist;
    for (const auto& e : edges) {
      for (const auto& [a, b] : {std::pair{e.source, e.target}, std::pair{e.target, e.source}}) {
        auto it = dist.find(a);
        if (it == dist.end()) continue;
        auto candidate = it->second + 1;
        if (candidate > hop_limit) continue;
        auto [slot, inserted] = next.emplace(b, candidate);
        if (!inserted) slot->second = std::min(slot->second, candidate);
      }
    }
    dist = std::move(next);
  }
  return dist;
}

// Expected (hop, relation, subject, object) facts before capping, sorted.
inline std::vector<std::tuple<std::size_t, std::string, std::string, std::string>> expected_facts(
    const std::vector<RawEdge>& edges, const std::vector<std::string>& seeds,
    std::size_t hop_limit) {
  auto dist = relaxed_distances(edges, seeds, hop_limit);
  std::set<std::tuple<std::size_t, std::string, std::string, std::string>> out;
  for (const auto& e : edges) {
    if (!dist.contains(e.source) || !dist.contains(e.target)) continue;
    out.emplace(std::max(dist[e.source], dist[e.target]), e.relation, e.source, e.target);
  }
  return {out.begin(), out.end()};
}

inline const std::vector<std::string>& relation_names() {
  static const std::vector<std::string> names = {"prerequisite_of", "instance_of", "related_to",
                                                 "applies_to"};
  return names;
}

inline const std::vector<std::string>& kind_names() {
  static const std::vector<std::string> names = {"concept", "principle", "example"};
  return names;
}

struct RandomGraph {
  nlohmann::json document;
  std::vector<std::string> ids;
  std::vector<RawEdge> edges;
};

// Up to max_nodes nodes with unique aliases, random non-self-loop edges.
inline RandomGraph random_graph(std::mt19937_64& rng, std::size_t max_nodes) {
  std::uniform_int_distribution<std::size_t> node_count(1, max_nodes);
  const auto n = node_count(rng);
  RandomGraph g;
  g.document = {{"nodes", nlohmann::json::array()}, {"edges", nlohmann::json::array()}};
  for (std::size_t i = 0; i < n; ++i) {
    auto id = "n" + std::to_string(i);
    g.ids.push_back(id);
    g.document["nodes"].push_back({{"id", id},
                                   {"kind", kind_names()[i % 3]},
                                   {"label", "Node " + std::to_string(i)},
                                   {"description", "description " + std::to_string(i)},
                                   {"aliases", {"alias " + std::to_string(i)}}});
  }
  if (n >= 2) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<std::size_t> edge_count(0, 2 * n);
    std::uniform_int_distribution<std::size_t> rel(0, 3);
    const auto m = edge_count(rng);
    for (std::size_t k = 0; k < m; ++k) {
      auto a = pick(rng);
      auto b = pick(rng);
      if (a == b) continue;
      RawEdge e{g.ids[a], g.ids[b], relation_names()[rel(rng)]};
      g.document["edges"].push_back(
          {{"source", e.source}, {"target", e.target}, {"relation", e.relation}});
      g.edges.push_back(std::move(e));
    }
  }
  return g;
}

// Whole-phrase alias matches by enumerating every token span, then picking
// the best remaining candidate one at a time (longest alias, lowest id,
// earliest start) and discarding anything it overlaps.
inline std::vector<std::string> link_by_enumeration(
    const std::vector<std::string>& tokens, const std::map<std::string, std::string>& alias_to_id) {
  struct Candidate {
    std::size_t start, end, length;
    std::string id;
  };
  std::vector<Candidate> pool;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    for (std::size_t j = i + 1; j <= tokens.size(); ++j) {
      std::string phrase;
      for (std::size_t k = i; k < j; ++k) phrase += (k > i ? " " : "") + tokens[k];
      if (auto it = alias_to_id.find(phrase); it != alias_to_id.end()) {
        pool.push_back({i, j, phrase.size(), it->second});
      }
    }
  }
  std::vector<Candidate> chosen;
  while (!pool.empty()) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pool.size(); ++k) {
      const auto& a = pool[k];
      const auto& b = pool[best];
      if (a.length > b.length || (a.length == b.length && a.id < b.id) ||
          (a.length == b.length && a.id == b.id && a.start < b.start)) {
        best = k;
      }
    }
    auto pick = pool[best];
    chosen.push_back(pick);
    std::erase_if(pool, [&](const Candidate& c) { return c.start < pick.end && pick.start < c.end; });
  }
  std::sort(chosen.begin(), chosen.end(),
            [](const Candidate& a, const Candidate& b) { return a.start < b.start; });
  std::vector<std::string> ids;
  for (const auto& c : chosen) {
    if (std::find(ids.begin(), ids.end(), c.id) == ids.end()) ids.push_back(c.id);
  }
  return ids;
}

}  // namespace oracle
