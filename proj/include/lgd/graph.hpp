#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lgd/errors.hpp"

namespace lgd {

// A directed translation direction between two languages. Also used as a
// model direction key: (u,v) and (v,u) are distinct.
struct Edge {
  std::string src;
  std::string tgt;

  auto operator<=>(const Edge&) const = default;
};

std::string to_string(const Edge& e);  // "src->tgt"
Edge edge_from_string(const std::string& s);

// Directed language graph. Nodes are language codes, edges carry the number
// of bilingual sentence pairs for that direction, nodes carry monolingual
// sentence counts. Construction is single-writer; once built the graph is
// read-only and safe to share across threads.
class LanguageGraph {
 public:
  void add_language(const std::string& code);
  // Inserts the directed edge with the given pair count. Re-adding an
  // existing edge replaces its count.
  void add_edge(const std::string& src, const std::string& tgt, std::int64_t pair_count);
  void remove_edge(const std::string& src, const std::string& tgt);
  void set_mono_count(const std::string& code, std::int64_t count);

  bool has_language(const std::string& code) const;
  bool has_edge(const std::string& src, const std::string& tgt) const;

  std::int64_t pair_count(const Edge& e) const;
  std::int64_t mono_count(const std::string& code) const;
  // Total bilingual pairs over all edges incident to the node, each directed
  // edge counted once.
  std::int64_t bilingual_volume(const std::string& code) const;

  const std::set<std::string>& languages() const { return languages_; }
  std::vector<Edge> edges() const;
  const std::map<Edge, std::int64_t>& edge_counts() const { return edge_counts_; }

  std::size_t language_count() const { return languages_.size(); }
  std::size_t edge_count() const { return edge_counts_.size(); }

  // Throws InvalidGraph naming the first violated invariant. Idempotent.
  void validate() const;

 private:
  void require_language(const std::string& code) const;

  std::set<std::string> languages_;
  std::map<Edge, std::int64_t> edge_counts_;
  std::map<std::string, std::int64_t> mono_counts_;
};

// Per-edge translation accuracy in BLEU points, [0, 100].
class EdgeWeightMap {
 public:
  void set(const Edge& e, double score);
  double at(const Edge& e) const;  // MissingEntry if absent
  bool contains(const Edge& e) const;
  std::size_t size() const { return scores_.size(); }
  const std::map<Edge, double>& scores() const { return scores_; }

  // Checks the map is defined exactly for the graph's edges.
  void validate_against(const LanguageGraph& graph) const;

 private:
  std::map<Edge, double> scores_;
};

// Sum of all edge weights: the quantity the distillation loop drives up.
double objective(const EdgeWeightMap& weights);

// True iff code is 2-8 chars of ASCII alphanumerics, '-' or '_'.
bool valid_language_code(const std::string& code);

}  // namespace lgd
