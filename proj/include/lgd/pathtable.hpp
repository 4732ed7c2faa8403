#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lgd/corpus.hpp"
#include "lgd/graph.hpp"
#include "lgd/translator.hpp"

namespace lgd {

enum class PathDirection { forward, backward };

// A simple directed path of translation hops. `direction` records which
// role the path plays relative to an edge under study; it does not affect
// identity or ordering.
struct TranslationPath {
  std::vector<std::string> langs;
  PathDirection direction = PathDirection::forward;

  int hops() const { return static_cast<int>(langs.size()) - 1; }
  const std::string& source() const { return langs.front(); }
  const std::string& target() const { return langs.back(); }
  std::string to_string() const;  // "a->b->c"

  bool operator==(const TranslationPath& other) const { return langs == other.langs; }
  bool operator<(const TranslationPath& other) const { return langs < other.langs; }
};

TranslationPath path_from_string(const std::string& s,
                                 PathDirection direction = PathDirection::forward);

// All simple directed paths src -> tgt with 1..max_hops hops, every hop an
// existing graph edge, ordered by hop count then lexicographic sequence.
std::vector<TranslationPath> enumerate_paths(const LanguageGraph& graph, const std::string& src,
                                             const std::string& tgt, int max_hops);

// Sparse W^h: measured accuracy for every evaluated path, tagged with the
// iteration it was built at. The 1-hop entries are the edge weights W(e).
class AccuracyTable {
 public:
  AccuracyTable() = default;
  explicit AccuracyTable(int iteration) : iteration_(iteration) {}

  void insert(const TranslationPath& path, double score);
  std::optional<double> score(const std::vector<std::string>& langs) const;
  std::optional<double> direct_score(const Edge& e) const;

  // Entries from src to tgt restricted to min_hops..max_hops, sorted by
  // (hop count, lexicographic sequence).
  std::vector<std::pair<TranslationPath, double>> paths_between(const std::string& src,
                                                                const std::string& tgt,
                                                                int min_hops, int max_hops) const;
  // Edges that have a 1-hop entry.
  std::vector<Edge> direct_edges() const;
  EdgeWeightMap one_hop_weights() const;

  const std::map<std::vector<std::string>, double>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  int iteration() const { return iteration_; }

 private:
  int iteration_ = 0;
  std::map<std::vector<std::string>, double> entries_;
};

// Pipeline-translates the dev set's source-language lines along the path
// and scores BLEU against its target-language lines.
double evaluate_path(const TranslationBackend& backend, const TranslationPath& path,
                     const MultiParallelSet& devset);
double evaluate_path(const MultilingualModel& model, const TranslationPath& path,
                     const MultiParallelSet& devset);

// Evaluates every simple path of 1..max_hops hops between every ordered
// language pair. Paths with an untrained hop are skipped, not scored zero.
AccuracyTable build_accuracy_table(const LanguageGraph& graph, const TranslationBackend& backend,
                                   const MultiParallelSet& devset, int max_hops, int iteration);
AccuracyTable build_accuracy_table(const LanguageGraph& graph, const MultilingualModel& model,
                                   const MultiParallelSet& devset, int max_hops, int iteration);

}  // namespace lgd
