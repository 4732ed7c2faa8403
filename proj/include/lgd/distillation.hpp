#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lgd/corpus.hpp"
#include "lgd/pathtable.hpp"
#include "lgd/translator.hpp"

namespace lgd {

enum class PotentialAggregation { max, mean_top_k };

// How much a direct edge could gain from its multi-hop forward paths:
// best multi-hop score minus the direct score. Edges with no multi-hop
// path get -inf and are never selectable.
struct PotentialScore {
  Edge edge;
  double direct = 0.0;
  std::optional<TranslationPath> best_path;
  double best_path_score = 0.0;
  double potential = 0.0;

  bool selectable() const;
};

PotentialScore potential(const AccuracyTable& table, const Edge& edge, int max_hops,
                         PotentialAggregation aggregation = PotentialAggregation::max,
                         int aggregation_k = 2);

// The edges_per_iteration edges with the largest strictly-positive
// potential; fewer when fewer qualify. Ties break lexicographically by
// (src, tgt).
std::vector<Edge> select_edges(const AccuracyTable& table, int edges_per_iteration, int max_hops,
                               PotentialAggregation aggregation = PotentialAggregation::max,
                               int aggregation_k = 2);

// Distillation recipe for one edge: forward paths run src->..->tgt,
// backward paths run tgt->..->src. Paths are sorted by accuracy descending
// and all pass the quality filter. The trained 1-hop reverse edge (standard
// back-translation) is always kept among the backward paths.
struct DistillationPlan {
  Edge edge;
  std::vector<TranslationPath> forward_paths;
  std::vector<TranslationPath> backward_paths;
  std::size_t budget = 2000;  // max pseudo pairs generated per path
};

DistillationPlan select_paths(const AccuracyTable& table, const Edge& edge, int top_k,
                              double delta, int max_hops, std::size_t budget = 2000);

// Pipeline-translates up to plan.budget source sentences through each
// forward path; emits (source, pseudo-target) pairs with exact duplicates
// removed.
ParallelCorpus forward_distill(const DistillationPlan& plan, const MultilingualModel& model,
                               const std::vector<std::string>& sources);

// Pipeline-translates up to plan.budget target sentences through each
// backward path; emits (pseudo-source, target) pairs with exact duplicates
// removed. Restricted to the 1-hop reverse path this is standard
// back-translation.
ParallelCorpus backward_distill(const DistillationPlan& plan, const MultilingualModel& model,
                                const std::vector<std::string>& targets);

// real + pseudo concatenation preserving provenance; pseudo pairs that
// exactly duplicate a real pair are dropped.
ParallelCorpus assemble_training_set(const ParallelCorpus& real,
                                     const std::vector<ParallelCorpus>& pseudo);

}  // namespace lgd
