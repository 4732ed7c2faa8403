#include "lgd/distillation.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace lgd {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Sort key: score descending, then lexicographic path for determinism.
bool better(const std::pair<TranslationPath, double>& a,
            const std::pair<TranslationPath, double>& b) {
  if (a.second != b.second) return a.second > b.second;
  return a.first.langs < b.first.langs;
}

}  // namespace

bool PotentialScore::selectable() const { return potential > 0.0 && potential != kNegInf; }

PotentialScore potential(const AccuracyTable& table, const Edge& edge, int max_hops,
                         PotentialAggregation aggregation, int aggregation_k) {
  auto direct = table.direct_score(edge);
  if (!direct) {
    throw MissingEntry("no 1-hop entry for edge " + to_string(edge));
  }
  PotentialScore out;
  out.edge = edge;
  out.direct = *direct;
  out.potential = kNegInf;
  out.best_path_score = kNegInf;

  auto candidates = table.paths_between(edge.src, edge.tgt, 2, max_hops);
  if (candidates.empty()) return out;

  std::sort(candidates.begin(), candidates.end(), better);
  out.best_path = candidates.front().first;
  out.best_path_score = candidates.front().second;
  if (aggregation == PotentialAggregation::max) {
    out.potential = out.best_path_score - out.direct;
  } else {
    const std::size_t k = std::min<std::size_t>(std::max(aggregation_k, 1), candidates.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += candidates[i].second;
    out.potential = sum / static_cast<double>(k) - out.direct;
  }
  return out;
}

std::vector<Edge> select_edges(const AccuracyTable& table, int edges_per_iteration, int max_hops,
                               PotentialAggregation aggregation, int aggregation_k) {
  if (edges_per_iteration < 1) {
    throw InvalidConfig("select_edges: edges_per_iteration must be >= 1");
  }
  std::vector<PotentialScore> scored;
  for (const auto& edge : table.direct_edges()) {
    auto p = potential(table, edge, max_hops, aggregation, aggregation_k);
    if (p.selectable()) scored.push_back(std::move(p));
  }
  std::sort(scored.begin(), scored.end(), [](const PotentialScore& a, const PotentialScore& b) {
    if (a.potential != b.potential) return a.potential > b.potential;
    return a.edge < b.edge;
  });
  if (scored.size() > static_cast<std::size_t>(edges_per_iteration)) {
    scored.resize(edges_per_iteration);
  }
  std::vector<Edge> out;
  out.reserve(scored.size());
  for (const auto& p : scored) out.push_back(p.edge);
  return out;
}

DistillationPlan select_paths(const AccuracyTable& table, const Edge& edge, int top_k,
                              double delta, int max_hops, std::size_t budget) {
  if (top_k < 1) throw InvalidConfig("select_paths: top_k must be >= 1");
  if (delta < 0.0) throw InvalidConfig("select_paths: delta must be >= 0");
  auto direct = table.direct_score(edge);
  if (!direct) {
    throw MissingEntry("no 1-hop entry for edge " + to_string(edge));
  }

  DistillationPlan plan;
  plan.edge = edge;
  plan.budget = budget;

  // Forward: multi-hop paths at least as good as the direct edge (minus
  // slack).
  auto forward = table.paths_between(edge.src, edge.tgt, 2, max_hops);
  std::sort(forward.begin(), forward.end(), better);
  for (const auto& [path, score] : forward) {
    if (score < *direct - delta) continue;
    if (plan.forward_paths.size() >= static_cast<std::size_t>(top_k)) break;
    TranslationPath p = path;
    p.direction = PathDirection::forward;
    plan.forward_paths.push_back(std::move(p));
  }

  // Backward: paths from tgt back to src, filtered against the reverse
  // direct edge when it has an entry; with no reverse entry there is no
  // baseline to compare against and every candidate qualifies.
  const Edge reverse{edge.tgt, edge.src};
  auto reverse_direct = table.direct_score(reverse);
  const double threshold = reverse_direct ? *reverse_direct - delta : kNegInf;
  auto backward = table.paths_between(edge.tgt, edge.src, 1, max_hops);
  std::sort(backward.begin(), backward.end(), better);
  std::vector<std::pair<TranslationPath, double>> qualifying;
  for (const auto& [path, score] : backward) {
    if (score < threshold) continue;
    qualifying.emplace_back(path, score);
  }
  // The trained 1-hop reverse always qualifies (its score is the
  // threshold); keep it even when it falls outside the top-k by swapping
  // it into the last slot.
  const std::vector<std::string> one_hop_reverse{edge.tgt, edge.src};
  for (std::size_t i = 0; i < qualifying.size(); ++i) {
    if (qualifying[i].first.langs == one_hop_reverse) {
      if (i >= static_cast<std::size_t>(top_k)) {
        qualifying[static_cast<std::size_t>(top_k) - 1] = qualifying[i];
      }
      break;
    }
  }
  if (qualifying.size() > static_cast<std::size_t>(top_k)) {
    qualifying.resize(static_cast<std::size_t>(top_k));
  }
  std::sort(qualifying.begin(), qualifying.end(), better);
  for (const auto& [path, score] : qualifying) {
    TranslationPath p = path;
    p.direction = PathDirection::backward;
    plan.backward_paths.push_back(std::move(p));
  }
  return plan;
}

namespace {

ParallelCorpus distill(const DistillationPlan& plan, const MultilingualModel& model,
                       const std::vector<std::string>& inputs,
                       const std::vector<TranslationPath>& paths, ProvenanceKind kind) {
  ParallelCorpus corpus;
  corpus.src_lang = plan.edge.src;
  corpus.tgt_lang = plan.edge.tgt;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& path : paths) {
    const std::size_t take = std::min(plan.budget, inputs.size());
    std::vector<std::string> batch(inputs.begin(), inputs.begin() + take);
    auto translated = pipeline_translate(model, path.langs, batch);
    for (std::size_t i = 0; i < take; ++i) {
      // forward paths produce (input, output); backward paths run
      // tgt->..->src, so the translation is the pseudo source side
      std::string source = kind == ProvenanceKind::pseudo_forward ? batch[i] : translated[i];
      std::string target = kind == ProvenanceKind::pseudo_forward ? translated[i] : batch[i];
      if (!seen.emplace(source, target).second) continue;
      corpus.pairs.push_back(SentencePair{std::move(source), std::move(target),
                                          Provenance{kind, path.to_string()}});
    }
  }
  return corpus;
}

}  // namespace

ParallelCorpus forward_distill(const DistillationPlan& plan, const MultilingualModel& model,
                               const std::vector<std::string>& sources) {
  return distill(plan, model, sources, plan.forward_paths, ProvenanceKind::pseudo_forward);
}

ParallelCorpus backward_distill(const DistillationPlan& plan, const MultilingualModel& model,
                                const std::vector<std::string>& targets) {
  return distill(plan, model, targets, plan.backward_paths, ProvenanceKind::pseudo_backward);
}

ParallelCorpus assemble_training_set(const ParallelCorpus& real,
                                     const std::vector<ParallelCorpus>& pseudo) {
  ParallelCorpus out = real;
  std::set<std::pair<std::string, std::string>> real_pairs;
  for (const auto& pair : real.pairs) real_pairs.emplace(pair.source, pair.target);
  for (const auto& corpus : pseudo) {
    if (corpus.src_lang != real.src_lang || corpus.tgt_lang != real.tgt_lang) {
      throw AlignmentError("assemble_training_set: direction mismatch " + corpus.src_lang + "->" +
                           corpus.tgt_lang + " vs " + real.src_lang + "->" + real.tgt_lang);
    }
    for (const auto& pair : corpus.pairs) {
      if (real_pairs.contains({pair.source, pair.target})) continue;
      out.pairs.push_back(pair);
    }
  }
  return out;
}

}  // namespace lgd
