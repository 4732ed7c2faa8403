#include "lgd/pathtable.hpp"

#include <algorithm>

#include "lgd/metrics.hpp"

namespace lgd {

std::string TranslationPath::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < langs.size(); ++i) {
    if (i) out += "->";
    out += langs[i];
  }
  return out;
}

TranslationPath path_from_string(const std::string& s, PathDirection direction) {
  TranslationPath path;
  path.direction = direction;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto next = s.find("->", pos);
    if (next == std::string::npos) {
      path.langs.push_back(s.substr(pos));
      break;
    }
    path.langs.push_back(s.substr(pos, next - pos));
    pos = next + 2;
  }
  if (path.langs.size() < 2) {
    throw InvalidConfig("malformed path string: '" + s + "'");
  }
  return path;
}

std::vector<TranslationPath> enumerate_paths(const LanguageGraph& graph, const std::string& src,
                                             const std::string& tgt, int max_hops) {
  if (max_hops < 1) {
    throw InvalidConfig("enumerate_paths: max_hops must be >= 1");
  }
  if (!graph.has_language(src)) throw UnknownLanguage("unknown language: " + src);
  if (!graph.has_language(tgt)) throw UnknownLanguage("unknown language: " + tgt);
  if (src == tgt) {
    throw SelfLoop("enumerate_paths: src == tgt (" + src + ")");
  }

  // Adjacency in sorted order; the final sort fixes the output order anyway.
  std::map<std::string, std::vector<std::string>> adjacency;
  for (const auto& [edge, count] : graph.edge_counts()) {
    adjacency[edge.src].push_back(edge.tgt);
  }

  std::vector<TranslationPath> result;
  std::vector<std::string> current{src};
  auto dfs = [&](auto&& self, const std::string& node) -> void {
    if (static_cast<int>(current.size()) - 1 >= max_hops) return;
    auto it = adjacency.find(node);
    if (it == adjacency.end()) return;
    for (const auto& next : it->second) {
      if (next == tgt) {
        current.push_back(next);
        result.push_back(TranslationPath{current, PathDirection::forward});
        current.pop_back();
        continue;
      }
      if (std::find(current.begin(), current.end(), next) != current.end()) continue;
      current.push_back(next);
      self(self, next);
      current.pop_back();
    }
  };
  dfs(dfs, src);

  std::sort(result.begin(), result.end(), [](const TranslationPath& a, const TranslationPath& b) {
    if (a.hops() != b.hops()) return a.hops() < b.hops();
    return a.langs < b.langs;
  });
  return result;
}

void AccuracyTable::insert(const TranslationPath& path, double score) {
  if (path.langs.size() < 2) {
    throw InvalidConfig("table entry needs >= 2 languages");
  }
  for (std::size_t i = 0; i < path.langs.size(); ++i) {
    for (std::size_t j = i + 1; j < path.langs.size(); ++j) {
      if (path.langs[i] == path.langs[j]) {
        throw InvalidConfig("table entry repeats language: " + path.to_string());
      }
    }
  }
  if (!(score >= 0.0 && score <= 100.0)) {
    throw InvalidConfig("table score out of [0,100]: " + std::to_string(score));
  }
  entries_[path.langs] = score;
}

std::optional<double> AccuracyTable::score(const std::vector<std::string>& langs) const {
  auto it = entries_.find(langs);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> AccuracyTable::direct_score(const Edge& e) const {
  return score({e.src, e.tgt});
}

std::vector<std::pair<TranslationPath, double>> AccuracyTable::paths_between(
    const std::string& src, const std::string& tgt, int min_hops, int max_hops) const {
  std::vector<std::pair<TranslationPath, double>> out;
  for (const auto& [langs, score] : entries_) {
    const int hops = static_cast<int>(langs.size()) - 1;
    if (langs.front() != src || langs.back() != tgt) continue;
    if (hops < min_hops || hops > max_hops) continue;
    out.emplace_back(TranslationPath{langs, PathDirection::forward}, score);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.hops() != b.first.hops()) return a.first.hops() < b.first.hops();
    return a.first.langs < b.first.langs;
  });
  return out;
}

std::vector<Edge> AccuracyTable::direct_edges() const {
  std::vector<Edge> out;
  for (const auto& [langs, score] : entries_) {
    if (langs.size() == 2) out.push_back(Edge{langs[0], langs[1]});
  }
  return out;
}

EdgeWeightMap AccuracyTable::one_hop_weights() const {
  EdgeWeightMap weights;
  for (const auto& [langs, score] : entries_) {
    if (langs.size() == 2) weights.set(Edge{langs[0], langs[1]}, score);
  }
  return weights;
}

double evaluate_path(const TranslationBackend& backend, const TranslationPath& path,
                     const MultiParallelSet& devset) {
  if (path.langs.size() < 2) {
    throw InvalidConfig("evaluate_path: path needs >= 2 languages");
  }
  for (const auto& lang : path.langs) {
    if (!devset.has_language(lang)) {
      throw AlignmentError("dev set is missing language: " + lang);
    }
  }
  auto hypotheses = backend.pipeline(path.langs, devset.lines(path.source()));
  return bleu(hypotheses, devset.lines(path.target())).score;
}

double evaluate_path(const MultilingualModel& model, const TranslationPath& path,
                     const MultiParallelSet& devset) {
  return evaluate_path(LexicalBackend(model), path, devset);
}

AccuracyTable build_accuracy_table(const LanguageGraph& graph, const TranslationBackend& backend,
                                   const MultiParallelSet& devset, int max_hops, int iteration) {
  if (max_hops < 1) {
    throw InvalidConfig("build_accuracy_table: max_hops must be >= 1");
  }
  AccuracyTable table(iteration);
  for (const auto& src : graph.languages()) {
    for (const auto& tgt : graph.languages()) {
      if (src == tgt) continue;
      for (const auto& path : enumerate_paths(graph, src, tgt, max_hops)) {
        bool trained = true;
        for (std::size_t i = 0; i + 1 < path.langs.size(); ++i) {
          if (!backend.has_direction(Direction{path.langs[i], path.langs[i + 1]})) {
            trained = false;
            break;
          }
        }
        if (!trained) continue;  // absence of capability is not a measurement
        table.insert(path, evaluate_path(backend, path, devset));
      }
    }
  }
  return table;
}

AccuracyTable build_accuracy_table(const LanguageGraph& graph, const MultilingualModel& model,
                                   const MultiParallelSet& devset, int max_hops, int iteration) {
  return build_accuracy_table(graph, LexicalBackend(model), devset, max_hops, iteration);
}

}  // namespace lgd
