#include "lgd/graph.hpp"

#include <algorithm>

namespace lgd {

std::string to_string(const Edge& e) { return e.src + "->" + e.tgt; }

Edge edge_from_string(const std::string& s) {
  auto pos = s.find("->");
  if (pos == std::string::npos || pos == 0 || pos + 2 >= s.size()) {
    throw InvalidConfig("malformed edge string: '" + s + "'");
  }
  return Edge{s.substr(0, pos), s.substr(pos + 2)};
}

bool valid_language_code(const std::string& code) {
  if (code.size() < 2 || code.size() > 8) return false;
  return std::all_of(code.begin(), code.end(), [](unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '-' || c == '_';
  });
}

void LanguageGraph::add_language(const std::string& code) {
  if (!valid_language_code(code)) {
    throw InvalidCode("invalid language code: '" + code + "' (want 2-8 ASCII alnum/-/_ chars)");
  }
  if (languages_.contains(code)) {
    throw DuplicateLanguage("language already declared: " + code);
  }
  languages_.insert(code);
  mono_counts_[code] = 0;
}

void LanguageGraph::require_language(const std::string& code) const {
  if (!languages_.contains(code)) {
    throw UnknownLanguage("unknown language: " + code);
  }
}

void LanguageGraph::add_edge(const std::string& src, const std::string& tgt,
                             std::int64_t pair_count) {
  require_language(src);
  require_language(tgt);
  if (src == tgt) {
    throw SelfLoop("self-loop edge rejected: " + src);
  }
  if (pair_count < 0) {
    throw InvalidConfig("edge pair count must be >= 0, got " + std::to_string(pair_count));
  }
  edge_counts_[Edge{src, tgt}] = pair_count;
}

void LanguageGraph::remove_edge(const std::string& src, const std::string& tgt) {
  auto it = edge_counts_.find(Edge{src, tgt});
  if (it == edge_counts_.end()) {
    throw MissingEntry("no such edge: " + src + "->" + tgt);
  }
  edge_counts_.erase(it);
}

void LanguageGraph::set_mono_count(const std::string& code, std::int64_t count) {
  require_language(code);
  if (count < 0) {
    throw InvalidConfig("monolingual count must be >= 0, got " + std::to_string(count));
  }
  mono_counts_[code] = count;
}

bool LanguageGraph::has_language(const std::string& code) const {
  return languages_.contains(code);
}

bool LanguageGraph::has_edge(const std::string& src, const std::string& tgt) const {
  return edge_counts_.contains(Edge{src, tgt});
}

std::int64_t LanguageGraph::pair_count(const Edge& e) const {
  auto it = edge_counts_.find(e);
  if (it == edge_counts_.end()) {
    throw MissingEntry("no such edge: " + to_string(e));
  }
  return it->second;
}

std::int64_t LanguageGraph::mono_count(const std::string& code) const {
  require_language(code);
  return mono_counts_.at(code);
}

std::int64_t LanguageGraph::bilingual_volume(const std::string& code) const {
  require_language(code);
  std::int64_t total = 0;
  for (const auto& [edge, count] : edge_counts_) {
    if (edge.src == code || edge.tgt == code) total += count;
  }
  return total;
}

std::vector<Edge> LanguageGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_counts_.size());
  for (const auto& [edge, count] : edge_counts_) out.push_back(edge);
  return out;
}

void LanguageGraph::validate() const {
  for (const auto& code : languages_) {
    if (!valid_language_code(code)) {
      throw InvalidGraph("invalid language code: " + code);
    }
  }
  for (const auto& [edge, count] : edge_counts_) {
    if (!languages_.contains(edge.src) || !languages_.contains(edge.tgt)) {
      throw InvalidGraph("edge endpoint not declared: " + to_string(edge));
    }
    if (edge.src == edge.tgt) {
      throw InvalidGraph("self-loop edge: " + to_string(edge));
    }
    if (count < 0) {
      throw InvalidGraph("negative pair count on " + to_string(edge));
    }
  }
  for (const auto& [code, count] : mono_counts_) {
    if (!languages_.contains(code)) {
      throw InvalidGraph("monolingual count for undeclared language: " + code);
    }
    if (count < 0) {
      throw InvalidGraph("negative monolingual count on " + code);
    }
  }
}

void EdgeWeightMap::set(const Edge& e, double score) {
  if (!(score >= 0.0 && score <= 100.0)) {
    throw InvalidConfig("edge weight out of [0,100]: " + std::to_string(score) + " on " +
                        to_string(e));
  }
  scores_[e] = score;
}

double EdgeWeightMap::at(const Edge& e) const {
  auto it = scores_.find(e);
  if (it == scores_.end()) {
    throw MissingEntry("no weight for edge " + to_string(e));
  }
  return it->second;
}

bool EdgeWeightMap::contains(const Edge& e) const { return scores_.contains(e); }

void EdgeWeightMap::validate_against(const LanguageGraph& graph) const {
  for (const auto& [edge, score] : scores_) {
    if (!graph.has_edge(edge.src, edge.tgt)) {
      throw InvalidGraph("weight for edge not in graph: " + to_string(edge));
    }
  }
  for (const auto& [edge, count] : graph.edge_counts()) {
    if (!scores_.contains(edge)) {
      throw MissingEntry("graph edge has no weight: " + to_string(edge));
    }
  }
}

double objective(const EdgeWeightMap& weights) {
  double total = 0.0;
  for (const auto& [edge, score] : weights.scores()) total += score;
  return total;
}

}  // namespace lgd
