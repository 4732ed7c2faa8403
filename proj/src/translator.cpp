#include "lgd/translator.hpp"

#include <algorithm>
#include <cmath>

#include "lgd/text.hpp"

namespace lgd {

Lexicon::Lexicon(Entries entries) : entries_(std::move(entries)) {
  for (auto& [source, targets] : entries_) {
    std::sort(targets.begin(), targets.end());
    double best = -1.0;
    const std::string* best_word = nullptr;
    for (const auto& [word, prob] : targets) {
      if (prob > best) {  // strict: first (lex smallest) wins ties
        best = prob;
        best_word = &word;
      }
    }
    if (best_word) argmax_[source] = *best_word;
  }
}

const std::string* Lexicon::argmax(const std::string& source_word) const {
  auto it = argmax_.find(source_word);
  return it == argmax_.end() ? nullptr : &it->second;
}

void TrainerConfig::validate() const {
  if (em_iterations < 1) throw InvalidConfig("trainer.em_iterations must be >= 1");
  if (real_weight <= 0.0) throw InvalidConfig("trainer.real_weight must be > 0");
  if (pseudo_weight <= 0.0) throw InvalidConfig("trainer.pseudo_weight must be > 0");
}

Lexicon ibm1_em(std::span<const WeightedPair> pairs, int iterations) {
  if (pairs.empty()) {
    throw EmptyTrainingSet("ibm1_em: no sentence pairs");
  }
  if (iterations < 1) {
    throw InvalidConfig("ibm1_em: iterations must be >= 1");
  }

  // Word ids in first-occurrence order keep every later loop deterministic.
  std::map<std::string, int> src_ids, tgt_ids;
  std::vector<std::string> src_words, tgt_words;
  auto intern = [](const std::string& w, std::map<std::string, int>& ids,
                   std::vector<std::string>& words) {
    auto [it, inserted] = ids.try_emplace(w, static_cast<int>(words.size()));
    if (inserted) words.push_back(w);
    return it->second;
  };

  struct TokenizedPair {
    std::vector<int> src;
    std::vector<int> tgt;
    double weight;
  };
  std::vector<TokenizedPair> data;
  data.reserve(pairs.size());
  for (const auto& pair : pairs) {
    TokenizedPair tp;
    for (const auto& w : tokenize(pair.source)) tp.src.push_back(intern(w, src_ids, src_words));
    for (const auto& w : tokenize(pair.target)) tp.tgt.push_back(intern(w, tgt_ids, tgt_words));
    tp.weight = pair.weight;
    if (!tp.src.empty() && !tp.tgt.empty()) data.push_back(std::move(tp));
  }
  if (data.empty()) {
    throw EmptyTrainingSet("ibm1_em: all pairs empty after tokenization");
  }

  // t[s][t] over co-occurring pairs only, uniformly initialized.
  const double uniform = 1.0 / static_cast<double>(tgt_words.size());
  std::vector<std::map<int, double>> table(src_words.size());
  for (const auto& tp : data) {
    for (int s : tp.src) {
      for (int t : tp.tgt) table[s].emplace(t, uniform);
    }
  }

  std::vector<std::map<int, double>> counts(src_words.size());
  for (std::size_t s = 0; s < table.size(); ++s) {
    for (const auto& [t, p] : table[s]) counts[s].emplace(t, 0.0);
  }
  for (int iter = 0; iter < iterations; ++iter) {
    for (auto& m : counts) {
      for (auto& [t, c] : m) c = 0.0;
    }
    for (const auto& tp : data) {
      for (int t : tp.tgt) {
        double denom = 0.0;
        for (int s : tp.src) denom += table[s].at(t);
        if (denom <= 0.0) continue;
        for (int s : tp.src) {
          counts[s][t] += tp.weight * table[s].at(t) / denom;
        }
      }
    }
    for (std::size_t s = 0; s < table.size(); ++s) {
      double total = 0.0;
      for (const auto& [t, c] : counts[s]) total += c;
      if (total <= 0.0) continue;
      for (auto& [t, p] : table[s]) p = counts[s].at(t) / total;
    }
  }

  Lexicon::Entries entries;
  for (std::size_t s = 0; s < table.size(); ++s) {
    auto& targets = entries[src_words[s]];
    targets.reserve(table[s].size());
    for (const auto& [t, p] : table[s]) {
      if (p > 0.0) targets.emplace_back(tgt_words[t], p);
    }
  }
  return Lexicon(std::move(entries));
}

const Lexicon& MultilingualModel::lexicon(const Direction& d) const {
  auto it = directions.find(d);
  if (it == directions.end()) {
    throw UntrainedDirection(d.src, d.tgt);
  }
  return it->second;
}

namespace {

double provenance_mass(const ParallelCorpus& corpus, const TrainerConfig& config) {
  double mass = 0.0;
  for (const auto& pair : corpus.pairs) {
    mass += pair.provenance.kind == ProvenanceKind::real ? config.real_weight
                                                         : config.pseudo_weight;
  }
  return mass;
}

// Per-direction EM training with one shared upsampling target. Returns the
// effective pair mass that was trained on.
double train_one_direction(MultilingualModel& model, const Edge& direction,
                           const ParallelCorpus& corpus, double target_mass,
                           const TrainerConfig& config) {
  const double mass = provenance_mass(corpus, config);
  const double factor = config.upsample && mass > 0.0 ? target_mass / mass : 1.0;
  std::vector<WeightedPair> pairs;
  pairs.reserve(corpus.pairs.size());
  for (const auto& pair : corpus.pairs) {
    const double w = pair.provenance.kind == ProvenanceKind::real ? config.real_weight
                                                                  : config.pseudo_weight;
    pairs.push_back(WeightedPair{pair.source, pair.target, factor * w});
  }
  model.directions[direction] = ibm1_em(pairs, config.em_iterations);
  return factor * mass;
}

}  // namespace

MultilingualModel train_multilingual(const std::map<Edge, ParallelCorpus>& corpora,
                                     const TrainerConfig& config) {
  config.validate();
  double target_mass = 0.0;
  bool any = false;
  for (const auto& [edge, corpus] : corpora) {
    if (corpus.pairs.empty()) continue;
    any = true;
    target_mass = std::max(target_mass, provenance_mass(corpus, config));
  }
  if (!any) {
    throw EmptyTrainingSet("train_multilingual: all corpora empty");
  }

  MultilingualModel model;
  for (const auto& [edge, corpus] : corpora) {
    if (corpus.pairs.empty()) continue;
    model.trained_on[edge] = train_one_direction(model, edge, corpus, target_mass, config);
  }
  return model;
}

void retrain_directions(MultilingualModel& model, const std::map<Edge, ParallelCorpus>& corpora,
                        const std::vector<Direction>& dirs, const TrainerConfig& config) {
  config.validate();
  double target_mass = 0.0;
  for (const auto& [edge, corpus] : corpora) {
    if (!corpus.pairs.empty()) {
      target_mass = std::max(target_mass, provenance_mass(corpus, config));
    }
  }
  for (const auto& dir : dirs) {
    auto it = corpora.find(dir);
    if (it == corpora.end() || it->second.pairs.empty()) {
      throw EmptyTrainingSet("retrain_directions: no data for " + to_string(dir));
    }
    model.trained_on[dir] = train_one_direction(model, dir, it->second, target_mass, config);
  }
}

std::vector<std::string> translate(const MultilingualModel& model, const Direction& direction,
                                   const std::vector<std::string>& sentences) {
  const Lexicon& lex = model.lexicon(direction);
  std::vector<std::string> out;
  out.reserve(sentences.size());
  for (const auto& sentence : sentences) {
    auto tokens = tokenize(sentence);
    for (auto& token : tokens) {
      if (const std::string* t = lex.argmax(token)) token = *t;
      // unknown words copy through unchanged
    }
    out.push_back(join(tokens));
  }
  return out;
}

std::vector<std::string> translate(const MultilingualModel& model, const std::string& src_lang,
                                   const std::string& tgt_lang,
                                   const std::vector<std::string>& sentences) {
  return translate(model, Direction{src_lang, tgt_lang}, sentences);
}

std::vector<std::string> pipeline_translate(const MultilingualModel& model,
                                            std::span<const std::string> path_langs,
                                            const std::vector<std::string>& sentences) {
  if (path_langs.size() < 2) {
    throw InvalidConfig("pipeline_translate: path needs >= 2 languages");
  }
  // Check every hop up front so a failure cannot leave partial work behind.
  for (std::size_t i = 0; i + 1 < path_langs.size(); ++i) {
    if (!model.has_direction(Direction{path_langs[i], path_langs[i + 1]})) {
      throw UntrainedDirection(path_langs[i], path_langs[i + 1], static_cast<int>(i));
    }
  }
  std::vector<std::string> current = sentences;
  for (std::size_t i = 0; i + 1 < path_langs.size(); ++i) {
    current = translate(model, Direction{path_langs[i], path_langs[i + 1]}, current);
  }
  return current;
}

std::vector<std::string> TranslationBackend::pipeline(
    std::span<const std::string> path_langs, const std::vector<std::string>& sentences) const {
  if (path_langs.size() < 2) {
    throw InvalidConfig("pipeline: path needs >= 2 languages");
  }
  for (std::size_t i = 0; i + 1 < path_langs.size(); ++i) {
    if (!has_direction(Direction{path_langs[i], path_langs[i + 1]})) {
      throw UntrainedDirection(path_langs[i], path_langs[i + 1], static_cast<int>(i));
    }
  }
  std::vector<std::string> current = sentences;
  for (std::size_t i = 0; i + 1 < path_langs.size(); ++i) {
    current = translate(Direction{path_langs[i], path_langs[i + 1]}, current);
  }
  return current;
}

std::vector<std::string> LexicalBackend::translate(const Direction& d,
                                                   const std::vector<std::string>& sentences) const {
  return lgd::translate(*model_, d, sentences);
}

}  // namespace lgd
