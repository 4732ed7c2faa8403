#include "lgd/synthworld.hpp"

#include <algorithm>
#include <cmath>

#include "lgd/text.hpp"

namespace lgd {

void WorldConfig::validate() const {
  if (languages.empty()) {
    throw InvalidConfig("world.languages must not be empty");
  }
  for (const auto& lang : languages) {
    if (!valid_language_code(lang)) {
      throw InvalidConfig("world.languages has invalid code: '" + lang + "'");
    }
  }
  if (concept_count < 1) {
    throw InvalidConfig("world.concept_count must be >= 1, got " + std::to_string(concept_count));
  }
  if (zipf_exponent < 0.0) {
    throw InvalidConfig("world.zipf_exponent must be >= 0");
  }
  if (sentence_len_min < 1 || sentence_len_max < sentence_len_min) {
    throw InvalidConfig("world.sentence_len must satisfy 1 <= min <= max, got [" +
                        std::to_string(sentence_len_min) + ", " +
                        std::to_string(sentence_len_max) + "]");
  }
  for (const auto& [lang, block] : reorder_block) {
    if (std::find(languages.begin(), languages.end(), lang) == languages.end()) {
      throw InvalidConfig("world.reorder_block names undeclared language: " + lang);
    }
    if (block < 2) {
      throw InvalidConfig("world.reorder_block size must be >= 2 for " + lang);
    }
  }
}

namespace {

// Reverses each consecutive block of `block` elements in place.
void reverse_blocks(std::vector<int>& seq, int block) {
  for (std::size_t start = 0; start < seq.size(); start += block) {
    std::size_t end = std::min(start + static_cast<std::size_t>(block), seq.size());
    std::reverse(seq.begin() + start, seq.begin() + end);
  }
}

}  // namespace

ConceptWorld ConceptWorld::generate(const WorldConfig& config, std::uint64_t seed) {
  config.validate();
  ConceptWorld world;
  world.config_ = config;
  world.seed_ = seed;

  const int n = config.concept_count;
  for (const auto& lang : config.languages) {
    // Seeded permutation of the canonical per-language word list; concept c
    // surfaces as "<lang><perm[c]>", so vocabularies never overlap across
    // languages.
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    Rng rng(mix_seed(seed, "lexicon:" + lang));
    for (int i = n - 1; i > 0; --i) {
      int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
      std::swap(perm[i], perm[j]);
    }
    std::vector<std::string> words(n);
    auto& inverse = world.word_to_concept_[lang];
    for (int c = 0; c < n; ++c) {
      words[c] = lang + std::to_string(perm[c]);
      inverse[words[c]] = c;
    }
    world.lexicons_[lang] = std::move(words);
  }

  // CDF over concept ids: id k has weight (k+1)^-z.
  world.concept_cdf_.resize(n);
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    total += std::pow(static_cast<double>(k + 1), -config.zipf_exponent);
    world.concept_cdf_[k] = total;
  }
  for (int k = 0; k < n; ++k) world.concept_cdf_[k] /= total;
  return world;
}

const std::vector<std::string>& ConceptWorld::lexicon(const std::string& lang) const {
  auto it = lexicons_.find(lang);
  if (it == lexicons_.end()) {
    throw UnknownLanguage("language not in world: " + lang);
  }
  return it->second;
}

std::string ConceptWorld::render(std::span<const int> concepts, const std::string& lang) const {
  const auto& words = lexicon(lang);
  std::vector<int> seq(concepts.begin(), concepts.end());
  for (int c : seq) {
    if (c < 0 || c >= config_.concept_count) {
      throw UnknownConcept("concept id out of range: " + std::to_string(c));
    }
  }
  if (auto it = config_.reorder_block.find(lang); it != config_.reorder_block.end()) {
    reverse_blocks(seq, it->second);
  }
  std::vector<std::string> tokens;
  tokens.reserve(seq.size());
  for (int c : seq) tokens.push_back(words[c]);
  return join(tokens);
}

std::vector<int> ConceptWorld::invert(const std::string& sentence, const std::string& lang) const {
  auto it = word_to_concept_.find(lang);
  if (it == word_to_concept_.end()) {
    throw UnknownLanguage("language not in world: " + lang);
  }
  const auto& inverse = it->second;
  std::vector<int> seq;
  for (const auto& token : tokenize(sentence)) {
    auto w = inverse.find(token);
    if (w == inverse.end()) {
      throw UnknownConcept("word not in lexicon of " + lang + ": '" + token + "'");
    }
    seq.push_back(w->second);
  }
  // Block reversal is an involution, so applying it again restores the
  // original concept order.
  if (auto r = config_.reorder_block.find(lang); r != config_.reorder_block.end()) {
    reverse_blocks(seq, r->second);
  }
  return seq;
}

std::vector<int> ConceptWorld::sample_sentence(Rng& rng) const {
  const int span = config_.sentence_len_max - config_.sentence_len_min + 1;
  const int len = config_.sentence_len_min + static_cast<int>(rng.below(span));
  std::vector<int> seq(len);
  for (int i = 0; i < len; ++i) {
    double r = rng.real01();
    auto it = std::lower_bound(concept_cdf_.begin(), concept_cdf_.end(), r);
    if (it == concept_cdf_.end()) --it;
    seq[i] = static_cast<int>(it - concept_cdf_.begin());
  }
  return seq;
}

namespace {

MultiParallelSet make_split(const ConceptWorld& world, const LanguageGraph& graph, int size,
                            std::uint64_t stream_seed) {
  MultiParallelSet set;
  Rng rng(stream_seed);
  set.concepts.reserve(size);
  for (int i = 0; i < size; ++i) set.concepts.push_back(world.sample_sentence(rng));
  for (const auto& lang : graph.languages()) {
    auto& lines = set.renderings[lang];
    lines.reserve(size);
    for (const auto& seq : set.concepts) lines.push_back(world.render(seq, lang));
  }
  return set;
}

}  // namespace

GeneratedData generate_corpora(const ConceptWorld& world, const LanguageGraph& graph,
                               int dev_size, int test_size, std::uint64_t seed) {
  graph.validate();
  if (dev_size < 1 || test_size < 1) {
    throw InvalidConfig("dev_size and test_size must be >= 1");
  }
  for (const auto& lang : graph.languages()) {
    if (!world.has_language(lang)) {
      throw UnknownLanguage("graph language not in world: " + lang);
    }
  }

  GeneratedData data;
  for (const auto& [edge, count] : graph.edge_counts()) {
    ParallelCorpus corpus;
    corpus.src_lang = edge.src;
    corpus.tgt_lang = edge.tgt;
    corpus.pairs.reserve(count);
    Rng rng(mix_seed(seed, "train:" + to_string(edge)));
    for (std::int64_t i = 0; i < count; ++i) {
      auto seq = world.sample_sentence(rng);
      corpus.pairs.push_back(SentencePair{world.render(seq, edge.src),
                                          world.render(seq, edge.tgt), Provenance{}});
    }
    data.train[edge] = std::move(corpus);
  }
  for (const auto& lang : graph.languages()) {
    MonoCorpus mono;
    mono.lang = lang;
    const std::int64_t count = graph.mono_count(lang);
    mono.sentences.reserve(count);
    Rng rng(mix_seed(seed, "mono:" + lang));
    for (std::int64_t i = 0; i < count; ++i) {
      mono.sentences.push_back(world.render(world.sample_sentence(rng), lang));
    }
    data.mono[lang] = std::move(mono);
  }
  data.dev = make_split(world, graph, dev_size, mix_seed(seed, "dev"));
  data.test = make_split(world, graph, test_size, mix_seed(seed, "test"));
  return data;
}

}  // namespace lgd
