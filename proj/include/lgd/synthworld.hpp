#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lgd/corpus.hpp"
#include "lgd/graph.hpp"
#include "lgd/rng.hpp"

namespace lgd {

struct WorldConfig {
  std::vector<std::string> languages;
  int concept_count = 300;
  double zipf_exponent = 1.0;  // 0 = uniform concept frequencies
  int sentence_len_min = 3;
  int sentence_len_max = 12;
  // Optional per-language word reordering: each consecutive block of this
  // many tokens is reversed at render time. Off (monotone) when absent.
  std::map<std::string, int> reorder_block;

  void validate() const;
};

// Synthetic multilingual ground truth. Every language maps the shared
// concept vocabulary through its own bijective lexicon, so the reference
// translation between any two languages is exactly lexicon composition.
class ConceptWorld {
 public:
  static ConceptWorld generate(const WorldConfig& config, std::uint64_t seed);

  const WorldConfig& config() const { return config_; }
  std::uint64_t seed() const { return seed_; }
  bool has_language(const std::string& lang) const { return lexicons_.contains(lang); }

  // concept id -> surface word for one language
  const std::vector<std::string>& lexicon(const std::string& lang) const;

  std::string render(std::span<const int> concepts, const std::string& lang) const;
  // Inverse of render: recover the concept sequence behind a sentence.
  std::vector<int> invert(const std::string& sentence, const std::string& lang) const;

  std::vector<int> sample_sentence(Rng& rng) const;

 private:
  WorldConfig config_;
  std::uint64_t seed_ = 0;
  std::map<std::string, std::vector<std::string>> lexicons_;
  std::map<std::string, std::map<std::string, int>> word_to_concept_;
  std::vector<double> concept_cdf_;
};

struct GeneratedData {
  std::map<Edge, ParallelCorpus> train;
  std::map<std::string, MonoCorpus> mono;
  MultiParallelSet dev;
  MultiParallelSet test;
};

// Materializes training corpora sized by the graph's D(e) / D_m(v) plus
// multi-parallel dev and test sets over all graph languages. Train, dev and
// test draw from independent streams derived from (seed, split, identity).
GeneratedData generate_corpora(const ConceptWorld& world, const LanguageGraph& graph,
                               int dev_size, int test_size, std::uint64_t seed);

}  // namespace lgd
