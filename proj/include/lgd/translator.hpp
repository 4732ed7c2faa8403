#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lgd/corpus.hpp"
#include "lgd/graph.hpp"

namespace lgd {

// A translation direction is keyed exactly like a graph edge.
using Direction = Edge;

struct WeightedPair {
  std::string source;
  std::string target;
  double weight = 1.0;
};

// Per-direction lexical translation table: source word -> (target word,
// probability), probabilities normalized per source word. Argmax ties break
// to the lexicographically smallest target word, which makes translation
// fully deterministic.
class Lexicon {
 public:
  using Entries = std::map<std::string, std::vector<std::pair<std::string, double>>>;

  Lexicon() = default;
  explicit Lexicon(Entries entries);

  const Entries& entries() const { return entries_; }
  std::size_t source_vocab_size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // nullptr when the source word is unknown.
  const std::string* argmax(const std::string& source_word) const;

  bool operator==(const Lexicon& other) const { return entries_ == other.entries_; }

 private:
  Entries entries_;
  std::map<std::string, std::string> argmax_;
};

struct TrainerConfig {
  int em_iterations = 5;
  bool upsample = true;      // equalize effective mass across directions
  double real_weight = 1.0;  // per-pair weight for real pairs
  double pseudo_weight = 1.0;

  void validate() const;
};

// IBM Model 1 EM without NULL alignment: uniform initialization over
// co-occurring words, expected-count collection with per-token source
// normalization, then per-source re-normalization. Pair weights scale the
// expected counts, so uniformly scaling all weights changes nothing.
Lexicon ibm1_em(std::span<const WeightedPair> pairs, int iterations);

// The shared multilingual translator: one lexicon per trained direction.
// The directions map realizes the target-language tag of a single tagged
// model. Immutable use is thread-safe.
struct MultilingualModel {
  std::map<Direction, Lexicon> directions;
  // Effective training mass (sum of pair weights after upsampling) at the
  // time each direction was last trained.
  std::map<Direction, double> trained_on;

  bool has_direction(const Direction& d) const { return directions.contains(d); }
  const Lexicon& lexicon(const Direction& d) const;
};

// Trains one lexicon per direction with a non-empty corpus. With upsampling
// every direction contributes equal effective mass; per-pair weights
// multiply real_weight or pseudo_weight by provenance.
MultilingualModel train_multilingual(const std::map<Edge, ParallelCorpus>& corpora,
                                     const TrainerConfig& config);

// Retrains only the named directions from scratch on their current corpora,
// leaving every other lexicon untouched.
void retrain_directions(MultilingualModel& model, const std::map<Edge, ParallelCorpus>& corpora,
                        const std::vector<Direction>& dirs, const TrainerConfig& config);

// Per-token argmax substitution preserving token order; source tokens
// absent from the lexicon copy through unchanged.
std::vector<std::string> translate(const MultilingualModel& model, const Direction& direction,
                                   const std::vector<std::string>& sentences);
std::vector<std::string> translate(const MultilingualModel& model, const std::string& src_lang,
                                   const std::string& tgt_lang,
                                   const std::vector<std::string>& sentences);

// Sequential translation along a language sequence; a 1-hop path equals
// translate. Throws UntrainedDirection naming the failing hop index.
std::vector<std::string> pipeline_translate(const MultilingualModel& model,
                                            std::span<const std::string> path_langs,
                                            const std::vector<std::string>& sentences);

// Anything that can translate a direction can stand in for the lexical
// model when scoring paths, e.g. a remote NMT service.
class TranslationBackend {
 public:
  virtual ~TranslationBackend() = default;
  virtual bool has_direction(const Direction& d) const = 0;
  virtual std::vector<std::string> translate(const Direction& d,
                                             const std::vector<std::string>& sentences) const = 0;

  std::vector<std::string> pipeline(std::span<const std::string> path_langs,
                                    const std::vector<std::string>& sentences) const;
};

class LexicalBackend final : public TranslationBackend {
 public:
  explicit LexicalBackend(const MultilingualModel& model) : model_(&model) {}

  bool has_direction(const Direction& d) const override { return model_->has_direction(d); }
  std::vector<std::string> translate(const Direction& d,
                                     const std::vector<std::string>& sentences) const override;

 private:
  const MultilingualModel* model_;
};

}  // namespace lgd
