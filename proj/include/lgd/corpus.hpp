#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "lgd/errors.hpp"

namespace lgd {

enum class ProvenanceKind { real, pseudo_forward, pseudo_backward };

std::string to_string(ProvenanceKind kind);

// Origin of a sentence pair. Pseudo pairs record the generating path as
// "a->b->c" so sidecar files can name it.
struct Provenance {
  ProvenanceKind kind = ProvenanceKind::real;
  std::string via_path;  // empty for real pairs

  bool operator==(const Provenance&) const = default;

  // "real" | "pseudo-forward:<path>" | "pseudo-backward:<path>"
  std::string tag() const;
  static Provenance from_tag(const std::string& tag);
};

struct SentencePair {
  std::string source;
  std::string target;
  Provenance provenance;

  bool operator==(const SentencePair&) const = default;
};

struct ParallelCorpus {
  std::string src_lang;
  std::string tgt_lang;
  std::vector<SentencePair> pairs;

  std::size_t size() const { return pairs.size(); }
  std::size_t count(ProvenanceKind kind) const;
};

struct MonoCorpus {
  std::string lang;
  std::vector<std::string> sentences;

  std::size_t size() const { return sentences.size(); }
};

// Line-aligned renderings of the same concept sequences in several
// languages; the shared dev/test material every path is scored on.
struct MultiParallelSet {
  std::vector<std::vector<int>> concepts;
  std::map<std::string, std::vector<std::string>> renderings;

  std::size_t size() const { return concepts.size(); }
  bool has_language(const std::string& lang) const { return renderings.contains(lang); }
  const std::vector<std::string>& lines(const std::string& lang) const;
};

}  // namespace lgd
