#include "lgd/corpus.hpp"

namespace lgd {

std::string to_string(ProvenanceKind kind) {
  switch (kind) {
    case ProvenanceKind::real:
      return "real";
    case ProvenanceKind::pseudo_forward:
      return "pseudo-forward";
    case ProvenanceKind::pseudo_backward:
      return "pseudo-backward";
  }
  return "real";
}

std::string Provenance::tag() const {
  if (kind == ProvenanceKind::real) return "real";
  return to_string(kind) + ":" + via_path;
}

Provenance Provenance::from_tag(const std::string& tag) {
  if (tag == "real") return Provenance{};
  auto colon = tag.find(':');
  std::string head = colon == std::string::npos ? tag : tag.substr(0, colon);
  std::string path = colon == std::string::npos ? std::string{} : tag.substr(colon + 1);
  if (head == "pseudo-forward") return Provenance{ProvenanceKind::pseudo_forward, path};
  if (head == "pseudo-backward") return Provenance{ProvenanceKind::pseudo_backward, path};
  throw InvalidConfig("unknown provenance tag: '" + tag + "'");
}

std::size_t ParallelCorpus::count(ProvenanceKind kind) const {
  std::size_t n = 0;
  for (const auto& p : pairs) {
    if (p.provenance.kind == kind) ++n;
  }
  return n;
}

const std::vector<std::string>& MultiParallelSet::lines(const std::string& lang) const {
  auto it = renderings.find(lang);
  if (it == renderings.end()) {
    throw AlignmentError("language not in multi-parallel set: " + lang);
  }
  return it->second;
}

}  // namespace lgd
