#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lgd/graph.hpp"

namespace lgd {

struct BleuScore {
  double score = 0.0;                  // [0, 100]
  std::array<double, 4> precisions{};  // modified n-gram precisions, orders 1-4
  double brevity_penalty = 1.0;
  std::int64_t hyp_len = 0;
  std::int64_t ref_len = 0;
};

// Corpus-level BLEU, orders 1-4, clipped counts, no smoothing, whitespace
// tokens, case-sensitive, single reference. Any zero precision zeroes the
// score. BP = 1 when hyp_len > ref_len, else exp(1 - ref_len/hyp_len).
BleuScore bleu(const std::vector<std::string>& hypotheses,
               const std::vector<std::string>& references);

// "BLEU = 81.87, 100.0/100.0/100.0/100.0 (BP=0.819, hyp_len=5, ref_len=6)"
std::string format_bleu(const BleuScore& s);

// Mean over edges of (after - before). Key sets must match exactly.
double average_improvement(const std::map<Edge, double>& before,
                           const std::map<Edge, double>& after);

}  // namespace lgd
