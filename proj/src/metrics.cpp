#include "lgd/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "lgd/errors.hpp"
#include "lgd/text.hpp"

namespace lgd {

namespace {

// n-gram -> count for one tokenized sentence; n-grams are token spans
// re-joined with '\x1f' so they hash as single strings.
std::unordered_map<std::string, std::int64_t> ngram_counts(const std::vector<std::string>& tokens,
                                                           int n) {
  std::unordered_map<std::string, std::int64_t> counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (int j = 1; j < n; ++j) {
      key.push_back('\x1f');
      key += tokens[i + j];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

BleuScore bleu(const std::vector<std::string>& hypotheses,
               const std::vector<std::string>& references) {
  if (hypotheses.size() != references.size()) {
    throw AlignmentError(static_cast<std::int64_t>(hypotheses.size()),
                         static_cast<std::int64_t>(references.size()));
  }
  if (hypotheses.empty()) {
    throw EmptyInput("bleu: empty corpus");
  }

  std::array<std::int64_t, 4> correct{};
  std::array<std::int64_t, 4> total{};
  std::int64_t hyp_len = 0;
  std::int64_t ref_len = 0;

  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    auto hyp = tokenize(hypotheses[i]);
    auto ref = tokenize(references[i]);
    hyp_len += static_cast<std::int64_t>(hyp.size());
    ref_len += static_cast<std::int64_t>(ref.size());
    for (int n = 1; n <= 4; ++n) {
      auto hyp_ngrams = ngram_counts(hyp, n);
      if (hyp_ngrams.empty()) continue;
      auto ref_ngrams = ngram_counts(ref, n);
      for (const auto& [gram, count] : hyp_ngrams) {
        total[n - 1] += count;
        auto it = ref_ngrams.find(gram);
        if (it != ref_ngrams.end()) {
          correct[n - 1] += std::min(count, it->second);
        }
      }
    }
  }

  BleuScore out;
  out.hyp_len = hyp_len;
  out.ref_len = ref_len;
  bool any_zero = false;
  double log_sum = 0.0;
  for (int n = 0; n < 4; ++n) {
    out.precisions[n] =
        total[n] > 0 ? static_cast<double>(correct[n]) / static_cast<double>(total[n]) : 0.0;
    if (out.precisions[n] <= 0.0) {
      any_zero = true;
    } else {
      log_sum += std::log(out.precisions[n]);
    }
  }
  out.brevity_penalty = (hyp_len > ref_len || hyp_len == 0)
                            ? 1.0
                            : std::exp(1.0 - static_cast<double>(ref_len) / hyp_len);
  out.score = any_zero ? 0.0 : 100.0 * out.brevity_penalty * std::exp(log_sum / 4.0);
  return out;
}

std::string format_bleu(const BleuScore& s) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "BLEU = %.2f, %.1f/%.1f/%.1f/%.1f (BP=%.3f, hyp_len=%lld, ref_len=%lld)",
                s.score, 100.0 * s.precisions[0], 100.0 * s.precisions[1],
                100.0 * s.precisions[2], 100.0 * s.precisions[3], s.brevity_penalty,
                static_cast<long long>(s.hyp_len), static_cast<long long>(s.ref_len));
  return buf;
}

double average_improvement(const std::map<Edge, double>& before,
                           const std::map<Edge, double>& after) {
  if (before.empty() || after.empty()) {
    throw EmptyInput("average_improvement: empty score map");
  }
  if (before.size() != after.size()) {
    throw AlignmentError(static_cast<std::int64_t>(before.size()),
                         static_cast<std::int64_t>(after.size()));
  }
  double sum = 0.0;
  for (const auto& [edge, b] : before) {
    auto it = after.find(edge);
    if (it == after.end()) {
      throw AlignmentError("edge missing from after map: " + to_string(edge));
    }
    sum += it->second - b;
  }
  return sum / static_cast<double>(before.size());
}

}  // namespace lgd
