#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lgd {

// Whitespace tokenization; runs of spaces/tabs collapse, no empty tokens.
inline std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && (sentence[i] == ' ' || sentence[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < sentence.size() && sentence[i] != ' ' && sentence[i] != '\t') ++i;
    if (i > start) tokens.emplace_back(sentence.substr(start, i - start));
  }
  return tokens;
}

inline std::string join(const std::vector<std::string>& tokens, char sep = ' ') {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(sep);
    out += tokens[i];
  }
  return out;
}

}  // namespace lgd
