#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "lgd/metrics.hpp"
#include "lgd/synthworld.hpp"
#include "lgd/text.hpp"
#include "test_util.hpp"

using namespace lgd;

namespace {

WorldConfig small_config() {
  WorldConfig config;
  config.languages = {"aa", "bb", "cc"};
  config.concept_count = 40;
  config.zipf_exponent = 1.0;
  config.sentence_len_min = 3;
  config.sentence_len_max = 8;
  return config;
}

}  // namespace

TEST_CASE("config validation") {
  auto config = small_config();
  config.concept_count = 0;
  CHECK_THROWS_AS(ConceptWorld::generate(config, 1), InvalidConfig);
  config = small_config();
  config.sentence_len_min = 0;
  CHECK_THROWS_AS(ConceptWorld::generate(config, 1), InvalidConfig);
  config = small_config();
  config.sentence_len_min = 9;  // > max
  CHECK_THROWS_AS(ConceptWorld::generate(config, 1), InvalidConfig);
  config = small_config();
  config.zipf_exponent = -0.1;
  CHECK_THROWS_AS(ConceptWorld::generate(config, 1), InvalidConfig);
}

TEST_CASE("degenerate vocabulary of one concept") {
  auto config = small_config();
  config.concept_count = 1;
  auto world = ConceptWorld::generate(config, 3);
  for (const auto& lang : config.languages) {
    CHECK(world.lexicon(lang).size() == 1);
  }
  Rng rng(17);
  auto seq = world.sample_sentence(rng);
  for (int c : seq) CHECK(c == 0);
  const auto sentence = world.render(seq, "aa");
  for (const auto& token : tokenize(sentence)) CHECK(token == "aa0");
}

TEST_CASE("same config and seed give bit-identical worlds") {
  auto a = ConceptWorld::generate(small_config(), 99);
  auto b = ConceptWorld::generate(small_config(), 99);
  for (const auto& lang : small_config().languages) {
    CHECK(a.lexicon(lang) == b.lexicon(lang));
  }
  Rng ra(5), rb(5);
  for (int i = 0; i < 20; ++i) {
    CHECK(a.sample_sentence(ra) == b.sample_sentence(rb));
  }
}

TEST_CASE("different seeds give different lexicons") {
  auto config = small_config();
  config.concept_count = 500;
  auto a = ConceptWorld::generate(config, 1);
  auto b = ConceptWorld::generate(config, 2);
  int differences = 0;
  for (int c = 0; c < config.concept_count; ++c) {
    if (a.lexicon("aa")[c] != b.lexicon("aa")[c]) ++differences;
  }
  CHECK(differences >= 1);
}

TEST_CASE("render") {
  auto world = ConceptWorld::generate(small_config(), 7);

  SUBCASE("empty sequence renders empty") {
    CHECK(world.render(std::vector<int>{}, "aa").empty());
  }
  SUBCASE("single concept renders one word per language, related by bijection") {
    const std::vector<int> seq{5};
    const auto sa = world.render(seq, "aa");
    const auto sb = world.render(seq, "bb");
    CHECK(tokenize(sa).size() == 1);
    CHECK(tokenize(sb).size() == 1);
    CHECK(world.invert(sa, "aa") == world.invert(sb, "bb"));
  }
  SUBCASE("out-of-range concept") {
    CHECK_THROWS_AS(world.render(std::vector<int>{40}, "aa"), UnknownConcept);
    CHECK_THROWS_AS(world.render(std::vector<int>{0}, "zz"), UnknownLanguage);
  }
  SUBCASE("random round trip through the inverse lexicon") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
      auto seq = world.sample_sentence(rng);
      for (const auto& lang : small_config().languages) {
        CHECK(world.invert(world.render(seq, lang), lang) == seq);
      }
    }
  }
}

TEST_CASE("block reversal reorders renders but stays invertible") {
  auto config = small_config();
  config.reorder_block["bb"] = 2;
  auto world = ConceptWorld::generate(config, 7);
  const std::vector<int> seq{1, 2, 3, 4, 5};
  const auto plain = ConceptWorld::generate(small_config(), 7);
  CHECK(world.render(seq, "aa") == plain.render(seq, "aa"));
  CHECK(world.render(seq, "bb") != plain.render(seq, "bb"));
  CHECK(world.invert(world.render(seq, "bb"), "bb") == seq);
}

TEST_CASE("generate_corpora") {
  auto config = small_config();
  LanguageGraph graph;
  for (const auto& lang : config.languages) graph.add_language(lang);
  graph.add_edge("aa", "bb", 25);
  graph.add_edge("bb", "aa", 0);
  graph.add_edge("aa", "cc", 10);
  graph.set_mono_count("cc", 12);
  auto world = ConceptWorld::generate(config, 11);
  auto data = generate_corpora(world, graph, 15, 10, 11);

  SUBCASE("corpus sizes follow the graph counts") {
    CHECK(data.train.at({"aa", "bb"}).size() == 25);
    CHECK(data.train.at({"bb", "aa"}).size() == 0);
    CHECK(data.train.at({"aa", "cc"}).size() == 10);
    CHECK(data.mono.at("cc").size() == 12);
    CHECK(data.mono.at("aa").size() == 0);
  }
  SUBCASE("every pair is a ground-truth translation") {
    for (const auto& [edge, corpus] : data.train) {
      for (const auto& pair : corpus.pairs) {
        const auto concepts = world.invert(pair.source, edge.src);
        CHECK(pair.target == world.render(concepts, edge.tgt));
        CHECK(pair.provenance.kind == ProvenanceKind::real);
      }
    }
  }
  SUBCASE("dev and test are line-aligned over all languages") {
    CHECK(data.dev.size() == 15);
    CHECK(data.test.size() == 10);
    for (const auto& lang : config.languages) {
      CHECK(data.dev.lines(lang).size() == 15);
      CHECK(data.test.lines(lang).size() == 10);
    }
    for (std::size_t i = 0; i < data.dev.size(); ++i) {
      for (const auto& lang : config.languages) {
        CHECK(data.dev.lines(lang)[i] == world.render(data.dev.concepts[i], lang));
      }
    }
  }
  SUBCASE("dev and test draw from distinct streams") {
    CHECK(data.dev.concepts != data.test.concepts);
  }
  SUBCASE("size preconditions") {
    CHECK_THROWS_AS(generate_corpora(world, graph, 0, 5, 1), InvalidConfig);
  }
  SUBCASE("regeneration is reproducible") {
    auto again = generate_corpora(world, graph, 15, 10, 11);
    CHECK(again.train.at({"aa", "bb"}).pairs == data.train.at({"aa", "bb"}).pairs);
    CHECK(again.dev.concepts == data.dev.concepts);
  }
}

TEST_CASE("ground-truth model composition scores 100 on the dev set") {
  auto config = small_config();
  LanguageGraph graph;
  for (const auto& lang : config.languages) graph.add_language(lang);
  graph.add_edge("aa", "bb", 1);
  auto world = ConceptWorld::generate(config, 31);
  auto data = generate_corpora(world, graph, 50, 10, 31);
  auto oracle = test::oracle_model(world, config.languages);
  for (const auto& src : config.languages) {
    for (const auto& tgt : config.languages) {
      if (src == tgt) continue;
      auto hyp = translate(oracle, src, tgt, data.dev.lines(src));
      CHECK(bleu(hyp, data.dev.lines(tgt)).score == 100.0);
    }
  }
}

TEST_CASE("zipf exponent zero is uniform within three sigma") {
  auto config = small_config();
  config.concept_count = 20;
  config.zipf_exponent = 0.0;
  auto world = ConceptWorld::generate(config, 123);
  Rng rng(123);
  std::vector<int> counts(config.concept_count, 0);
  std::int64_t total = 0;
  while (total < 60000) {
    for (int c : world.sample_sentence(rng)) {
      ++counts[c];
      ++total;
    }
  }
  const double p = 1.0 / config.concept_count;
  const double mean = static_cast<double>(total) * p;
  const double sigma = std::sqrt(static_cast<double>(total) * p * (1.0 - p));
  for (int c = 0; c < config.concept_count; ++c) {
    CHECK(std::abs(counts[c] - mean) <= 3.0 * sigma);
  }
}
