#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "lgd/graph.hpp"
#include "lgd/io.hpp"
#include "test_util.hpp"

using namespace lgd;

TEST_CASE("add_language base cases") {
  LanguageGraph graph;
  graph.add_language("en");
  CHECK(graph.language_count() == 1);
  CHECK(graph.edge_count() == 0);
  CHECK(graph.mono_count("en") == 0);

  CHECK_THROWS_AS(graph.add_language("en"), DuplicateLanguage);
  CHECK_THROWS_AS(graph.add_language(""), InvalidCode);
  CHECK_THROWS_AS(graph.add_language("x"), InvalidCode);
  CHECK_THROWS_AS(graph.add_language("toolongcode"), InvalidCode);
  CHECK_THROWS_AS(graph.add_language("a b"), InvalidCode);
}

TEST_CASE("nine language codes from the reference experiment") {
  LanguageGraph graph;
  for (const auto& code : {"Ar", "En", "Fr", "Ru", "Fi", "He", "Nb", "Sk", "Sl"}) {
    graph.add_language(code);
  }
  CHECK(graph.language_count() == 9);
  graph.validate();
}

TEST_CASE("add_edge preconditions") {
  LanguageGraph graph;
  graph.add_language("Ar");
  graph.add_language("He");
  graph.add_language("en");

  graph.add_edge("Ar", "He", 10);
  CHECK(graph.has_edge("Ar", "He"));
  CHECK_FALSE(graph.has_edge("He", "Ar"));  // directions are distinct
  CHECK(graph.pair_count({"Ar", "He"}) == 10);

  CHECK_THROWS_AS(graph.add_edge("xx", "en", 1), UnknownLanguage);
  CHECK_THROWS_AS(graph.add_edge("en", "en", 1), SelfLoop);
  CHECK_THROWS_AS(graph.add_edge("Ar", "He", -1), InvalidConfig);
}

TEST_CASE("add_edge then remove_edge restores the edge set") {
  LanguageGraph graph;
  graph.add_language("en");
  graph.add_language("fr");
  graph.add_language("de");
  graph.add_edge("en", "fr", 5);
  const auto before = graph.edges();

  graph.add_edge("fr", "de", 7);
  graph.remove_edge("fr", "de");
  CHECK(graph.edges() == before);
  CHECK_THROWS_AS(graph.remove_edge("fr", "de"), MissingEntry);
}

TEST_CASE("bilingual_volume") {
  SUBCASE("isolated node") {
    LanguageGraph graph;
    graph.add_language("en");
    CHECK(graph.bilingual_volume("en") == 0);
    CHECK_THROWS_AS(graph.bilingual_volume("xx"), UnknownLanguage);
  }
  SUBCASE("hand-built 3-node graph, in of 10 plus out of 5") {
    LanguageGraph graph;
    graph.add_language("aa");
    graph.add_language("bb");
    graph.add_language("cc");
    graph.add_edge("bb", "aa", 10);
    graph.add_edge("aa", "cc", 5);
    graph.add_edge("bb", "cc", 99);  // not incident to aa
    CHECK(graph.bilingual_volume("aa") == 15);
  }
  SUBCASE("nine-language topology, unit counts, both directions") {
    auto graph = test::nine_language_graph(1, 1);
    // En participates in 7 pairs, each stored in both directions
    CHECK(graph.bilingual_volume("En") == 14);
    CHECK(graph.bilingual_volume("Ar") == 10);  // En, Fr, Ru, He, Sk
  }
}

TEST_CASE("bilingual_volume equals an explicit edge-scan oracle on random graphs") {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int nodes = 2 + static_cast<int>(rng.below(9));
    auto graph = test::random_graph(rng, nodes, 0.4);
    // independent tally from the edge list
    std::map<std::string, std::int64_t> tally;
    for (const auto& lang : graph.languages()) tally[lang] = 0;
    for (const auto& edge : graph.edges()) {
      const auto count = graph.pair_count(edge);
      tally[edge.src] += count;
      tally[edge.tgt] += count;
    }
    for (const auto& lang : graph.languages()) {
      CHECK(graph.bilingual_volume(lang) == tally[lang]);
    }
  }
}

TEST_CASE("validate is idempotent") {
  auto graph = test::nine_language_graph(3, 1, 2);
  graph.validate();
  graph.validate();
}

TEST_CASE("objective") {
  EdgeWeightMap weights;
  CHECK(objective(weights) == 0.0);

  weights.set({"Ar", "Fi"}, 5.70);
  weights.set({"He", "Fi"}, 7.42);
  weights.set({"Nb", "Sl"}, 8.58);
  CHECK(objective(weights) == doctest::Approx(21.70).epsilon(1e-12));

  SUBCASE("matches a brute-force fold on random maps") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      EdgeWeightMap map;
      double expected = 0.0;
      const int n = 1 + static_cast<int>(rng.below(12));
      for (int i = 0; i < n; ++i) {
        const double score = 100.0 * rng.real01();
        Edge edge{"l" + std::to_string(i), "m" + std::to_string(i)};
        map.set(edge, score);
        expected += score;
      }
      CHECK(objective(map) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("edge weight map contracts") {
  EdgeWeightMap weights;
  CHECK_THROWS_AS(weights.set({"aa", "bb"}, -0.5), InvalidConfig);
  CHECK_THROWS_AS(weights.set({"aa", "bb"}, 100.5), InvalidConfig);
  CHECK_THROWS_AS(weights.at({"aa", "bb"}), MissingEntry);

  LanguageGraph graph;
  graph.add_language("aa");
  graph.add_language("bb");
  graph.add_edge("aa", "bb", 1);
  weights.set({"aa", "bb"}, 50.0);
  weights.validate_against(graph);

  weights.set({"bb", "aa"}, 10.0);  // not a graph edge
  CHECK_THROWS_AS(weights.validate_against(graph), InvalidGraph);
}

TEST_CASE("graph spec file round-trips losslessly") {
  auto graph = test::nine_language_graph(1500, 120, 800);
  const auto dir = std::filesystem::temp_directory_path() / "lgd_graph_roundtrip";
  std::filesystem::create_directories(dir);
  const auto path = dir / "graph.json";

  write_graph(path, graph);
  auto loaded = read_graph(path);
  CHECK(loaded.languages() == graph.languages());
  CHECK(loaded.edges() == graph.edges());
  for (const auto& edge : graph.edges()) {
    CHECK(loaded.pair_count(edge) == graph.pair_count(edge));
  }
  for (const auto& lang : graph.languages()) {
    CHECK(loaded.mono_count(lang) == graph.mono_count(lang));
  }

  // writing the loaded graph again produces identical bytes
  const auto path2 = dir / "graph2.json";
  write_graph(path2, loaded);
  std::ifstream a(path, std::ios::binary), b(path2, std::ios::binary);
  std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
  std::filesystem::remove_all(dir);
}
