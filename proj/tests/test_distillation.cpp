#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "lgd/distillation.hpp"
#include "lgd/synthworld.hpp"
#include "test_util.hpp"

using namespace lgd;

namespace {

AccuracyTable hand_table() {
  AccuracyTable table(1);
  table.insert(TranslationPath{{"aa", "bb"}}, 5.0);
  table.insert(TranslationPath{{"aa", "cc", "bb"}}, 20.0);
  table.insert(TranslationPath{{"aa", "dd", "bb"}}, 12.0);
  table.insert(TranslationPath{{"bb", "aa"}}, 6.0);
  table.insert(TranslationPath{{"bb", "cc", "aa"}}, 18.0);
  table.insert(TranslationPath{{"bb", "dd", "aa"}}, 4.0);
  return table;
}

// Independent potential: scan every table entry, no helper reuse.
double brute_force_potential(const AccuracyTable& table, const Edge& edge, int max_hops) {
  double direct = -1.0;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [langs, score] : table.entries()) {
    const int hops = static_cast<int>(langs.size()) - 1;
    if (langs.front() != edge.src || langs.back() != edge.tgt) continue;
    if (hops == 1) direct = score;
    if (hops >= 2 && hops <= max_hops) best = std::max(best, score);
  }
  return best - direct;  // -inf when no multi-hop path exists
}

// Random sparse table over up to six languages.
AccuracyTable random_table(Rng& rng) {
  const int nodes = 3 + static_cast<int>(rng.below(4));
  std::vector<std::string> langs;
  for (int i = 0; i < nodes; ++i) langs.push_back(std::string{'r', static_cast<char>('a' + i)});
  AccuracyTable table(0);
  for (const auto& a : langs) {
    for (const auto& b : langs) {
      if (a == b) continue;
      if (rng.real01() < 0.8) table.insert(TranslationPath{{a, b}}, 100.0 * rng.real01());
      for (const auto& c : langs) {
        if (c == a || c == b) continue;
        if (rng.real01() < 0.5) {
          table.insert(TranslationPath{{a, c, b}}, 100.0 * rng.real01());
        }
      }
    }
  }
  return table;
}

}  // namespace

TEST_CASE("potential on a hand-built table") {
  auto table = hand_table();
  auto p = potential(table, {"aa", "bb"}, 2);
  CHECK(p.direct == 5.0);
  CHECK(p.best_path_score == 20.0);
  REQUIRE(p.best_path.has_value());
  CHECK(p.best_path->to_string() == "aa->cc->bb");
  CHECK(p.potential == 15.0);
  CHECK(p.selectable());

  SUBCASE("all multi-hop paths below the direct edge") {
    AccuracyTable weak(0);
    weak.insert(TranslationPath{{"aa", "bb"}}, 50.0);
    weak.insert(TranslationPath{{"aa", "cc", "bb"}}, 30.0);
    auto q = potential(weak, {"aa", "bb"}, 2);
    CHECK(q.potential <= 0.0);
    CHECK_FALSE(q.selectable());
  }
  SUBCASE("no multi-hop path gives the never-selectable sentinel") {
    AccuracyTable lonely(0);
    lonely.insert(TranslationPath{{"aa", "bb"}}, 50.0);
    auto q = potential(lonely, {"aa", "bb"}, 2);
    CHECK(std::isinf(q.potential));
    CHECK(q.potential < 0);
    CHECK_FALSE(q.selectable());
  }
  SUBCASE("missing direct entry") {
    CHECK_THROWS_AS(potential(table, {"cc", "aa"}, 2), MissingEntry);
  }
  SUBCASE("mean-top-k aggregation") {
    auto q = potential(table, {"aa", "bb"}, 2, PotentialAggregation::mean_top_k, 2);
    CHECK(q.potential == doctest::Approx(16.0 - 5.0));
  }
}

TEST_CASE("potential matches the exhaustive oracle on random tables") {
  Rng rng(606);
  for (int trial = 0; trial < 50; ++trial) {
    auto table = random_table(rng);
    for (const auto& edge : table.direct_edges()) {
      auto p = potential(table, edge, 3);
      const double expected = brute_force_potential(table, edge, 3);
      if (std::isinf(expected)) {
        CHECK(std::isinf(p.potential));
      } else {
        CHECK(p.potential == doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("select_edges") {
  SUBCASE("nothing qualifies when no potential is positive") {
    AccuracyTable table(0);
    table.insert(TranslationPath{{"aa", "bb"}}, 90.0);
    table.insert(TranslationPath{{"aa", "cc", "bb"}}, 70.0);
    CHECK(select_edges(table, 3, 2).empty());
  }
  SUBCASE("a first-iteration-like state selects the three starved pairs") {
    AccuracyTable table(0);
    // hub clique strong everywhere, three spokes weak with strong pivots
    table.insert(TranslationPath{{"Ar", "Fi"}}, 5.70);
    table.insert(TranslationPath{{"Ar", "En", "Fi"}}, 21.0);
    table.insert(TranslationPath{{"He", "Fi"}}, 7.42);
    table.insert(TranslationPath{{"He", "En", "Fi"}}, 20.0);
    table.insert(TranslationPath{{"Nb", "Sl"}}, 8.58);
    table.insert(TranslationPath{{"Nb", "En", "Sl"}}, 19.0);
    table.insert(TranslationPath{{"Ar", "En"}}, 25.0);
    table.insert(TranslationPath{{"Ar", "Fr", "En"}}, 24.0);
    table.insert(TranslationPath{{"En", "Fi"}}, 22.0);
    table.insert(TranslationPath{{"En", "Ar", "Fi"}}, 12.0);
    auto selected = select_edges(table, 3, 2);
    REQUIRE(selected.size() == 3);
    CHECK(std::set<Edge>(selected.begin(), selected.end()) ==
          std::set<Edge>{{"Ar", "Fi"}, {"He", "Fi"}, {"Nb", "Sl"}});
  }
  SUBCASE("matches a brute-force sort with lexicographic tie-break") {
    Rng rng(707);
    for (int trial = 0; trial < 50; ++trial) {
      auto table = random_table(rng);
      const int m = 1 + static_cast<int>(rng.below(4));
      auto selected = select_edges(table, m, 3);

      std::vector<std::pair<double, Edge>> oracle;
      for (const auto& edge : table.direct_edges()) {
        const double p = brute_force_potential(table, edge, 3);
        if (p > 0.0 && !std::isinf(p)) oracle.emplace_back(p, edge);
      }
      std::sort(oracle.begin(), oracle.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
      });
      if (oracle.size() > static_cast<std::size_t>(m)) oracle.resize(m);
      REQUIRE(selected.size() == oracle.size());
      for (std::size_t i = 0; i < selected.size(); ++i) {
        CHECK(selected[i] == oracle[i].second);
        CHECK(brute_force_potential(table, selected[i], 3) > 0.0);
      }
    }
  }
}

TEST_CASE("select_paths") {
  auto table = hand_table();

  SUBCASE("top-1 per direction") {
    auto plan = select_paths(table, {"aa", "bb"}, 1, 0.0, 2);
    REQUIRE(plan.forward_paths.size() == 1);
    CHECK(plan.forward_paths[0].to_string() == "aa->cc->bb");
    CHECK(plan.forward_paths[0].direction == PathDirection::forward);
    REQUIRE(plan.backward_paths.size() == 1);
    // bb->cc->aa (18) beats the one-hop reverse (6), but the reverse must
    // survive: top-1 keeps the swap-in
    CHECK(plan.backward_paths[0].to_string() == "bb->aa");
  }
  SUBCASE("top-2 keeps the reverse and the best multi-hop backward") {
    auto plan = select_paths(table, {"aa", "bb"}, 2, 0.0, 2);
    REQUIRE(plan.forward_paths.size() == 2);
    CHECK(plan.forward_paths[0].to_string() == "aa->cc->bb");
    CHECK(plan.forward_paths[1].to_string() == "aa->dd->bb");
    REQUIRE(plan.backward_paths.size() == 2);
    CHECK(plan.backward_paths[0].to_string() == "bb->cc->aa");
    CHECK(plan.backward_paths[1].to_string() == "bb->aa");
    CHECK(plan.backward_paths[0].direction == PathDirection::backward);
  }
  SUBCASE("filter semantics: everything worse than direct leaves only the reverse") {
    AccuracyTable weak(0);
    weak.insert(TranslationPath{{"aa", "bb"}}, 50.0);
    weak.insert(TranslationPath{{"aa", "cc", "bb"}}, 30.0);
    weak.insert(TranslationPath{{"bb", "aa"}}, 40.0);
    weak.insert(TranslationPath{{"bb", "cc", "aa"}}, 10.0);
    auto plan = select_paths(weak, {"aa", "bb"}, 2, 0.0, 2);
    CHECK(plan.forward_paths.empty());
    REQUIRE(plan.backward_paths.size() == 1);
    CHECK(plan.backward_paths[0].to_string() == "bb->aa");
  }
  SUBCASE("slack admits comparable paths") {
    AccuracyTable weak(0);
    weak.insert(TranslationPath{{"aa", "bb"}}, 50.0);
    weak.insert(TranslationPath{{"aa", "cc", "bb"}}, 48.0);
    auto strict = select_paths(weak, {"aa", "bb"}, 2, 0.0, 2);
    CHECK(strict.forward_paths.empty());
    auto slack = select_paths(weak, {"aa", "bb"}, 2, 3.0, 2);
    REQUIRE(slack.forward_paths.size() == 1);
  }
  SUBCASE("missing direct entry") {
    CHECK_THROWS_AS(select_paths(table, {"cc", "bb"}, 2, 0.0, 2), MissingEntry);
  }
  SUBCASE("every planned path passes the quality filter on random tables") {
    Rng rng(808);
    for (int trial = 0; trial < 30; ++trial) {
      auto table2 = random_table(rng);
      for (const auto& edge : table2.direct_edges()) {
        auto plan = select_paths(table2, edge, 2, 0.0, 3);
        const double direct = *table2.direct_score(edge);
        for (const auto& path : plan.forward_paths) {
          CHECK(*table2.score(path.langs) >= direct - 1e-12);
          CHECK(path.source() == edge.src);
          CHECK(path.target() == edge.tgt);
          CHECK(path.hops() >= 2);
        }
        auto reverse_direct = table2.direct_score({edge.tgt, edge.src});
        for (const auto& path : plan.backward_paths) {
          CHECK(path.source() == edge.tgt);
          CHECK(path.target() == edge.src);
          if (reverse_direct && path.langs != std::vector<std::string>{edge.tgt, edge.src}) {
            CHECK(*table2.score(path.langs) >= *reverse_direct - 1e-12);
          }
        }
        if (reverse_direct) {
          bool has_reverse = false;
          for (const auto& path : plan.backward_paths) {
            if (path.langs == std::vector<std::string>{edge.tgt, edge.src}) has_reverse = true;
          }
          CHECK(has_reverse);
        }
      }
    }
  }
}

namespace {

struct DistillFixture {
  WorldConfig config;
  ConceptWorld world;
  LanguageGraph graph;
  GeneratedData data;
  MultilingualModel oracle;

  DistillFixture()
      : config([] {
          WorldConfig c;
          c.languages = {"aa", "bb", "cc"};
          c.concept_count = 30;
          c.zipf_exponent = 0.0;
          return c;
        }()),
        world(ConceptWorld::generate(config, 51)),
        graph([] {
          LanguageGraph g;
          for (const auto& lang : {"aa", "bb", "cc"}) g.add_language(lang);
          g.add_edge("aa", "bb", 40);
          g.add_edge("bb", "aa", 40);
          g.add_edge("aa", "cc", 300);
          g.add_edge("cc", "aa", 300);
          g.add_edge("cc", "bb", 300);
          g.add_edge("bb", "cc", 300);
          return g;
        }()),
        data(generate_corpora(world, graph, 40, 10, 51)),
        oracle(test::oracle_model(world, config.languages)) {}

  DistillationPlan forward_only_plan(std::size_t budget = 2000) const {
    DistillationPlan plan;
    plan.edge = {"aa", "bb"};
    plan.forward_paths = {TranslationPath{{"aa", "cc", "bb"}, PathDirection::forward}};
    plan.budget = budget;
    return plan;
  }

  DistillationPlan backward_only_plan(std::size_t budget = 2000) const {
    DistillationPlan plan;
    plan.edge = {"aa", "bb"};
    plan.backward_paths = {TranslationPath{{"bb", "aa"}, PathDirection::backward}};
    plan.budget = budget;
    return plan;
  }
};

}  // namespace

TEST_CASE("forward_distill") {
  DistillFixture fx;

  SUBCASE("empty sources give an empty corpus") {
    CHECK(forward_distill(fx.forward_only_plan(), fx.oracle, {}).size() == 0);
  }
  SUBCASE("oracle pipelines produce ground-truth pairs") {
    std::vector<std::string> sources;
    for (const auto& pair : fx.data.train.at({"aa", "bb"}).pairs) sources.push_back(pair.source);
    auto pseudo = forward_distill(fx.forward_only_plan(), fx.oracle, sources);
    REQUIRE(pseudo.size() == fx.data.train.at({"aa", "bb"}).size());
    for (std::size_t i = 0; i < pseudo.size(); ++i) {
      CHECK(pseudo.pairs[i].source == fx.data.train.at({"aa", "bb"}).pairs[i].source);
      CHECK(pseudo.pairs[i].target == fx.data.train.at({"aa", "bb"}).pairs[i].target);
      CHECK(pseudo.pairs[i].provenance.kind == ProvenanceKind::pseudo_forward);
      CHECK(pseudo.pairs[i].provenance.via_path == "aa->cc->bb");
    }
  }
  SUBCASE("duplicate sources dedup to one pseudo pair") {
    auto pseudo = forward_distill(fx.forward_only_plan(), fx.oracle,
                                  {"aa0 aa1", "aa0 aa1", "aa2"});
    CHECK(pseudo.size() == 2);
  }
  SUBCASE("budget caps each path") {
    std::vector<std::string> sources;
    for (int i = 0; i < 30; ++i) sources.push_back("aa" + std::to_string(i % 25));
    auto pseudo = forward_distill(fx.forward_only_plan(7), fx.oracle, sources);
    CHECK(pseudo.size() <= 7);
  }
  SUBCASE("untrained hop") {
    MultilingualModel empty;
    CHECK_THROWS_AS(forward_distill(fx.forward_only_plan(), empty, {"aa0"}),
                    UntrainedDirection);
  }
}

TEST_CASE("backward_distill") {
  DistillFixture fx;

  SUBCASE("empty targets give an empty corpus") {
    CHECK(backward_distill(fx.backward_only_plan(), fx.oracle, {}).size() == 0);
  }
  SUBCASE("restricted to the one-hop reverse it is exactly back-translation") {
    auto model = train_multilingual(fx.data.train, TrainerConfig{});
    std::vector<std::string> targets = fx.data.mono.at("bb").sentences;
    for (const auto& pair : fx.data.train.at({"aa", "bb"}).pairs) targets.push_back(pair.target);
    auto pseudo = backward_distill(fx.backward_only_plan(), model, targets);
    auto expected = test::back_translation_oracle(model, {"aa", "bb"}, targets, 2000);
    REQUIRE(pseudo.size() == expected.size());
    for (std::size_t i = 0; i < pseudo.size(); ++i) {
      CHECK(pseudo.pairs[i].source == expected.pairs[i].source);
      CHECK(pseudo.pairs[i].target == expected.pairs[i].target);
      CHECK(pseudo.pairs[i].provenance.kind == ProvenanceKind::pseudo_backward);
    }
  }
  SUBCASE("a perfect two-hop backward path recovers ground-truth sources") {
    DistillationPlan plan;
    plan.edge = {"aa", "bb"};
    plan.backward_paths = {TranslationPath{{"bb", "cc", "aa"}, PathDirection::backward}};
    plan.budget = 2000;
    std::vector<std::string> targets;
    std::vector<std::vector<int>> seqs;
    Rng rng(77);
    for (int i = 0; i < 15; ++i) {
      seqs.push_back(fx.world.sample_sentence(rng));
      targets.push_back(fx.world.render(seqs.back(), "bb"));
    }
    auto pseudo = backward_distill(plan, fx.oracle, targets);
    REQUIRE(pseudo.size() == targets.size());
    for (std::size_t i = 0; i < pseudo.size(); ++i) {
      CHECK(pseudo.pairs[i].source == fx.world.render(seqs[i], "aa"));
      CHECK(pseudo.pairs[i].target == targets[i]);
    }
  }
}

TEST_CASE("pseudo pair counts never exceed paths times budget") {
  DistillFixture fx;
  DistillationPlan plan;
  plan.edge = {"aa", "bb"};
  plan.forward_paths = {TranslationPath{{"aa", "cc", "bb"}, PathDirection::forward}};
  plan.budget = 11;
  std::vector<std::string> sources;
  for (int i = 0; i < 60; ++i) sources.push_back("aa" + std::to_string(i % 28));
  auto fwd = forward_distill(plan, fx.oracle, sources);
  CHECK(fwd.size() <= plan.forward_paths.size() * plan.budget);

  DistillationPlan bplan;
  bplan.edge = {"aa", "bb"};
  bplan.backward_paths = {TranslationPath{{"bb", "aa"}, PathDirection::backward},
                          TranslationPath{{"bb", "cc", "aa"}, PathDirection::backward}};
  bplan.budget = 9;
  std::vector<std::string> targets;
  for (int i = 0; i < 60; ++i) targets.push_back("bb" + std::to_string(i % 28));
  auto bwd = backward_distill(bplan, fx.oracle, targets);
  CHECK(bwd.size() <= bplan.backward_paths.size() * bplan.budget);
}

TEST_CASE("assemble_training_set") {
  ParallelCorpus real;
  real.src_lang = "aa";
  real.tgt_lang = "bb";
  for (int i = 0; i < 100; ++i) {
    real.pairs.push_back(
        SentencePair{"s" + std::to_string(i), "t" + std::to_string(i), Provenance{}});
  }

  SUBCASE("no pseudo data is the identity") {
    auto out = assemble_training_set(real, {});
    CHECK(out.pairs == real.pairs);
  }
  SUBCASE("disjoint pseudo corpora concatenate") {
    ParallelCorpus p1, p2;
    p1.src_lang = p2.src_lang = "aa";
    p1.tgt_lang = p2.tgt_lang = "bb";
    for (int i = 0; i < 50; ++i) {
      p1.pairs.push_back(SentencePair{"p" + std::to_string(i), "q" + std::to_string(i),
                                      Provenance{ProvenanceKind::pseudo_forward, "aa->cc->bb"}});
      p2.pairs.push_back(SentencePair{"u" + std::to_string(i), "v" + std::to_string(i),
                                      Provenance{ProvenanceKind::pseudo_backward, "bb->aa"}});
    }
    auto out = assemble_training_set(real, {p1, p2});
    CHECK(out.size() == 200);
    CHECK(out.count(ProvenanceKind::real) == 100);
    CHECK(out.count(ProvenanceKind::pseudo_forward) == 50);
    CHECK(out.count(ProvenanceKind::pseudo_backward) == 50);
  }
  SUBCASE("pseudo pairs duplicating real pairs are dropped") {
    ParallelCorpus pseudo;
    pseudo.src_lang = "aa";
    pseudo.tgt_lang = "bb";
    pseudo.pairs.push_back(
        SentencePair{"s3", "t3", Provenance{ProvenanceKind::pseudo_forward, "aa->cc->bb"}});
    pseudo.pairs.push_back(
        SentencePair{"s3", "tX", Provenance{ProvenanceKind::pseudo_forward, "aa->cc->bb"}});
    auto out = assemble_training_set(real, {pseudo});

    // set-difference oracle over exact (source, target) pairs
    std::set<std::pair<std::string, std::string>> real_set;
    for (const auto& pair : real.pairs) real_set.emplace(pair.source, pair.target);
    std::size_t expected = real.size();
    for (const auto& pair : pseudo.pairs) {
      if (!real_set.contains({pair.source, pair.target})) ++expected;
    }
    CHECK(out.size() == expected);
    CHECK(out.size() == 101);
  }
  SUBCASE("direction mismatch") {
    ParallelCorpus wrong;
    wrong.src_lang = "bb";
    wrong.tgt_lang = "aa";
    CHECK_THROWS_AS(assemble_training_set(real, {wrong}), AlignmentError);
  }
}

TEST_CASE("distillation is deterministic") {
  DistillFixture fx;
  auto model = train_multilingual(fx.data.train, TrainerConfig{});
  std::vector<std::string> sources;
  for (const auto& pair : fx.data.train.at({"aa", "bb"}).pairs) sources.push_back(pair.source);
  auto plan = fx.forward_only_plan();
  auto a = forward_distill(plan, model, sources);
  auto b = forward_distill(plan, model, sources);
  CHECK(a.pairs == b.pairs);
}
