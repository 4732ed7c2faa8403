// lgd: build synthetic multilingual worlds, run language-graph distillation,
// ingest real corpora and score translations.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lgd/config.hpp"
#include "lgd/io.hpp"
#include "lgd/metrics.hpp"
#include "lgd/orchestrator.hpp"
#include "lgd/synthworld.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitRuntime = 3;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

lgd::ExperimentConfig load_config(const CommonFlags& flags) {
  auto config = lgd::ExperimentConfig::load(flags.config_path);
  if (flags.seed) {
    config.seed = *flags.seed;
    config.run.seed = *flags.seed;
  }
  if (flags.out) config.out_dir = *flags.out;
  config.validate();
  return config;
}

int cmd_gen(const CommonFlags& flags) {
  auto config = load_config(flags);
  auto world = lgd::ConceptWorld::generate(config.world, config.seed);
  auto data = lgd::generate_corpora(world, config.graph, config.dev_size, config.test_size,
                                    config.seed);
  lgd::write_data_dir(config.out_dir, world, config.graph, data);
  std::size_t pair_total = 0;
  for (const auto& [edge, corpus] : data.train) pair_total += corpus.size();
  std::cout << "wrote " << config.out_dir << ": " << config.graph.language_count()
            << " languages, " << config.graph.edge_count() << " edges, " << pair_total
            << " training pairs, dev/test " << config.dev_size << "/" << config.test_size
            << " lines\n";
  return kExitOk;
}

struct RunOverrides {
  std::optional<double> tau;
  std::optional<int> max_hops;
  std::optional<int> top_k;
  std::optional<int> edges_per_iteration;
};

int cmd_run(const CommonFlags& flags, const std::string& mode, const RunOverrides& overrides) {
  auto config = load_config(flags);
  if (overrides.tau) config.run.tau = *overrides.tau;
  if (overrides.max_hops) config.run.max_hops = *overrides.max_hops;
  if (overrides.top_k) config.run.top_k = *overrides.top_k;
  if (overrides.edges_per_iteration) {
    config.run.edges_per_iteration = *overrides.edges_per_iteration;
  }
  config.run.validate();
  const fs::path data_dir = config.out_dir;
  if (!fs::exists(data_dir / "graph.json")) {
    std::cerr << "error: no data directory at " << data_dir << " (run 'lgd gen' first)\n";
    return kExitData;
  }
  auto data = lgd::load_data_dir(data_dir);

  if (mode == "compare") {
    auto report = lgd::compare_modes(data.graph, data.corpora, data.mono, data.dev, config.run);
    lgd::write_compare_artifacts(data_dir, report);
    std::cout << lgd::render_compare_report(report);
    return kExitOk;
  }
  lgd::RunConfig run_config = config.run;
  run_config.mode = lgd::run_mode_from_string(mode);
  auto result = lgd::run(data.graph, data.corpora, data.mono, data.dev, run_config);
  lgd::write_run_artifacts(data_dir, result, run_config);
  std::cout << lgd::render_run_report(result, run_config);
  if (result.aborted) {
    std::cerr << "error: run aborted after " << result.reports.size()
              << " iteration(s): " << result.error << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_ingest(const std::string& src_file, const std::string& tgt_file,
               const std::string& src_lang, const std::string& tgt_lang,
               const std::string& data_dir) {
  auto src = lgd::read_lines(src_file);
  auto tgt = lgd::read_lines(tgt_file);
  if (src.size() != tgt.size()) {
    std::cerr << "error: line count mismatch: " << src_file << " has " << src.size() << ", "
              << tgt_file << " has " << tgt.size() << "\n";
    return kExitData;
  }
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i].empty() || tgt[i].empty()) {
      std::cerr << "error: empty sentence at line " << (i + 1) << " of "
                << (src[i].empty() ? src_file : tgt_file) << "\n";
      return kExitData;
    }
  }

  const fs::path dir = data_dir;
  auto graph = lgd::read_graph(dir / "graph.json");
  const lgd::Edge edge{src_lang, tgt_lang};
  if (!graph.has_language(src_lang)) throw lgd::UnknownLanguage("unknown language: " + src_lang);
  if (!graph.has_language(tgt_lang)) throw lgd::UnknownLanguage("unknown language: " + tgt_lang);

  lgd::ParallelCorpus corpus;
  if (fs::exists(dir / ("train." + src_lang + "-" + tgt_lang + ".src"))) {
    corpus = lgd::read_parallel_corpus(dir, edge);
  } else {
    corpus.src_lang = src_lang;
    corpus.tgt_lang = tgt_lang;
  }
  for (std::size_t i = 0; i < src.size(); ++i) {
    corpus.pairs.push_back(lgd::SentencePair{src[i], tgt[i], lgd::Provenance{}});
  }
  lgd::write_parallel_corpus(dir, corpus);

  const std::int64_t real_pairs = static_cast<std::int64_t>(corpus.count(lgd::ProvenanceKind::real));
  graph.add_edge(src_lang, tgt_lang, real_pairs);
  lgd::write_graph(dir / "graph.json", graph);
  std::cout << "ingested " << src.size() << " pairs into " << lgd::to_string(edge)
            << " (D(e) = " << real_pairs << ")\n";
  return kExitOk;
}

int cmd_eval(const std::string& model_path, const std::string& src_lang,
             const std::string& tgt_lang, const std::string& src_file,
             const std::string& ref_file) {
  auto model = lgd::load_model(model_path);
  auto sources = lgd::read_lines(src_file);
  auto references = lgd::read_lines(ref_file);
  auto hypotheses = lgd::translate(model, src_lang, tgt_lang, sources);
  auto score = lgd::bleu(hypotheses, references);
  std::cout << lgd::format_bleu(score) << "\n";
  return kExitOk;
}

int cmd_report(const std::string& out_dir, const std::string& mode) {
  const fs::path reports = fs::path(out_dir) / "reports" / mode;
  if (mode == "compare") {
    std::ifstream in(reports / "compare.json", std::ios::binary);
    if (!in) {
      std::cerr << "error: no compare report under " << reports << "\n";
      return kExitData;
    }
    std::cout << lgd::render_compare_json(nlohmann::json::parse(in));
    return kExitOk;
  }
  std::ifstream in(reports / "run.json", std::ios::binary);
  if (!in) {
    std::cerr << "error: no run report under " << reports << "\n";
    return kExitData;
  }
  std::cout << lgd::render_run_json(nlohmann::json::parse(in));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"language graph distillation toolkit"};
  app.require_subcommand(1);

  CommonFlags gen_flags;
  auto* gen = app.add_subcommand("gen", "generate a synthetic data directory from a config");
  gen->add_option("--config", gen_flags.config_path, "experiment config (JSON)")->required();
  gen->add_option("--seed", gen_flags.seed, "override the config seed");
  gen->add_option("--out", gen_flags.out, "override the output directory");

  CommonFlags run_flags;
  std::string run_mode = "graph";
  RunOverrides run_overrides;
  auto* run = app.add_subcommand("run", "run distillation on a generated data directory");
  run->add_option("--config", run_flags.config_path, "experiment config (JSON)")->required();
  run->add_option("--mode", run_mode, "initial|bt|forward|graph|compare")
      ->check(CLI::IsMember({"initial", "bt", "forward", "graph", "compare"}));
  run->add_option("--seed", run_flags.seed, "override the config seed");
  run->add_option("--out", run_flags.out, "override the data/output directory");
  run->add_option("--tau", run_overrides.tau, "convergence threshold (BLEU points)");
  run->add_option("--max-hops", run_overrides.max_hops, "maximum path hops H");
  run->add_option("--top-k", run_overrides.top_k, "paths per direction K");
  run->add_option("--edges-per-iter", run_overrides.edges_per_iteration,
                  "edges selected per iteration M");

  std::string ingest_src_file, ingest_tgt_file, ingest_src_lang, ingest_tgt_lang, ingest_dir;
  auto* ingest = app.add_subcommand("ingest", "register a line-aligned parallel corpus");
  ingest->add_option("--src-file", ingest_src_file, "source-side file")->required();
  ingest->add_option("--tgt-file", ingest_tgt_file, "target-side file")->required();
  ingest->add_option("--src-lang", ingest_src_lang, "source language code")->required();
  ingest->add_option("--tgt-lang", ingest_tgt_lang, "target language code")->required();
  ingest->add_option("--data", ingest_dir, "data directory")->required();

  std::string eval_model, eval_src_lang, eval_tgt_lang, eval_src_file, eval_ref_file;
  auto* eval = app.add_subcommand("eval", "translate a file and print corpus BLEU");
  eval->add_option("--model", eval_model, "model JSON")->required();
  eval->add_option("--src-lang", eval_src_lang, "source language code")->required();
  eval->add_option("--tgt-lang", eval_tgt_lang, "target language code")->required();
  eval->add_option("--src-file", eval_src_file, "sentences to translate")->required();
  eval->add_option("--ref-file", eval_ref_file, "reference translations")->required();

  std::string report_out = "out", report_mode = "graph";
  auto* report = app.add_subcommand("report", "re-render a stored report");
  report->add_option("--out", report_out, "data/output directory")->required();
  report->add_option("--mode", report_mode, "initial|bt|forward|graph|compare");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_flags);
    if (run->parsed()) return cmd_run(run_flags, run_mode, run_overrides);
    if (ingest->parsed()) {
      return cmd_ingest(ingest_src_file, ingest_tgt_file, ingest_src_lang, ingest_tgt_lang,
                        ingest_dir);
    }
    if (eval->parsed()) {
      return cmd_eval(eval_model, eval_src_lang, eval_tgt_lang, eval_src_file, eval_ref_file);
    }
    if (report->parsed()) return cmd_report(report_out, report_mode);
  } catch (const lgd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
