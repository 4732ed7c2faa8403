#include "lgd/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lgd/metrics.hpp"

namespace lgd {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open for reading: " + path.string());
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path.string());
  }
  for (const auto& line : lines) out << line << '\n';
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

namespace {

json parse_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open for reading: " + path.string());
  }
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    throw IoError("malformed JSON in " + path.string());
  }
  return j;
}

void dump_file(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path.string());
  }
  out << j.dump(2) << '\n';
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

}  // namespace

json graph_to_json(const LanguageGraph& graph) {
  json j;
  j["languages"] = std::vector<std::string>(graph.languages().begin(), graph.languages().end());
  json edges = json::array();
  for (const auto& [edge, count] : graph.edge_counts()) {
    edges.push_back({{"src", edge.src}, {"tgt", edge.tgt}, {"pairs", count}});
  }
  j["edges"] = std::move(edges);
  json mono = json::object();
  for (const auto& lang : graph.languages()) mono[lang] = graph.mono_count(lang);
  j["monolingual"] = std::move(mono);
  return j;
}

LanguageGraph graph_from_json(const json& j) {
  LanguageGraph graph;
  if (!j.contains("languages") || !j["languages"].is_array()) {
    throw InvalidConfig("graph.languages: expected an array of language codes");
  }
  for (const auto& code : j["languages"]) {
    graph.add_language(code.get<std::string>());
  }
  const json edges = j.value("edges", json::array());
  for (const auto& e : edges) {
    if (!e.contains("src") || !e.contains("tgt")) {
      throw InvalidConfig("graph.edges[]: each entry needs src and tgt");
    }
    graph.add_edge(e["src"].get<std::string>(), e["tgt"].get<std::string>(),
                   e.value("pairs", std::int64_t{0}));
  }
  const json mono = j.value("monolingual", json::object());
  for (const auto& [lang, count] : mono.items()) {
    graph.set_mono_count(lang, count.get<std::int64_t>());
  }
  return graph;
}

void write_graph(const fs::path& path, const LanguageGraph& graph) {
  dump_file(path, graph_to_json(graph));
}

LanguageGraph read_graph(const fs::path& path) { return graph_from_json(parse_file(path)); }

json world_to_json(const ConceptWorld& world) {
  const auto& c = world.config();
  json j;
  j["seed"] = world.seed();
  j["concept_count"] = c.concept_count;
  j["zipf_exponent"] = c.zipf_exponent;
  j["sentence_len"] = {c.sentence_len_min, c.sentence_len_max};
  j["languages"] = c.languages;
  json reorder = json::object();
  for (const auto& [lang, block] : c.reorder_block) reorder[lang] = block;
  j["reorder_block"] = std::move(reorder);
  return j;
}

void write_world_manifest(const fs::path& path, const ConceptWorld& world) {
  dump_file(path, world_to_json(world));
}

ConceptWorld read_world_manifest(const fs::path& path) {
  json j = parse_file(path);
  WorldConfig config;
  config.languages = j.at("languages").get<std::vector<std::string>>();
  config.concept_count = j.at("concept_count").get<int>();
  config.zipf_exponent = j.at("zipf_exponent").get<double>();
  config.sentence_len_min = j.at("sentence_len").at(0).get<int>();
  config.sentence_len_max = j.at("sentence_len").at(1).get<int>();
  const json reorder = j.value("reorder_block", json::object());
  for (const auto& [lang, block] : reorder.items()) {
    config.reorder_block[lang] = block.get<int>();
  }
  return ConceptWorld::generate(config, j.at("seed").get<std::uint64_t>());
}

json model_to_json(const MultilingualModel& model) {
  json directions = json::array();
  for (const auto& [dir, lexicon] : model.directions) {
    json entry;
    entry["src"] = dir.src;
    entry["tgt"] = dir.tgt;
    auto it = model.trained_on.find(dir);
    entry["trained_on"] = it == model.trained_on.end() ? 0.0 : it->second;
    json lex = json::object();
    for (const auto& [source, targets] : lexicon.entries()) {
      json options = json::array();
      for (const auto& [word, prob] : targets) options.push_back({word, prob});
      lex[source] = std::move(options);
    }
    entry["lexicon"] = std::move(lex);
    directions.push_back(std::move(entry));
  }
  return json{{"directions", std::move(directions)}};
}

MultilingualModel model_from_json(const json& j) {
  MultilingualModel model;
  for (const auto& entry : j.at("directions")) {
    Direction dir{entry.at("src").get<std::string>(), entry.at("tgt").get<std::string>()};
    Lexicon::Entries entries;
    for (const auto& [source, options] : entry.at("lexicon").items()) {
      auto& targets = entries[source];
      for (const auto& option : options) {
        targets.emplace_back(option.at(0).get<std::string>(), option.at(1).get<double>());
      }
    }
    model.directions[dir] = Lexicon(std::move(entries));
    model.trained_on[dir] = entry.value("trained_on", 0.0);
  }
  return model;
}

void save_model(const fs::path& path, const MultilingualModel& model) {
  dump_file(path, model_to_json(model));
}

MultilingualModel load_model(const fs::path& path) { return model_from_json(parse_file(path)); }

namespace {

std::string corpus_stem(const Edge& edge, const std::string& prefix) {
  return prefix + "." + edge.src + "-" + edge.tgt;
}

}  // namespace

void write_parallel_corpus(const fs::path& dir, const ParallelCorpus& corpus,
                           const std::string& prefix) {
  const Edge edge{corpus.src_lang, corpus.tgt_lang};
  const std::string stem = corpus_stem(edge, prefix);
  std::vector<std::string> src, tgt, prov;
  src.reserve(corpus.pairs.size());
  tgt.reserve(corpus.pairs.size());
  prov.reserve(corpus.pairs.size());
  for (const auto& pair : corpus.pairs) {
    src.push_back(pair.source);
    tgt.push_back(pair.target);
    prov.push_back(pair.provenance.tag());
  }
  write_lines(dir / (stem + ".src"), src);
  write_lines(dir / (stem + ".tgt"), tgt);
  write_lines(dir / (stem + ".prov"), prov);
}

ParallelCorpus read_parallel_corpus(const fs::path& dir, const Edge& edge,
                                    const std::string& prefix) {
  const std::string stem = corpus_stem(edge, prefix);
  ParallelCorpus corpus;
  corpus.src_lang = edge.src;
  corpus.tgt_lang = edge.tgt;
  auto src = read_lines(dir / (stem + ".src"));
  auto tgt = read_lines(dir / (stem + ".tgt"));
  if (src.size() != tgt.size()) {
    throw AlignmentError(static_cast<std::int64_t>(src.size()),
                         static_cast<std::int64_t>(tgt.size()));
  }
  std::vector<std::string> prov;
  if (fs::exists(dir / (stem + ".prov"))) {
    prov = read_lines(dir / (stem + ".prov"));
    if (prov.size() != src.size()) {
      throw AlignmentError(static_cast<std::int64_t>(prov.size()),
                           static_cast<std::int64_t>(src.size()));
    }
  }
  corpus.pairs.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    Provenance p = prov.empty() ? Provenance{} : Provenance::from_tag(prov[i]);
    corpus.pairs.push_back(SentencePair{std::move(src[i]), std::move(tgt[i]), std::move(p)});
  }
  return corpus;
}

namespace {

void write_multiparallel(const fs::path& dir, const std::string& prefix,
                         const MultiParallelSet& set) {
  std::vector<std::string> concept_lines;
  concept_lines.reserve(set.concepts.size());
  for (const auto& seq : set.concepts) {
    std::string line;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (i) line.push_back(' ');
      line += std::to_string(seq[i]);
    }
    concept_lines.push_back(std::move(line));
  }
  write_lines(dir / (prefix + ".concepts"), concept_lines);
  for (const auto& [lang, lines] : set.renderings) {
    write_lines(dir / (prefix + "." + lang), lines);
  }
}

MultiParallelSet read_multiparallel(const fs::path& dir, const std::string& prefix,
                                    const std::set<std::string>& languages) {
  MultiParallelSet set;
  for (const auto& line : read_lines(dir / (prefix + ".concepts"))) {
    std::vector<int> seq;
    std::istringstream iss(line);
    int value;
    while (iss >> value) seq.push_back(value);
    set.concepts.push_back(std::move(seq));
  }
  for (const auto& lang : languages) {
    auto lines = read_lines(dir / (prefix + "." + lang));
    if (lines.size() != set.concepts.size()) {
      throw AlignmentError(static_cast<std::int64_t>(lines.size()),
                           static_cast<std::int64_t>(set.concepts.size()));
    }
    set.renderings[lang] = std::move(lines);
  }
  return set;
}

}  // namespace

void write_data_dir(const fs::path& dir, const ConceptWorld& world, const LanguageGraph& graph,
                    const GeneratedData& data) {
  fs::create_directories(dir);
  write_world_manifest(dir / "world.json", world);
  write_graph(dir / "graph.json", graph);
  for (const auto& [edge, corpus] : data.train) {
    write_parallel_corpus(dir, corpus);
  }
  for (const auto& [lang, mono] : data.mono) {
    write_lines(dir / ("mono." + lang), mono.sentences);
  }
  write_multiparallel(dir, "dev", data.dev);
  write_multiparallel(dir, "test", data.test);
}

DataSet load_data_dir(const fs::path& dir) {
  DataSet data;
  data.graph = read_graph(dir / "graph.json");
  for (const auto& edge : data.graph.edges()) {
    data.corpora[edge] = read_parallel_corpus(dir, edge);
  }
  for (const auto& lang : data.graph.languages()) {
    MonoCorpus mono;
    mono.lang = lang;
    const auto path = dir / ("mono." + lang);
    if (fs::exists(path)) mono.sentences = read_lines(path);
    data.mono[lang] = std::move(mono);
  }
  data.dev = read_multiparallel(dir, "dev", data.graph.languages());
  data.test = read_multiparallel(dir, "test", data.graph.languages());
  return data;
}

std::string table_to_tsv(const AccuracyTable& table) {
  std::ostringstream out;
  out << "path\thops\tscore\titeration\n";
  char buf[32];
  for (const auto& [langs, score] : table.entries()) {
    TranslationPath path{langs, PathDirection::forward};
    std::snprintf(buf, sizeof(buf), "%.6f", score);
    out << path.to_string() << '\t' << path.hops() << '\t' << buf << '\t' << table.iteration()
        << '\n';
  }
  return out.str();
}

json table_to_json(const AccuracyTable& table) {
  json entries = json::array();
  for (const auto& [langs, score] : table.entries()) {
    TranslationPath path{langs, PathDirection::forward};
    entries.push_back({{"path", path.to_string()}, {"hops", path.hops()}, {"score", score}});
  }
  return json{{"iteration", table.iteration()}, {"entries", std::move(entries)}};
}

json run_config_to_json(const RunConfig& config) {
  return json{{"tau", config.tau},
              {"max_hops", config.max_hops},
              {"edges_per_iteration", config.edges_per_iteration},
              {"top_k", config.top_k},
              {"delta", config.delta},
              {"max_iterations", config.max_iterations},
              {"seed", config.seed},
              {"mode", to_string(config.mode)},
              {"budget", config.budget},
              {"aggregation",
               config.aggregation == PotentialAggregation::max ? "max" : "mean_top_k"},
              {"trainer",
               {{"em_iterations", config.trainer.em_iterations},
                {"upsample", config.trainer.upsample},
                {"real_weight", config.trainer.real_weight},
                {"pseudo_weight", config.trainer.pseudo_weight}}}};
}

RunConfig run_config_from_json(const json& j) {
  RunConfig config;
  config.tau = j.value("tau", config.tau);
  config.max_hops = j.value("max_hops", config.max_hops);
  config.edges_per_iteration = j.value("edges_per_iteration", config.edges_per_iteration);
  config.top_k = j.value("top_k", config.top_k);
  config.delta = j.value("delta", config.delta);
  config.max_iterations = j.value("max_iterations", config.max_iterations);
  config.seed = j.value("seed", config.seed);
  if (j.contains("mode")) config.mode = run_mode_from_string(j["mode"].get<std::string>());
  config.budget = j.value("budget", config.budget);
  if (j.contains("aggregation")) {
    const auto agg = j["aggregation"].get<std::string>();
    if (agg == "max") {
      config.aggregation = PotentialAggregation::max;
    } else if (agg == "mean_top_k") {
      config.aggregation = PotentialAggregation::mean_top_k;
    } else {
      throw InvalidConfig("run.aggregation: unknown value '" + agg + "'");
    }
  }
  if (j.contains("trainer")) {
    const auto& t = j["trainer"];
    config.trainer.em_iterations = t.value("em_iterations", config.trainer.em_iterations);
    config.trainer.upsample = t.value("upsample", config.trainer.upsample);
    config.trainer.real_weight = t.value("real_weight", config.trainer.real_weight);
    config.trainer.pseudo_weight = t.value("pseudo_weight", config.trainer.pseudo_weight);
  }
  return config;
}

namespace {

json edge_map_to_json(const std::map<Edge, double>& scores) {
  json j = json::object();
  for (const auto& [edge, score] : scores) j[to_string(edge)] = score;
  return j;
}

json selection_to_json(const SelectionRecord& record) {
  json forward = json::array();
  for (const auto& path : record.plan.forward_paths) forward.push_back(path.to_string());
  json backward = json::array();
  for (const auto& path : record.plan.backward_paths) backward.push_back(path.to_string());
  return json{{"edge", to_string(record.edge)}, {"potential", record.potential},
              {"before", record.before},        {"after", record.after},
              {"forward_paths", forward},       {"backward_paths", backward},
              {"budget", record.plan.budget}};
}

}  // namespace

json run_result_to_json(const RunResult& result, const RunConfig& config) {
  json iterations = json::array();
  for (const auto& report : result.reports) {
    json selected = json::array();
    for (const auto& record : report.selected) selected.push_back(selection_to_json(record));
    iterations.push_back(json{{"T", report.iteration},
                              {"selected", std::move(selected)},
                              {"before", edge_map_to_json(report.before)},
                              {"after", edge_map_to_json(report.after)},
                              {"sigma", report.sigma},
                              {"table_snapshot", edge_map_to_json(report.table_snapshot)}});
  }
  json j{{"mode", to_string(config.mode)},
         {"config", run_config_to_json(config)},
         {"initial_scores", edge_map_to_json(result.initial_scores)},
         {"stop_reason", result.stop_reason},
         {"devset_lines", result.devset_lines},
         {"iterations", std::move(iterations)}};
  if (result.aborted) j["error"] = result.error;
  return j;
}

std::string render_run_json(const json& j) {
  std::ostringstream out;
  char buf[160];
  const auto& config = j.at("config");
  out << "run mode=" << j.at("mode").get<std::string>()
      << " seed=" << config.at("seed").get<std::uint64_t>()
      << " tau=" << config.at("tau").get<double>() << "\n";
  out << "initial one-hop scores:\n";
  for (const auto& [edge, score] : j.at("initial_scores").items()) {
    std::snprintf(buf, sizeof(buf), "  %-18s %8.2f\n", edge.c_str(), score.get<double>());
    out << buf;
  }
  for (const auto& iteration : j.at("iterations")) {
    std::snprintf(buf, sizeof(buf), "T=%d\n", iteration.at("T").get<int>());
    out << buf;
    if (iteration.at("selected").empty()) {
      out << "  (no positive-potential edges)\n";
      continue;
    }
    std::snprintf(buf, sizeof(buf), "  %-18s %10s %9s %9s %9s\n", "pair", "potential", "before",
                  "after", "delta");
    out << buf;
    for (const auto& record : iteration.at("selected")) {
      const double before = record.at("before").get<double>();
      const double after = record.at("after").get<double>();
      std::snprintf(buf, sizeof(buf), "  %-18s %10.2f %9.2f %9.2f %+9.2f\n",
                    record.at("edge").get<std::string>().c_str(),
                    record.at("potential").get<double>(), before, after, after - before);
      out << buf;
    }
    std::snprintf(buf, sizeof(buf), "  sigma = %+.2f (tau = %.2f)\n",
                  iteration.at("sigma").get<double>(), config.at("tau").get<double>());
    out << buf;
  }
  out << "stop: " << j.at("stop_reason").get<std::string>() << "\n";
  return out.str();
}

std::string render_run_report(const RunResult& result, const RunConfig& config) {
  return render_run_json(run_result_to_json(result, config));
}

json compare_report_to_json(const CompareReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back(json{{"T", row.iteration},
                        {"pair", to_string(row.edge)},
                        {"initial", row.scores.initial},
                        {"bt", row.scores.bt},
                        {"forward", row.scores.forward},
                        {"graph", row.scores.graph}});
  }
  json finals = json::object();
  for (const auto& [edge, cell] : report.final_scores) {
    finals[to_string(edge)] = json{{"initial", cell.initial},
                                   {"bt", cell.bt},
                                   {"forward", cell.forward},
                                   {"graph", cell.graph}};
  }
  return json{{"config", run_config_to_json(report.config)},
              {"rows", std::move(rows)},
              {"final_scores", std::move(finals)}};
}

std::string render_compare_json(const json& j) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-3s %-18s %9s %9s %9s %9s\n", "T", "pair", "Initial", "+BT",
                "+Forward", "+Graph");
  out << buf;
  int current = -1;
  std::map<Edge, double> initial, bt, fwd, graph;
  auto flush_average = [&]() {
    if (initial.empty()) return;
    double base = 0.0;
    for (const auto& [edge, score] : initial) base += score;
    base /= static_cast<double>(initial.size());
    std::snprintf(buf, sizeof(buf), "%-3s %-18s %9.2f %+9.2f %+9.2f %+9.2f\n", "", "Av.", base,
                  average_improvement(initial, bt), average_improvement(initial, fwd),
                  average_improvement(initial, graph));
    out << buf;
    initial.clear();
    bt.clear();
    fwd.clear();
    graph.clear();
  };
  for (const auto& row : j.at("rows")) {
    const int iteration = row.at("T").get<int>();
    if (iteration != current) {
      flush_average();
      current = iteration;
    }
    const Edge edge = edge_from_string(row.at("pair").get<std::string>());
    const double v_initial = row.at("initial").get<double>();
    const double v_bt = row.at("bt").get<double>();
    const double v_forward = row.at("forward").get<double>();
    const double v_graph = row.at("graph").get<double>();
    std::snprintf(buf, sizeof(buf), "%-3d %-18s %9.2f %9.2f %9.2f %9.2f\n", iteration,
                  to_string(edge).c_str(), v_initial, v_bt, v_forward, v_graph);
    out << buf;
    initial[edge] = v_initial;
    bt[edge] = v_bt;
    fwd[edge] = v_forward;
    graph[edge] = v_graph;
  }
  flush_average();
  return out.str();
}

std::string render_compare_report(const CompareReport& report) {
  return render_compare_json(compare_report_to_json(report));
}

void write_run_artifacts(const fs::path& out_dir, const RunResult& result,
                         const RunConfig& config) {
  const std::string mode = to_string(config.mode);
  const fs::path reports = out_dir / "reports" / mode;
  fs::create_directories(reports);
  dump_file(reports / "run.json", run_result_to_json(result, config));
  {
    std::ofstream out(reports / "summary.txt", std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + (reports / "summary.txt").string());
    out << render_run_report(result, config);
  }
  for (const auto& report : result.reports) {
    const std::string stem = "table_T" + std::to_string(report.iteration);
    std::ofstream tsv(reports / (stem + ".tsv"), std::ios::binary);
    if (!tsv) throw IoError("cannot open for writing: " + (reports / (stem + ".tsv")).string());
    tsv << table_to_tsv(report.table);
    dump_file(reports / (stem + ".json"), table_to_json(report.table));
  }
  const fs::path models = out_dir / "models";
  fs::create_directories(models);
  save_model(models / (mode + ".json"), result.model);

  const fs::path augmented = out_dir / "augmented" / mode;
  for (const auto& [edge, corpus] : result.corpora) {
    if (corpus.count(ProvenanceKind::real) == corpus.size()) continue;
    fs::create_directories(augmented);
    write_parallel_corpus(augmented, corpus);
  }
}

void write_compare_artifacts(const fs::path& out_dir, const CompareReport& report) {
  const fs::path reports = out_dir / "reports" / "compare";
  fs::create_directories(reports);
  dump_file(reports / "compare.json", compare_report_to_json(report));
  std::ofstream out(reports / "compare.txt", std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + (reports / "compare.txt").string());
  out << render_compare_report(report);
}

}  // namespace lgd
