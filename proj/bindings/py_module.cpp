#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "lgd/config.hpp"
#include "lgd/distillation.hpp"
#include "lgd/graph.hpp"
#include "lgd/io.hpp"
#include "lgd/metrics.hpp"
#include "lgd/orchestrator.hpp"
#include "lgd/pathtable.hpp"
#include "lgd/synthworld.hpp"
#include "lgd/translator.hpp"

namespace py = pybind11;
using namespace lgd;

namespace {

std::map<std::string, double> entries_by_path(const AccuracyTable& table) {
  std::map<std::string, double> out;
  for (const auto& [langs, score] : table.entries()) {
    out[TranslationPath{langs, PathDirection::forward}.to_string()] = score;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "language graph distillation core";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<DuplicateLanguage>(m, "DuplicateLanguage", base);
  py::register_exception<InvalidCode>(m, "InvalidCode", base);
  py::register_exception<UnknownLanguage>(m, "UnknownLanguage", base);
  py::register_exception<SelfLoop>(m, "SelfLoop", base);
  py::register_exception<InvalidGraph>(m, "InvalidGraph", base);
  py::register_exception<InvalidConfig>(m, "InvalidConfig", base);
  py::register_exception<UnknownConcept>(m, "UnknownConcept", base);
  py::register_exception<EmptyTrainingSet>(m, "EmptyTrainingSet", base);
  py::register_exception<UntrainedDirection>(m, "UntrainedDirection", base);
  py::register_exception<AlignmentError>(m, "AlignmentError", base);
  py::register_exception<EmptyInput>(m, "EmptyInput", base);
  py::register_exception<MissingEntry>(m, "MissingEntry", base);
  py::register_exception<IoError>(m, "IoError", base);

  py::class_<Edge>(m, "Edge")
      .def(py::init<std::string, std::string>(), py::arg("src"), py::arg("tgt"))
      .def_readwrite("src", &Edge::src)
      .def_readwrite("tgt", &Edge::tgt)
      .def("__repr__", [](const Edge& e) { return "Edge(" + to_string(e) + ")"; })
      .def("__str__", [](const Edge& e) { return to_string(e); })
      .def("__eq__", [](const Edge& a, const Edge& b) { return a == b; })
      .def("__lt__", [](const Edge& a, const Edge& b) { return a < b; })
      .def("__hash__",
           [](const Edge& e) { return py::hash(py::make_tuple(e.src, e.tgt)); });

  py::class_<LanguageGraph>(m, "LanguageGraph")
      .def(py::init<>())
      .def("add_language", &LanguageGraph::add_language, py::arg("code"))
      .def("add_edge", &LanguageGraph::add_edge, py::arg("src"), py::arg("tgt"),
           py::arg("pairs") = 0)
      .def("remove_edge", &LanguageGraph::remove_edge, py::arg("src"), py::arg("tgt"))
      .def("set_mono_count", &LanguageGraph::set_mono_count, py::arg("code"), py::arg("count"))
      .def("has_language", &LanguageGraph::has_language)
      .def("has_edge", &LanguageGraph::has_edge)
      .def("pair_count", &LanguageGraph::pair_count)
      .def("mono_count", &LanguageGraph::mono_count)
      .def("bilingual_volume", &LanguageGraph::bilingual_volume, py::arg("code"))
      .def("languages",
           [](const LanguageGraph& g) {
             return std::vector<std::string>(g.languages().begin(), g.languages().end());
           })
      .def("edges", &LanguageGraph::edges)
      .def("validate", &LanguageGraph::validate);

  m.def("objective", [](const std::map<Edge, double>& scores) {
    EdgeWeightMap weights;
    for (const auto& [edge, score] : scores) weights.set(edge, score);
    return objective(weights);
  });

  py::class_<WorldConfig>(m, "WorldConfig")
      .def(py::init<>())
      .def_readwrite("languages", &WorldConfig::languages)
      .def_readwrite("concept_count", &WorldConfig::concept_count)
      .def_readwrite("zipf_exponent", &WorldConfig::zipf_exponent)
      .def_readwrite("sentence_len_min", &WorldConfig::sentence_len_min)
      .def_readwrite("sentence_len_max", &WorldConfig::sentence_len_max)
      .def_readwrite("reorder_block", &WorldConfig::reorder_block);

  py::class_<ConceptWorld>(m, "ConceptWorld")
      .def_static("generate", &ConceptWorld::generate, py::arg("config"), py::arg("seed"))
      .def("render",
           [](const ConceptWorld& w, const std::vector<int>& concepts, const std::string& lang) {
             return w.render(concepts, lang);
           })
      .def("invert", &ConceptWorld::invert, py::arg("sentence"), py::arg("lang"))
      .def("lexicon", &ConceptWorld::lexicon, py::arg("lang"))
      .def_property_readonly("seed", &ConceptWorld::seed);

  py::class_<Provenance>(m, "Provenance")
      .def_property_readonly("tag", &Provenance::tag);

  py::class_<SentencePair>(m, "SentencePair")
      .def_readonly("source", &SentencePair::source)
      .def_readonly("target", &SentencePair::target)
      .def_readonly("provenance", &SentencePair::provenance);

  py::class_<ParallelCorpus>(m, "ParallelCorpus")
      .def(py::init<>())
      .def_readwrite("src_lang", &ParallelCorpus::src_lang)
      .def_readwrite("tgt_lang", &ParallelCorpus::tgt_lang)
      .def_readonly("pairs", &ParallelCorpus::pairs)
      .def("add_pair",
           [](ParallelCorpus& c, const std::string& source, const std::string& target) {
             c.pairs.push_back(SentencePair{source, target, Provenance{}});
           })
      .def("__len__", &ParallelCorpus::size);

  py::class_<MonoCorpus>(m, "MonoCorpus")
      .def(py::init<>())
      .def_readwrite("lang", &MonoCorpus::lang)
      .def_readwrite("sentences", &MonoCorpus::sentences)
      .def("__len__", &MonoCorpus::size);

  py::class_<MultiParallelSet>(m, "MultiParallelSet")
      .def_readonly("concepts", &MultiParallelSet::concepts)
      .def_readonly("renderings", &MultiParallelSet::renderings)
      .def("lines", &MultiParallelSet::lines, py::arg("lang"))
      .def("__len__", &MultiParallelSet::size);

  py::class_<GeneratedData>(m, "GeneratedData")
      .def_readonly("train", &GeneratedData::train)
      .def_readonly("mono", &GeneratedData::mono)
      .def_readonly("dev", &GeneratedData::dev)
      .def_readonly("test", &GeneratedData::test);

  m.def("generate_corpora", &generate_corpora, py::arg("world"), py::arg("graph"),
        py::arg("dev_size"), py::arg("test_size"), py::arg("seed"));

  py::class_<Lexicon>(m, "Lexicon")
      .def("entries", &Lexicon::entries)
      .def("argmax",
           [](const Lexicon& lex, const std::string& word) -> std::optional<std::string> {
             const std::string* t = lex.argmax(word);
             if (!t) return std::nullopt;
             return *t;
           })
      .def("__len__", &Lexicon::source_vocab_size);

  py::class_<TrainerConfig>(m, "TrainerConfig")
      .def(py::init<>())
      .def_readwrite("em_iterations", &TrainerConfig::em_iterations)
      .def_readwrite("upsample", &TrainerConfig::upsample)
      .def_readwrite("real_weight", &TrainerConfig::real_weight)
      .def_readwrite("pseudo_weight", &TrainerConfig::pseudo_weight);

  py::class_<WeightedPair>(m, "WeightedPair")
      .def(py::init<std::string, std::string, double>(), py::arg("source"), py::arg("target"),
           py::arg("weight") = 1.0);

  m.def("ibm1_em", [](const std::vector<WeightedPair>& pairs, int iterations) {
    return ibm1_em(pairs, iterations);
  });

  py::class_<MultilingualModel>(m, "MultilingualModel")
      .def(py::init<>())
      .def("has_direction", &MultilingualModel::has_direction)
      .def("lexicon", &MultilingualModel::lexicon, py::return_value_policy::reference_internal)
      .def_readonly("trained_on", &MultilingualModel::trained_on)
      .def("direction_keys", [](const MultilingualModel& model) {
        std::vector<Edge> keys;
        for (const auto& [dir, lex] : model.directions) keys.push_back(dir);
        return keys;
      });

  m.def("train_multilingual", &train_multilingual, py::arg("corpora"), py::arg("config"));
  m.def(
      "translate",
      [](const MultilingualModel& model, const std::string& src, const std::string& tgt,
         const std::vector<std::string>& sentences) { return translate(model, src, tgt, sentences); },
      py::arg("model"), py::arg("src_lang"), py::arg("tgt_lang"), py::arg("sentences"));
  m.def(
      "pipeline_translate",
      [](const MultilingualModel& model, const std::vector<std::string>& langs,
         const std::vector<std::string>& sentences) {
        return pipeline_translate(model, langs, sentences);
      },
      py::arg("model"), py::arg("path_langs"), py::arg("sentences"));

  py::class_<BleuScore>(m, "BleuScore")
      .def_readonly("score", &BleuScore::score)
      .def_readonly("precisions", &BleuScore::precisions)
      .def_readonly("brevity_penalty", &BleuScore::brevity_penalty)
      .def_readonly("hyp_len", &BleuScore::hyp_len)
      .def_readonly("ref_len", &BleuScore::ref_len)
      .def("__repr__", [](const BleuScore& s) { return format_bleu(s); });

  m.def("bleu", &bleu, py::arg("hypotheses"), py::arg("references"));
  m.def("average_improvement", &average_improvement, py::arg("before"), py::arg("after"));

  py::enum_<PathDirection>(m, "PathDirection")
      .value("forward", PathDirection::forward)
      .value("backward", PathDirection::backward);

  py::class_<TranslationPath>(m, "TranslationPath")
      .def(py::init([](std::vector<std::string> langs, PathDirection direction) {
             return TranslationPath{std::move(langs), direction};
           }),
           py::arg("langs"), py::arg("direction") = PathDirection::forward)
      .def_readonly("langs", &TranslationPath::langs)
      .def_readonly("direction", &TranslationPath::direction)
      .def_property_readonly("hops", &TranslationPath::hops)
      .def("__repr__", [](const TranslationPath& p) { return p.to_string(); })
      .def("__eq__",
           [](const TranslationPath& a, const TranslationPath& b) { return a == b; })
      .def("__hash__",
           [](const TranslationPath& p) { return py::hash(py::cast(p.to_string())); });

  m.def("enumerate_paths", &enumerate_paths, py::arg("graph"), py::arg("src"), py::arg("tgt"),
        py::arg("max_hops"));

  py::class_<AccuracyTable>(m, "AccuracyTable")
      .def(py::init<int>(), py::arg("iteration") = 0)
      .def("insert", &AccuracyTable::insert, py::arg("path"), py::arg("score"))
      .def("score", &AccuracyTable::score, py::arg("langs"))
      .def("direct_score", &AccuracyTable::direct_score, py::arg("edge"))
      .def("entries", &entries_by_path)
      .def("direct_edges", &AccuracyTable::direct_edges)
      .def_property_readonly("iteration", &AccuracyTable::iteration)
      .def("__len__", &AccuracyTable::size);

  m.def(
      "evaluate_path",
      [](const MultilingualModel& model, const TranslationPath& path,
         const MultiParallelSet& devset) { return evaluate_path(model, path, devset); },
      py::arg("model"), py::arg("path"), py::arg("devset"));
  m.def(
      "build_accuracy_table",
      [](const LanguageGraph& graph, const MultilingualModel& model,
         const MultiParallelSet& devset, int max_hops, int iteration) {
        return build_accuracy_table(graph, model, devset, max_hops, iteration);
      },
      py::arg("graph"), py::arg("model"), py::arg("devset"), py::arg("max_hops"),
      py::arg("iteration") = 0);

  py::enum_<PotentialAggregation>(m, "PotentialAggregation")
      .value("max", PotentialAggregation::max)
      .value("mean_top_k", PotentialAggregation::mean_top_k);

  py::class_<PotentialScore>(m, "PotentialScore")
      .def_readonly("edge", &PotentialScore::edge)
      .def_readonly("direct", &PotentialScore::direct)
      .def_readonly("best_path", &PotentialScore::best_path)
      .def_readonly("best_path_score", &PotentialScore::best_path_score)
      .def_readonly("potential", &PotentialScore::potential)
      .def("selectable", &PotentialScore::selectable);

  m.def("potential", &potential, py::arg("table"), py::arg("edge"), py::arg("max_hops"),
        py::arg("aggregation") = PotentialAggregation::max, py::arg("aggregation_k") = 2);
  m.def("select_edges", &select_edges, py::arg("table"), py::arg("edges_per_iteration"),
        py::arg("max_hops"), py::arg("aggregation") = PotentialAggregation::max,
        py::arg("aggregation_k") = 2);

  py::class_<DistillationPlan>(m, "DistillationPlan")
      .def_readonly("edge", &DistillationPlan::edge)
      .def_readonly("forward_paths", &DistillationPlan::forward_paths)
      .def_readonly("backward_paths", &DistillationPlan::backward_paths)
      .def_readwrite("budget", &DistillationPlan::budget);

  m.def("select_paths", &select_paths, py::arg("table"), py::arg("edge"), py::arg("top_k"),
        py::arg("delta"), py::arg("max_hops"), py::arg("budget") = 2000);
  m.def("forward_distill", &forward_distill, py::arg("plan"), py::arg("model"),
        py::arg("sources"));
  m.def("backward_distill", &backward_distill, py::arg("plan"), py::arg("model"),
        py::arg("targets"));
  m.def("assemble_training_set", &assemble_training_set, py::arg("real"), py::arg("pseudo"));

  py::enum_<RunMode>(m, "RunMode")
      .value("initial", RunMode::initial)
      .value("bt", RunMode::bt)
      .value("forward", RunMode::forward)
      .value("graph", RunMode::graph);

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("tau", &RunConfig::tau)
      .def_readwrite("max_hops", &RunConfig::max_hops)
      .def_readwrite("edges_per_iteration", &RunConfig::edges_per_iteration)
      .def_readwrite("top_k", &RunConfig::top_k)
      .def_readwrite("delta", &RunConfig::delta)
      .def_readwrite("max_iterations", &RunConfig::max_iterations)
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("mode", &RunConfig::mode)
      .def_readwrite("budget", &RunConfig::budget)
      .def_readwrite("trainer", &RunConfig::trainer);

  py::class_<SelectionRecord>(m, "SelectionRecord")
      .def_readonly("edge", &SelectionRecord::edge)
      .def_readonly("potential", &SelectionRecord::potential)
      .def_readonly("plan", &SelectionRecord::plan)
      .def_readonly("before", &SelectionRecord::before)
      .def_readonly("after", &SelectionRecord::after);

  py::class_<IterationReport>(m, "IterationReport")
      .def_readonly("iteration", &IterationReport::iteration)
      .def_readonly("selected", &IterationReport::selected)
      .def_readonly("before", &IterationReport::before)
      .def_readonly("after", &IterationReport::after)
      .def_readonly("sigma", &IterationReport::sigma)
      .def_readonly("table_snapshot", &IterationReport::table_snapshot)
      .def_readonly("wall_time_ms", &IterationReport::wall_time_ms);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("model", &RunResult::model)
      .def_readonly("reports", &RunResult::reports)
      .def_readonly("corpora", &RunResult::corpora)
      .def_readonly("initial_scores", &RunResult::initial_scores)
      .def_readonly("stop_reason", &RunResult::stop_reason);

  m.def("run", &run, py::arg("graph"), py::arg("corpora"), py::arg("mono"), py::arg("devset"),
        py::arg("config"));

  py::class_<CompareCell>(m, "CompareCell")
      .def_readonly("initial", &CompareCell::initial)
      .def_readonly("bt", &CompareCell::bt)
      .def_readonly("forward", &CompareCell::forward)
      .def_readonly("graph", &CompareCell::graph);

  py::class_<CompareRow>(m, "CompareRow")
      .def_readonly("iteration", &CompareRow::iteration)
      .def_readonly("edge", &CompareRow::edge)
      .def_readonly("scores", &CompareRow::scores);

  py::class_<CompareReport>(m, "CompareReport")
      .def_readonly("rows", &CompareReport::rows)
      .def_readonly("final_scores", &CompareReport::final_scores);

  m.def("compare_modes", &compare_modes, py::arg("graph"), py::arg("corpora"), py::arg("mono"),
        py::arg("devset"), py::arg("config"));

  m.def("save_model", &save_model, py::arg("path"), py::arg("model"));
  m.def("load_model", &load_model, py::arg("path"));
  m.def("write_graph", &write_graph, py::arg("path"), py::arg("graph"));
  m.def("read_graph", &read_graph, py::arg("path"));

  m.attr("__version__") = "0.1.0";
}
