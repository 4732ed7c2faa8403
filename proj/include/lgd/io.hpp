#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lgd/orchestrator.hpp"

namespace lgd {

// --- line-oriented corpus files -----------------------------------------
// One sentence per line, UTF-8, newline-terminated.

std::vector<std::string> read_lines(const std::filesystem::path& path);
void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines);

// --- graph spec ----------------------------------------------------------
// {"languages": [...], "edges": [{"src","tgt","pairs"}], "monolingual": {}}

nlohmann::json graph_to_json(const LanguageGraph& graph);
LanguageGraph graph_from_json(const nlohmann::json& j);
void write_graph(const std::filesystem::path& path, const LanguageGraph& graph);
LanguageGraph read_graph(const std::filesystem::path& path);

// --- world manifest --------------------------------------------------------

nlohmann::json world_to_json(const ConceptWorld& world);
void write_world_manifest(const std::filesystem::path& path, const ConceptWorld& world);
ConceptWorld read_world_manifest(const std::filesystem::path& path);

// --- model ----------------------------------------------------------------

nlohmann::json model_to_json(const MultilingualModel& model);
MultilingualModel model_from_json(const nlohmann::json& j);
void save_model(const std::filesystem::path& path, const MultilingualModel& model);
MultilingualModel load_model(const std::filesystem::path& path);

// --- data directory ---------------------------------------------------------
// graph.json, world.json, train.<src>-<tgt>.{src,tgt,prov}, mono.<lang>,
// {dev,test}.<lang> plus {dev,test}.concepts.

struct DataSet {
  LanguageGraph graph;
  std::map<Edge, ParallelCorpus> corpora;
  std::map<std::string, MonoCorpus> mono;
  MultiParallelSet dev;
  MultiParallelSet test;
};

void write_parallel_corpus(const std::filesystem::path& dir, const ParallelCorpus& corpus,
                           const std::string& prefix = "train");
ParallelCorpus read_parallel_corpus(const std::filesystem::path& dir, const Edge& edge,
                                    const std::string& prefix = "train");

void write_data_dir(const std::filesystem::path& dir, const ConceptWorld& world,
                    const LanguageGraph& graph, const GeneratedData& data);
DataSet load_data_dir(const std::filesystem::path& dir);

// --- accuracy table export ---------------------------------------------------

// TSV: path (langs joined by "->"), hops, score, iteration.
std::string table_to_tsv(const AccuracyTable& table);
nlohmann::json table_to_json(const AccuracyTable& table);

// --- run artifacts ---------------------------------------------------------

nlohmann::json run_config_to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& j);

nlohmann::json run_result_to_json(const RunResult& result, const RunConfig& config);
std::string render_run_report(const RunResult& result, const RunConfig& config);
// Renders the same aligned table straight from a persisted run.json.
std::string render_run_json(const nlohmann::json& j);

nlohmann::json compare_report_to_json(const CompareReport& report);
std::string render_compare_report(const CompareReport& report);
std::string render_compare_json(const nlohmann::json& j);

// Writes reports/<mode>/{run.json,summary.txt,table_T<k>.{tsv,json}},
// models/<mode>.json and augmented/<mode>/ corpora for edges that gained
// pseudo pairs. Report files contain no timing, so identical runs write
// identical bytes.
void write_run_artifacts(const std::filesystem::path& out_dir, const RunResult& result,
                         const RunConfig& config);
void write_compare_artifacts(const std::filesystem::path& out_dir, const CompareReport& report);

}  // namespace lgd
