#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lgd/distillation.hpp"
#include "lgd/pathtable.hpp"
#include "lgd/synthworld.hpp"
#include "lgd/translator.hpp"

namespace lgd {

// Which flavor of pseudo data each iteration generates. `initial` trains
// the base model and never iterates; `bt` keeps only 1-hop back-translation;
// `forward` keeps only forward paths; `graph` keeps both.
enum class RunMode { initial, bt, forward, graph };

std::string to_string(RunMode mode);
RunMode run_mode_from_string(const std::string& s);

struct RunConfig {
  double tau = 0.1;             // convergence threshold on sigma (BLEU points)
  int max_hops = 2;             // H
  int edges_per_iteration = 3;  // M
  int top_k = 2;                // K paths per direction
  double delta = 0.0;           // path quality slack
  int max_iterations = 10;      // safety cap
  std::uint64_t seed = 0;
  RunMode mode = RunMode::graph;
  std::size_t budget = 2000;  // pseudo pairs per path
  PotentialAggregation aggregation = PotentialAggregation::max;
  TrainerConfig trainer;

  void validate() const;
};

struct SelectionRecord {
  Edge edge;
  double potential = 0.0;
  DistillationPlan plan;
  double before = 0.0;
  double after = 0.0;
};

struct IterationReport {
  int iteration = 0;  // T, 1-based
  std::vector<SelectionRecord> selected;
  std::map<Edge, double> before;
  std::map<Edge, double> after;
  double sigma = 0.0;
  std::map<Edge, double> table_snapshot;  // 1-hop weights at iteration start
  AccuracyTable table;                    // full table built this iteration
  // Measured duration; kept off persisted reports so identical seeds write
  // identical bytes.
  double wall_time_ms = 0.0;
};

// Mutable loop state. Corpora grow monotonically as pseudo pairs are
// assembled in; the model is retrained per affected direction.
struct RunState {
  LanguageGraph graph;
  std::map<Edge, ParallelCorpus> corpora;
  std::map<std::string, MonoCorpus> mono;
  MultiParallelSet devset;
  RunConfig config;
  MultilingualModel model;
  int iteration = 0;
  std::vector<IterationReport> reports;
  bool stopped = false;
  std::string stop_reason;
};

struct RunResult {
  MultilingualModel model;
  std::vector<IterationReport> reports;
  std::map<Edge, ParallelCorpus> corpora;
  std::map<Edge, double> initial_scores;  // 1-hop weights of the base model
  std::string stop_reason;
  std::size_t devset_lines = 0;  // all paths are scored on this shared dev set
  bool aborted = false;          // an iteration failed; reports up to it are kept
  std::string error;
};

// Trains the base model and captures its 1-hop weights.
RunState init_run_state(const LanguageGraph& graph, const std::map<Edge, ParallelCorpus>& corpora,
                        const std::map<std::string, MonoCorpus>& mono,
                        const MultiParallelSet& devset, const RunConfig& config);

// One loop body: build the accuracy table, select edges, distill, retrain
// affected directions, re-evaluate. Returns sigma (0 when nothing was
// selected) and appends an IterationReport.
double iteration_step(RunState& state);

// Steps once unless already stopped, then applies the stopping rule:
// stop iff selection was empty, sigma <= tau, or T reached max_iterations.
// Returns true when a step was taken.
bool advance(RunState& state);

// Full loop per the configured mode. `initial` returns after base training.
RunResult run(const LanguageGraph& graph, const std::map<Edge, ParallelCorpus>& corpora,
              const std::map<std::string, MonoCorpus>& mono, const MultiParallelSet& devset,
              const RunConfig& config);

struct CompareCell {
  double initial = 0.0;
  double bt = 0.0;
  double forward = 0.0;
  double graph = 0.0;
};

struct CompareRow {
  int iteration = 0;
  Edge edge;
  CompareCell scores;
};

// Four runs from an identical base model and seed. Rows follow the graph
// run's per-iteration selections; each column reports that mode's own
// model measured on the row's edge after the same number of iterations.
struct CompareReport {
  RunConfig config;
  std::vector<CompareRow> rows;
  std::map<Edge, CompareCell> final_scores;  // after all iterations, every 1-hop edge
};

CompareReport compare_modes(const LanguageGraph& graph,
                            const std::map<Edge, ParallelCorpus>& corpora,
                            const std::map<std::string, MonoCorpus>& mono,
                            const MultiParallelSet& devset, const RunConfig& config);

}  // namespace lgd
