#include "lgd/orchestrator.hpp"

#include <algorithm>
#include <chrono>

#include "lgd/metrics.hpp"

namespace lgd {

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::initial:
      return "initial";
    case RunMode::bt:
      return "bt";
    case RunMode::forward:
      return "forward";
    case RunMode::graph:
      return "graph";
  }
  return "graph";
}

RunMode run_mode_from_string(const std::string& s) {
  if (s == "initial") return RunMode::initial;
  if (s == "bt") return RunMode::bt;
  if (s == "forward") return RunMode::forward;
  if (s == "graph") return RunMode::graph;
  throw InvalidConfig("unknown run mode: '" + s + "' (want initial|bt|forward|graph|compare)");
}

void RunConfig::validate() const {
  if (tau < 0.0) throw InvalidConfig("run.tau must be >= 0");
  if (max_hops < 1) throw InvalidConfig("run.max_hops must be >= 1");
  if (edges_per_iteration < 1) throw InvalidConfig("run.edges_per_iteration must be >= 1");
  if (top_k < 1) throw InvalidConfig("run.top_k must be >= 1");
  if (delta < 0.0) throw InvalidConfig("run.delta must be >= 0");
  if (max_iterations < 1) throw InvalidConfig("run.max_iterations must be >= 1");
  if (budget < 1) throw InvalidConfig("run.budget must be >= 1");
  trainer.validate();
}

namespace {

double evaluate_edge(const MultilingualModel& model, const Edge& edge,
                     const MultiParallelSet& devset) {
  return evaluate_path(model, TranslationPath{{edge.src, edge.tgt}, PathDirection::forward},
                       devset);
}

// Restricts a full plan to what the mode is allowed to distill with.
void apply_mode(DistillationPlan& plan, RunMode mode) {
  switch (mode) {
    case RunMode::graph:
      break;
    case RunMode::forward:
      plan.backward_paths.clear();
      break;
    case RunMode::bt: {
      plan.forward_paths.clear();
      const std::vector<std::string> reverse{plan.edge.tgt, plan.edge.src};
      std::erase_if(plan.backward_paths,
                    [&](const TranslationPath& p) { return p.langs != reverse; });
      break;
    }
    case RunMode::initial:
      plan.forward_paths.clear();
      plan.backward_paths.clear();
      break;
  }
}

// Source pool for forward distillation: monolingual sentences first, then
// the real source sides of the edge's corpus.
std::vector<std::string> forward_pool(const RunState& state, const Edge& edge) {
  std::vector<std::string> pool;
  if (auto it = state.mono.find(edge.src); it != state.mono.end()) {
    pool = it->second.sentences;
  }
  if (auto it = state.corpora.find(edge); it != state.corpora.end()) {
    for (const auto& pair : it->second.pairs) {
      if (pair.provenance.kind == ProvenanceKind::real) pool.push_back(pair.source);
    }
  }
  return pool;
}

std::vector<std::string> backward_pool(const RunState& state, const Edge& edge) {
  std::vector<std::string> pool;
  if (auto it = state.mono.find(edge.tgt); it != state.mono.end()) {
    pool = it->second.sentences;
  }
  if (auto it = state.corpora.find(edge); it != state.corpora.end()) {
    for (const auto& pair : it->second.pairs) {
      if (pair.provenance.kind == ProvenanceKind::real) pool.push_back(pair.target);
    }
  }
  return pool;
}

}  // namespace

RunState init_run_state(const LanguageGraph& graph, const std::map<Edge, ParallelCorpus>& corpora,
                        const std::map<std::string, MonoCorpus>& mono,
                        const MultiParallelSet& devset, const RunConfig& config) {
  config.validate();
  graph.validate();
  for (const auto& lang : graph.languages()) {
    if (!devset.has_language(lang)) {
      throw AlignmentError("dev set is missing graph language: " + lang);
    }
  }
  RunState state;
  state.graph = graph;
  state.corpora = corpora;
  state.mono = mono;
  state.devset = devset;
  state.config = config;
  state.model = train_multilingual(corpora, config.trainer);
  return state;
}

double iteration_step(RunState& state) {
  const auto start = std::chrono::steady_clock::now();
  state.iteration += 1;

  IterationReport report;
  report.iteration = state.iteration;
  report.table = build_accuracy_table(state.graph, state.model, state.devset,
                                      state.config.max_hops, state.iteration);
  report.table_snapshot = report.table.one_hop_weights().scores();

  const auto selected_edges =
      select_edges(report.table, state.config.edges_per_iteration, state.config.max_hops,
                   state.config.aggregation, state.config.top_k);

  std::vector<Direction> retrain;
  for (const auto& edge : selected_edges) {
    SelectionRecord record;
    record.edge = edge;
    record.potential = potential(report.table, edge, state.config.max_hops,
                                 state.config.aggregation, state.config.top_k)
                           .potential;
    record.before = *report.table.direct_score(edge);

    DistillationPlan plan = select_paths(report.table, edge, state.config.top_k,
                                         state.config.delta, state.config.max_hops,
                                         state.config.budget);
    apply_mode(plan, state.config.mode);
    record.plan = plan;

    auto pseudo_forward = forward_distill(plan, state.model, forward_pool(state, edge));
    auto pseudo_backward = backward_distill(plan, state.model, backward_pool(state, edge));
    const auto& real = state.corpora[edge];
    auto assembled = assemble_training_set(real, {pseudo_forward, pseudo_backward});
    if (assembled.size() > real.size()) {
      state.corpora[edge] = std::move(assembled);
      retrain.push_back(edge);
    }
    report.before[edge] = record.before;
    report.selected.push_back(std::move(record));
  }

  if (!retrain.empty()) {
    retrain_directions(state.model, state.corpora, retrain, state.config.trainer);
  }

  for (auto& record : report.selected) {
    record.after = evaluate_edge(state.model, record.edge, state.devset);
    report.after[record.edge] = record.after;
  }
  report.sigma = report.selected.empty() ? 0.0 : average_improvement(report.before, report.after);

  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const double sigma = report.sigma;
  state.reports.push_back(std::move(report));
  return sigma;
}

bool advance(RunState& state) {
  if (state.stopped) return false;
  const double sigma = iteration_step(state);
  const auto& last = state.reports.back();
  if (last.selected.empty()) {
    state.stopped = true;
    state.stop_reason = "no positive-potential edges";
  } else if (sigma <= state.config.tau) {
    state.stopped = true;
    state.stop_reason = "sigma <= tau";
  } else if (state.iteration >= state.config.max_iterations) {
    state.stopped = true;
    state.stop_reason = "max iterations reached";
  }
  return true;
}

RunResult run(const LanguageGraph& graph, const std::map<Edge, ParallelCorpus>& corpora,
              const std::map<std::string, MonoCorpus>& mono, const MultiParallelSet& devset,
              const RunConfig& config) {
  RunState state = init_run_state(graph, corpora, mono, devset, config);
  RunResult result;
  result.devset_lines = devset.size();
  result.initial_scores =
      build_accuracy_table(graph, state.model, devset, 1, 0).one_hop_weights().scores();
  if (config.mode == RunMode::initial) {
    result.stop_reason = "initial mode: no iterations";
  } else {
    try {
      while (advance(state)) {
      }
      result.stop_reason = state.stop_reason;
    } catch (const Error& e) {
      // keep the reports of completed iterations
      result.aborted = true;
      result.error = e.what();
      result.stop_reason = "aborted";
    }
  }
  result.model = std::move(state.model);
  result.reports = std::move(state.reports);
  result.corpora = std::move(state.corpora);
  return result;
}

CompareReport compare_modes(const LanguageGraph& graph,
                            const std::map<Edge, ParallelCorpus>& corpora,
                            const std::map<std::string, MonoCorpus>& mono,
                            const MultiParallelSet& devset, const RunConfig& config) {
  // One base training, then identical copies per mode so all four runs
  // share theta_0 exactly.
  RunConfig graph_config = config;
  graph_config.mode = RunMode::graph;
  RunState graph_state = init_run_state(graph, corpora, mono, devset, graph_config);

  MultilingualModel initial_model = graph_state.model;
  RunState bt_state = graph_state;
  bt_state.config.mode = RunMode::bt;
  RunState forward_state = graph_state;
  forward_state.config.mode = RunMode::forward;

  CompareReport report;
  report.config = graph_config;

  while (advance(graph_state)) {
    advance(bt_state);
    advance(forward_state);
    const auto& last = graph_state.reports.back();
    for (const auto& record : last.selected) {
      CompareRow row;
      row.iteration = last.iteration;
      row.edge = record.edge;
      row.scores.initial = evaluate_edge(initial_model, record.edge, devset);
      row.scores.bt = evaluate_edge(bt_state.model, record.edge, devset);
      row.scores.forward = evaluate_edge(forward_state.model, record.edge, devset);
      row.scores.graph = record.after;
      report.rows.push_back(std::move(row));
    }
  }

  // Final landscape: every direction that had a base 1-hop score, measured
  // under all four final models.
  const auto initial_scores =
      build_accuracy_table(graph, initial_model, devset, 1, 0).one_hop_weights().scores();
  for (const auto& [edge, score] : initial_scores) {
    CompareCell cell;
    cell.initial = score;
    cell.bt = evaluate_edge(bt_state.model, edge, devset);
    cell.forward = evaluate_edge(forward_state.model, edge, devset);
    cell.graph = evaluate_edge(graph_state.model, edge, devset);
    report.final_scores[edge] = cell;
  }
  return report;
}

}  // namespace lgd
