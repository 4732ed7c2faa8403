#include "lgd/config.hpp"

#include <cstdlib>
#include <fstream>

#include <nlohmann/json.hpp>

#include "lgd/io.hpp"

namespace lgd {

namespace fs = std::filesystem;
using nlohmann::json;

void ExperimentConfig::validate() const {
  world.validate();
  graph.validate();
  if (dev_size < 1) throw InvalidConfig("dev_size must be >= 1");
  if (test_size < 1) throw InvalidConfig("test_size must be >= 1");
  if (out_dir.empty()) throw InvalidConfig("out_dir must not be empty");
  run.validate();
  if (backend) backend->validate();
}

namespace {

void apply_env(ExperimentConfig& config) {
  auto env_u64 = [](const char* name, std::uint64_t& value) {
    if (const char* s = std::getenv(name)) value = std::strtoull(s, nullptr, 10);
  };
  auto env_int = [](const char* name, int& value) {
    if (const char* s = std::getenv(name)) value = static_cast<int>(std::strtol(s, nullptr, 10));
  };
  auto env_double = [](const char* name, double& value) {
    if (const char* s = std::getenv(name)) value = std::strtod(s, nullptr);
  };
  env_u64("LGD_SEED", config.seed);
  if (const char* s = std::getenv("LGD_OUT")) config.out_dir = s;
  env_int("LGD_DEV_SIZE", config.dev_size);
  env_int("LGD_TEST_SIZE", config.test_size);
  env_double("LGD_TAU", config.run.tau);
  env_int("LGD_MAX_HOPS", config.run.max_hops);
  env_int("LGD_TOP_K", config.run.top_k);
  env_int("LGD_EDGES_PER_ITER", config.run.edges_per_iteration);
  env_double("LGD_DELTA", config.run.delta);
  env_int("LGD_MAX_ITERATIONS", config.run.max_iterations);
  if (const char* s = std::getenv("LGD_BUDGET")) {
    config.run.budget = std::strtoull(s, nullptr, 10);
  }
  if (const char* s = std::getenv("LGD_MODE")) {
    config.run.mode = run_mode_from_string(s);
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::load(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open config: " + path.string());
  }
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    throw InvalidConfig("malformed JSON in config: " + path.string());
  }

  ExperimentConfig config;
  if (j.contains("graph_file")) {
    const fs::path graph_path = path.parent_path() / j["graph_file"].get<std::string>();
    config.graph = read_graph(graph_path);
  } else if (j.contains("graph")) {
    config.graph = graph_from_json(j["graph"]);
  } else {
    throw InvalidConfig("missing config field: graph (inline) or graph_file (path)");
  }

  const json& world = j.contains("world") ? j["world"] : json::object();
  config.world.concept_count = world.value("concept_count", config.world.concept_count);
  config.world.zipf_exponent = world.value("zipf_exponent", config.world.zipf_exponent);
  if (world.contains("sentence_len")) {
    const auto& len = world["sentence_len"];
    if (!len.is_array() || len.size() != 2) {
      throw InvalidConfig("world.sentence_len must be [min, max]");
    }
    config.world.sentence_len_min = len.at(0).get<int>();
    config.world.sentence_len_max = len.at(1).get<int>();
  }
  const json reorder = world.value("reorder_block", json::object());
  for (const auto& [lang, block] : reorder.items()) {
    config.world.reorder_block[lang] = block.get<int>();
  }
  config.world.languages.assign(config.graph.languages().begin(),
                                config.graph.languages().end());

  config.dev_size = j.value("dev_size", config.dev_size);
  config.test_size = j.value("test_size", config.test_size);
  config.seed = j.value("seed", config.seed);
  config.out_dir = j.value("out_dir", config.out_dir);
  if (j.contains("run")) {
    config.run = run_config_from_json(j["run"]);
  }
  if (j.contains("backend")) {
    const auto& b = j["backend"];
    RemoteBackendConfig backend;
    backend.url = b.value("url", backend.url);
    backend.timeout_sec = b.value("timeout_sec", backend.timeout_sec);
    backend.batch_size = b.value("batch_size", backend.batch_size);
    backend.validate();
    config.backend = backend;
  }

  apply_env(config);
  config.run.seed = config.seed;
  config.validate();
  return config;
}

}  // namespace lgd
