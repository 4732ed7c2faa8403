#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "lgd/graph.hpp"
#include "lgd/orchestrator.hpp"
#include "lgd/remote_backend.hpp"
#include "lgd/synthworld.hpp"

namespace lgd {

// One document capturing a whole experiment: world parameters, topology,
// corpus sizes (as graph counts) and the run settings. Environment
// variables with the LGD_ prefix override scalar fields; command-line
// flags override both.
struct ExperimentConfig {
  WorldConfig world;  // languages are filled in from the graph
  LanguageGraph graph;
  int dev_size = 500;
  int test_size = 500;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  RunConfig run;
  // Optional external translation service; LGD_BACKEND_* variables
  // override its fields.
  std::optional<RemoteBackendConfig> backend;

  void validate() const;

  // Parses the JSON document, then applies LGD_* environment overrides:
  // LGD_SEED, LGD_OUT, LGD_DEV_SIZE, LGD_TEST_SIZE, LGD_TAU, LGD_MAX_HOPS,
  // LGD_TOP_K, LGD_EDGES_PER_ITER, LGD_DELTA, LGD_MAX_ITERATIONS,
  // LGD_BUDGET, LGD_MODE.
  static ExperimentConfig load(const std::filesystem::path& path);
};

}  // namespace lgd
