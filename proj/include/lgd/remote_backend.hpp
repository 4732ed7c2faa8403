#pragma once

#include <string>
#include <vector>

#include "lgd/translator.hpp"

namespace lgd {

// Connection settings for an external translation service. Scalars can come
// from a config file or from the environment (LGD_BACKEND_URL,
// LGD_BACKEND_TIMEOUT_SEC, LGD_BACKEND_BATCH_SIZE).
struct RemoteBackendConfig {
  std::string url = "http://127.0.0.1:8089";
  double timeout_sec = 30.0;
  int batch_size = 64;

  static RemoteBackendConfig from_env();
  void validate() const;
};

// Client for a translation service speaking a one-endpoint JSON protocol:
//
//   POST /translate
//   request:  {"src_lang": "aa", "tgt_lang": "bb", "sentences": ["..."]}
//   response: {"translations": ["..."]}
//
// Sentences are sent in batches of config.batch_size. The service is
// trusted to know its own directions, so has_direction always reports true;
// a direction the service cannot handle surfaces as an IoError.
class RemoteBackend final : public TranslationBackend {
 public:
  explicit RemoteBackend(RemoteBackendConfig config);

  bool has_direction(const Direction&) const override { return true; }
  std::vector<std::string> translate(const Direction& d,
                                     const std::vector<std::string>& sentences) const override;

  const RemoteBackendConfig& config() const { return config_; }

 private:
  RemoteBackendConfig config_;
  std::string host_;
  int port_ = 80;
};

}  // namespace lgd
