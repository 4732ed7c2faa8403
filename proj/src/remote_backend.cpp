#include "lgd/remote_backend.hpp"

#include <cmath>
#include <cstdlib>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace lgd {

RemoteBackendConfig RemoteBackendConfig::from_env() {
  RemoteBackendConfig config;
  if (const char* url = std::getenv("LGD_BACKEND_URL")) config.url = url;
  if (const char* timeout = std::getenv("LGD_BACKEND_TIMEOUT_SEC")) {
    config.timeout_sec = std::strtod(timeout, nullptr);
  }
  if (const char* batch = std::getenv("LGD_BACKEND_BATCH_SIZE")) {
    config.batch_size = static_cast<int>(std::strtol(batch, nullptr, 10));
  }
  config.validate();
  return config;
}

void RemoteBackendConfig::validate() const {
  if (url.empty()) throw InvalidConfig("backend.url must not be empty");
  if (!(timeout_sec > 0.0)) throw InvalidConfig("backend.timeout_sec must be > 0");
  if (batch_size < 1) throw InvalidConfig("backend.batch_size must be >= 1");
}

RemoteBackend::RemoteBackend(RemoteBackendConfig config) : config_(std::move(config)) {
  config_.validate();
  std::string rest = config_.url;
  if (rest.rfind("http://", 0) == 0) {
    rest = rest.substr(7);
  } else if (rest.rfind("https://", 0) == 0) {
    throw InvalidConfig("backend.url: https is not supported by the stub client");
  }
  auto slash = rest.find('/');
  if (slash != std::string::npos) rest = rest.substr(0, slash);
  auto colon = rest.find(':');
  if (colon == std::string::npos) {
    host_ = rest;
    port_ = 80;
  } else {
    host_ = rest.substr(0, colon);
    port_ = static_cast<int>(std::strtol(rest.c_str() + colon + 1, nullptr, 10));
  }
  if (host_.empty() || port_ <= 0) {
    throw InvalidConfig("backend.url: cannot parse host/port from '" + config_.url + "'");
  }
}

std::vector<std::string> RemoteBackend::translate(const Direction& d,
                                                  const std::vector<std::string>& sentences) const {
  httplib::Client client(host_, port_);
  const auto timeout_s = static_cast<time_t>(config_.timeout_sec);
  const auto timeout_us =
      static_cast<time_t>((config_.timeout_sec - std::floor(config_.timeout_sec)) * 1e6);
  client.set_connection_timeout(timeout_s, timeout_us);
  client.set_read_timeout(timeout_s, timeout_us);

  std::vector<std::string> out;
  out.reserve(sentences.size());
  for (std::size_t offset = 0; offset < sentences.size();
       offset += static_cast<std::size_t>(config_.batch_size)) {
    const std::size_t end =
        std::min(sentences.size(), offset + static_cast<std::size_t>(config_.batch_size));
    nlohmann::json request = {
        {"src_lang", d.src},
        {"tgt_lang", d.tgt},
        {"sentences", std::vector<std::string>(sentences.begin() + offset,
                                               sentences.begin() + end)},
    };
    auto res = client.Post("/translate", request.dump(), "application/json");
    if (!res) {
      throw IoError("backend request failed: " + httplib::to_string(res.error()) + " (" +
                    config_.url + ")");
    }
    if (res->status != 200) {
      throw IoError("backend returned status " + std::to_string(res->status) + ": " + res->body);
    }
    nlohmann::json response = nlohmann::json::parse(res->body, nullptr, false);
    if (response.is_discarded() || !response.contains("translations") ||
        !response["translations"].is_array()) {
      throw IoError("backend response is not {\"translations\": [...]}");
    }
    auto batch = response["translations"].get<std::vector<std::string>>();
    if (batch.size() != end - offset) {
      throw AlignmentError(static_cast<std::int64_t>(batch.size()),
                           static_cast<std::int64_t>(end - offset));
    }
    for (auto& s : batch) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace lgd
