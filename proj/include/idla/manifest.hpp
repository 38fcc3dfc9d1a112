#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace idla {

inline constexpr const char* kVersion = "1.0.0";

std::string iso_timestamp_utc();

// Writes `bytes` to path via a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& bytes);

// Per-run record: command, config echo and hash, seed, timings, and the git
// blob hash of every output file.
class RunManifest {
 public:
  RunManifest(std::string command, std::string config_text, nlohmann::json config);
  void set(const std::string& key, nlohmann::json value) { extra_[key] = std::move(value); }
  // Writes the file atomically and records its hash.
  void add_output(const std::string& path, const std::string& bytes);
  nlohmann::json to_json() const;
  // Stamps the finish time and writes the manifest atomically.
  void write(const std::string& path);

 private:
  std::string command_;
  std::string config_text_;
  nlohmann::json config_;
  std::string started_;
  std::string finished_;
  nlohmann::json outputs_ = nlohmann::json::array();
  nlohmann::json extra_ = nlohmann::json::object();
};

}  // namespace idla
