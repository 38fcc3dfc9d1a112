#include "idla/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "idla/config.hpp"
#include "idla/error.hpp"

namespace idla {

std::string iso_timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& bytes) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::io_error, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) fail(ErrorKind::io_error, "short write to " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorKind::io_error, "cannot rename into " + path);
  }
}

RunManifest::RunManifest(std::string command, std::string config_text, nlohmann::json config)
    : command_(std::move(command)),
      config_text_(std::move(config_text)),
      config_(std::move(config)),
      started_(iso_timestamp_utc()) {}

void RunManifest::add_output(const std::string& path, const std::string& bytes) {
  write_file_atomic(path, bytes);
  outputs_.push_back({{"path", path}, {"git_blob_sha1", git_blob_hash(bytes)}, {"bytes", bytes.size()}});
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j{{"tool", "idla_cli"},
                   {"version", kVersion},
                   {"command", command_},
                   {"config", config_},
                   {"config_hash", git_blob_hash(config_text_)},
                   {"started", started_},
                   {"finished", finished_},
                   {"outputs", outputs_}};
  for (const auto& [k, v] : extra_.items()) j[k] = v;
  return j;
}

void RunManifest::write(const std::string& path) {
  finished_ = iso_timestamp_utc();
  write_file_atomic(path, to_json().dump(2) + "\n");
}

}  // namespace idla
