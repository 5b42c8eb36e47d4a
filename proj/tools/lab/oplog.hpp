#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <string>

namespace nlslab::lab {

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);
/// Hash of the canonical (sorted-key, compact) JSON dump.
std::string inputs_hash(const nlohmann::json& inputs);
std::string file_sha256(const std::filesystem::path& path);

/// Append-only JSON-lines log of operation records:
/// {"seq", "op", "inputs_hash", "inputs", "outputs"}.
class OpLog {
 public:
  explicit OpLog(const std::filesystem::path& path);

  /// Returns the record's sequence number.
  std::size_t record(const std::string& op, const nlohmann::json& inputs, const nlohmann::json& outputs);
  /// Logs a written file with its content hash.
  std::size_t file(const std::string& op, const nlohmann::json& inputs, const std::filesystem::path& path);

 private:
  std::mutex mutex_;
  std::ofstream out_;
  std::size_t seq_ = 0;
};

}  // namespace nlslab::lab
