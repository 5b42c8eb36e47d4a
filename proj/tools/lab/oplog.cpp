#include "oplog.hpp"

#include <openssl/evp.h>

#include <array>
#include <iomanip>
#include <sstream>

#include "nlslab/error.hpp"

namespace nlslab::lab {

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error(Diagnostic::Io, "sha256 failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

std::string inputs_hash(const nlohmann::json& inputs) { return sha256_hex(inputs.dump()); }

std::string file_sha256(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Diagnostic::Io, "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return sha256_hex(os.str());
}

OpLog::OpLog(const std::filesystem::path& path) : out_(path, std::ios::app) {
  if (!out_) throw Error(Diagnostic::Io, "cannot open op log " + path.string());
}

std::size_t OpLog::record(const std::string& op, const nlohmann::json& inputs, const nlohmann::json& outputs) {
  std::lock_guard lock(mutex_);
  const nlohmann::json rec{{"seq", seq_}, {"op", op}, {"inputs_hash", inputs_hash(inputs)}, {"inputs", inputs},
                           {"outputs", outputs}};
  out_ << rec.dump() << '\n';
  out_.flush();
  return seq_++;
}

std::size_t OpLog::file(const std::string& op, const nlohmann::json& inputs, const std::filesystem::path& path) {
  return record(op, inputs, {{"file", path.filename().string()}, {"sha256", file_sha256(path)}});
}

}  // namespace nlslab::lab
