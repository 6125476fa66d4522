#include "bundle.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>

#include "tropwave/errors.hpp"

namespace tropwave::cli {

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

OutputBundle::OutputBundle(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

void OutputBundle::write(const std::string& name, const std::string& content) {
  std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
  out << content;
  files_.emplace_back(name, sha256_hex(content));
  sizes_.push_back(content.size());
}

void OutputBundle::finish(const std::string& command, const Json& config) {
  Json files = Json::array();
  for (std::size_t i = 0; i < files_.size(); ++i)
    files.push_back({{"path", files_[i].first}, {"sha256", files_[i].second}, {"bytes", sizes_[i]}});
  Json manifest = {{"command", command}, {"config", config}, {"files", files}};
  std::ofstream out(dir_ / "manifest.json", std::ios::binary | std::ios::trunc);
  out << dump(manifest);
}

}  // namespace tropwave::cli
