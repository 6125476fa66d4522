#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tropwave/io.hpp"

namespace tropwave::cli {

std::string sha256_hex(const std::string& bytes);

/// Collects the files of one command run and writes manifest.json last.
class OutputBundle {
 public:
  explicit OutputBundle(std::filesystem::path dir);

  void write(const std::string& name, const std::string& content);
  void write_json(const std::string& name, const Json& j) { write(name, dump(j)); }
  /// Manifest with the command, its config echo and one digest per file.
  void finish(const std::string& command, const Json& config);

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;  // name, digest
  std::vector<std::size_t> sizes_;
};

}  // namespace tropwave::cli
