#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace poiname::cli {

/// Flat key=value record written next to every stage's outputs.
///
/// Files inside the working directory are listed as `input.<file>` and
/// `output.<file>` with their digests, and `requires` names the upstream
/// stages. No timestamps, so a rerun with the same inputs writes the same bytes.
class Manifest {
 public:
  Manifest(std::string stage, std::filesystem::path dir);

  void set(std::string key, std::string value);
  void requires_stage(std::string_view stage);
  void consume(std::string_view file);
  void produce(std::string_view file);

  /// Writes manifest_<stage>.txt.
  void write() const;

  static std::filesystem::path path_for(const std::filesystem::path& dir, std::string_view stage);

 private:
  std::string stage_;
  std::filesystem::path dir_;
  std::vector<std::string> requires_;
  std::vector<std::pair<std::string, std::string>> settings_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::pair<std::string, std::string>> outputs_;
};

/// Confirms that `stage` ran in `dir`, that `file` is one of its outputs and
/// that neither it nor anything upstream changed since. Throws InputError
/// naming the stage otherwise.
void require_artifact(const std::filesystem::path& dir, std::string_view stage,
                      std::string_view file);

/// Checks every input and output recorded by `stage` and its upstream stages.
void verify_stage(const std::filesystem::path& dir, std::string_view stage);

}  // namespace poiname::cli
