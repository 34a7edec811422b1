#include "poiname/manifest.hpp"

#include <set>

#include "poiname/error.hpp"
#include "poiname/io.hpp"
#include "poiname/version.hpp"

namespace poiname::cli {
namespace fs = std::filesystem;

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ',';
    out += item;
  }
  return out;
}

io::KeyValues read_manifest(const fs::path& dir, std::string_view stage) {
  const auto path = Manifest::path_for(dir, stage);
  if (!fs::exists(path)) {
    throw InputError("missing upstream stage '" + std::string(stage) + "': " + path.string() +
                     " not found (run that stage first)");
  }
  return io::read_key_values_file(path);
}

void check_file(const fs::path& dir, std::string_view stage, const std::string& file,
                const std::string& digest) {
  const auto path = dir / file;
  if (!fs::exists(path)) {
    throw InputError("missing artifact " + file + " from stage '" + std::string(stage) + "'");
  }
  if (io::file_digest(path) != digest) {
    throw InputError("stale artifact " + file + ": changed since stage '" + std::string(stage) +
                     "' ran (rerun it)");
  }
}

void verify(const fs::path& dir, std::string_view stage, std::set<std::string>& seen) {
  if (!seen.insert(std::string(stage)).second) return;
  const auto kv = read_manifest(dir, stage);
  if (const auto it = kv.find("requires"); it != kv.end() && !it->second.empty()) {
    for (const auto& upstream : io::split(it->second, ',')) verify(dir, upstream, seen);
  }
  for (const auto& [key, digest] : kv) {
    if (key.starts_with("input.")) check_file(dir, stage, key.substr(6), digest);
    if (key.starts_with("output.")) check_file(dir, stage, key.substr(7), digest);
  }
}

}  // namespace

Manifest::Manifest(std::string stage, fs::path dir) : stage_(std::move(stage)), dir_(std::move(dir)) {}

void Manifest::set(std::string key, std::string value) {
  settings_.emplace_back(std::move(key), std::move(value));
}

void Manifest::requires_stage(std::string_view stage) {
  for (const auto& s : requires_) {
    if (s == stage) return;
  }
  requires_.emplace_back(stage);
}

void Manifest::consume(std::string_view file) {
  inputs_.emplace_back("input." + std::string(file), io::file_digest(dir_ / file));
}

void Manifest::produce(std::string_view file) {
  outputs_.emplace_back("output." + std::string(file), io::file_digest(dir_ / file));
}

void Manifest::write() const {
  std::vector<std::pair<std::string, std::string>> entries = {
      {"stage", stage_}, {"tool.version", kVersion}, {"out", dir_.string()}, {"requires", join(requires_)}};
  entries.insert(entries.end(), settings_.begin(), settings_.end());
  entries.insert(entries.end(), inputs_.begin(), inputs_.end());
  entries.insert(entries.end(), outputs_.begin(), outputs_.end());
  auto out = io::open_output(path_for(dir_, stage_));
  io::write_key_values(out, entries);
}

fs::path Manifest::path_for(const fs::path& dir, std::string_view stage) {
  return dir / ("manifest_" + std::string(stage) + ".txt");
}

void require_artifact(const fs::path& dir, std::string_view stage, std::string_view file) {
  const auto kv = read_manifest(dir, stage);
  if (!kv.contains("output." + std::string(file))) {
    throw InputError("stage '" + std::string(stage) + "' did not produce " + std::string(file));
  }
  verify_stage(dir, stage);
}

void verify_stage(const fs::path& dir, std::string_view stage) {
  std::set<std::string> seen;
  verify(dir, stage, seen);
}

}  // namespace poiname::cli
