#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace rotortree {

/// Everything that determines a command's output. Identical manifests produce
/// byte-identical artifacts.
struct RunManifest {
  static constexpr int kFormatVersion = 1;

  std::string command;
  std::vector<std::string> inputs;
  std::map<std::string, std::string> parameters;
  std::string output_dir;

  nlohmann::json to_json() const;
  /// 16 hex digits of FNV-1a over the canonical JSON dump.
  std::string hash() const;
};

}  // namespace rotortree
