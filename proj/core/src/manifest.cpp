#include "rotortree/manifest.hpp"

#include <cstdint>
#include <cstdio>

namespace rotortree {

nlohmann::json RunManifest::to_json() const {
  return nlohmann::json{{"command", command},
                        {"inputs", inputs},
                        {"parameters", parameters},
                        {"output_dir", output_dir},
                        {"format_version", kFormatVersion}};
}

std::string RunManifest::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_json().dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rotortree
