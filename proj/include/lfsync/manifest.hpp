#pragma once

#include <string>

#include "lfsync/config.hpp"

namespace lfsync {

// Everything needed to reproduce a run: re-simulating from `config` yields
// the same trace hash.
struct RunManifest {
  std::string version;
  std::string status;  // "ok" or "non_finite"
  double duration_seconds = 0.0;
  double last_finite_time = -1.0;  // set when status = non_finite
  ConfigMap config;
  std::string trace_path;
  std::string metrics_path;
  std::string agents_path;
  double l2_squared = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  std::string trace_hash;
};

std::string manifest_json(const RunManifest& man);
RunManifest manifest_from_json(const std::string& text);
void write_manifest(const std::string& path, const RunManifest& man);
RunManifest read_manifest(const std::string& path);

// Embedded config of a manifest file, for reproduction runs.
ConfigMap config_from_manifest_file(const std::string& path);

}  // namespace lfsync
