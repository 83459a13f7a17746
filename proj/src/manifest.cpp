#include "lfsync/manifest.hpp"

#include "json.hpp"

#include "lfsync/csvio.hpp"
#include "lfsync/errors.hpp"

namespace lfsync {

using nlohmann::json;

std::string manifest_json(const RunManifest& man) {
  json j;
  j["version"] = man.version;
  j["status"] = man.status;
  j["duration_seconds"] = man.duration_seconds;
  if (man.status == "non_finite") j["last_finite_time"] = man.last_finite_time;
  j["config"] = man.config;
  j["artifacts"] = {{"trace", man.trace_path},
                    {"metrics", man.metrics_path},
                    {"agents", man.agents_path}};
  j["summary"] = {{"l2_squared", man.l2_squared},
                  {"l2", man.l2},
                  {"linf", man.linf}};
  j["trace_hash"] = man.trace_hash;
  return j.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
  RunManifest man;
  try {
    man.version = j.at("version").get<std::string>();
    man.status = j.at("status").get<std::string>();
    man.duration_seconds = j.at("duration_seconds").get<double>();
    if (j.contains("last_finite_time"))
      man.last_finite_time = j.at("last_finite_time").get<double>();
    man.config = j.at("config").get<ConfigMap>();
    const auto& a = j.at("artifacts");
    man.trace_path = a.at("trace").get<std::string>();
    man.metrics_path = a.at("metrics").get<std::string>();
    man.agents_path = a.at("agents").get<std::string>();
    const auto& s = j.at("summary");
    man.l2_squared = s.at("l2_squared").get<double>();
    man.l2 = s.at("l2").get<double>();
    man.linf = s.at("linf").get<double>();
    man.trace_hash = j.at("trace_hash").get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
  return man;
}

void write_manifest(const std::string& path, const RunManifest& man) {
  write_text_file(path, manifest_json(man));
}

RunManifest read_manifest(const std::string& path) {
  return manifest_from_json(read_text_file(path));
}

ConfigMap config_from_manifest_file(const std::string& path) {
  return read_manifest(path).config;
}

}  // namespace lfsync
