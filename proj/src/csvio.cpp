#include "lfsync/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lfsync/errors.hpp"
#include "lfsync/metrics.hpp"

namespace lfsync {

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string trace_csv(const Trajectory& traj) {
  std::string out = "t";
  for (int i = 1; i <= traj.m; ++i) out += ", y_" + std::to_string(i);
  out += ", y_leader";
  for (int i = 1; i <= traj.m; ++i) out += ", e_" + std::to_string(i);
  for (int i = 1; i <= traj.m; ++i) out += ", u_" + std::to_string(i);
  out += ", theta_err_norm\n";
  for (size_t k = 0; k < traj.t.size(); ++k) {
    out += format_g9(traj.t[k]);
    for (int i = 0; i < traj.m; ++i) out += ", " + format_g9(traj.y(k, i));
    out += ", " + format_g9(traj.y_leader(k));
    for (int i = 0; i < traj.m; ++i) out += ", " + format_g9(traj.e(k, i));
    for (int i = 0; i < traj.m; ++i) out += ", " + format_g9(traj.u(k, i));
    out += ", " + format_g9(traj.theta_norm(k));
    out += "\n";
  }
  return out;
}

std::string agents_csv(const MetricsRecord& rec) {
  std::string out = "agent, l2_squared, l2\n";
  for (int i = 0; i < rec.per_agent_l2sq.size(); ++i) {
    out += std::to_string(i + 1);
    out += ", " + format_g9(rec.per_agent_l2sq(i));
    out += ", " + format_g9(std::sqrt(rec.per_agent_l2sq(i)));
    out += "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open for writing: " + path);
  f << text;
  if (!f) throw ParseError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(const std::string& bytes) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(bytes)));
  return buf;
}

}  // namespace lfsync
