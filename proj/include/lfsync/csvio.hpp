#pragma once

#include <cstdint>
#include <string>

#include "lfsync/sim.hpp"

namespace lfsync {

struct MetricsRecord;

// Nine significant digits, the precision of all exported floating columns.
std::string format_g9(double v);

// Header `t, y_1..y_m, y_leader, e_1..e_m, u_1..u_m, theta_err_norm`.
std::string trace_csv(const Trajectory& traj);

// Header `agent, l2_squared, l2`, one row per agent.
std::string agents_csv(const MetricsRecord& rec);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// FNV-1a over the exact bytes; the determinism fingerprint of traces.
std::uint64_t fnv1a(const std::string& bytes);
std::string hash_hex(const std::string& bytes);

}  // namespace lfsync
