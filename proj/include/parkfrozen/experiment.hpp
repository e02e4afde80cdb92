#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace parkfrozen {

// Flat key=value experiment description. Serialized verbatim into output
// headers and the run manifest for provenance.
struct ExperimentConfig {
  std::string subcommand;
  std::vector<int64_t> n_values;
  int64_t m = -1;
  std::vector<double> lambda_grid;
  double p = 0.5;
  int64_t replicas = 1;
  uint64_t seed = 1;
  std::string out_path;
  std::string format = "csv"; // csv | json
  std::string profile = "full";
  int64_t m_cap = int64_t(1) << 33;
  double oracle_cap = 3e8;

  std::map<std::string, std::string> echo() const;
  void validate() const; // throws std::invalid_argument on bad values
};

// Parse a flat key=value config file (one pair per line, '#' comments).
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Number of worker threads: PARKFROZEN_THREADS when set, else hardware.
int thread_count();

// Run fn(replica_index) for every replica on a small pool; results are
// collected in replica order so output never depends on scheduling.
std::vector<std::string> run_replicas_ordered(int64_t replicas,
                                              const std::function<std::string(int64_t)>& fn);

// 17-significant-digit decimal rendering for doubles (lossless round trip).
std::string format_double(double v);

struct RunManifest {
  std::map<std::string, std::string> config_echo;
  std::string artifact_version;
  std::vector<uint64_t> replica_seeds;
  double wall_seconds = 0.0;
  int64_t row_count = 0;
};

// Write `content` then atomically rename into place; the manifest goes to
// path + ".manifest.json".
void write_file_atomic(const std::string& path, const std::string& content);
void write_manifest(const std::string& data_path, const RunManifest& manifest);

inline constexpr const char* kArtifactVersion = "0.1.0";

} // namespace parkfrozen
