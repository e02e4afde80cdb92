#include "parkfrozen/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace parkfrozen {

std::map<std::string, std::string> ExperimentConfig::echo() const {
  std::map<std::string, std::string> kv;
  kv["subcommand"] = subcommand;
  {
    std::string ns;
    for (size_t i = 0; i < n_values.size(); ++i)
      ns += (i ? "," : "") + std::to_string(n_values[i]);
    kv["n"] = ns;
  }
  if (m >= 0) kv["m"] = std::to_string(m);
  {
    std::string ls;
    for (size_t i = 0; i < lambda_grid.size(); ++i)
      ls += (i ? "," : "") + format_double(lambda_grid[i]);
    kv["lambda_grid"] = ls;
  }
  kv["p"] = format_double(p);
  kv["replicas"] = std::to_string(replicas);
  kv["seed"] = std::to_string(seed);
  kv["format"] = format;
  kv["profile"] = profile;
  kv["m_cap"] = std::to_string(m_cap);
  kv["oracle_cap"] = format_double(oracle_cap);
  return kv;
}

void ExperimentConfig::validate() const {
  for (int64_t n : n_values)
    if (n < 1) throw std::invalid_argument("invalid-size: n must be >= 1");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("invalid-parameter: p must be in [0, 1]");
  if (replicas < 1) throw std::invalid_argument("invalid-parameter: replicas must be >= 1");
  if (format != "csv" && format != "json")
    throw std::invalid_argument("invalid-parameter: format must be csv or json");
  if (profile != "quick" && profile != "full")
    throw std::invalid_argument("invalid-parameter: profile must be quick or full");
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("invalid-config: cannot open " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = value;
  }
  return kv;
}

int thread_count() {
  if (const char* env = std::getenv("PARKFROZEN_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<std::string> run_replicas_ordered(int64_t replicas,
                                              const std::function<std::string(int64_t)>& fn) {
  std::vector<std::string> blocks(replicas);
  int workers = std::min<int64_t>(thread_count(), replicas);
  if (workers <= 1) {
    for (int64_t r = 0; r < replicas; ++r) blocks[r] = fn(r);
    return blocks;
  }
  std::atomic<int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        int64_t r = next.fetch_add(1);
        if (r >= replicas) return;
        blocks[r] = fn(r);
      }
    });
  }
  for (auto& t : pool) t.join();
  return blocks;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

void write_manifest(const std::string& data_path, const RunManifest& manifest) {
  nlohmann::json j;
  j["config"] = manifest.config_echo;
  j["artifact_version"] = manifest.artifact_version;
  j["replica_seeds"] = manifest.replica_seeds;
  j["wall_seconds"] = manifest.wall_seconds;
  j["row_count"] = manifest.row_count;
  write_file_atomic(data_path + ".manifest.json", j.dump(2) + "\n");
}

} // namespace parkfrozen
