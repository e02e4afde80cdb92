#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "parkfrozen/experiment.hpp"
#include "parkfrozen/rng.hpp"

using namespace parkfrozen;

TEST_CASE("double formatting survives a round trip") {
  for (double v : {0.1, 1.0 / 3.0, 2.5e-17, 12345.6789, -0.0, 1e300}) {
    std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("config parsing: key=value with comments") {
  std::string path = "pf_test_config.tmp";
  {
    std::ofstream out(path);
    out << "# comment line\n";
    out << "n = 500\n";
    out << "p=0.5   # trailing comment\n";
    out << "replicas =  7\n";
    out << "\n";
  }
  auto kv = parse_config_file(path);
  CHECK(kv.at("n") == "500");
  CHECK(kv.at("p") == "0.5");
  CHECK(kv.at("replicas") == "7");
  std::remove(path.c_str());
}

TEST_CASE("config validation rejects bad values") {
  ExperimentConfig cfg;
  cfg.n_values = {0};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.n_values = {10};
  cfg.p = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.p = 0.5;
  cfg.format = "xml";
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("replica runner output is identical across thread counts") {
  auto fn = [](int64_t r) {
    std::ostringstream os;
    os << "row," << r << "," << replica_seed(9, r) << "\n";
    return os.str();
  };
  setenv("PARKFROZEN_THREADS", "1", 1);
  auto a = run_replicas_ordered(64, fn);
  setenv("PARKFROZEN_THREADS", "4", 1);
  auto b = run_replicas_ordered(64, fn);
  unsetenv("PARKFROZEN_THREADS");
  CHECK(a == b);
}

TEST_CASE("atomic writes land complete") {
  std::string path = "pf_test_atomic.tmp";
  write_file_atomic(path, "hello\n");
  std::ifstream in(path);
  std::string s;
  std::getline(in, s);
  CHECK(s == "hello");
  std::remove(path.c_str());
}
