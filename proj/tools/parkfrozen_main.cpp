#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "parkfrozen/acceptance.hpp"
#include "parkfrozen/airy.hpp"
#include "parkfrozen/bigint.hpp"
#include "parkfrozen/coupling.hpp"
#include "parkfrozen/enumeration.hpp"
#include "parkfrozen/experiment.hpp"
#include "parkfrozen/frozen.hpp"
#include "parkfrozen/mulaw.hpp"
#include "parkfrozen/numerics.hpp"
#include "parkfrozen/parking.hpp"

namespace pf = parkfrozen;
using nlohmann::json;

namespace {

// exit codes: 0 ok, 1 verification failure, 2 invalid config, 3 cap exceeded
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitCapExceeded = 3;

std::vector<int64_t> parse_int_list(const std::string& s) {
  std::vector<int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoll(item));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

void emit(const pf::ExperimentConfig& cfg, const std::string& header,
          const std::vector<std::string>& blocks, int64_t rows, double wall) {
  std::string content;
  for (auto& [k, v] : cfg.echo()) content += "# " + k + "=" + v + "\n";
  content += header;
  for (const auto& b : blocks) content += b;
  if (cfg.out_path.empty()) {
    std::cout << content;
    return;
  }
  pf::write_file_atomic(cfg.out_path, content);
  pf::RunManifest manifest;
  manifest.config_echo = cfg.echo();
  manifest.artifact_version = pf::kArtifactVersion;
  for (int64_t r = 0; r < cfg.replicas; ++r)
    manifest.replica_seeds.push_back(pf::replica_seed(cfg.seed, r));
  manifest.wall_seconds = wall;
  manifest.row_count = rows;
  pf::write_manifest(cfg.out_path, manifest);
}

int cmd_simulate_frozen(const pf::ExperimentConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  int64_t rows = 0;
  std::vector<std::string> blocks;
  for (int64_t n : cfg.n_values) {
    std::vector<double> grid = cfg.lambda_grid;
    if (grid.empty()) grid = {0.0};
    auto more = pf::run_replicas_ordered(cfg.replicas, [&](int64_t r) {
      uint64_t seed = pf::replica_seed(cfg.seed, r);
      pf::FrozenTrajectory traj = pf::run_frozen(n, std::max<int64_t>(cfg.m, 0), cfg.p, seed, grid,
                                                 {.m_cap = cfg.m_cap});
      std::string out;
      for (const auto& s : traj.snapshots) {
        auto white = [&](size_t i) {
          return i < s.white_sizes.size() ? static_cast<int64_t>(s.white_sizes[i]) : 0;
        };
        out += std::to_string(n) + "," + pf::format_double(cfg.p) + "," + std::to_string(seed) +
               "," + pf::format_double(s.lambda) + "," + std::to_string(s.m) + "," +
               std::to_string(s.kept_edges) + "," + std::to_string(s.frozen_mass) + "," +
               std::to_string(s.discarded) + "," + std::to_string(s.frozen_mass) + "," +
               std::to_string(white(0)) + "," + std::to_string(white(1)) + "," +
               std::to_string(white(2)) + "\n";
      }
      return out;
    });
    for (auto& b : more) {
      rows += static_cast<int64_t>(std::count(b.begin(), b.end(), '\n'));
      blocks.push_back(std::move(b));
    }
  }
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(cfg, "n,p,seed,lambda,m,kept_edges,frozen_mass,discarded,c_star,c1,c2,c3\n", blocks, rows,
       wall);
  return 0;
}

int cmd_simulate_er(const pf::ExperimentConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  int64_t rows = 0;
  std::vector<std::string> blocks;
  for (int64_t n : cfg.n_values) {
    std::vector<double> grid = cfg.lambda_grid;
    if (grid.empty()) grid = {0.0};
    auto more = pf::run_replicas_ordered(cfg.replicas, [&](int64_t r) {
      uint64_t seed = pf::replica_seed(cfg.seed, r);
      pf::ErTrajectory traj = pf::run_er(n, std::max<int64_t>(cfg.m, 0), seed, grid, cfg.m_cap);
      std::string out;
      for (const auto& s : traj.snapshots) {
        auto sz = [&](size_t i) {
          return i < s.sizes.size() ? static_cast<int64_t>(s.sizes[i]) : 0;
        };
        int64_t surplus_total = 0;
        for (int64_t sp : s.surpluses) surplus_total += sp;
        out += std::to_string(n) + "," + std::to_string(seed) + "," +
               pf::format_double(s.lambda) + "," + std::to_string(s.m) + "," +
               std::to_string(sz(0)) + "," + std::to_string(sz(1)) + "," + std::to_string(sz(2)) +
               "," + std::to_string(surplus_total) + "\n";
      }
      return out;
    });
    for (auto& b : more) {
      rows += static_cast<int64_t>(std::count(b.begin(), b.end(), '\n'));
      blocks.push_back(std::move(b));
    }
  }
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(cfg, "n,seed,lambda,m,c1,c2,c3,surplus_total\n", blocks, rows, wall);
  return 0;
}

int cmd_simulate_parking(const pf::ExperimentConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  int64_t rows = 0;
  std::vector<std::string> blocks;
  for (int64_t n : cfg.n_values) {
    int64_t m = cfg.m >= 0 ? cfg.m : n / 2;
    auto more = pf::run_replicas_ordered(cfg.replicas, [&](int64_t r) {
      uint64_t seed = pf::replica_seed(cfg.seed, r);
      pf::Rng rng(seed, 3);
      pf::RootedTree tree = pf::uniform_rooted_tree(static_cast<int32_t>(n), rng);
      std::vector<int32_t> arrivals(m);
      for (auto& a : arrivals)
        a = static_cast<int32_t>(rng.next_below(static_cast<uint32_t>(n)));
      pf::ParkingOutcome out = pf::park_sequence(tree, arrivals);
      std::string line = std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(seed) +
                         "," + std::to_string(out.parked_count()) + "," +
                         std::to_string(out.unparked.size()) + "," +
                         std::to_string(out.total_distance) + "," +
                         std::to_string(out.occupant[tree.root] != 0 ? 1 : 0);
      for (pf::ComponentKind kind : {pf::ComponentKind::near, pf::ComponentKind::full,
                                     pf::ComponentKind::strong}) {
        pf::ComponentDecomposition d = pf::decompose(tree, out, kind);
        auto sizes = d.sizes_descending();
        for (size_t i = 0; i < 3; ++i)
          line += "," + std::to_string(i < sizes.size() ? sizes[i] : 0);
      }
      return line + "\n";
    });
    for (auto& b : more) {
      rows += static_cast<int64_t>(std::count(b.begin(), b.end(), '\n'));
      blocks.push_back(std::move(b));
    }
  }
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(cfg,
       "n,m,seed,parked,unparked,total_distance,root_occupied,"
       "near_c1,near_c2,near_c3,full_c1,full_c2,full_c3,strong_c1,strong_c2,strong_c3\n",
       blocks, rows, wall);
  return 0;
}

int cmd_couple_verify(const pf::ExperimentConfig& cfg) {
  int64_t n = cfg.n_values.front();
  int64_t m = cfg.m >= 0 ? cfg.m : (12 * n) / 10;
  bool all_ok = true;
  auto blocks = pf::run_replicas_ordered(cfg.replicas, [&](int64_t r) {
    uint64_t seed = pf::replica_seed(cfg.seed, r);
    std::string out;
    for (pf::CoupleKind kind : {pf::CoupleKind::tree, pf::CoupleKind::mapping}) {
      pf::CoupledRun run = (kind == pf::CoupleKind::tree) ? pf::couple_tree(n, seed, m)
                                                          : pf::couple_mapping(n, seed, m);
      pf::CouplingReport rep = pf::verify_coupling(run);
      out += std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(seed) + "," +
             (kind == pf::CoupleKind::tree ? "tree" : "mapping") + "," +
             (rep.ok ? "ok" : ("fail@" + std::to_string(rep.first_failing_m) + ":" + rep.diff)) +
             "\n";
      if (!rep.ok) all_ok = false;
    }
    return out;
  });
  int64_t rows = 0;
  for (auto& b : blocks) rows += static_cast<int64_t>(std::count(b.begin(), b.end(), '\n'));
  emit(cfg, "n,m,seed,kind,result\n", blocks, rows, 0.0);
  return all_ok ? 0 : kExitVerifyFailed;
}

int cmd_sample_npt(const pf::ExperimentConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  int64_t N = cfg.n_values.front();
  auto blocks = pf::run_replicas_ordered(cfg.replicas, [&](int64_t r) {
    uint64_t seed = pf::replica_seed(cfg.seed, r);
    pf::NearlyParkedSample s = pf::sample_nearly_parked(static_cast<int32_t>(N), seed);
    // height sum and largest components
    std::vector<std::vector<int32_t>> children(N);
    for (int32_t v = 0; v < N; ++v)
      if (v != s.tree.root) children[s.tree.parent[v]].push_back(v);
    std::vector<int32_t> depth(N, 0);
    std::vector<int32_t> stack = {s.tree.root};
    int64_t hsum = 0;
    while (!stack.empty()) {
      int32_t v = stack.back();
      stack.pop_back();
      hsum += depth[v];
      for (int32_t w : children[v]) {
        depth[w] = depth[v] + 1;
        stack.push_back(w);
      }
    }
    pf::ComponentDecomposition strong = pf::decompose(s.tree, s.outcome, pf::ComponentKind::strong);
    auto ssz = strong.sizes_descending();
    int64_t mf = 0;
    for (int32_t ch : children[s.tree.root]) {
      int64_t size = 0;
      std::vector<int32_t> st2 = {ch};
      while (!st2.empty()) {
        int32_t v = st2.back();
        st2.pop_back();
        ++size;
        for (int32_t w : children[v]) st2.push_back(w);
      }
      mf = std::max(mf, size);
    }
    return std::to_string(N) + "," + std::to_string(seed) + "," +
           pf::format_double(static_cast<double>(hsum) / N) + "," +
           std::to_string(s.outcome.total_distance) + "," + std::to_string(mf) + "," +
           std::to_string(ssz.empty() ? 0 : ssz.front()) + "\n";
  });
  int64_t rows = 0;
  for (auto& b : blocks) rows += static_cast<int64_t>(std::count(b.begin(), b.end(), '\n'));
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(cfg, "N,seed,mean_height,total_distance,largest_full,largest_strong\n", blocks, rows, wall);
  return 0;
}

struct EnumArgs {
  std::string quantity;
  int64_t n = -1, m = -1, p = -1, h = -1, k = -1;
  int64_t n_white = -1, m_white = -1, blue = -1;
};

int cmd_enumerate(const EnumArgs& a, const std::string& out_path) {
  auto need = [&](int64_t v, const char* flag) {
    if (v < 0) throw std::invalid_argument(std::string("invalid-config: ") + flag +
                                           " is required for --quantity " + a.quantity);
  };
  if (a.quantity == "forests" || a.quantity == "pf" || a.quantity == "pf-root") need(a.m, "--m");
  if (a.quantity == "sp-flux") need(a.p, "--flux");
  if (a.quantity == "branch-pmf" || a.quantity == "cycle-weight") need(a.h, "--len");
  if (a.quantity == "freezer-jump") {
    need(a.n_white, "--n-white");
    need(a.m_white, "--m-white");
    need(a.blue, "--blue");
    need(a.k, "--k");
  }

  json j;
  j["quantity"] = a.quantity;
  std::vector<int64_t> args;
  std::string value;
  if (a.quantity == "forests") {
    args = {a.n, a.m};
    value = pf::to_decimal(pf::count_forests(a.n, a.m));
  } else if (a.quantity == "pf") {
    args = {a.n, a.m};
    value = pf::to_decimal(pf::pf(a.n, a.m));
  } else if (a.quantity == "pf-root") {
    args = {a.n, a.m};
    value = pf::to_decimal(pf::pf_root(a.n, a.m));
  } else if (a.quantity == "pf-full") {
    args = {a.n};
    value = pf::to_decimal(pf::pf_full(a.n));
  } else if (a.quantity == "sp") {
    args = {a.n};
    value = pf::to_decimal(pf::sp(a.n));
  } else if (a.quantity == "sp-flux") {
    args = {a.n, a.p};
    value = pf::to_decimal(pf::sp_flux(static_cast<int32_t>(a.n), static_cast<int32_t>(a.p)));
  } else if (a.quantity == "mean-height") {
    args = {a.n};
    value = pf::to_decimal(pf::mean_height_exact(a.n));
  } else if (a.quantity == "mean-total-distance") {
    args = {a.n};
    value = pf::to_decimal(pf::mean_total_distance_exact(a.n));
  } else if (a.quantity == "branch-pmf") {
    args = {a.n, a.h};
    value = pf::to_decimal(pf::branch_length_pmf(a.n, a.h));
  } else if (a.quantity == "cycle-weight") {
    args = {a.h};
    value = pf::to_decimal(pf::cycle_weight(a.h));
  } else if (a.quantity == "freezer-jump") {
    args = {a.n_white, a.m_white, a.blue, a.n, a.k};
    value = pf::to_decimal(
        pf::freezer_transition_prob(a.n_white, a.m_white, a.blue, a.n, a.k));
  } else {
    throw std::invalid_argument("invalid-quantity: " + a.quantity);
  }
  j["args"] = args;
  j["value"] = value;
  std::string text = j.dump() + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    pf::write_file_atomic(out_path, text);
  return 0;
}

int cmd_oracle(const EnumArgs& a, double cap, const std::string& out_path) {
  json j;
  j["quantity"] = a.quantity;
  std::string value;
  if (a.quantity == "forests") {
    j["args"] = {a.n, a.m};
    value = pf::to_decimal(
        pf::brute_force_forests(static_cast<int32_t>(a.n), static_cast<int32_t>(a.m)));
  } else if (a.quantity == "parking" || a.quantity == "parking-root-empty" ||
             a.quantity == "parking-strong") {
    pf::ParkingFilter f;
    if (a.quantity == "parking") f.all_park = true;
    if (a.quantity == "parking-root-empty") f.root_empty = true;
    if (a.quantity == "parking-strong") {
      f.all_edges_flux = true;
      f.exits_exactly = static_cast<int32_t>(std::max<int64_t>(a.p, 0));
    }
    j["args"] = {a.n, a.m};
    value = pf::to_decimal(
        pf::brute_force_parking(static_cast<int32_t>(a.n), static_cast<int32_t>(a.m), f, cap));
  } else {
    throw std::invalid_argument("invalid-quantity: " + a.quantity);
  }
  j["value"] = value;
  std::string text = j.dump() + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    pf::write_file_atomic(out_path, text);
  return 0;
}

int cmd_numerics(const std::string& mode, const pf::ExperimentConfig& cfg) {
  std::vector<std::string> blocks;
  std::string header;
  if (mode == "p1") {
    header = "x,p1\n";
    for (double x : cfg.lambda_grid)
      blocks.push_back(pf::format_double(x) + "," + pf::format_double(pf::airy_p1(x)) + "\n");
  } else if (mode == "local-limit") {
    header = "lambda,m,steps,walk_pmf,n23_walk_pmf,p1,ratio\n";
    int64_t n = cfg.n_values.front();
    double n23 = std::cbrt(static_cast<double>(n) * static_cast<double>(n));
    for (double lam : cfg.lambda_grid) {
      int64_t m = pf::critical_window_m(n, lam);
      double lam_eff = (2.0 * static_cast<double>(m) - n) / n23;
      pf::WalkPmfResult w = pf::walk_pmf(n - m, n);
      double p1 = pf::airy_p1(lam_eff);
      blocks.push_back(pf::format_double(lam) + "," + std::to_string(m) + "," +
                       std::to_string(n - m) + "," + pf::format_double(w.value) + "," +
                       pf::format_double(n23 * w.value) + "," + pf::format_double(p1) + "," +
                       pf::format_double(n23 * w.value / p1) + "\n");
    }
  } else if (mode == "jump-kernel") {
    header = "x,lambda,y,g,density\n";
    double x = cfg.lambda_grid.size() > 0 ? cfg.lambda_grid[0] : 1.0;
    double lam = cfg.lambda_grid.size() > 1 ? cfg.lambda_grid[1] : 0.0;
    for (double y = 0.05; y <= 2.0; y += 0.05) {
      blocks.push_back(pf::format_double(x) + "," + pf::format_double(lam) + "," +
                       pf::format_double(y) + "," +
                       pf::format_double(pf::jump_kernel_g(x, lam, y)) + "," +
                       pf::format_double(pf::jump_density(x, lam, y, cfg.p)) + "\n");
    }
  } else {
    throw std::invalid_argument("invalid-mode: " + mode);
  }
  emit(cfg, header, blocks, static_cast<int64_t>(blocks.size()), 0.0);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"parkfrozen: parking on random Cayley trees and the frozen random graph"};
  app.require_subcommand(1);

  std::string config_path, n_list = "1000", lambda_list, out_path, format = "csv",
              profile = "full", quantity, mode = "p1";
  int64_t m = -1, replicas = 1;
  double p = 0.5;
  uint64_t seed = 1;
  int64_t m_cap = int64_t(1) << 33;
  double oracle_cap = 3e8;
  EnumArgs enum_args;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key=value config file; flags win");
    sub->add_option("--n", n_list, "size n (comma list for sweeps)");
    sub->add_option("--m", m, "number of edges / cars");
    sub->add_option("--lambda-grid", lambda_list, "comma-separated lambda values");
    sub->add_option("--p", p, "freeze-keep parameter in [0,1]");
    sub->add_option("--replicas", replicas, "independent replicas");
    sub->add_option("--seed", seed, "base seed");
    sub->add_option("--out", out_path, "output file (stdout when empty)");
    sub->add_option("--format", format, "csv or json");
    sub->add_option("--profile", profile, "quick or full");
    sub->add_option("--m-cap", m_cap, "resource cap on the number of steps");
    sub->add_option("--oracle-cap", oracle_cap, "resource cap on oracle configurations");
  };

  CLI::App* s_frozen = app.add_subcommand("simulate-frozen", "run the frozen process");
  CLI::App* s_er = app.add_subcommand("simulate-er", "run the plain multigraph process");
  CLI::App* s_park = app.add_subcommand("simulate-parking", "park cars on uniform random trees");
  CLI::App* s_couple = app.add_subcommand("couple-verify", "build and verify the couplings");
  CLI::App* s_npt = app.add_subcommand("sample-npt", "sample uniform nearly parked trees");
  CLI::App* s_enum = app.add_subcommand("enumerate", "exact counts and expectations");
  CLI::App* s_oracle = app.add_subcommand("oracle", "brute-force reference counts");
  CLI::App* s_num = app.add_subcommand("numerics", "stable density and local-limit tables");
  CLI::App* s_sweep = app.add_subcommand("sweep", "lambda-grid x n-grid x replicas");
  CLI::App* s_accept = app.add_subcommand("accept", "run the acceptance suite");
  for (CLI::App* sub : {s_frozen, s_er, s_park, s_couple, s_npt, s_enum, s_oracle, s_num, s_sweep,
                        s_accept})
    add_common(sub);

  s_enum->add_option("--quantity", enum_args.quantity, "which count to evaluate")->required();
  s_oracle->add_option("--quantity", enum_args.quantity, "which oracle to run")->required();
  for (CLI::App* sub : {s_enum, s_oracle}) {
    sub->add_option("--flux", enum_args.p, "outgoing flux p");
    sub->add_option("--len", enum_args.h, "branch length argument");
    sub->add_option("--k", enum_args.k, "jump size k");
    sub->add_option("--n-white", enum_args.n_white, "white vertex count");
    sub->add_option("--m-white", enum_args.m_white, "white edge count");
    sub->add_option("--blue", enum_args.blue, "frozen vertex count");
  }
  s_num->add_option("--mode", mode, "p1 | local-limit | jump-kernel");

  CLI11_PARSE(app, argc, argv);

  try {
    pf::ExperimentConfig cfg;
    // config file fills in whatever the command line did not set; flags win
    CLI::App* active = app.get_subcommands().front();
    if (!config_path.empty()) {
      auto kv = pf::parse_config_file(config_path);
      auto given = [&](const std::string& flag) { return active->count(flag) > 0; };
      if (kv.count("n") && !given("--n")) n_list = kv["n"];
      if (kv.count("m") && !given("--m")) m = std::stoll(kv["m"]);
      if (kv.count("lambda_grid") && !given("--lambda-grid")) lambda_list = kv["lambda_grid"];
      if (kv.count("p") && !given("--p")) p = std::stod(kv["p"]);
      if (kv.count("replicas") && !given("--replicas")) replicas = std::stoll(kv["replicas"]);
      if (kv.count("seed") && !given("--seed")) seed = std::stoull(kv["seed"]);
      if (kv.count("out") && !given("--out")) out_path = kv["out"];
      if (kv.count("format") && !given("--format")) format = kv["format"];
      if (kv.count("profile") && !given("--profile")) profile = kv["profile"];
    }
    cfg.n_values = parse_int_list(n_list);
    cfg.m = m;
    if (!lambda_list.empty()) cfg.lambda_grid = parse_double_list(lambda_list);
    cfg.p = p;
    cfg.replicas = replicas;
    cfg.seed = seed;
    cfg.out_path = out_path;
    cfg.format = format;
    cfg.profile = profile;
    cfg.m_cap = m_cap;
    cfg.oracle_cap = oracle_cap;

    if (app.got_subcommand(s_enum)) {
      enum_args.n = cfg.n_values.front();
      enum_args.m = cfg.m;
      cfg.subcommand = "enumerate";
      cfg.validate();
      return cmd_enumerate(enum_args, cfg.out_path);
    }
    if (app.got_subcommand(s_oracle)) {
      enum_args.n = cfg.n_values.front();
      enum_args.m = cfg.m;
      cfg.subcommand = "oracle";
      cfg.validate();
      return cmd_oracle(enum_args, cfg.oracle_cap, cfg.out_path);
    }
    if (app.got_subcommand(s_frozen) || app.got_subcommand(s_sweep)) {
      cfg.subcommand = app.got_subcommand(s_frozen) ? "simulate-frozen" : "sweep";
      cfg.validate();
      return cmd_simulate_frozen(cfg);
    }
    if (app.got_subcommand(s_er)) {
      cfg.subcommand = "simulate-er";
      cfg.validate();
      return cmd_simulate_er(cfg);
    }
    if (app.got_subcommand(s_park)) {
      cfg.subcommand = "simulate-parking";
      cfg.validate();
      return cmd_simulate_parking(cfg);
    }
    if (app.got_subcommand(s_couple)) {
      cfg.subcommand = "couple-verify";
      cfg.validate();
      return cmd_couple_verify(cfg);
    }
    if (app.got_subcommand(s_npt)) {
      cfg.subcommand = "sample-npt";
      cfg.validate();
      return cmd_sample_npt(cfg);
    }
    if (app.got_subcommand(s_num)) {
      cfg.subcommand = "numerics";
      if (cfg.lambda_grid.empty())
        for (double x = -10.0; x <= 10.0 + 1e-9; x += 0.25) cfg.lambda_grid.push_back(x);
      cfg.validate();
      return cmd_numerics(mode, cfg);
    }
    if (app.got_subcommand(s_accept)) {
      cfg.subcommand = "accept";
      cfg.validate();
      pf::AcceptanceReport rep = pf::run_acceptance(cfg.profile == "quick", std::cout);
      return rep.all_pass() ? 0 : kExitVerifyFailed;
    }
  } catch (const std::invalid_argument& e) {
    json err = {{"error", "invalid-config"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    json err = {{"error", "domain"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return kExitInvalid;
  } catch (const std::length_error& e) {
    json err = {{"error", "cap-exceeded"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return kExitCapExceeded;
  } catch (const std::exception& e) {
    json err = {{"error", "internal"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return kExitInvalid;
  }
  return 0;
}
