#include "parkfrozen/frozen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace parkfrozen {

int64_t critical_window_m(int64_t n, double lambda) {
  double nd = static_cast<double>(n);
  double m = std::floor(nd / 2.0 + lambda * std::cbrt(nd * nd) / 2.0);
  if (m < 0.0) return 0;
  return static_cast<int64_t>(m);
}

FrozenStepReport frozen_step(FrozenState& st, const OrientedEdge& e, double u) {
  st.m += 1;
  ComponentTable& t = st.table;
  const bool tail_blue = t.color_of(e.tail) == Color::blue;
  const bool head_blue = t.color_of(e.head) == Color::blue;

  if (tail_blue && head_blue) {
    st.discarded += 1;
    return {FrozenStepReport::dropped, 0};
  }

  if (!tail_blue && !head_blue) {
    UnionReport r = t.union_or_cycle(e);
    st.kept_edges += 1;
    if (r.kind == UnionReport::cycle_closed) {
      int32_t sz = t.size_of(r.root_a);
      t.set_color(r.root_a, Color::blue);
      st.frozen_mass += sz;
      return {FrozenStepReport::kept_cycle, sz};
    }
    return {FrozenStepReport::kept_merge, 0};
  }

  // Mixed white/blue offer.
  bool keep;
  if (st.orientation_rule) {
    keep = !tail_blue; // kept iff the edge goes white -> blue
  } else {
    keep = u < st.p;
  }
  if (!keep) {
    st.discarded += 1;
    return {FrozenStepReport::dropped, 0};
  }
  int32_t white_end = tail_blue ? e.head : e.tail;
  int32_t white_size = st.table.size_of(white_end);
  UnionReport r = t.union_or_cycle(e);
  st.kept_edges += 1;
  t.set_color(r.root_a, Color::blue);
  st.frozen_mass += white_size;
  return {FrozenStepReport::kept_freeze_merge, white_size};
}

namespace {

FrozenSnapshot take_snapshot(const FrozenState& st, double lambda) {
  FrozenSnapshot s;
  s.lambda = lambda;
  s.m = st.m;
  s.kept_edges = st.kept_edges;
  s.frozen_mass = st.frozen_mass;
  s.discarded = st.discarded;
  s.white_sizes = st.table.component_size_vector(ComponentTable::Filter::white);
  s.blue_sizes = st.table.component_size_vector(ComponentTable::Filter::blue);
  return s;
}

} // namespace

FrozenTrajectory run_frozen(int64_t n, int64_t m_max, double p, uint64_t seed,
                            const std::vector<double>& sample_grid,
                            const RunFrozenOptions& opts,
                            std::vector<FrozenJump>* jumps) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("run_frozen: p must lie in [0, 1]");
  if (m_max > opts.m_cap) throw std::length_error("run_frozen: m_max exceeds configured cap");

  // Sample times, ordered; the grid is in lambda units of the critical window.
  std::vector<std::pair<int64_t, double>> stops;
  stops.reserve(sample_grid.size());
  for (double lam : sample_grid) stops.emplace_back(critical_window_m(n, lam), lam);
  std::sort(stops.begin(), stops.end());
  int64_t run_to = m_max;
  if (!stops.empty()) run_to = std::max(run_to, stops.back().first);
  if (run_to > opts.m_cap) throw std::length_error("run_frozen: sample grid exceeds configured cap");

  const bool orientation = (p == 0.5);
  FrozenState st(n, p, orientation);
  EdgeStream stream(n, seed);

  FrozenTrajectory traj;
  traj.n = n;
  traj.p = p;
  traj.seed = seed;

  int64_t jm_lo = 0, jm_hi = -1;
  if (opts.record_jumps && jumps != nullptr) {
    jm_lo = critical_window_m(n, opts.jump_lambda_min);
    jm_hi = critical_window_m(n, opts.jump_lambda_max);
  }

  size_t next_stop = 0;
  for (int64_t m = 0; m <= run_to; ++m) {
    while (next_stop < stops.size() && stops[next_stop].first == m) {
      traj.snapshots.push_back(take_snapshot(st, stops[next_stop].second));
      ++next_stop;
    }
    if (m == run_to) break;
    OrientedEdge e = stream.next();
    int64_t before = st.frozen_mass;
    FrozenStepReport rep = frozen_step(st, e, orientation ? 0.0 : stream.aux_uniform_at(e.index));
    if (jumps != nullptr && rep.frozen_delta > 0 && st.m > jm_lo && st.m <= jm_hi) {
      jumps->push_back({st.m, before, rep.frozen_delta});
    }
  }
  if (stops.empty()) traj.snapshots.push_back(take_snapshot(st, 0.0));
  return traj;
}

ErTrajectory run_er(int64_t n, int64_t m_max, uint64_t seed,
                    const std::vector<double>& sample_grid, int64_t m_cap) {
  if (m_max > m_cap) throw std::length_error("run_er: m_max exceeds configured cap");
  std::vector<std::pair<int64_t, double>> stops;
  for (double lam : sample_grid) stops.emplace_back(critical_window_m(n, lam), lam);
  std::sort(stops.begin(), stops.end());
  int64_t run_to = m_max;
  if (!stops.empty()) run_to = std::max(run_to, stops.back().first);
  if (run_to > m_cap) throw std::length_error("run_er: sample grid exceeds configured cap");

  ComponentTable t(n);
  EdgeStream stream(n, seed);
  ErTrajectory traj;
  traj.n = n;
  traj.seed = seed;

  auto snapshot = [&](double lambda, int64_t m) {
    ErSnapshot s;
    s.lambda = lambda;
    s.m = m;
    std::vector<std::pair<int32_t, int64_t>> comps;
    for (int32_t v = 0; v < t.n(); ++v) {
      if (t.find(v) == v) comps.emplace_back(t.size_of(v), t.surplus_of(v));
    }
    std::sort(comps.begin(), comps.end(), [](auto& a, auto& b) { return a.first > b.first; });
    for (auto& [sz, sp] : comps) {
      s.sizes.push_back(sz);
      s.surpluses.push_back(sp);
    }
    traj.snapshots.push_back(std::move(s));
  };

  size_t next_stop = 0;
  for (int64_t m = 0; m <= run_to; ++m) {
    while (next_stop < stops.size() && stops[next_stop].first == m) {
      snapshot(stops[next_stop].second, m);
      ++next_stop;
    }
    if (m == run_to) break;
    t.union_or_cycle(stream.next());
  }
  if (stops.empty()) snapshot(0.0, run_to);
  return traj;
}

} // namespace parkfrozen
