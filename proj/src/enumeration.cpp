#include "parkfrozen/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace parkfrozen {

BigCount count_forests(int64_t n, int64_t m) {
  if (n == 0 && m == 0) return BigCount(1);
  if (n < 1) throw std::domain_error("count_forests: n must be >= 1");
  if (m < 0 || m >= n) throw std::domain_error("count_forests: need 0 <= m <= n-1");

  const int64_t c = n - m; // number of components
  BigRat sum(0);
  for (int64_t i = 0; i <= std::min(c, m); ++i) {
    // binom(c, i) (-1/2)^i (c + i) n^{m-i-1} n! / (m-i)!
    BigRat term(binomial(static_cast<uint64_t>(c), static_cast<uint64_t>(i)) *
                    BigCount(static_cast<long>(c + i)),
                pow_uint(BigCount(2), static_cast<uint64_t>(i)));
    if (i % 2 == 1) term = -term;
    int64_t e = m - i - 1;
    if (e >= 0) {
      term *= BigRat(pow_uint(BigCount(static_cast<long>(n)), static_cast<uint64_t>(e)));
    } else {
      term /= BigRat(BigCount(static_cast<long>(n)));
    }
    term *= BigRat(factorial(static_cast<uint64_t>(n)), factorial(static_cast<uint64_t>(m - i)));
    sum += term;
  }
  sum /= BigRat(factorial(static_cast<uint64_t>(c)));
  sum.canonicalize();
  if (sum.get_den() != 1) throw std::logic_error("count_forests: non-integral result");
  return sum.get_num();
}

namespace {

struct EdgePair {
  int32_t a, b;
};

void forest_subsets(const std::vector<EdgePair>& edges, size_t next, int32_t remaining,
                    std::vector<int32_t>& parent, BigCount& count) {
  if (remaining == 0) {
    count += 1;
    return;
  }
  if (edges.size() - next < static_cast<size_t>(remaining)) return;
  auto find = [&](int32_t v) {
    while (parent[v] != v) v = parent[v];
    return v;
  };
  // take edges[next] if it does not close a cycle
  int32_t ra = find(edges[next].a), rb = find(edges[next].b);
  if (ra != rb) {
    parent[ra] = rb;
    forest_subsets(edges, next + 1, remaining - 1, parent, count);
    parent[ra] = ra;
  }
  forest_subsets(edges, next + 1, remaining, parent, count);
}

} // namespace

BigCount brute_force_forests(int32_t n, int32_t m, int32_t n_cap) {
  if (n > n_cap) throw std::length_error("brute_force_forests: n exceeds cap");
  if (n < 1 || m < 0) throw std::domain_error("brute_force_forests: bad arguments");
  if (m > n - 1) return BigCount(0);
  std::vector<EdgePair> edges;
  for (int32_t a = 0; a < n; ++a)
    for (int32_t b = a + 1; b < n; ++b) edges.push_back({a, b});
  std::vector<int32_t> parent(n);
  for (int32_t v = 0; v < n; ++v) parent[v] = v;
  BigCount count(0);
  forest_subsets(edges, 0, m, parent, count);
  return count;
}

BigCount pf_root(int64_t n, int64_t m) {
  if (n < 1 || m < 0 || m > n - 1) throw std::domain_error("pf_root: need 0 <= m <= n-1");
  BigCount r = pow_uint(BigCount(static_cast<long>(n)), static_cast<uint64_t>(n - m - 1));
  r *= factorial(static_cast<uint64_t>(m));
  r *= pow_uint(BigCount(2), static_cast<uint64_t>(m));
  r *= count_forests(n, m);
  return r;
}

BigCount pf(int64_t n, int64_t m) {
  if (m > n) throw std::domain_error("pf: m must be <= n");
  if (m == n) return pf_full(n);
  BigRat r(pf_root(n, m) * BigCount(static_cast<long>(n)), BigCount(static_cast<long>(n - m)));
  r.canonicalize();
  if (r.get_den() != 1) throw std::logic_error("pf: non-integral result");
  return r.get_num();
}

BigCount pf_full(int64_t n) {
  if (n < 1) throw std::domain_error("pf_full: n must be >= 1");
  BigRat sum(0);
  for (int64_t j = 0; j <= n - 1; ++j) {
    BigRat term(BigCount(static_cast<long>(n - j)) *
                    pow_uint(BigCount(static_cast<long>(2 * n)), static_cast<uint64_t>(j)),
                factorial(static_cast<uint64_t>(j)));
    sum += term;
  }
  BigCount sq = factorial(static_cast<uint64_t>(n - 1));
  sum *= BigRat(sq * sq);
  sum.canonicalize();
  if (sum.get_den() != 1) throw std::logic_error("pf_full: non-integral result");
  return sum.get_num();
}

BigCount sp(int64_t n) {
  if (n < 1) throw std::domain_error("sp: n must be >= 1");
  return factorial(static_cast<uint64_t>(2 * n - 2));
}

// ---- Brute-force parking oracle ---------------------------------------------

namespace {

// All rooted trees on n labeled vertices as parent vectors (parent[root] = -1).
const std::vector<std::vector<int32_t>>& rooted_trees(int32_t n) {
  static std::mutex mu;
  static std::vector<std::vector<std::vector<int32_t>>> cache(1);
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int32_t>(cache.size()) <= n) cache.emplace_back();
  auto& trees = cache[n];
  if (!trees.empty() || n == 0) return trees;
  std::vector<int32_t> parent(n, 0);
  std::vector<int32_t> seen(n, -1);
  for (int32_t root = 0; root < n; ++root) {
    parent.assign(n, 0);
    parent[root] = -1;
    while (true) {
      // validity: every vertex reaches root without a cycle
      bool ok = true;
      for (int32_t v = 0; v < n && ok; ++v) {
        int32_t u = v;
        while (u != root) {
          if (seen[u] == v) { ok = false; break; } // revisit within this walk
          seen[u] = v;
          u = parent[u];
        }
      }
      for (int32_t v = 0; v < n; ++v) seen[v] = -1;
      if (ok) trees.push_back(parent);
      // odometer over non-root entries
      int32_t pos = n - 1;
      while (pos >= 0) {
        if (pos == root) { --pos; continue; }
        if (++parent[pos] < n) break;
        parent[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  return trees;
}

} // namespace

BigCount brute_force_parking(int32_t n, int32_t m, const ParkingFilter& filter,
                             double config_cap) {
  if (n < 1 || m < 0) throw std::domain_error("brute_force_parking: bad arguments");
  if (std::pow(static_cast<double>(n), n - 1 + m) > config_cap)
    throw std::length_error("brute_force_parking: configuration count exceeds cap");

  const auto& trees = rooted_trees(n);
  BigCount count(0);
  std::vector<int32_t> arrivals(m, 0);
  std::vector<int32_t> occupant(n);
  std::vector<int8_t> fluxed(n);

  for (const auto& parent : trees) {
    int32_t root = 0;
    for (int32_t v = 0; v < n; ++v)
      if (parent[v] < 0) root = v;
    arrivals.assign(m, 0);
    while (true) {
      // lean parking run
      std::fill(occupant.begin(), occupant.end(), 0);
      std::fill(fluxed.begin(), fluxed.end(), 0);
      int32_t exits = 0;
      for (int32_t car = 0; car < m; ++car) {
        int32_t v = arrivals[car];
        while (occupant[v] != 0) {
          if (v == root) { v = -1; break; }
          fluxed[v] = 1;
          v = parent[v];
        }
        if (v < 0) ++exits;
        else occupant[v] = car + 1;
      }
      bool ok = true;
      if (filter.all_park && exits > 0) ok = false;
      if (ok && filter.root_empty && occupant[root] != 0) ok = false;
      if (ok && filter.exits_exactly >= 0 && exits != filter.exits_exactly) ok = false;
      if (ok && filter.all_edges_flux) {
        for (int32_t v = 0; v < n && ok; ++v)
          if (v != root && !fluxed[v]) ok = false;
      }
      if (ok) count += 1;
      // odometer over arrivals
      int32_t pos = m - 1;
      while (pos >= 0 && ++arrivals[pos] == n) arrivals[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return count;
}

// ---- Series table ------------------------------------------------------------

namespace {

using Poly = std::vector<BigRat>; // coefficients in y, fixed length

Poly poly_mul(const Poly& a, const Poly& b, size_t len) {
  Poly out(len, BigRat(0));
  for (size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size() && i + j < len; ++j) {
      if (b[j] == 0) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

} // namespace

SeriesTable::SeriesTable(int32_t n_max, int32_t p_max) : n_max_(n_max), p_max_(p_max) {
  if (n_max < 1 || p_max < 0) throw std::domain_error("SeriesTable: bad bounds");
  // The coefficient a[n][p] depends on a[n-1][p+1], so filling row by row
  // needs flux headroom: carry the columns out to p_max + n_max internally,
  // which keeps every exposed cell inside the correctly determined triangle.
  const int32_t p_int = p_max + n_max;
  const size_t len = static_cast<size_t>(p_int) + 2; // y-degrees 0 .. p_int+1
  a_.assign(n_max + 1, std::vector<BigRat>(p_int + 1, BigRat(0)));

  // e^y truncated
  Poly expy(len, BigRat(0));
  expy[0] = 1;
  for (size_t t = 1; t < len; ++t) expy[t] = expy[t - 1] / BigRat(static_cast<long>(t));

  // B = S(x,y) - S(x,0) graded by x-degree; C = exp(B) with C_0 = 1.
  std::vector<Poly> B(n_max + 1, Poly(len, BigRat(0)));
  std::vector<Poly> C(n_max + 1, Poly(len, BigRat(0)));
  C[0][0] = 1;

  for (int32_t n = 1; n <= n_max; ++n) {
    if (n >= 2) {
      // C_{n-1} = (1/(n-1)) sum_{i=1}^{n-1} i B_i C_{n-1-i}
      Poly acc(len, BigRat(0));
      for (int32_t i = 1; i <= n - 1; ++i) {
        Poly prod = poly_mul(B[i], C[n - 1 - i], len);
        BigRat w(static_cast<long>(i));
        for (size_t t = 0; t < len; ++t)
          if (prod[t] != 0) acc[t] += w * prod[t];
      }
      for (size_t t = 0; t < len; ++t) C[n - 1][t] = acc[t] / BigRat(static_cast<long>(n - 1));
    }
    // x^{n-1} slice of e^B is e^y * C_{n-1}; then a[n][p] = slice[y^{p+1}].
    Poly slice = poly_mul(expy, C[n - 1], len);
    for (int32_t p = 0; p <= p_int; ++p) a_[n][p] = slice[static_cast<size_t>(p) + 1];
    for (int32_t p = 1; p <= p_int; ++p) B[n][p] = a_[n][p];
  }
}

const BigRat& SeriesTable::coeff(int32_t n, int32_t p) const {
  if (n < 1 || n > n_max_ || p < 0 || p > p_max_)
    throw std::out_of_range("SeriesTable::coeff: index out of range");
  return a_[n][p];
}

BigCount SeriesTable::sp_flux(int32_t n, int32_t p) const {
  BigRat v = coeff(n, p);
  v *= BigRat(factorial(static_cast<uint64_t>(n)) * factorial(static_cast<uint64_t>(n + p)));
  v.canonicalize();
  if (v.get_den() != 1) throw std::logic_error("sp_flux: non-integral coefficient");
  return v.get_num();
}

double SeriesTable::evaluate(double x, double y) const {
  double total = 0.0;
  double xn = 1.0;
  for (int32_t n = 1; n <= n_max_; ++n) {
    xn *= x;
    double yp = 1.0;
    double row = 0.0;
    for (int32_t p = 0; p <= p_max_; ++p) {
      row += coeff(n, p).get_d() * yp;
      yp *= y;
    }
    total += xn * row;
  }
  return total;
}

BigCount sp_flux(int32_t n, int32_t p) {
  static std::mutex mu;
  static std::optional<SeriesTable> table;
  std::lock_guard<std::mutex> lock(mu);
  if (!table || table->n_max() < n || table->p_max() < p) {
    int32_t nm = std::max<int32_t>(n, table ? table->n_max() : 8);
    int32_t pm = std::max<int32_t>(p, table ? table->p_max() : 8);
    table.emplace(nm, pm);
  }
  return table->sp_flux(n, p);
}

// ---- Series identities --------------------------------------------------------

namespace {

std::vector<BigRat> exp_series(const std::vector<BigRat>& f) {
  // f has f[0] == 0; returns exp(f) coefficients of the same length.
  const size_t n = f.size();
  std::vector<BigRat> e(n, BigRat(0));
  e[0] = 1;
  for (size_t k = 1; k < n; ++k) {
    BigRat acc(0);
    for (size_t j = 1; j <= k; ++j) {
      if (f[j] == 0) continue;
      acc += BigRat(static_cast<long>(j)) * f[j] * e[k - j];
    }
    e[k] = acc / BigRat(static_cast<long>(k));
  }
  return e;
}

std::string coeff_failure(const char* what, int32_t n) {
  return std::string(what) + " fails first at coefficient n = " + std::to_string(n);
}

} // namespace

IdentityReport series_identities(int32_t n_max) {
  IdentityReport rep;
  const size_t len = static_cast<size_t>(n_max) + 1;

  std::vector<BigRat> T(len, BigRat(0)), N(len, BigRat(0)), F(len, BigRat(0));
  for (int32_t n = 1; n <= n_max; ++n) {
    BigRat tn(pow_uint(BigCount(static_cast<long>(n)), static_cast<uint64_t>(std::max<int64_t>(n - 2, 0))),
              factorial(static_cast<uint64_t>(n)));
    tn.canonicalize();
    T[n] = tn; // n = 1: 1^{-1} = 1^{0} = 1

    N[n] = BigRat(pf_root(n, n - 1),
                  factorial(static_cast<uint64_t>(n)) * factorial(static_cast<uint64_t>(n - 1)));
    N[n].canonicalize();
    BigCount nf = factorial(static_cast<uint64_t>(n));
    F[n] = BigRat(pf_full(n), nf * nf);
    F[n].canonicalize();
  }

  // N(x) = x exp(F(x))
  {
    std::vector<BigRat> e = exp_series(F);
    for (int32_t n = 1; n <= n_max; ++n) {
      if (N[n] != e[n - 1]) {
        rep.ok = false;
        rep.first_failure = coeff_failure("N = x exp(F)", n);
        return rep;
      }
    }
  }

  // F(x) = S(N(x)) with S(x) = sum (2n-2)!/(n!)^2 x^n
  {
    std::vector<BigRat> S(len, BigRat(0));
    for (int32_t n = 1; n <= n_max; ++n) {
      BigCount nf = factorial(static_cast<uint64_t>(n));
      S[n] = BigRat(factorial(static_cast<uint64_t>(2 * n - 2)), nf * nf);
      S[n].canonicalize();
    }
    std::vector<BigRat> acc(len, BigRat(0));
    std::vector<BigRat> Npow(len, BigRat(0));
    Npow[0] = 1; // N^0
    for (int32_t k = 1; k <= n_max; ++k) {
      // Npow <- Npow * N
      std::vector<BigRat> next(len, BigRat(0));
      for (size_t i = 0; i < len; ++i) {
        if (Npow[i] == 0) continue;
        for (size_t j = 1; i + j < len; ++j) {
          if (N[j] == 0) continue;
          next[i + j] += Npow[i] * N[j];
        }
      }
      Npow = std::move(next);
      if (S[k] != 0)
        for (size_t i = 0; i < len; ++i)
          if (Npow[i] != 0) acc[i] += S[k] * Npow[i];
    }
    for (int32_t n = 1; n <= n_max; ++n) {
      if (F[n] != acc[n]) {
        rep.ok = false;
        rep.first_failure = coeff_failure("F = S(N)", n);
        return rep;
      }
    }
  }

  // T identities and N(x) = T(2x)/2
  {
    std::vector<BigRat> R(len, BigRat(0)); // x T'(x)
    for (int32_t n = 1; n <= n_max; ++n) R[n] = BigRat(static_cast<long>(n)) * T[n];
    std::vector<BigRat> R2(len, BigRat(0));
    for (size_t i = 1; i < len; ++i)
      for (size_t j = 1; i + j < len; ++j) R2[i + j] += R[i] * R[j];
    for (int32_t n = 1; n <= n_max; ++n) {
      if (T[n] != R[n] - R2[n] / BigRat(2)) {
        rep.ok = false;
        rep.first_failure = coeff_failure("T = xT' - (xT')^2/2", n);
        return rep;
      }
    }
    std::vector<BigRat> eR = exp_series(R);
    for (int32_t j = 0; j <= n_max - 1; ++j) {
      BigRat tp = BigRat(static_cast<long>(j + 1)) * T[j + 1]; // coefficient of x^j in T'
      if (tp != eR[j]) {
        rep.ok = false;
        rep.first_failure = coeff_failure("T' = exp(xT')", j + 1);
        return rep;
      }
    }
    for (int32_t n = 1; n <= n_max; ++n) {
      BigRat rhs = T[n] * BigRat(pow_uint(BigCount(2), static_cast<uint64_t>(n))) / BigRat(2);
      if (N[n] != rhs) {
        rep.ok = false;
        rep.first_failure = coeff_failure("N(x) = T(2x)/2", n);
        return rep;
      }
    }
  }

  // S(x, 0) column against the Catalan-derivative closed form.
  {
    SeriesTable table(n_max, 0);
    for (int32_t n = 1; n <= n_max; ++n) {
      BigCount nf = factorial(static_cast<uint64_t>(n));
      BigRat closed(factorial(static_cast<uint64_t>(2 * n - 2)), nf * nf);
      closed.canonicalize();
      // Catalan route: [x^n] S(x,0) = Cat(n-1)/n
      BigRat catalan(binomial(static_cast<uint64_t>(2 * n - 2), static_cast<uint64_t>(n - 1)),
                     BigCount(static_cast<long>(n)) * BigCount(static_cast<long>(n)));
      catalan.canonicalize();
      if (table.coeff(n, 0) != closed || closed != catalan) {
        rep.ok = false;
        rep.first_failure = coeff_failure("S(x,0) closed form", n);
        return rep;
      }
    }
  }
  return rep;
}

IdentityReport last_car_check(int32_t n_max, int32_t p_max) {
  IdentityReport rep;
  SeriesTable t(n_max, p_max);

  auto a = [&](int32_t n, int32_t p) -> BigRat {
    if (n < 1 || p < 0) return BigRat(0);
    return t.coeff(n, p);
  };

  // L1 = y dS/dy + x dS/dx - S*(x,0);  check L1 (1 - S*(x,0)) = x y dS/dx.
  for (int32_t n = 1; n <= n_max; ++n) {
    for (int32_t p = 0; p <= p_max; ++p) {
      auto l1 = [&](int32_t nn, int32_t pp) -> BigRat {
        BigRat v = BigRat(static_cast<long>(pp + nn)) * a(nn, pp);
        if (pp == 0) v -= BigRat(static_cast<long>(nn)) * a(nn, 0);
        return v;
      };
      BigRat lhs = l1(n, p);
      for (int32_t k = 1; k < n; ++k) {
        BigRat sk = BigRat(static_cast<long>(k)) * a(k, 0); // S*(x,0) coefficient
        if (sk != 0) lhs -= l1(n - k, p) * sk;
      }
      BigRat rhs(0);
      if (p >= 1) rhs = BigRat(static_cast<long>(n)) * a(n, p - 1);
      if (lhs != rhs) {
        rep.ok = false;
        rep.first_failure = "last-car equation fails first at (n, p) = (" +
                            std::to_string(n) + ", " + std::to_string(p) + ")";
        return rep;
      }
    }
  }

  // y = 0 specialization: S*(x,0) (1 - S*(x,0)) = x.
  for (int32_t n = 1; n <= n_max; ++n) {
    BigRat lhs = BigRat(static_cast<long>(n)) * a(n, 0);
    for (int32_t k = 1; k < n; ++k)
      lhs -= (BigRat(static_cast<long>(k)) * a(k, 0)) *
             (BigRat(static_cast<long>(n - k)) * a(n - k, 0));
    BigRat rhs = (n == 1) ? BigRat(1) : BigRat(0);
    if (lhs != rhs) {
      rep.ok = false;
      rep.first_failure = coeff_failure("S*(x,0) = x/(1-S*(x,0))", n);
      return rep;
    }
  }
  return rep;
}

// ---- Geometry expectations ----------------------------------------------------

BigRat mean_height_exact(int64_t N) {
  if (N < 1) throw std::domain_error("mean_height_exact: N must be >= 1");
  BigRat sum(0);
  for (int64_t h = 1; h <= N - 1; ++h) {
    BigRat term(binomial(static_cast<uint64_t>(N), static_cast<uint64_t>(h + 1)));
    BigRat frac(BigCount(static_cast<long>(h + 1)), BigCount(static_cast<long>(N)));
    frac.canonicalize();
    term *= frac * frac;
    term /= BigRat(pow_uint(BigCount(static_cast<long>(N)), static_cast<uint64_t>(h - 1)));
    term *= pochhammer_half(static_cast<uint64_t>(h));
    sum += term;
  }
  sum.canonicalize();
  return sum;
}

BigRat mean_total_distance_exact(int64_t N) {
  if (N < 1) throw std::domain_error("mean_total_distance_exact: N must be >= 1");
  BigRat sum(0);
  for (int64_t h = 1; h <= N - 2; ++h) {
    BigRat term(binomial(static_cast<uint64_t>(N - 1), static_cast<uint64_t>(h + 1)) *
                BigCount(static_cast<long>(h + 2)));
    term /= BigRat(pow_uint(BigCount(static_cast<long>(N)), static_cast<uint64_t>(h)));
    term *= pochhammer_half(static_cast<uint64_t>(h));
    sum += term;
  }
  sum /= BigRat(2);
  sum.canonicalize();
  return sum;
}

namespace {

// Both expectation sums share the shape  sum_h base_h (1/2)_h with smooth
// positive terms; evaluate with a running term ratio.
double height_sum_value(int64_t N) {
  // term_h = [prod_{i=0..h} (N-i)/N] / N^{... } (h+1)/h! (1/2)_h, see exact form.
  double sum = 0.0;
  double term = 0.0;
  for (int64_t h = 1; h <= N - 1; ++h) {
    if (h == 1) {
      term = static_cast<double>(N - 1) / N * 2.0 * 0.5; // h = 1 value
    } else {
      double ratio = (static_cast<double>(N - h) / N) *
                     (static_cast<double>(h + 1) / h) *
                     ((h - 0.5) / h);
      term *= ratio;
    }
    sum += term;
    if (term < sum * 1e-18 && h > 8) break;
  }
  return sum;
}

} // namespace

double mean_height_value(int64_t N) {
  if (N < 1) throw std::domain_error("mean_height_value: N must be >= 1");
  return height_sum_value(N);
}

double mean_total_distance_value(int64_t N) {
  if (N < 1) throw std::domain_error("mean_total_distance_value: N must be >= 1");
  double sum = 0.0;
  double term = 0.0;
  for (int64_t h = 1; h <= N - 2; ++h) {
    if (h == 1) {
      // (1/2) binom(N-1, 2) * 3 / N * (1/2)
      term = 0.5 * (static_cast<double>(N - 1) * (N - 2) / 2.0) * 3.0 / N * 0.5;
    } else {
      // binom(N-1,h+1)/binom(N-1,h) = (N-1-h)/(h+1)
      double ratio = (static_cast<double>(N - 1 - h) / (h + 1)) *
                     (static_cast<double>(h + 2) / (h + 1)) * ((h - 0.5) / N);
      term *= ratio;
    }
    sum += term;
    if (term < sum * 1e-18 && h > 8) break;
  }
  return sum;
}

BigRat branch_length_pmf(int64_t N, int64_t h) {
  if (h < 1 || h > N - 1) throw std::domain_error("branch_length_pmf: h out of range");
  BigCount num(1);
  for (int64_t i = 0; i <= h; ++i) num *= BigCount(static_cast<long>(N - i));
  BigRat r(BigCount(static_cast<long>(h + 1)) * num,
           BigCount(static_cast<long>(N - 1)) *
               pow_uint(BigCount(static_cast<long>(N)), static_cast<uint64_t>(h + 1)));
  r.canonicalize();
  return r;
}

BigRat cycle_weight(int64_t h) {
  if (h < 0) throw std::domain_error("cycle_weight: h must be >= 0");
  BigRat r(BigCount(static_cast<long>(h + 1)), factorial(static_cast<uint64_t>(h + 1)));
  r *= pochhammer_half(static_cast<uint64_t>(h));
  r.canonicalize();
  return r;
}

// ---- Freezer kernel ------------------------------------------------------------

namespace {

BigCount forests_or_zero(int64_t n, int64_t m) {
  if (n == 0) return BigCount(m == 0 ? 1 : 0);
  if (m < 0 || m > n - 1) return BigCount(0);
  return count_forests(n, m);
}

} // namespace

BigRat freezer_transition_prob(int64_t n_white, int64_t m_white, int64_t blue_mass,
                               int64_t n, int64_t k) {
  if (n < 1 || n_white + blue_mass != n || n_white < 0 || blue_mass < 0)
    throw std::domain_error("freezer_transition_prob: inconsistent masses");
  if (k < 1 || k > n_white) throw std::domain_error("freezer_transition_prob: k out of range");
  if (m_white < 0 || (n_white > 0 && m_white > n_white - 1))
    throw std::domain_error("freezer_transition_prob: m_white out of range");

  BigCount denom = forests_or_zero(n_white, m_white);
  if (denom == 0) throw std::domain_error("freezer_transition_prob: empty state space");
  BigCount numer = forests_or_zero(n_white - k, m_white - k + 1);
  if (numer == 0) return BigRat(0);

  // binom(n', k) k^{k-2}: at k = 1 the factor is 1/k.
  BigRat r(binomial(static_cast<uint64_t>(n_white), static_cast<uint64_t>(k)));
  if (k >= 2) {
    r *= BigRat(pow_uint(BigCount(static_cast<long>(k)), static_cast<uint64_t>(k - 2)));
  } else {
    r /= BigRat(BigCount(static_cast<long>(k)));
  }
  r *= BigRat(numer, denom);
  r *= BigRat(BigCount(static_cast<long>(k)) * BigCount(static_cast<long>(k + blue_mass)),
              BigCount(static_cast<long>(n)) * BigCount(static_cast<long>(n)));
  r.canonicalize();
  return r;
}

BigRat freezer_no_change_prob(int64_t blue_mass, int64_t n) {
  BigRat r(BigCount(static_cast<long>(blue_mass)), BigCount(static_cast<long>(n)));
  r.canonicalize();
  return r;
}

BigRat freezer_merge_prob(int64_t n_white, int64_t m_white, int64_t n) {
  BigCount denom = forests_or_zero(n_white, m_white);
  if (denom == 0) throw std::domain_error("freezer_merge_prob: empty state space");
  BigCount numer = forests_or_zero(n_white, m_white + 1);
  BigRat r(BigCount(2) * BigCount(static_cast<long>(m_white + 1)) * numer,
           denom * BigCount(static_cast<long>(n)) * BigCount(static_cast<long>(n)));
  r.canonicalize();
  return r;
}

} // namespace parkfrozen
