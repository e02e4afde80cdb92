#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parkfrozen/bigint.hpp"

namespace parkfrozen {

// ---- Forest counts ---------------------------------------------------------

// Number of unrooted unordered forests on n labeled vertices with m edges,
// by Renyi's alternating sum. Domain: 0 <= m <= n-1 (plus the empty case
// n = m = 0 which counts 1).
BigCount count_forests(int64_t n, int64_t m);

// Exhaustive oracle: acyclic m-edge subsets of the complete graph K_n.
BigCount brute_force_forests(int32_t n, int32_t m, int32_t n_cap = 9);

// ---- Parking function counts ----------------------------------------------

// Configurations (rooted Cayley tree, ordered car arrivals) with the root
// left free after parking; equals n^{n-m-1} m! 2^m #forests(n, m).
BigCount pf_root(int64_t n, int64_t m);

// Configurations where all m cars park; pf(n, n) is the fully parked count.
BigCount pf(int64_t n, int64_t m);

// Fully parked trees of size n (n cars all park): ((n-1)!)^2 sum_j (n-j)(2n)^j / j!.
BigCount pf_full(int64_t n);

// Strongly parked trees of size n: (2n-2)!.
BigCount sp(int64_t n);

struct ParkingFilter {
  bool all_park = false;       // no car exits
  bool root_empty = false;     // root free after parking (implies all_park)
  bool all_edges_flux = false; // every tree edge carries at least one car
  int32_t exits_exactly = -1;  // require exactly this many cars to exit
};

// Exhaustive oracle over all n^{n-1} rooted trees x n^m arrival sequences.
BigCount brute_force_parking(int32_t n, int32_t m, const ParkingFilter& filter,
                             double config_cap = 3e8);

// ---- Bivariate series of strongly parked trees with flux -------------------

// Triangular table of coefficients a[n][p] = SP(n, n+p) / (n! (n+p)!) filled
// from the root-decomposition functional equation
//   S(x,y) = (x/y) (e^y e^{S(x,y) - S(x,0)} - 1),
// which determines the coefficients by induction on the vertex count.
class SeriesTable {
public:
  SeriesTable(int32_t n_max, int32_t p_max);

  int32_t n_max() const { return n_max_; }
  int32_t p_max() const { return p_max_; }
  const BigRat& coeff(int32_t n, int32_t p) const; // a[n][p]
  BigCount sp_flux(int32_t n, int32_t p) const;    // SP(n, n+p)

  // Evaluate the truncated double series at a point.
  double evaluate(double x, double y) const;

private:
  int32_t n_max_, p_max_;
  std::vector<std::vector<BigRat>> a_; // a_[n][p], n in [1, n_max]
};

// SP(n, n+p) through a cached table (grown on demand).
BigCount sp_flux(int32_t n, int32_t p);

struct IdentityReport {
  bool ok = true;
  std::string first_failure;
};

// Coefficient-wise checks, exact rationals, of
//   N(x) = x exp(F(x)),   F(x) = S(N(x)),
//   T(x) = xT'(x) - (xT'(x))^2/2,  T'(x) = exp(xT'(x)),  N(x) = T(2x)/2,
// and of the S(x,0) column against the Catalan-derivative closed form.
IdentityReport series_identities(int32_t n_max);

// Coefficient-wise check of the last-car equation
//   y dS/dy + x dS/dx - S*(x,0) = x y dS/dx / (1 - S*(x,0)),  S* = x dS/dx,
// together with its y = 0 specialization S*(x,0) = x / (1 - S*(x,0)).
IdentityReport last_car_check(int32_t n_max, int32_t p_max);

// ---- Geometry expectations --------------------------------------------------

// Mean height of a uniform nearly parked tree of size N (exact rational):
//   sum_h binom(N, h+1) ((h+1)/N)^2 N^{1-h} (1/2)_h.
BigRat mean_height_exact(int64_t N);

// Mean total distance driven in a uniform nearly parked tree of size N:
//   (1/2) sum_h binom(N-1, h+1) (h+2) N^{-h} (1/2)_h.
BigRat mean_total_distance_exact(int64_t N);

// Same sums evaluated in floating point (usable at large N).
double mean_height_value(int64_t N);
double mean_total_distance_value(int64_t N);

// P(branch length between two uniform distinct points of an unrooted Cayley
// tree = h) = (h+1)/(N-1) * N(N-1)...(N-h) / N^{h+1}.
BigRat branch_length_pmf(int64_t N, int64_t h);

// E[(1/2)^{#cycles of a uniform permutation of h elements}] = (h+1)/(h+1)! (1/2)_h.
BigRat cycle_weight(int64_t h);

// ---- Freezer transition kernel ----------------------------------------------

// Exact jump probability of the freezer chain: from a state with nWhite white
// vertices, mWhite white edges and blueMass frozen vertices (n total), the
// probability that the next offer freezes a white component of size k:
//   binom(nWhite, k) k^{k-2} #F(nWhite-k, mWhite-k+1) / #F(nWhite, mWhite)
//     * (k^2 + k blueMass) / n^2.
BigRat freezer_transition_prob(int64_t n_white, int64_t m_white, int64_t blue_mass,
                               int64_t n, int64_t k);

// Probability that the offer is discarded (no change): blueMass / n.
BigRat freezer_no_change_prob(int64_t blue_mass, int64_t n);

// Probability that the offer merges two white components without freezing:
//   2 (mWhite+1) #F(nWhite, mWhite+1) / (#F(nWhite, mWhite) n^2).
BigRat freezer_merge_prob(int64_t n_white, int64_t m_white, int64_t n);

} // namespace parkfrozen
