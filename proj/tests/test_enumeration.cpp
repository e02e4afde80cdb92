#include <doctest.h>

#include "parkfrozen/enumeration.hpp"

using namespace parkfrozen;

TEST_CASE("forest counts, small values") {
  CHECK(count_forests(3, 1) == 3);
  CHECK(count_forests(4, 3) == 16); // Cayley: 4^2 spanning trees
  CHECK(count_forests(6, 0) == 1);
  CHECK(count_forests(1, 0) == 1);
  CHECK_THROWS_AS(count_forests(4, 4), std::domain_error);
}

TEST_CASE("brute force forests, small values") {
  CHECK(brute_force_forests(4, 2) == 15);
  CHECK(brute_force_forests(3, 2) == 3);
  CHECK_THROWS_AS(brute_force_forests(12, 3), std::length_error);
}

TEST_CASE("forest formula matches exhaustive enumeration") {
  for (int32_t n = 1; n <= 7; ++n)
    for (int32_t m = 0; m <= n - 1; ++m)
      CHECK(count_forests(n, m) == brute_force_forests(n, m));
}

TEST_CASE("parking function counts, hand values") {
  CHECK(pf_root(2, 1) == 2);
  CHECK(pf_root(3, 2) == 24);
  CHECK(pf(3, 2) == 72);
  CHECK(pf_root(4, 0) == 64); // n^{n-1}, no cars
  CHECK(pf_full(1) == 1);
  CHECK(pf_full(2) == 6);
  CHECK(sp(2) == 2);
  CHECK(sp(4) == 720);
}

TEST_CASE("brute force parking oracle basics") {
  ParkingFilter all;
  all.all_park = true;
  CHECK(brute_force_parking(3, 2, all) == 72);
  ParkingFilter strong;
  strong.all_park = true;
  strong.all_edges_flux = true;
  CHECK(brute_force_parking(2, 2, strong) == 2);
  ParkingFilter root_free;
  root_free.root_empty = true;
  CHECK(brute_force_parking(4, 0, root_free) == 64);
  CHECK_THROWS_AS(brute_force_parking(8, 8, all), std::length_error);
}

TEST_CASE("fully parked counts against brute force") {
  ParkingFilter all;
  all.all_park = true;
  for (int32_t n = 1; n <= 5; ++n) CHECK(pf_full(n) == brute_force_parking(n, n, all));
}

TEST_CASE("strong flux table starts correctly") {
  SeriesTable t(6, 4);
  for (int32_t p = 0; p <= 4; ++p) CHECK(t.sp_flux(1, p) == 1);
  CHECK(t.sp_flux(2, 0) == 2);
  // column p = 0 is (2n-2)!
  for (int32_t n = 1; n <= 6; ++n)
    CHECK(t.sp_flux(n, 0) == factorial(static_cast<uint64_t>(2 * n - 2)));
}

TEST_CASE("strong flux counts match brute force") {
  for (int32_t n = 1; n <= 4; ++n) {
    for (int32_t p = 0; p <= 2; ++p) {
      ParkingFilter f;
      f.all_edges_flux = true;
      f.exits_exactly = p;
      CHECK(sp_flux(n, p) == brute_force_parking(n, n + p, f));
    }
  }
}

TEST_CASE("series identities hold to order 20") {
  IdentityReport rep = series_identities(20);
  CHECK_MESSAGE(rep.ok, rep.first_failure);
}

TEST_CASE("last car equation holds on the truncated table") {
  IdentityReport rep = last_car_check(15, 10);
  CHECK_MESSAGE(rep.ok, rep.first_failure);
}

TEST_CASE("geometry expectations, small exact values") {
  CHECK(mean_height_exact(2) == BigRat(1, 2));
  CHECK(mean_height_exact(3) == BigRat(11, 12));
  CHECK(mean_total_distance_exact(3) == BigRat(1, 4));
  CHECK(mean_total_distance_exact(2) == BigRat(0));
}

TEST_CASE("branch length pmf and cycle weights") {
  BigRat p1 = branch_length_pmf(3, 1);
  BigRat p2 = branch_length_pmf(3, 2);
  CHECK(p1 == BigRat(2, 3));
  CHECK(p2 == BigRat(1, 3));
  CHECK(p1 + p2 == BigRat(1));
  CHECK(cycle_weight(1) == BigRat(1, 2));
  CHECK_THROWS_AS(branch_length_pmf(3, 3), std::domain_error);

  // pmf sums to 1 for larger N
  for (int64_t N : {5, 9, 17}) {
    BigRat total(0);
    for (int64_t h = 1; h <= N - 1; ++h) total += branch_length_pmf(N, h);
    CHECK(total == BigRat(1));
  }
}

TEST_CASE("height reassembles from branch lengths and cycle weights") {
  for (int64_t N = 2; N <= 50; ++N) {
    BigRat sum(0);
    for (int64_t h = 1; h <= N - 1; ++h)
      sum += branch_length_pmf(N, h) * cycle_weight(h);
    sum *= BigRat(BigCount(static_cast<long>(N - 1)));
    sum.canonicalize();
    CHECK(sum == mean_height_exact(N));
  }
}

TEST_CASE("float evaluators agree with the exact sums") {
  for (int64_t N : {10, 100, 500}) {
    CHECK(mean_height_value(N) ==
          doctest::Approx(mean_height_exact(N).get_d()).epsilon(1e-12));
    CHECK(mean_total_distance_value(N) ==
          doctest::Approx(mean_total_distance_exact(N).get_d()).epsilon(1e-12));
  }
}

TEST_CASE("freezer merge probability at a saturated state is zero") {
  // white part is a spanning tree: any white-white offer closes a cycle
  BigRat merge = freezer_merge_prob(3, 2, 3);
  CHECK(merge == BigRat(0));
  BigRat jump = freezer_transition_prob(3, 2, 0, 3, 3);
  CHECK(jump == BigRat(1));
}
