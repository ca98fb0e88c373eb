#include <doctest.h>

#include <cmath>
#include <vector>

#include "dofppr/dpcore.hpp"
#include "dofppr/error.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using dofppr::DofCaps;
using dofppr::DofPartition;

namespace {

dofppr::BellmanTable table_for(const dofppr::TimeSeries& ts, const DofCaps& caps,
                               unsigned threads = 1) {
  return dofppr::fill_bellman(dofppr::all_residuals(ts, caps.local_max, threads), caps);
}

}  // namespace

TEST_CASE("Example 1 Bellman values") {
  const auto ts = testing::example1();
  for (const auto& caps : {testing::interpolating_caps(), DofCaps{}}) {
    const auto b = table_for(ts, caps);
    CHECK(b.value(3, 3) == 0.0);
    CHECK(b.value(3, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(b.value(3, 2) == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("Example 1 backtracking") {
  const auto ts = testing::example1();
  const auto b = table_for(ts, testing::interpolating_caps());
  const auto p3 = dofppr::backtrack(b, 3, 3);
  CHECK(p3.segments == std::vector<dofppr::Segment>{{0, 3}});
  CHECK(p3.dofs == std::vector<int>{3});

  const auto p2 = dofppr::backtrack(b, 3, 2);
  CHECK(p2.segments == std::vector<dofppr::Segment>{{0, 1}, {1, 3}});
  CHECK(p2.dofs == std::vector<int>{1, 1});

  const auto p1 = dofppr::backtrack(b, 3, 1);
  CHECK(p1.segments == std::vector<dofppr::Segment>{{0, 3}});
  CHECK(p1.dofs == std::vector<int>{1});

  // Without interpolation the full segment cannot take 3 dofs.
  const auto d = table_for(ts, DofCaps{});
  const auto q3 = dofppr::backtrack(d, 3, 3);
  CHECK(q3.dofs == std::vector<int>{1, 1, 1});
  CHECK(dofppr::backtrack(d, 3, 2) == p2);
}

TEST_CASE("Example 1 has exactly four zero-energy models with 3 dofs") {
  const auto ts = testing::example1();
  int zero = 0;
  for (const auto& m : oracle::enumerate_models(ts.view(), 3, testing::interpolating_caps())) {
    if (m.partition.total_dof() == 3 && m.energy == 0.0) ++zero;
  }
  CHECK(zero == 4);
}

TEST_CASE("backtrack rejects infeasible pairs") {
  const auto ts = testing::example1();
  const auto b = table_for(ts, DofCaps{});
  for (auto [r, nu] : std::vector<std::pair<std::size_t, int>>{{3, 4}, {2, 3}, {0, 0}, {4, 1}, {3, 0}}) {
    try {
      dofppr::backtrack(b, r, nu);
      FAIL("expected Infeasible");
    } catch (const dofppr::Error& e) {
      CHECK(e.code() == dofppr::ErrorCode::infeasible);
    }
  }
}

TEST_CASE("fill_bellman validates caps") {
  const auto ts = testing::example1();
  const auto res = dofppr::all_residuals(ts, 2);
  DofCaps too_big;
  too_big.local_max = 3;
  CHECK_THROWS_AS(dofppr::fill_bellman(res, too_big), dofppr::Error);
  DofCaps zero_total;
  zero_total.local_max = 2;
  zero_total.total = 0;
  CHECK_THROWS_AS(dofppr::fill_bellman(res, zero_total), dofppr::Error);
}

TEST_CASE("Bellman values match brute force") {
  oracle::Gen g(101);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = g.index(1, 9);
    DofCaps caps;
    caps.local_max = static_cast<int>(g.index(1, 4));
    caps.exclude_interpolation = trial % 2 == 0;
    if (trial % 3 == 0) caps.total = static_cast<int>(g.index(1, n));
    const auto ts = oracle::random_series(g, n, trial % 4 == 0);
    const auto b = table_for(ts, caps);
    const auto brute = oracle::brute_force_bellman(ts.view(), caps);
    for (std::size_t r = 1; r <= n; ++r) {
      for (int nu = 1; nu <= static_cast<int>(n); ++nu) {
        const auto& ref = brute[r][static_cast<std::size_t>(nu)];
        const bool feasible = b.feasible(r, nu);
        CHECK(feasible == ref.has_value());
        if (feasible && ref) {
          CHECK(std::abs(b.value(r, nu) - *ref) <= 1e-8 * (1 + std::abs(*ref)));
        }
      }
    }
  }
}

TEST_CASE("Bellman invariants and backtracked partitions") {
  oracle::Gen g(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = g.index(1, 35);
    DofCaps caps;
    caps.local_max = static_cast<int>(g.index(1, 11));
    if (trial % 2) caps.total = static_cast<int>(g.index(1, 2 * n));
    const auto ts = oracle::random_series(g, n);
    const auto res = dofppr::all_residuals(ts, caps.local_max);
    const auto b = dofppr::fill_bellman(res, caps);
    for (std::size_t r = 1; r <= n; ++r) {
      CHECK(b.value(r, 1) == res(0, r, 1));
      for (int nu = 1; nu <= b.max_feasible(r); ++nu) {
        const double v = b.value(r, nu);
        CHECK(v >= 0.0);
        if (nu > 1) CHECK(v <= b.value(r, nu - 1) + 1e-10);
        const auto part = dofppr::backtrack(b, r, nu);
        CHECK(part.total_dof() == nu);
        REQUIRE(!part.segments.empty());
        CHECK(part.segments.front().begin == 0);
        CHECK(part.segments.back().end == r);
        for (std::size_t k = 0; k < part.segments.size(); ++k) {
          const auto& s = part.segments[k];
          CHECK(s.begin < s.end);
          if (k > 0) CHECK(s.begin == part.segments[k - 1].end);
          CHECK(part.dofs[k] >= 1);
          CHECK(part.dofs[k] <= caps.segment_cap(s.size()));
        }
        const double cost = dofppr::partition_cost(res, part);
        CHECK(oracle::rel_diff(cost, v, 1e-300) <= 1e-9);
      }
    }
  }
}

TEST_CASE("all-singleton interpolation gives zero energy") {
  oracle::Gen g(12);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = g.index(1, 20);
    const auto ts = oracle::random_series(g, n);
    DofCaps caps;
    caps.local_max = static_cast<int>(n);
    caps.total = static_cast<int>(n);
    const auto b = table_for(ts, caps);
    CHECK(b.value(n, static_cast<int>(n)) == 0.0);
  }
}

TEST_CASE("tables are identical across runs and thread counts") {
  oracle::Gen g(77);
  const auto ts = oracle::random_series(g, 60);
  const DofCaps caps;
  const auto a = table_for(ts, caps, 1);
  const auto b = table_for(ts, caps, 6);
  const auto c = table_for(ts, caps, 1);
  bool same = true;
  for (std::size_t r = 1; r <= 60; ++r) {
    for (int nu = 1; nu <= a.max_feasible(r); ++nu) {
      for (const auto* other : {&b, &c}) {
        same = same && a.value(r, nu) == other->value(r, nu) &&
               a.cut(r, nu).left == other->cut(r, nu).left &&
               a.cut(r, nu).dof == other->cut(r, nu).dof;
      }
    }
  }
  CHECK(same);
}

TEST_CASE("cuts store the smallest minimizing left end") {
  // Constant data: every partition with nu dofs has zero residual, so the
  // smallest l wins and the last segment spans as much as its cap allows.
  const auto ts = testing::series({0, 1, 2, 3, 4}, {2, 2, 2, 2, 2});
  const auto b = table_for(ts, DofCaps{});
  for (int nu = 1; nu <= 5; ++nu) CHECK(b.value(5, nu) == 0.0);
  CHECK(b.cut(5, 1).left == 0);
  CHECK(b.cut(5, 2).left == 0);
  CHECK(b.cut(5, 2).dof == 2);
  // Four dofs fit on the whole segment; five force singletons.
  const auto p4 = dofppr::backtrack(b, 5, 4);
  CHECK(p4.segments == std::vector<dofppr::Segment>{{0, 5}});
  const auto p5 = dofppr::backtrack(b, 5, 5);
  CHECK(p5.dofs == std::vector<int>{1, 1, 1, 1, 1});
}
