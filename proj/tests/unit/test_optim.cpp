#include "dtc/error.hpp"
#include "dtc/optim.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

using namespace dtc;

namespace {

// Minimum over all injective maps of the smaller side into the larger one.
double brute_force_assignment(const CostMatrix& m) {
  const bool flip = m.rows() > m.cols();
  const std::size_t small = flip ? m.cols() : m.rows();
  const std::size_t large = flip ? m.rows() : m.cols();
  std::vector<std::size_t> perm(large);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < small; ++i) {
      total += flip ? m(perm[i], i) : m(i, perm[i]);
    }
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double assignment_cost(const CostMatrix& m, const Assignment& a) {
  double total = 0.0;
  for (std::size_t r = 0; r < a.row_to_col.size(); ++r) {
    if (a.row_to_col[r] >= 0) {
      total += m(r, static_cast<std::size_t>(a.row_to_col[r]));
    }
  }
  return total;
}

ConflictGraph random_graph(std::mt19937_64& rng, std::size_t n, double density) {
  ConflictGraph g(n);
  std::bernoulli_distribution edge(density);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (edge(rng)) {
        g.add_edge(a, b);
      }
    }
  }
  return g;
}

// Fixed-point relaxation over every edge; independent of Dijkstra ordering.
std::vector<double> relaxation_distances(const WeightedLattice& g, Cell src) {
  const auto n = static_cast<std::size_t>(g.cols() * g.rows());
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  dist[static_cast<std::size_t>(g.id(src))] = 0.0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int id = 0; id < static_cast<int>(n); ++id) {
      const Cell c = g.cell(id);
      const double d = dist[static_cast<std::size_t>(id)];
      if (!std::isfinite(d) || (g.blocked(c) && c != src)) {
        continue;
      }
      for (const Cell nb : g.neighbors(c)) {
        const double step = nb.row == c.row ? g.horizontal_cost() : g.vertical_cost();
        auto& target = dist[static_cast<std::size_t>(g.id(nb))];
        if (d + step < target - 1e-12) {
          target = d + step;
          changed = true;
        }
      }
    }
  }
  return dist;
}

} // namespace

TEST_CASE("hungarian on a known matrix") {
  const CostMatrix m{{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
  const auto a = hungarian(m);
  CHECK(a.cost == doctest::Approx(5.0));
  CHECK(a.row_to_col == std::vector<int>{1, 0, 2});
}

TEST_CASE("hungarian matches brute force on random matrices") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> dim(1, 7);
  std::uniform_int_distribution<int> value(0, 50);
  for (int trial = 0; trial < 500; ++trial) {
    const auto rows = static_cast<std::size_t>(dim(rng));
    const auto cols = static_cast<std::size_t>(dim(rng));
    CostMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        m(r, c) = value(rng);
      }
    }
    const auto a = hungarian(m);
    const double oracle = brute_force_assignment(m);
    CHECK(a.cost == oracle);
    CHECK(assignment_cost(m, a) == oracle);
    std::set<int> used;
    int assigned = 0;
    for (const int c : a.row_to_col) {
      if (c >= 0) {
        CHECK(used.insert(c).second);
        ++assigned;
      }
    }
    CHECK(assigned == static_cast<int>(std::min(rows, cols)));
  }
}

TEST_CASE("hungarian avoids forbidden entries and reports infeasibility") {
  const double X = CostMatrix::kForbidden;
  const CostMatrix ok{{X, 1}, {2, X}};
  const auto a = hungarian(ok);
  CHECK(a.row_to_col == std::vector<int>{1, 0});
  CHECK(a.cost == doctest::Approx(3.0));

  const CostMatrix blocked{{X, X}, {1, 2}};
  CHECK_THROWS_AS((void)hungarian(blocked), InfeasibleError);

  const CostMatrix negative{{-1.0}};
  CHECK_THROWS_AS((void)hungarian(negative), Error);
  CHECK(hungarian(CostMatrix{}).row_to_col.empty());
}

TEST_CASE("greedy_mis is independent and maximal on random graphs") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<std::size_t> size(0, 64);
  std::uniform_real_distribution<double> dens(0.0, 0.6);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto g = random_graph(rng, size(rng), dens(rng));
    std::vector<double> w(g.size());
    for (auto& x : w) {
      x = static_cast<double>(rng() % 4);
    }
    const auto set = trial % 2 == 0 ? greedy_mis(g) : greedy_mis(g, w);
    CHECK(std::is_sorted(set.begin(), set.end()));
    CHECK(is_independent(g, set));
    CHECK(is_maximal_independent(g, set));
  }
}

TEST_CASE("greedy_mis ordering: weight, then degree, then id") {
  // Star: centre 0 with leaves 1..3.
  ConflictGraph star(4);
  for (std::size_t leaf = 1; leaf < 4; ++leaf) {
    star.add_edge(0, leaf);
  }
  CHECK(greedy_mis(star) == std::vector<std::size_t>{1, 2, 3});
  const std::vector<double> heavy_centre{5, 1, 1, 1};
  CHECK(greedy_mis(star, heavy_centre) == std::vector<std::size_t>{0});

  ConflictGraph edgeless(5);
  CHECK(greedy_mis(edgeless).size() == 5);

  ConflictGraph pair(2);
  pair.add_edge(0, 1);
  pair.add_edge(1, 0);
  pair.add_edge(1, 1);
  CHECK(pair.edge_count() == 1);
  CHECK(greedy_mis(pair) == std::vector<std::size_t>{0});
}

TEST_CASE("is_maximal_independent rejects non-maximal and dependent sets") {
  ConflictGraph path(3);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  const std::vector<std::size_t> dependent{0, 1};
  const std::vector<std::size_t> small{0};
  const std::vector<std::size_t> full{0, 2};
  CHECK_FALSE(is_independent(path, dependent));
  CHECK(is_independent(path, small));
  CHECK_FALSE(is_maximal_independent(path, small));
  CHECK(is_maximal_independent(path, full));
}

TEST_CASE("grid_shortest_path matches the relaxation oracle") {
  std::mt19937_64 rng(4242);
  std::bernoulli_distribution wall(0.25);
  std::uniform_int_distribution<int> coord(0, 9);
  int reachable = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const double h = trial % 3 == 0 ? 1.0 : 1.0 + static_cast<double>(trial % 4);
    const double v = trial % 3 == 0 ? 1.0 : 2.0;
    WeightedLattice grid(10, 10, h, v);
    for (int r = 0; r < 10; ++r) {
      for (int c = 0; c < 10; ++c) {
        if (wall(rng)) {
          grid.set_obstacle({c, r});
        }
      }
    }
    const Cell src{coord(rng), coord(rng)};
    const Cell dst{coord(rng), coord(rng)};
    grid.set_obstacle(src, false);
    grid.set_obstacle(dst, false);
    const auto dist = relaxation_distances(grid, src);
    const double oracle = dist[static_cast<std::size_t>(grid.id(dst))];
    if (!std::isfinite(oracle)) {
      CHECK_THROWS_AS((void)grid_shortest_path(grid, src, dst), InfeasibleError);
      continue;
    }
    ++reachable;
    const auto path = grid_shortest_path(grid, src, dst);
    CHECK(path.cost == doctest::Approx(oracle));
    REQUIRE_FALSE(path.cells.empty());
    CHECK(path.cells.front() == src);
    CHECK(path.cells.back() == dst);
    double walked = 0.0;
    for (std::size_t i = 1; i < path.cells.size(); ++i) {
      REQUIRE(adjacent(path.cells[i - 1], path.cells[i]));
      CHECK_FALSE(grid.blocked(path.cells[i]));
      walked += path.cells[i].row == path.cells[i - 1].row ? h : v;
    }
    CHECK(walked == doctest::Approx(oracle));
  }
  CHECK(reachable > 100);
}

TEST_CASE("lattice_search allows obstacle sources and targets") {
  WeightedLattice grid(5, 1);
  grid.set_obstacle({0, 0});
  grid.set_obstacle({4, 0});
  const std::vector<Cell> sources{{0, 0}};
  const auto hit = lattice_search(grid, sources, [](Cell c) { return c.col == 4; });
  REQUIRE(hit.has_value());
  CHECK(hit->cost == doctest::Approx(4.0));
  grid.set_obstacle({2, 0});
  CHECK_FALSE(lattice_search(grid, sources, [](Cell c) { return c.col == 4; }).has_value());
}

TEST_CASE("WeightedLattice neighbour order is up, down, left, right") {
  const WeightedLattice grid(3, 3);
  const auto n = grid.neighbors({1, 1});
  CHECK(n == std::vector<Cell>{{1, 0}, {1, 2}, {0, 1}, {2, 1}});
  CHECK(grid.neighbors({0, 0}).size() == 2);
}
