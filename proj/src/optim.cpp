#include "dtc/optim.hpp"

#include "dtc/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <tuple>

namespace dtc {

CostMatrix::CostMatrix(std::initializer_list<std::initializer_list<double>> init)
    : rows_(init.size()), cols_(init.size() == 0 ? 0 : init.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : init) {
    if (row.size() != cols_) {
      throw Error("cost matrix rows must have equal length");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

namespace {

// Shortest augmenting path with potentials; requires n <= m. Returns, for
// each of the n rows, the chosen column.
std::vector<int> solve_rows_le_cols(const std::vector<std::vector<double>>& a) {
  const std::size_t n = a.size();
  const std::size_t m = a.front().size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0);
  std::vector<double> v(m + 1, 0.0);
  std::vector<std::size_t> p(m + 1, 0);
  std::vector<std::size_t> way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j] != 0) {
          continue;
        }
        const double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j] != 0) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) {
      row_to_col[p[j] - 1] = static_cast<int>(j - 1);
    }
  }
  return row_to_col;
}

} // namespace

Assignment hungarian(const CostMatrix& cost) {
  Assignment out;
  out.row_to_col.assign(cost.rows(), -1);
  if (cost.rows() == 0 || cost.cols() == 0) {
    return out;
  }
  double finite_sum = 0.0;
  for (std::size_t r = 0; r < cost.rows(); ++r) {
    for (std::size_t c = 0; c < cost.cols(); ++c) {
      const double x = cost(r, c);
      if (std::isnan(x) || (x < 0.0)) {
        throw Error("cost entries must be non-negative or forbidden");
      }
      if (!CostMatrix::forbidden(x)) {
        finite_sum += x;
      }
    }
  }
  // Any assignment touching a forbidden entry costs more than every
  // all-finite one, so a forbidden pick in the optimum means infeasible.
  const double big = 1.0 + 2.0 * finite_sum;
  const bool transpose = cost.rows() > cost.cols();
  const std::size_t n = transpose ? cost.cols() : cost.rows();
  const std::size_t m = transpose ? cost.rows() : cost.cols();
  std::vector<std::vector<double>> a(n, std::vector<double>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double x = transpose ? cost(j, i) : cost(i, j);
      a[i][j] = CostMatrix::forbidden(x) ? big : x;
    }
  }
  const auto match = solve_rows_le_cols(a);
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(match[i]);
    const std::size_t r = transpose ? j : i;
    const std::size_t c = transpose ? i : j;
    if (CostMatrix::forbidden(cost(r, c))) {
      throw InfeasibleError("no assignment avoids forbidden entries");
    }
    out.row_to_col[r] = static_cast<int>(c);
    out.cost += cost(r, c);
  }
  return out;
}

// ---------------------------------------------------------------------------

void ConflictGraph::add_edge(std::size_t a, std::size_t b) {
  if (a == b) {
    return;
  }
  const auto insert = [](std::vector<std::size_t>& list, std::size_t x) {
    const auto it = std::lower_bound(list.begin(), list.end(), x);
    if (it == list.end() || *it != x) {
      list.insert(it, x);
    }
  };
  insert(adj_.at(a), b);
  insert(adj_.at(b), a);
}

bool ConflictGraph::has_edge(std::size_t a, std::size_t b) const {
  return std::binary_search(adj_.at(a).begin(), adj_.at(a).end(), b);
}

std::size_t ConflictGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& l : adj_) {
    twice += l.size();
  }
  return twice / 2;
}

std::vector<std::size_t> greedy_mis(const ConflictGraph& g,
                                    std::span<const double> weight) {
  const std::size_t n = g.size();
  if (!weight.empty() && weight.size() != n) {
    throw Error("weight vector must match the vertex count");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double wa = weight.empty() ? 1.0 : weight[a];
    const double wb = weight.empty() ? 1.0 : weight[b];
    if (wa != wb) {
      return wa > wb;
    }
    if (g.degree(a) != g.degree(b)) {
      return g.degree(a) < g.degree(b);
    }
    return a < b;
  });
  std::vector<char> blocked(n, 0);
  std::vector<std::size_t> chosen;
  for (const std::size_t v : order) {
    if (blocked[v] != 0) {
      continue;
    }
    chosen.push_back(v);
    blocked[v] = 1;
    for (const std::size_t w : g.neighbors(v)) {
      blocked[w] = 1;
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

bool is_independent(const ConflictGraph& g, std::span<const std::size_t> set) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      if (g.has_edge(set[i], set[j])) {
        return false;
      }
    }
  }
  return true;
}

bool is_maximal_independent(const ConflictGraph& g,
                            std::span<const std::size_t> set) {
  if (!is_independent(g, set)) {
    return false;
  }
  std::vector<char> in(g.size(), 0);
  for (const auto v : set) {
    in[v] = 1;
  }
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (in[v] != 0) {
      continue;
    }
    const auto& nb = g.neighbors(v);
    if (std::none_of(nb.begin(), nb.end(), [&](std::size_t w) { return in[w] != 0; })) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

WeightedLattice::WeightedLattice(int cols, int rows, double horizontal_cost,
                                 double vertical_cost)
    : cols_(cols), rows_(rows), h_cost_(horizontal_cost), v_cost_(vertical_cost),
      obstacle_(static_cast<std::size_t>(std::max(0, cols * rows)), 0) {
  if (cols < 1 || rows < 1) {
    throw Error("lattice must be non-empty");
  }
  if (!(horizontal_cost > 0) || !(vertical_cost > 0)) {
    throw Error("lattice step costs must be positive");
  }
}

void WeightedLattice::set_obstacle(Cell c, bool blocked) {
  if (contains(c)) {
    obstacle_[static_cast<std::size_t>(id(c))] = blocked ? 1 : 0;
  }
}

bool WeightedLattice::blocked(Cell c) const {
  return !contains(c) || obstacle_[static_cast<std::size_t>(id(c))] != 0;
}

std::vector<Cell> WeightedLattice::neighbors(Cell c) const {
  std::vector<Cell> out;
  out.reserve(4);
  for (const Cell n : {Cell{c.col, c.row - 1}, Cell{c.col, c.row + 1},
                       Cell{c.col - 1, c.row}, Cell{c.col + 1, c.row}}) {
    if (contains(n)) {
      out.push_back(n);
    }
  }
  return out;
}

std::optional<LatticePath>
lattice_search(const WeightedLattice& grid, std::span<const Cell> sources,
               const std::function<bool(Cell)>& is_target) {
  const auto total = static_cast<std::size_t>(grid.cols() * grid.rows());
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(total, inf);
  std::vector<int> prev(total, -1);
  std::vector<char> done(total, 0);
  // (distance, sequence, cell id): the sequence number keeps FIFO order among
  // equal distances so expansion order decides ties deterministically.
  using Entry = std::tuple<double, std::size_t, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::size_t seq = 0;
  std::vector<Cell> ordered(sources.begin(), sources.end());
  std::sort(ordered.begin(), ordered.end(), [&](Cell a, Cell b) {
    return grid.id(a) < grid.id(b);
  });
  for (const Cell s : ordered) {
    if (!grid.contains(s)) {
      continue;
    }
    const auto sid = static_cast<std::size_t>(grid.id(s));
    if (dist[sid] > 0.0) {
      dist[sid] = 0.0;
      open.emplace(0.0, seq++, grid.id(s));
    }
  }
  while (!open.empty()) {
    const auto [d, order, id] = open.top();
    (void)order;
    open.pop();
    const auto uid = static_cast<std::size_t>(id);
    if (done[uid] != 0) {
      continue;
    }
    done[uid] = 1;
    const Cell u = grid.cell(id);
    if (is_target(u)) {
      LatticePath path;
      path.cost = d;
      for (int at = id; at != -1; at = prev[static_cast<std::size_t>(at)]) {
        path.cells.push_back(grid.cell(at));
      }
      std::reverse(path.cells.begin(), path.cells.end());
      return path;
    }
    const bool is_source = d == 0.0 && prev[uid] == -1;
    if (!is_source && grid.blocked(u)) {
      continue;
    }
    for (const Cell v : grid.neighbors(u)) {
      const auto vid = static_cast<std::size_t>(grid.id(v));
      if (done[vid] != 0) {
        continue;
      }
      if (grid.blocked(v) && !is_target(v)) {
        continue;
      }
      const double step = v.col == u.col ? grid.vertical_cost() : grid.horizontal_cost();
      if (d + step < dist[vid]) {
        dist[vid] = d + step;
        prev[vid] = id;
        open.emplace(d + step, seq++, grid.id(v));
      }
    }
  }
  return std::nullopt;
}

LatticePath grid_shortest_path(const WeightedLattice& grid, Cell src, Cell dst) {
  if (!grid.contains(src) || !grid.contains(dst)) {
    throw Error("path endpoints must lie on the lattice");
  }
  const Cell sources[] = {src};
  auto path = lattice_search(grid, sources, [dst](Cell c) { return c == dst; });
  if (!path) {
    throw InfeasibleError("destination unreachable");
  }
  return *std::move(path);
}

} // namespace dtc
