#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace dtc {

// ---------------------------------------------------------------------------
// Assignment

/// Dense rows x cols cost matrix; entries may be `kForbidden`.
class CostMatrix {
public:
  static constexpr double kForbidden = std::numeric_limits<double>::infinity();

  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  CostMatrix(std::initializer_list<std::initializer_list<double>> init);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  [[nodiscard]] static bool forbidden(double v) { return v == kForbidden; }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Assignment {
  std::vector<int> row_to_col; ///< -1 for rows left unassigned
  double cost = 0.0;
};

/// Minimum-cost injective assignment covering min(rows, cols).
/// Throws InfeasibleError when every such assignment hits a forbidden entry.
[[nodiscard]] Assignment hungarian(const CostMatrix& cost);

// ---------------------------------------------------------------------------
// Independent sets

class ConflictGraph {
public:
  explicit ConflictGraph(std::size_t n = 0) : adj_(n) {}

  [[nodiscard]] std::size_t size() const { return adj_.size(); }
  /// Ignores self-loops and duplicate edges.
  void add_edge(std::size_t a, std::size_t b);
  [[nodiscard]] bool has_edge(std::size_t a, std::size_t b) const;
  [[nodiscard]] const std::vector<std::size_t>& neighbors(std::size_t v) const {
    return adj_[v];
  }
  [[nodiscard]] std::size_t degree(std::size_t v) const { return adj_[v].size(); }
  [[nodiscard]] std::size_t edge_count() const;

private:
  std::vector<std::vector<std::size_t>> adj_; // sorted
};

/// Greedy maximal independent set. Vertices are considered by descending
/// weight, then ascending degree, then ascending id. Result sorted by id.
[[nodiscard]] std::vector<std::size_t>
greedy_mis(const ConflictGraph& g, std::span<const double> weight = {});

[[nodiscard]] bool is_independent(const ConflictGraph& g,
                                  std::span<const std::size_t> set);
[[nodiscard]] bool is_maximal_independent(const ConflictGraph& g,
                                          std::span<const std::size_t> set);

// ---------------------------------------------------------------------------
// Lattice search

struct Cell {
  int col = 0;
  int row = 0;

  auto operator<=>(const Cell&) const = default;
};

[[nodiscard]] inline int manhattan(Cell a, Cell b) {
  const int dc = a.col - b.col;
  const int dr = a.row - b.row;
  return (dc < 0 ? -dc : dc) + (dr < 0 ? -dr : dr);
}

[[nodiscard]] inline bool adjacent(Cell a, Cell b) { return manhattan(a, b) == 1; }

/// 4-connected lattice with per-axis step costs and an obstacle mask.
class WeightedLattice {
public:
  WeightedLattice(int cols, int rows, double horizontal_cost = 1.0,
                  double vertical_cost = 1.0);

  [[nodiscard]] int cols() const { return cols_; }
  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] double horizontal_cost() const { return h_cost_; }
  [[nodiscard]] double vertical_cost() const { return v_cost_; }

  [[nodiscard]] bool contains(Cell c) const {
    return c.col >= 0 && c.col < cols_ && c.row >= 0 && c.row < rows_;
  }
  [[nodiscard]] int id(Cell c) const { return c.row * cols_ + c.col; }
  [[nodiscard]] Cell cell(int id) const { return {id % cols_, id / cols_}; }

  void set_obstacle(Cell c, bool blocked = true);
  [[nodiscard]] bool blocked(Cell c) const;

  /// In-bounds 4-neighbours in expansion order: up, down, left, right.
  [[nodiscard]] std::vector<Cell> neighbors(Cell c) const;

private:
  int cols_;
  int rows_;
  double h_cost_;
  double v_cost_;
  std::vector<char> obstacle_;
};

struct LatticePath {
  std::vector<Cell> cells;
  double cost = 0.0;
};

/// Dijkstra from several zero-cost sources to the first cell accepted by
/// `is_target`. Sources and the accepted target may be obstacles; every
/// intermediate cell must be free. Ties resolve by expansion order
/// (vertical before horizontal) and then by lower cell id.
[[nodiscard]] std::optional<LatticePath>
lattice_search(const WeightedLattice& grid, std::span<const Cell> sources,
               const std::function<bool(Cell)>& is_target);

/// Minimum-cost obstacle-avoiding path from src to dst. Throws
/// InfeasibleError when dst cannot be reached.
[[nodiscard]] LatticePath grid_shortest_path(const WeightedLattice& grid,
                                             Cell src, Cell dst);

} // namespace dtc
