#include "csv/emd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace csv {

namespace {

struct BasicCell {
  int row;
  int col;
  double flow;
};

// Transportation simplex state over the reduced (positive-mass) problem.
class TransportSimplex {
 public:
  TransportSimplex(std::vector<double> supply, std::vector<double> demand,
                   const CostMatrix& cost, const std::vector<int>& row_ids,
                   const std::vector<int>& col_ids)
      : m_(static_cast<int>(supply.size())),
        n_(static_cast<int>(demand.size())),
        cost_(m_ * n_) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) {
        cost_[i * n_ + j] = cost.at(row_ids[i], col_ids[j]);
      }
    }
    northwest_corner(supply, demand);
  }

  double solve() {
    double scale = 1.0;
    for (double c : cost_) scale = std::max(scale, std::fabs(c));
    const double tol = 1e-12 * scale;

    std::vector<double> u(m_), v(n_);
    // Bland's rule (first negative reduced cost, lowest-index leaving cell)
    // cannot cycle; the cap is a hard backstop only.
    const int max_iter = 1000 * (m_ + n_) + 1000;
    for (int iter = 0; iter < max_iter; ++iter) {
      compute_potentials(u, v);
      int enter_row = -1, enter_col = -1;
      for (int i = 0; i < m_ && enter_row < 0; ++i) {
        for (int j = 0; j < n_; ++j) {
          if (is_basic_[i * n_ + j]) continue;
          if (cost_[i * n_ + j] - u[i] - v[j] < -tol) {
            enter_row = i;
            enter_col = j;
            break;
          }
        }
      }
      if (enter_row < 0) return total_cost();
      pivot(enter_row, enter_col);
    }
    throw std::runtime_error("emd: pivot limit exceeded");
  }

 private:
  void northwest_corner(std::vector<double>& supply, std::vector<double>& demand) {
    is_basic_.assign(static_cast<std::size_t>(m_) * n_, 0);
    int i = 0, j = 0;
    while (static_cast<int>(basis_.size()) < m_ + n_ - 1) {
      const double q = std::min(supply[i], demand[j]);
      basis_.push_back({i, j, q});
      is_basic_[i * n_ + j] = 1;
      supply[i] -= q;
      demand[j] -= q;
      if (i == m_ - 1 && j == n_ - 1) break;
      if (supply[i] <= 0.0 && i < m_ - 1) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  // Solve u_i + v_j = c_ij over the basis tree, rooted at row 0 with u_0 = 0.
  void compute_potentials(std::vector<double>& u, std::vector<double>& v) const {
    const int nodes = m_ + n_;
    std::vector<std::vector<int>> adj(nodes);
    for (int t = 0; t < static_cast<int>(basis_.size()); ++t) {
      adj[basis_[t].row].push_back(t);
      adj[m_ + basis_[t].col].push_back(t);
    }
    std::vector<char> seen(nodes, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    u[0] = 0.0;
    while (!stack.empty()) {
      const int node = stack.back();
      stack.pop_back();
      for (int t : adj[node]) {
        const auto& cell = basis_[t];
        const int other = node < m_ ? m_ + cell.col : cell.row;
        if (seen[other]) continue;
        seen[other] = 1;
        if (other >= m_) {
          v[other - m_] = cost_[cell.row * n_ + cell.col] - u[cell.row];
        } else {
          u[other] = cost_[cell.row * n_ + cell.col] - v[cell.col];
        }
        stack.push_back(other);
      }
    }
  }

  // Unique path through the basis tree from the entering cell's row node to
  // its column node; the entering cell closes the cycle.
  std::vector<int> find_cycle_path(int enter_row, int enter_col) const {
    const int nodes = m_ + n_;
    std::vector<std::vector<int>> adj(nodes);
    for (int t = 0; t < static_cast<int>(basis_.size()); ++t) {
      adj[basis_[t].row].push_back(t);
      adj[m_ + basis_[t].col].push_back(t);
    }
    std::vector<int> parent_edge(nodes, -1), parent_node(nodes, -1);
    std::vector<char> seen(nodes, 0);
    std::vector<int> stack{enter_row};
    seen[enter_row] = 1;
    const int target = m_ + enter_col;
    while (!stack.empty()) {
      const int node = stack.back();
      stack.pop_back();
      if (node == target) break;
      for (int t : adj[node]) {
        const auto& cell = basis_[t];
        const int other = node < m_ ? m_ + cell.col : cell.row;
        if (seen[other]) continue;
        seen[other] = 1;
        parent_edge[other] = t;
        parent_node[other] = node;
        stack.push_back(other);
      }
    }
    std::vector<int> path;
    for (int node = target; node != enter_row; node = parent_node[node]) {
      path.push_back(parent_edge[node]);
    }
    return path;  // column-node end first, ends adjacent to enter_row
  }

  void pivot(int enter_row, int enter_col) {
    std::vector<int> path = find_cycle_path(enter_row, enter_col);
    // Walking row -> col -> row ... from the entering cell, odd positions in
    // the cycle donate flow. `path` is ordered from the target column back to
    // the entering row, so reverse it to walk away from the entering cell.
    std::reverse(path.begin(), path.end());

    double theta = std::numeric_limits<double>::infinity();
    int leave_pos = -1;
    for (int p = 0; p < static_cast<int>(path.size()); ++p) {
      if (p % 2 != 0) continue;  // donors alternate starting at path[0]
      const auto& cell = basis_[path[p]];
      if (cell.flow < theta ||
          (cell.flow == theta && leave_pos >= 0 &&
           std::pair(cell.row, cell.col) <
               std::pair(basis_[path[leave_pos]].row, basis_[path[leave_pos]].col))) {
        theta = cell.flow;
        leave_pos = p;
      }
    }

    for (int p = 0; p < static_cast<int>(path.size()); ++p) {
      basis_[path[p]].flow += (p % 2 == 0) ? -theta : theta;
    }

    const int leave_edge = path[leave_pos];
    is_basic_[basis_[leave_edge].row * n_ + basis_[leave_edge].col] = 0;
    basis_[leave_edge] = {enter_row, enter_col, theta};
    is_basic_[enter_row * n_ + enter_col] = 1;
  }

  double total_cost() const {
    double total = 0.0;
    for (const auto& cell : basis_) {
      total += cell.flow * cost_[cell.row * n_ + cell.col];
    }
    return std::max(total, 0.0);
  }

  int m_;
  int n_;
  std::vector<double> cost_;
  std::vector<BasicCell> basis_;
  std::vector<char> is_basic_;
};

}  // namespace

double emd(std::span<const double> supply, std::span<const double> demand,
           const CostMatrix& cost) {
  if (static_cast<int>(supply.size()) != cost.rows() ||
      static_cast<int>(demand.size()) != cost.cols()) {
    throw std::invalid_argument("emd: mass vector sizes do not match cost matrix");
  }
  double total_s = 0.0, total_d = 0.0;
  for (double s : supply) {
    if (s < 0.0 || !std::isfinite(s)) throw std::invalid_argument("emd: negative or non-finite mass");
    total_s += s;
  }
  for (double d : demand) {
    if (d < 0.0 || !std::isfinite(d)) throw std::invalid_argument("emd: negative or non-finite mass");
    total_d += d;
  }
  if (std::fabs(total_s - total_d) > 1e-6) {
    throw std::invalid_argument("emd: marginals are not balanced");
  }
  if (total_s <= 0.0) return 0.0;

  std::vector<int> row_ids, col_ids;
  std::vector<double> s, d;
  for (int i = 0; i < cost.rows(); ++i) {
    if (supply[i] > 0.0) {
      row_ids.push_back(i);
      s.push_back(supply[i]);
    }
  }
  for (int j = 0; j < cost.cols(); ++j) {
    if (demand[j] > 0.0) {
      col_ids.push_back(j);
      d.push_back(demand[j]);
    }
  }

  // Absorb the (at most 1e-6) imbalance so the simplex sees an exactly
  // balanced problem.
  const double ratio = total_s / total_d;
  for (double& x : d) x *= ratio;

  // Single source or sink: the flow is forced.
  if (s.size() == 1) {
    double total = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) total += d[j] * cost.at(row_ids[0], col_ids[j]);
    return std::max(total, 0.0);
  }
  if (d.size() == 1) {
    double total = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) total += s[i] * cost.at(row_ids[i], col_ids[0]);
    return std::max(total, 0.0);
  }

  TransportSimplex simplex(std::move(s), std::move(d), cost, row_ids, col_ids);
  return simplex.solve();
}

}  // namespace csv
