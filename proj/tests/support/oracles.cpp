#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace oracle {

csv::Plane mean_pool(const csv::Plane& p, int w) {
  const int out_w = (p.width() + w - 1) / w;
  const int out_h = (p.height() + w - 1) / w;
  csv::Plane out(out_w, out_h);
  for (int by = 0; by < out_h; ++by) {
    for (int bx = 0; bx < out_w; ++bx) {
      double sum = 0.0;
      int count = 0;
      for (int y = by * w; y < std::min((by + 1) * w, p.height()); ++y) {
        for (int x = bx * w; x < std::min((bx + 1) * w, p.width()); ++x) {
          sum += p.at(x, y);
          ++count;
        }
      }
      out.at(bx, by) = sum / count;
    }
  }
  return out;
}

csv::Plane std_pool(const csv::Plane& p, int w) {
  const csv::Plane means = mean_pool(p, w);
  csv::Plane out(means.width(), means.height());
  for (int by = 0; by < out.height(); ++by) {
    for (int bx = 0; bx < out.width(); ++bx) {
      double sum = 0.0;
      int count = 0;
      for (int y = by * w; y < std::min((by + 1) * w, p.height()); ++y) {
        for (int x = bx * w; x < std::min((bx + 1) * w, p.width()); ++x) {
          const double d = p.at(x, y) - means.at(bx, by);
          sum += d * d;
          ++count;
        }
      }
      out.at(bx, by) = std::sqrt(sum / count);
    }
  }
  return out;
}

csv::Plane local_normalize(const csv::Plane& p, int w, double eps) {
  const csv::Plane means = mean_pool(p, w);
  const csv::Plane stds = std_pool(p, w);
  csv::Plane out(p.width(), p.height());
  for (int y = 0; y < p.height(); ++y) {
    for (int x = 0; x < p.width(); ++x) {
      out.at(x, y) =
          (p.at(x, y) - means.at(x / w, y / w)) / (stds.at(x / w, y / w) + eps);
    }
  }
  return out;
}

namespace {

int mirror(int i, int n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

}  // namespace

csv::Plane convolve(const csv::Plane& p, const csv::Kernel& k) {
  const int r = k.radius();
  csv::Plane out(p.width(), p.height());
  for (int y = 0; y < p.height(); ++y) {
    for (int x = 0; x < p.width(); ++x) {
      double acc = 0.0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          acc += k.at(dy, dx) *
                 p.at(mirror(x - dx, p.width()), mirror(y - dy, p.height()));
        }
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

namespace {

// Dense tableau two-phase simplex with Bland's rule for
// min c^T x  s.t.  A x = b, x >= 0, b >= 0.
class DenseSimplex {
 public:
  DenseSimplex(std::vector<std::vector<double>> a, std::vector<double> b,
               std::vector<double> c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)),
        rows_(static_cast<int>(a_.size())),
        vars_(static_cast<int>(c_.size())) {}

  double solve() {
    const int total = vars_ + rows_;  // with artificials
    tableau_.assign(rows_, std::vector<double>(total + 1, 0.0));
    basis_.resize(rows_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < vars_; ++j) tableau_[i][j] = a_[i][j];
      tableau_[i][vars_ + i] = 1.0;
      tableau_[i][total] = b_[i];
      basis_[i] = vars_ + i;
    }

    // Phase 1: minimize the artificial sum.
    std::vector<double> phase1_cost(total, 0.0);
    for (int j = vars_; j < total; ++j) phase1_cost[j] = 1.0;
    run(phase1_cost, total);
    if (objective(phase1_cost) > 1e-7) {
      throw std::runtime_error("lp oracle: infeasible");
    }
    drive_out_artificials();

    // Phase 2 over the original variables only.
    std::vector<double> phase2_cost(total, 0.0);
    for (int j = 0; j < vars_; ++j) phase2_cost[j] = c_[j];
    run(phase2_cost, vars_);
    return objective(phase2_cost);
  }

 private:
  double objective(const std::vector<double>& cost) const {
    double v = 0.0;
    for (int i = 0; i < rows_; ++i) {
      v += cost[basis_[i]] * tableau_[i][tableau_[i].size() - 1];
    }
    return v;
  }

  std::vector<double> reduced_costs(const std::vector<double>& cost,
                                    int limit) const {
    std::vector<double> red(limit);
    for (int j = 0; j < limit; ++j) {
      double z = 0.0;
      for (int i = 0; i < rows_; ++i) z += cost[basis_[i]] * tableau_[i][j];
      red[j] = cost[j] - z;
    }
    return red;
  }

  void pivot(int row, int col) {
    const int width = static_cast<int>(tableau_[row].size());
    const double p = tableau_[row][col];
    for (int j = 0; j < width; ++j) tableau_[row][j] /= p;
    for (int i = 0; i < rows_; ++i) {
      if (i == row || tableau_[i][col] == 0.0) continue;
      const double f = tableau_[i][col];
      for (int j = 0; j < width; ++j) tableau_[i][j] -= f * tableau_[row][j];
    }
    basis_[row] = col;
  }

  void run(const std::vector<double>& cost, int enter_limit) {
    const int rhs = static_cast<int>(tableau_[0].size()) - 1;
    for (int iter = 0; iter < 100000; ++iter) {
      const auto red = reduced_costs(cost, enter_limit);
      int enter = -1;
      for (int j = 0; j < enter_limit; ++j) {  // Bland: lowest index
        if (red[j] < -1e-11) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;
      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < rows_; ++i) {
        if (tableau_[i][enter] <= 1e-11) continue;
        const double ratio = tableau_[i][rhs] / tableau_[i][enter];
        if (leave < 0 || ratio < best_ratio - 1e-15 ||
            (std::fabs(ratio - best_ratio) <= 1e-15 &&
             basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) throw std::runtime_error("lp oracle: unbounded");
      pivot(leave, enter);
    }
    throw std::runtime_error("lp oracle: iteration limit");
  }

  // After phase 1, swap basic artificials for real columns where possible;
  // rows that admit no pivot are redundant and kept inert.
  void drive_out_artificials() {
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < vars_) continue;
      int col = -1;
      for (int j = 0; j < vars_; ++j) {
        if (std::fabs(tableau_[i][j]) > 1e-9) {
          col = j;
          break;
        }
      }
      if (col >= 0) pivot(i, col);
    }
  }

  std::vector<std::vector<double>> a_;
  std::vector<double> b_;
  std::vector<double> c_;
  int rows_;
  int vars_;
  std::vector<std::vector<double>> tableau_;
  std::vector<int> basis_;
};

}  // namespace

double lp_emd(std::span<const double> supply, std::span<const double> demand,
              const csv::CostMatrix& cost) {
  const int m = static_cast<int>(supply.size());
  const int n = static_cast<int>(demand.size());
  const int vars = m * n;
  std::vector<std::vector<double>> a(m + n, std::vector<double>(vars, 0.0));
  std::vector<double> b(m + n), c(vars);
  for (int i = 0; i < m; ++i) {
    b[i] = supply[i];
    for (int j = 0; j < n; ++j) a[i][i * n + j] = 1.0;
  }
  for (int j = 0; j < n; ++j) {
    b[m + j] = demand[j];
    for (int i = 0; i < m; ++i) a[m + j][i * n + j] = 1.0;
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) c[i * n + j] = cost.at(i, j);
  }
  return DenseSimplex(std::move(a), std::move(b), std::move(c)).solve();
}

double pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

namespace {

std::vector<double> explicit_ranks(std::span<const double> v) {
  // rank(i) = (#strictly smaller) + (1 + #equal) / 2, brute force.
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    int smaller = 0, equal = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] < v[i]) ++smaller;
      if (v[j] == v[i]) ++equal;
    }
    ranks[i] = smaller + 0.5 * (equal + 1);
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  return pearson(explicit_ranks(x), explicit_ranks(y));
}

double kendall(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0 && dy == 0.0) continue;
      if (dx == 0.0) {
        ++ties_x;
      } else if (dy == 0.0) {
        ++ties_y;
      } else if ((dx > 0.0) == (dy > 0.0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const long long n0 = static_cast<long long>(n) * (n - 1) / 2;
  long long pairs_tied_x = 0, pairs_tied_y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (x[i] == x[j]) ++pairs_tied_x;
      if (y[i] == y[j]) ++pairs_tied_y;
    }
  }
  const double denom = std::sqrt(static_cast<double>(n0 - pairs_tied_x)) *
                       std::sqrt(static_cast<double>(n0 - pairs_tied_y));
  return (concordant - discordant) / denom;
}

}  // namespace oracle
