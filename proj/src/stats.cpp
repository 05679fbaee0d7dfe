#include "csv/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace csv {

double pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) {
    throw std::invalid_argument("pearson: need two equal-length vectors, n >= 2");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw std::invalid_argument("pearson: zero variance input");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

// Average ranks (1-based); tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * (i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

// Merge sort counting inversions of v (strict decreases).
long long count_inversions(std::vector<double>& v, std::vector<double>& tmp,
                           std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  long long count = count_inversions(v, tmp, lo, mid) +
                    count_inversions(v, tmp, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      count += static_cast<long long>(mid - i);
      tmp[k++] = v[j++];
    } else {
      tmp[k++] = v[i++];
    }
  }
  while (i < mid) tmp[k++] = v[i++];
  while (j < hi) tmp[k++] = v[j++];
  std::copy(tmp.begin() + lo, tmp.begin() + hi, v.begin() + lo);
  return count;
}

long long tie_pairs(std::span<const double> sorted_keys) {
  long long pairs = 0;
  std::size_t i = 0;
  while (i < sorted_keys.size()) {
    std::size_t j = i;
    while (j + 1 < sorted_keys.size() && sorted_keys[j + 1] == sorted_keys[i]) ++j;
    const long long t = static_cast<long long>(j - i + 1);
    pairs += t * (t - 1) / 2;
    i = j + 1;
  }
  return pairs;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("spearman: need two equal-length vectors, n >= 2");
  }
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

double kendall(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) {
    throw std::invalid_argument("kendall: need two equal-length vectors, n >= 2");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (x[a] != x[b]) return x[a] < x[b];
    return y[a] < y[b];
  });

  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = x[order[i]];
    ys[i] = y[order[i]];
  }

  const long long n0 = static_cast<long long>(n) * (n - 1) / 2;
  const long long n1 = tie_pairs(xs);
  long long n3 = 0;  // pairs tied in both
  {
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && xs[j + 1] == xs[i] && ys[j + 1] == ys[i]) ++j;
      const long long t = static_cast<long long>(j - i + 1);
      n3 += t * (t - 1) / 2;
      i = j + 1;
    }
  }
  std::vector<double> ys_sorted = ys;
  std::sort(ys_sorted.begin(), ys_sorted.end());
  const long long n2 = tie_pairs(ys_sorted);

  // Within x-tie groups ys is ascending, so inversions of ys are exactly the
  // discordant pairs.
  std::vector<double> tmp(n);
  const long long discordant = count_inversions(ys, tmp, 0, n);
  const long long concordant = n0 - n1 - n2 + n3 - discordant;

  const double denom = std::sqrt(static_cast<double>(n0 - n1)) *
                       std::sqrt(static_cast<double>(n0 - n2));
  if (denom == 0.0) {
    throw std::invalid_argument("kendall: all-tied input");
  }
  return std::clamp((concordant - discordant) / denom, -1.0, 1.0);
}

double normal_quantile(double p) {
  if (p <= 0.0 || p >= 1.0) {
    throw std::invalid_argument("normal_quantile: p must lie in (0,1)");
  }
  // Acklam's rational approximation, then one Halley step against erfc.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

int significance(double r1, int n1, double r2, int n2, double alpha) {
  if (n1 < 4 || n2 < 4) {
    throw std::invalid_argument("significance: need n >= 4 per sample");
  }
  if (std::fabs(r1) >= 1.0 || std::fabs(r2) >= 1.0) {
    throw std::invalid_argument("significance: |r| must be < 1");
  }
  const double z1 = std::atanh(r1);
  const double z2 = std::atanh(r2);
  const double sigma = std::sqrt(1.0 / (n1 - 3) + 1.0 / (n2 - 3));
  const double crit = normal_quantile(1.0 - alpha / 2.0);
  return std::fabs(z1 - z2) / sigma > crit ? 1 : 0;
}

HistDistances hist_distances(std::span<const double> a,
                             std::span<const double> b, int bins) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("hist_distances: empty input");
  }
  if (bins < 2) throw std::invalid_argument("hist_distances: need >= 2 bins");

  double lo = a[0], hi = a[0];
  for (double v : a) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (double v : b) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double width = (hi - lo) / bins;

  const auto histogram = [&](std::span<const double> v) {
    std::vector<double> hist(bins, 0.0);
    for (double s : v) {
      int bin = width > 0.0 ? static_cast<int>((s - lo) / width) : 0;
      bin = std::clamp(bin, 0, bins - 1);
      hist[bin] += 1.0;
    }
    for (double& h : hist) h /= static_cast<double>(v.size());
    return hist;
  };
  const auto pa = histogram(a);
  const auto pb = histogram(b);

  HistDistances out;

  double cum = 0.0;
  for (int i = 0; i < bins; ++i) {
    cum += pa[i] - pb[i];
    out.emd += std::fabs(cum) * width;
  }

  constexpr double kEps = 1e-10;
  std::vector<double> qa(bins), qb(bins);
  const double norm = 1.0 + bins * kEps;
  for (int i = 0; i < bins; ++i) {
    qa[i] = (pa[i] + kEps) / norm;
    qb[i] = (pb[i] + kEps) / norm;
  }
  const auto kl_div = [&](const std::vector<double>& p, const std::vector<double>& q) {
    double s = 0.0;
    for (int i = 0; i < bins; ++i) s += p[i] * std::log(p[i] / q[i]);
    return std::max(s, 0.0);
  };
  out.kl = kl_div(qa, qb);
  std::vector<double> mid(bins);
  for (int i = 0; i < bins; ++i) mid[i] = 0.5 * (qa[i] + qb[i]);
  out.js = 0.5 * kl_div(qa, mid) + 0.5 * kl_div(qb, mid);

  double inter = 0.0, l2 = 0.0;
  for (int i = 0; i < bins; ++i) {
    inter += std::min(pa[i], pb[i]);
    l2 += (pa[i] - pb[i]) * (pa[i] - pb[i]);
  }
  out.hi = 1.0 - inter;
  out.l2 = std::sqrt(l2);
  return out;
}

double logistic_map(const RegressionParams& params, double s0) {
  const auto& b = params.beta;
  const double e = std::exp(std::clamp(b[1] * (s0 - b[2]), -700.0, 700.0));
  const double core = params.form == LogisticForm::Standard
                          ? 0.5 - 1.0 / (1.0 + e)
                          : 1.0 - 1.0 / (2.0 + e);
  return b[0] * core + b[3] * s0 + b[4];
}

std::vector<double> logistic_map(const RegressionParams& params,
                                 std::span<const double> s0) {
  std::vector<double> out(s0.size());
  for (std::size_t i = 0; i < s0.size(); ++i) out[i] = logistic_map(params, s0[i]);
  return out;
}

namespace {

double sse_of(const RegressionParams& params, std::span<const double> s0,
              std::span<const double> mos) {
  double sse = 0.0;
  for (std::size_t i = 0; i < s0.size(); ++i) {
    const double d = logistic_map(params, s0[i]) - mos[i];
    sse += d * d;
  }
  return std::isfinite(sse) ? sse : std::numeric_limits<double>::max();
}

// Nelder-Mead simplex descent; returns the best vertex found.
std::array<double, 5> nelder_mead(
    const std::function<double(const std::array<double, 5>&)>& f,
    std::array<double, 5> start, int max_iter, double ftol) {
  constexpr int kDim = 5;
  struct Vertex {
    std::array<double, 5> x;
    double fx;
  };
  std::vector<Vertex> simplex;
  simplex.push_back({start, f(start)});
  for (int i = 0; i < kDim; ++i) {
    auto x = start;
    x[i] += x[i] != 0.0 ? 0.05 * x[i] : 0.00025;
    simplex.push_back({x, f(x)});
  }
  const auto by_value = [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; };

  for (int iter = 0; iter < max_iter; ++iter) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    if (simplex.back().fx - simplex.front().fx < ftol) break;

    std::array<double, 5> centroid{};
    for (int v = 0; v < kDim; ++v) {
      for (int i = 0; i < kDim; ++i) centroid[i] += simplex[v].x[i] / kDim;
    }
    const auto blend = [&](double t) {
      std::array<double, 5> x;
      for (int i = 0; i < kDim; ++i) {
        x[i] = centroid[i] + t * (simplex.back().x[i] - centroid[i]);
      }
      return x;
    };

    const auto reflected = blend(-1.0);
    const double fr = f(reflected);
    if (fr < simplex.front().fx) {
      const auto expanded = blend(-2.0);
      const double fe = f(expanded);
      simplex.back() = fe < fr ? Vertex{expanded, fe} : Vertex{reflected, fr};
    } else if (fr < simplex[kDim - 1].fx) {
      simplex.back() = {reflected, fr};
    } else {
      const auto contracted = blend(fr < simplex.back().fx ? -0.5 : 0.5);
      const double fc = f(contracted);
      if (fc < std::min(fr, simplex.back().fx)) {
        simplex.back() = {contracted, fc};
      } else {
        for (int v = 1; v <= kDim; ++v) {
          for (int i = 0; i < kDim; ++i) {
            simplex[v].x[i] = simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
          }
          simplex[v].fx = f(simplex[v].x);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(), by_value);
  return simplex.front().x;
}

// Ordinary least squares y ~ a*x + c.
std::pair<double, double> linear_fit(std::span<const double> x,
                                     std::span<const double> y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace

RegressionParams fit_logistic(std::span<const double> objective,
                              std::span<const double> subjective,
                              LogisticForm form) {
  const std::size_t n = objective.size();
  if (n != subjective.size() || n < 8) {
    throw std::invalid_argument("fit_logistic: need >= 8 paired scores");
  }
  double mean_s = 0.0, mean_m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_s += objective[i];
    mean_m += subjective[i];
  }
  mean_s /= n;
  mean_m /= n;
  double var_s = 0.0;
  double mos_lo = subjective[0], mos_hi = subjective[0];
  for (std::size_t i = 0; i < n; ++i) {
    var_s += (objective[i] - mean_s) * (objective[i] - mean_s);
    mos_lo = std::min(mos_lo, subjective[i]);
    mos_hi = std::max(mos_hi, subjective[i]);
  }
  var_s /= n;
  if (var_s == 0.0) {
    throw std::invalid_argument("fit_logistic: objective scores are constant");
  }
  const double raw_plcc = std::fabs(pearson(objective, subjective));

  const auto evaluate = [&](const std::array<double, 5>& beta) {
    RegressionParams p;
    p.beta = beta;
    p.form = form;
    return sse_of(p, objective, subjective);
  };

  const double std_s = std::sqrt(var_s);
  const std::array<double, 5> init{mos_hi - mos_lo, 1.0 / std_s, mean_s, 0.0,
                                   mean_m};

  std::array<double, 5> best = init;
  double best_sse = std::numeric_limits<double>::max();
  // Deterministic restarts around the heuristic start.
  static constexpr double kScales[5] = {1.0, -1.0, 0.25, 4.0, 0.0};
  for (double scale : kScales) {
    auto start = init;
    start[0] *= scale;
    start[1] *= scale == 0.0 ? 1.0 : 1.0 / scale;
    const auto x = nelder_mead(evaluate, start, 2000, 1e-10);
    const double sse = evaluate(x);
    if (sse < best_sse) {
      best_sse = sse;
      best = x;
    }
  }

  // The pure-linear member of the family is always a candidate.
  const auto [slope, intercept] = linear_fit(objective, subjective);
  const std::array<double, 5> linear{0.0, 1.0 / std_s, mean_s, slope, intercept};
  const double linear_sse = evaluate(linear);

  RegressionParams result;
  result.form = form;
  result.beta = best_sse <= linear_sse ? best : linear;
  result.sse = std::min(best_sse, linear_sse);

  auto mapped = logistic_map(result, objective);
  double plcc;
  try {
    plcc = pearson(mapped, subjective);
  } catch (const std::invalid_argument&) {
    plcc = 0.0;  // degenerate (constant) mapping
  }
  if (plcc < raw_plcc - 1e-9) {
    result.beta = linear;
    result.sse = linear_sse;
    mapped = logistic_map(result, objective);
    plcc = pearson(mapped, subjective);
  }
  result.fitted_plcc = plcc;
  return result;
}

}  // namespace csv
