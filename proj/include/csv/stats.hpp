#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

namespace csv {

/// Sample Pearson linear correlation coefficient. Throws on n < 2 or zero
/// variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// Spearman rank correlation; ties receive average ranks.
double spearman(std::span<const double> x, std::span<const double> y);

/// Kendall tau-b (tie-corrected), O(n log n).
double kendall(std::span<const double> x, std::span<const double> y);

/// Fisher z-test for the difference of two correlation coefficients
/// (ITU-T P.1401 style). Returns 1 when significantly different at the
/// two-tailed level alpha.
int significance(double r1, int n1, double r2, int n2, double alpha = 0.05);

/// Two-tailed standard-normal quantile helper used by the z-test.
double normal_quantile(double p);

struct HistDistances {
  double emd = 0.0;
  double kl = 0.0;
  double js = 0.0;
  double hi = 0.0;
  double l2 = 0.0;
};

/// Distances between the normalized histograms of two sample sets over a
/// shared equal-width binning spanning the union range.
HistDistances hist_distances(std::span<const double> a,
                             std::span<const double> b, int bins = 10);

enum class LogisticForm {
  Standard,   // b1*(1/2 - 1/(1+exp(b2*(s-b3)))) + b4*s + b5
  AsPrinted,  // b1*(1   - 1/(2+exp(b2*(s-b3)))) + b4*s + b5
};

struct RegressionParams {
  std::array<double, 5> beta{};
  LogisticForm form = LogisticForm::Standard;
  double fitted_plcc = 0.0;
  double sse = 0.0;
};

double logistic_map(const RegressionParams& params, double s0);
std::vector<double> logistic_map(const RegressionParams& params,
                                 std::span<const double> s0);

/// Five-parameter monotone regression of subjective onto objective scores,
/// fit by simplex descent on the SSE with restarts. The pure-linear family
/// (b1 = 0) is always a candidate, so the fitted PLCC never falls below the
/// raw |PLCC|.
RegressionParams fit_logistic(std::span<const double> objective,
                              std::span<const double> subjective,
                              LogisticForm form = LogisticForm::Standard);

}  // namespace csv
