#pragma once

// Reference computations used only by tests. They work on plain nested
// vectors and never call into the library's scoring code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

namespace zsac::oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // row-major rows

inline double bilinear(const Vec& theta, const Mat& w, const Vec& phi) {
  double total = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    for (std::size_t j = 0; j < phi.size(); ++j) total += theta[i] * w[i][j] * phi[j];
  }
  return total;
}

inline long double harmonic(std::size_t r) {
  long double sum = 0.0L;
  for (std::size_t j = 1; j <= r; ++j) sum += 1.0L / static_cast<long double>(j);
  return sum;
}

inline double hinge(const Vec& theta, std::size_t truth, std::size_t y, const Mat& w,
                    const Mat& phis) {
  const double delta = truth == y ? 0.0 : 1.0;
  return delta + bilinear(theta, w, phis[y]) - bilinear(theta, w, phis[truth]);
}

struct Sample {
  Vec theta;
  std::size_t label;
};

/// (1/N) sum_n [beta_r / r] sum_y max(0, l), with 0/0 taken as 0.
inline double risk(const std::vector<Sample>& samples, const Mat& w, const Mat& phis) {
  double total = 0.0;
  for (const auto& s : samples) {
    std::size_t rank = 0;
    double inner = 0.0;
    for (std::size_t y = 0; y < phis.size(); ++y) {
      const double l = hinge(s.theta, s.label, y, w, phis);
      inner += std::max(0.0, l);
      if (y != s.label && l > 0.0) ++rank;
    }
    if (rank > 0) total += static_cast<double>(harmonic(rank)) / static_cast<double>(rank) * inner;
  }
  return total / static_cast<double>(samples.size());
}

/// Central finite differences of the hinge loss with respect to each W entry.
inline Mat hinge_gradient_fd(const Vec& theta, std::size_t truth, std::size_t y, Mat w,
                             const Mat& phis, double step) {
  Mat grad(w.size(), Vec(w.front().size()));
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < w[i].size(); ++j) {
      const double saved = w[i][j];
      w[i][j] = saved + step;
      const double up = hinge(theta, truth, y, w, phis);
      w[i][j] = saved - step;
      const double down = hinge(theta, truth, y, w, phis);
      w[i][j] = saved;
      grad[i][j] = (up - down) / (2.0 * step);
    }
  }
  return grad;
}

inline Vec random_vec(std::mt19937_64& gen, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Vec v(n);
  for (double& x : v) x = dist(gen);
  return v;
}

inline Mat random_mat(std::mt19937_64& gen, std::size_t rows, std::size_t cols,
                      double lo = -1.0, double hi = 1.0) {
  Mat m(rows);
  for (auto& row : m) row = random_vec(gen, cols, lo, hi);
  return m;
}

}  // namespace zsac::oracle
