// Independent reference computations used only by the tests.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "tdrd/spectral.hpp"

namespace oracle {

// Dense characteristic roots of A^T through Eigen's general solver, descending.
inline std::vector<double> dense_eigenvalues(const Eigen::MatrixXd& M) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < M.rows(); ++i) out.push_back(es.eigenvalues()(i).real());
  std::sort(out.rbegin(), out.rend());
  return out;
}

// Entries of A^T written out by hand (no band helpers).
inline Eigen::MatrixXd handmade_AT(const tdrd::ToeplitzParams& p) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(p.m, p.m);
  for (int i = 0; i < p.m; ++i) A(i, i) = (i % 2 == 0) ? p.alpha1 : p.alpha2;
  for (int i = 0; i + 1 < p.m; ++i) {
    A(i + 1, i) = (i % 2 == 0) ? p.beta1 : p.beta2;   // subdiagonal of A
    A(i, i + 1) = (i % 2 == 0) ? p.gamma1 : p.gamma2; // superdiagonal of A
  }
  return A.transpose();
}

inline std::pair<double, double> quadratic_roots(double a, double b, double c) {
  const double d = std::sqrt(b * b - 4 * a * c);
  const double r1 = (-b + d) / (2 * a);
  const double r2 = (-b - d) / (2 * a);
  return {std::max(r1, r2), std::min(r1, r2)};
}

inline double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// H by enumerating every tuple in [0, p_m]^(m-1) and keeping the chains.
inline double brute_H(int p_m, const std::vector<double>& theta, const std::vector<double>& w) {
  const int m = static_cast<int>(w.size());
  std::vector<int> p(static_cast<std::size_t>(m - 1), 0);
  double total = 0.0;
  while (true) {
    bool chain = true;
    for (int k = 1; k < m - 1; ++k) chain = chain && p[k - 1] <= p[k];
    if (chain) {
      double term = 1.0;
      int prev = 0;
      for (int k = 0; k < m - 1; ++k) {
        term *= std::pow(theta[k], p[k] * p[k]) * std::pow(w[k], p[k] - prev);
        prev = p[k];
      }
      term *= std::pow(w[m - 1], p_m - prev);
      int upper = p_m;
      for (int k = m - 2; k >= 0; --k) {
        term *= binom(upper, p[k]);
        upper = p[k];
      }
      total += term;
    }
    int k = 0;
    while (k < m - 1 && ++p[k] > p_m) p[k++] = 0;
    if (k == m - 1) break;
  }
  return total;
}

inline tdrd::ToeplitzParams random_params(std::mt19937_64& rng, int m, double lo = 0.1, double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  tdrd::ToeplitzParams p;
  p.alpha1 = u(rng);
  p.alpha2 = u(rng);
  p.beta1 = u(rng);
  p.beta2 = u(rng);
  p.gamma1 = u(rng);
  p.gamma2 = u(rng);
  p.m = m;
  return p;
}

}  // namespace oracle
