#include "tdrd/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tdrd/error.hpp"

namespace tdrd {

namespace {

using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void check_sizes(const std::vector<double>& eigenvalues, const LyapunovSpec& spec) {
  spec.validate();
  if (eigenvalues.size() < 2) throw ConfigError("Lyapunov checks need m >= 2");
  if (static_cast<int>(eigenvalues.size()) != spec.components()) {
    throw ConfigError("Lyapunov spec size does not match the number of eigenvalues");
  }
  for (double l : eigenvalues) {
    if (!(l > 0.0)) throw ConfigError("Lyapunov checks need positive eigenvalues");
  }
}

// Exponent of theta_q in a_lk (0-based l <= k, q in 0..m-2).
long double a_entry(const std::vector<double>& lam, const LyapunovSpec& spec, int l, int k) {
  if (l > k) std::swap(l, k);
  const int m = static_cast<int>(lam.size());
  long double v = (static_cast<long double>(lam[static_cast<std::size_t>(l)]) +
                   lam[static_cast<std::size_t>(k)]) / 2.0L;
  for (int q = 0; q < m - 1; ++q) {
    const long double p = spec.p_ks[static_cast<std::size_t>(q)];
    long double e;
    if (q < l) {
      e = p * p;
    } else if (q < k) {
      e = (p + 1) * (p + 1);
    } else {
      e = (p + 2) * (p + 2);
    }
    v *= std::pow(static_cast<long double>(spec.theta[static_cast<std::size_t>(q)]), e);
  }
  return v;
}

LMatrix a_matrix_ld(const std::vector<double>& lam, const LyapunovSpec& spec) {
  const auto m = static_cast<Eigen::Index>(lam.size());
  LMatrix a(m, m);
  for (Eigen::Index l = 0; l < m; ++l) {
    for (Eigen::Index k = l; k < m; ++k) {
      a(l, k) = a(k, l) = a_entry(lam, spec, static_cast<int>(l), static_cast<int>(k));
    }
  }
  return a;
}

long double det_ld(const LMatrix& a) {
  if (a.rows() == 0) return 1.0L;
  return a.partialPivLu().determinant();
}

}  // namespace

void LyapunovSpec::validate() const {
  if (p_m < 1) throw ConfigError("Lyapunov p_m must be a positive integer");
  if (p_ks.size() != theta.size()) throw ConfigError("Lyapunov p_ks and theta must have m-1 entries");
  for (double t : theta) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("Lyapunov theta entries must be positive");
  }
  for (int p : p_ks) {
    if (p < 0) throw ConfigError("Lyapunov p_k entries must be nonnegative");
  }
}

double eval_H(const LyapunovSpec& spec, const Eigen::VectorXd& W) {
  spec.validate();
  const int m = spec.components();
  if (W.size() != m) throw ConfigError("eval_H: state has the wrong size");
  for (Eigen::Index i = 0; i < W.size(); ++i) {
    if (!(W(i) >= 0.0)) {
      std::ostringstream msg;
      msg << "eval_H: component " << i + 1 << " is negative (" << W(i) << ")";
      throw ConfigError(msg.str());
    }
  }
  // Walk chains from the top: p_m fixed, then p_{m-1} <= p_m, ..., p_1 <= p_2.
  double total = 0.0;
  auto recurse = [&](auto&& self, int level, int upper, double acc) -> void {
    // level is the 0-based index of the exponent being chosen (m-2 down to 0);
    // `upper` is p_{level+2} in 1-based terms.
    if (level < 0) {
      total += acc * std::pow(W(0), upper);
      return;
    }
    for (int p = 0; p <= upper; ++p) {
      const double coeff = binomial(upper, p) *
                           std::pow(spec.theta[static_cast<std::size_t>(level)], double(p) * p) *
                           std::pow(W(level + 1), upper - p);
      self(self, level - 1, p, acc * coeff);
    }
  };
  recurse(recurse, m - 2, spec.p_m, 1.0);
  return total;
}

double eval_L(const LyapunovSpec& spec, const Eigen::MatrixXd& field, double cell_width) {
  const auto n = field.cols();
  if (n == 0) throw ConfigError("eval_L: empty field");
  if (n == 1) return eval_H(spec, field.col(0));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    sum += w * eval_H(spec, field.col(i));
  }
  return sum * cell_width;
}

Eigen::MatrixXd build_a_matrix(const std::vector<double>& eigenvalues, const LyapunovSpec& spec) {
  check_sizes(eigenvalues, spec);
  return a_matrix_ld(eigenvalues, spec).cast<double>();
}

double am_gm_ratio(double lambda_l, double lambda_k) {
  return (lambda_l + lambda_k) / (2.0 * std::sqrt(lambda_l * lambda_k));
}

PositivityReport check_condition_1_12(const std::vector<double>& eigenvalues,
                                      const LyapunovSpec& spec) {
  check_sizes(eigenvalues, spec);
  const int m = static_cast<int>(eigenvalues.size());
  auto lam = [&](int l) { return static_cast<long double>(eigenvalues[static_cast<std::size_t>(l - 1)]); };
  auto th = [&](int k) { return static_cast<long double>(spec.theta[static_cast<std::size_t>(k - 1)]); };
  auto pk = [&](int k) { return static_cast<long double>(spec.p_ks[static_cast<std::size_t>(k - 1)]); };
  auto A = [&](int l, int k) {
    return (lam(l) + lam(k)) / (2.0L * std::sqrt(lam(l) * lam(k)));
  };

  const LMatrix a = a_matrix_ld(eigenvalues, spec);
  std::vector<long double> minor(static_cast<std::size_t>(m + 1), 1.0L);  // det[0] = 1
  for (int k = 1; k <= m; ++k) minor[static_cast<std::size_t>(k)] = det_ld(a.topLeftCorner(k, k));

  // K[l][r], H[l][r] with 1-based l, r.
  const auto sz = static_cast<std::size_t>(m + 1);
  std::vector<std::vector<long double>> K(sz, std::vector<long double>(sz, 0.0L));
  std::vector<std::vector<long double>> H(sz, std::vector<long double>(sz, 0.0L));

  for (int l = 2; l <= m; ++l) {
    long double pos = lam(1) * lam(l);
    long double prod_theta2 = 1.0L;
    for (int k = 1; k <= l - 1; ++k) {
      pos *= std::pow(th(k), 2.0L * (pk(k) + 1) * (pk(k) + 1));
      prod_theta2 *= th(k) * th(k);
    }
    for (int k = l; k <= m - 1; ++k) pos *= std::pow(th(k), 2.0L * (pk(k) + 2) * (pk(k) + 2));
    K[static_cast<std::size_t>(l)][2] = pos * (prod_theta2 - A(1, l) * A(1, l));
  }
  for (int l = 3; l <= m; ++l) {
    long double pos = lam(1) * std::sqrt(lam(2) * lam(l)) *
                      std::pow(th(1), 2.0L * (pk(1) + 1) * (pk(1) + 1));
    for (int k = 2; k <= l - 1; ++k) {
      pos *= std::pow(th(k), (pk(k) + 2) * (pk(k) + 2) + (pk(k) + 1) * (pk(k) + 1));
    }
    for (int k = l; k <= m - 1; ++k) pos *= std::pow(th(k), 2.0L * (pk(k) + 2) * (pk(k) + 2));
    H[static_cast<std::size_t>(l)][2] = pos * (th(1) * th(1) * A(2, l) - A(1, 2) * A(1, l));
  }
  // H_l^r for 3 <= r <= l-1: rows 1..r and columns {1..r-1, l} of the a-matrix
  // (rows r+1..l and columns r..l-1 removed from the leading l x l block),
  // times prod_{k=1}^{r-2} det[k]^(2^(r-k-2)).
  for (int l = 4; l <= m; ++l) {
    for (int r = 3; r <= l - 1; ++r) {
      LMatrix sub(r, r);
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r - 1; ++j) sub(i, j) = a(i, j);
        sub(i, r - 1) = a(i, l - 1);
      }
      long double factor = 1.0L;
      for (int k = 1; k <= r - 2; ++k) {
        factor *= std::pow(minor[static_cast<std::size_t>(k)], std::ldexp(1.0L, r - k - 2));
      }
      H[static_cast<std::size_t>(l)][static_cast<std::size_t>(r)] = det_ld(sub) * factor;
    }
  }
  for (int r = 3; r <= m; ++r) {
    for (int l = r; l <= m; ++l) {
      const auto L = static_cast<std::size_t>(l);
      const auto R = static_cast<std::size_t>(r);
      K[L][R] = K[R - 1][R - 1] * K[L][R - 1] - H[L][R - 1] * H[L][R - 1];
    }
  }

  PositivityReport rep;
  rep.satisfied = true;
  for (int l = 2; l <= m; ++l) {
    const long double v = K[static_cast<std::size_t>(l)][static_cast<std::size_t>(l)];
    rep.K.push_back(static_cast<double>(v));
    const int sign = v > 0 ? 1 : (v < 0 ? -1 : 0);
    rep.K_sign.push_back(sign);
    rep.log10_abs_K.push_back(v == 0 ? -std::numeric_limits<double>::infinity()
                                     : static_cast<double>(std::log10(std::abs(v))));
    if (sign <= 0) rep.satisfied = false;
  }
  for (int k = 1; k <= m; ++k) rep.a_minors.push_back(static_cast<double>(minor[static_cast<std::size_t>(k)]));
  return rep;
}

std::optional<LyapunovSpec> search_theta(const std::vector<double>& eigenvalues,
                                         const std::vector<int>& p_ks, int p_m, int max_level,
                                         long max_evaluations) {
  const int m = static_cast<int>(eigenvalues.size());
  if (m < 2) throw ConfigError("search_theta needs m >= 2");
  if (static_cast<int>(p_ks.size()) != m - 1) throw ConfigError("search_theta: p_ks needs m-1 entries");
  double amax = 1.0;
  for (int l = 0; l < m; ++l) {
    for (int k = 0; k < m; ++k) {
      amax = std::max(amax, am_gm_ratio(eigenvalues[static_cast<std::size_t>(l)],
                                        eigenvalues[static_cast<std::size_t>(k)]));
    }
  }
  const double base = amax + 1.0;

  LyapunovSpec spec{p_m, std::vector<double>(static_cast<std::size_t>(m - 1), 1.0), p_ks};
  std::vector<int> level(static_cast<std::size_t>(m - 1), 0);
  for (long evals = 0; evals < max_evaluations; ++evals) {
    for (int q = 0; q < m - 1; ++q) {
      spec.theta[static_cast<std::size_t>(q)] = std::pow(base, level[static_cast<std::size_t>(q)]);
    }
    if (check_condition_1_12(eigenvalues, spec).satisfied) return spec;
    int pos = m - 2;
    while (pos >= 0 && ++level[static_cast<std::size_t>(pos)] > max_level) {
      level[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return std::nullopt;
}

BoundednessReport monitor_L(const Trajectory& trajectory, const LyapunovSpec& spec) {
  BoundednessReport rep;
  rep.times = trajectory.times;
  for (const auto& state : trajectory.states) {
    rep.L.push_back(eval_L(spec, state, trajectory.cell_width()));
  }
  const std::size_t n = rep.L.size();
  if (n == 0) return rep;
  const std::size_t split = (n + 1) / 2;
  rep.first_half_max = *std::max_element(rep.L.begin(), rep.L.begin() + static_cast<long>(split));
  rep.second_half_max = split < n
                            ? *std::max_element(rep.L.begin() + static_cast<long>(split), rep.L.end())
                            : rep.first_half_max;
  rep.sup = std::max(rep.first_half_max, rep.second_half_max);
  rep.bounded = std::isfinite(rep.sup) && rep.second_half_max <= kBoundednessFactor * rep.first_half_max;
  return rep;
}

}  // namespace tdrd
