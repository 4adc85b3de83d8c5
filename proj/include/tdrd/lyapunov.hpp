#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "tdrd/trajectory.hpp"

namespace tdrd {

/// Parameters of the polynomial Lyapunov functional for m components:
/// the top exponent p_m, weights theta_1..theta_{m-1} and the fixed exponents
/// p_1..p_{m-1} entering the coupling matrix.
struct LyapunovSpec {
  int p_m = 1;
  std::vector<double> theta;
  std::vector<int> p_ks;

  int components() const { return static_cast<int>(theta.size()) + 1; }
  void validate() const;
};

/// H(w) = sum over chains 0 <= p_1 <= ... <= p_{m-1} <= p_m of
///   prod C(p_k, p_{k-1}) * prod theta_k^{p_k^2} * w_1^{p_1} w_2^{p_2-p_1} ... w_m^{p_m-p_{m-1}}.
/// Throws ConfigError on negative entries.
double eval_H(const LyapunovSpec& spec, const Eigen::VectorXd& W);

/// Trapezoid integral of H over a grid (columns = grid points). A single
/// column is a 0D state and returns H at that state.
double eval_L(const LyapunovSpec& spec, const Eigen::MatrixXd& field, double cell_width);

/// Coupling matrix, for l <= k (1-based)
///   a_lk = (lambda_l + lambda_k)/2 * prod_{q<l} theta_q^{p_q^2}
///          * prod_{l<=q<k} theta_q^{(p_q+1)^2} * prod_{q>=k} theta_q^{(p_q+2)^2},
/// mirrored below the diagonal. On the diagonal the middle product is empty,
/// which is the reading under which a_11 a_ll - a_1l^2 and a_11 a_2l - a_12 a_1l
/// reproduce the closed forms of K_l^2 and H_l^2.
Eigen::MatrixXd build_a_matrix(const std::vector<double>& eigenvalues, const LyapunovSpec& spec);

struct PositivityReport {
  bool satisfied = false;
  std::vector<double> K;          // K_l^l for l = 2..m (index 0 is l = 2); may be +-inf
  std::vector<int> K_sign;
  std::vector<double> log10_abs_K;
  std::vector<double> a_minors;   // leading principal minors det[1..m] of the a-matrix
};

/// K_l^l > 0 for l = 2..m via the recursion K_l^r = K_{r-1}^{r-1} K_l^{r-1} - (H_l^{r-1})^2,
/// from the closed-form K_l^2, H_l^2 and the determinant form of H_l^r (r >= 3).
/// Evaluated in extended precision.
PositivityReport check_condition_1_12(const std::vector<double>& eigenvalues,
                                      const LyapunovSpec& spec);

/// (lambda_l + lambda_k) / (2 sqrt(lambda_l lambda_k)).
double am_gm_ratio(double lambda_l, double lambda_k);

/// Multiplicative grid theta_k in {G^j : j = 0..max_level}, G = max A_lk + 1,
/// scanned lexicographically; the first spec passing check_condition_1_12.
/// Returns nullopt when the grid is exhausted or exceeds `max_evaluations`.
std::optional<LyapunovSpec> search_theta(const std::vector<double>& eigenvalues,
                                         const std::vector<int>& p_ks, int p_m,
                                         int max_level = 8, long max_evaluations = 5'000'000);

struct BoundednessReport {
  std::vector<double> times;
  std::vector<double> L;
  double sup = 0.0;
  double first_half_max = 0.0;
  double second_half_max = 0.0;
  bool bounded = false;  // second_half_max <= 1.05 * first_half_max
};

inline constexpr double kBoundednessFactor = 1.05;

/// L(t_i) along a diagonal-space trajectory.
BoundednessReport monitor_L(const Trajectory& trajectory, const LyapunovSpec& spec);

}  // namespace tdrd
