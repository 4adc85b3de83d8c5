#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "tdrd/regions.hpp"

namespace tdrd {

/// F_j(U) = U^T Upsilon_j U + sigma_j^T U for j = 1..m, Upsilon_j symmetric.
struct QuadraticReactionSystem {
  std::vector<Eigen::MatrixXd> upsilon;
  std::vector<Eigen::VectorXd> sigma;

  int size() const { return static_cast<int>(upsilon.size()); }

  /// Validates shapes and symmetrizes each Upsilon_j.
  static QuadraticReactionSystem make(std::vector<Eigen::MatrixXd> upsilon,
                                      std::vector<Eigen::VectorXd> sigma);
  static QuadraticReactionSystem zero(int m);
};

/// One coefficient of F_component. `j < 0` marks a linear term in w_i;
/// otherwise the monomial is w_i w_j with i <= j (0-based).
struct Monomial {
  int i = 0;
  int j = -1;
  double coeff = 0.0;
};

/// All monomial coefficients of one component, quadratic terms first.
std::vector<Monomial> monomials(const QuadraticReactionSystem& sys, int component);

Eigen::VectorXd eval_reaction(const QuadraticReactionSystem& sys, const Eigen::VectorXd& U);

/// Closed-form coordinate change W = P^T U: the result G satisfies
/// G(P^T U) = P^T F(U). Throws NumericalError if P is singular.
QuadraticReactionSystem transform_reaction(const Eigen::MatrixXd& P,
                                           const QuadraticReactionSystem& sys);
QuadraticReactionSystem transform_reaction(const Diagonalizer& d,
                                           const QuadraticReactionSystem& sys);

struct QuasipositivityReport {
  bool ok = false;
  double min_value = 0.0;      // min over faces of F_l restricted to w_l = 0
  int worst_component = -1;    // 0-based, -1 if no samples
  Eigen::VectorXd worst_point;
  std::int64_t samples = 0;
  double scale = 1.0;
};

/// Samples every face {w_l = 0, 0 <= w_k <= box_k} with all face corners plus
/// `samples_per_face` shifted Halton points (shift drawn from `seed`).
QuasipositivityReport check_quasipositivity(const QuadraticReactionSystem& sys,
                                            const Eigen::VectorXd& box, int samples_per_face,
                                            std::uint64_t seed = 0);

struct A3Report {
  bool ok = false;
  double C2 = 0.0;  // certified bound when ok
  Eigen::VectorXd D;
  int offender_i = -1;  // 0-based monomial w_i w_j with positive coefficient
  int offender_j = -1;
  double offender_coeff = 0.0;
  Eigen::MatrixXd quadratic;  // symmetric form of <D, F(W)>
  Eigen::VectorXd linear;
};

/// Structural certificate on the nonnegative orthant: every quadratic
/// monomial of <D, F(W)> has coefficient <= 1e-12, and then
/// C2 = max(0, linear coefficients). Requires D >= 0 and D_m = 1.
A3Report check_A3(const QuadraticReactionSystem& sys, const Eigen::VectorXd& D);

/// Tries D = 1 first, then D_l in {10^0, ..., 10^(levels-1)} for l < m in
/// lexicographic order. Returns the first certifying report, or the D = 1
/// report when none certifies.
A3Report search_A3(const QuadraticReactionSystem& sys, int levels = 7);

struct GrowthCheckReport {
  QuasipositivityReport a1;
  int growth_degree = 2;
  A3Report a3;
};

GrowthCheckReport check_growth_conditions(const QuadraticReactionSystem& sys,
                                          const Eigen::VectorXd& box, int samples_per_face,
                                          std::uint64_t seed,
                                          const std::optional<Eigen::VectorXd>& D = std::nullopt);

}  // namespace tdrd
