#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tdrd/spectral.hpp"

namespace tdrd {

/// Sign assignment selecting one of the 2^m invariant regions. signs[l] = +1
/// puts index l on the nonnegative side, -1 on the nonpositive side.
struct RegionSignature {
  std::vector<int> signs;

  int size() const { return static_cast<int>(signs.size()); }
  static RegionSignature all_positive(int m);
  /// Bit l of `bits` set means signs[l] = -1.
  static RegionSignature from_bits(int m, unsigned long long bits);
  RegionSignature negated() const;
  void validate(int m) const;

  friend bool operator==(const RegionSignature&, const RegionSignature&) = default;
};

/// P = (s_1 V_1 | ... | s_m V_m) with descending eigenvalues, plus (P^T)^{-1}.
struct Diagonalizer {
  Eigen::MatrixXd P;
  Eigen::MatrixXd inv_transpose;  // (P^T)^{-1}
  std::vector<double> eigenvalues;
  RegionSignature signature;
  double similarity_residual = 0.0;  // ||P^T A (P^T)^{-1} - diag||_inf

  int size() const { return static_cast<int>(eigenvalues.size()); }
};

/// Throws NumericalError if the similarity residual exceeds
/// 1e-8 * ||A||_inf or the spectrum has repeated eigenvalues.
Diagonalizer diagonalizer(const Spectrum& spectrum, const RegionSignature& signature);

/// (P^T)^{-1} by partial-pivot LU, residual-checked.
Eigen::MatrixXd inverse_transpose(const Eigen::MatrixXd& P);

struct Membership {
  bool member = false;
  std::vector<double> slacks;  // signs[l] * <column_l, X>
};

/// X lies in the region iff signs[l] * <V_l, X> >= -1e-12 ||X|| for every l,
/// where V_l are the columns of `columns`. The same routine checks initial
/// data and boundary vectors.
Membership region_membership(const Eigen::MatrixXd& columns, const Eigen::VectorXd& X,
                             const RegionSignature& signature);
Membership region_membership(const Diagonalizer& d, const Eigen::VectorXd& X,
                             const RegionSignature& signature);

/// Every signature whose region contains X, in ascending bit order. Inner
/// products within 1e-12 ||X|| of zero admit both signs.
std::vector<RegionSignature> enclosing_regions(const Spectrum& spectrum,
                                               const Eigen::VectorXd& X);

/// Column correspondence between a computed eigenvector matrix and a
/// reference (for instance a printed one): reference column k equals
/// sign[k] * computed column permutation[k], up to max_abs_error.
struct ColumnMatch {
  std::vector<int> permutation;
  std::vector<int> signs;
  double max_abs_error = 0.0;
};

ColumnMatch match_columns(const Eigen::MatrixXd& computed, const Eigen::MatrixXd& reference);

}  // namespace tdrd
