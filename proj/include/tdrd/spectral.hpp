#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace tdrd {

/// Diffusion constants of the tridiagonal 2-Toeplitz matrix A.
///
/// A has diagonal (alpha1, alpha2, alpha1, ...), subdiagonal
/// (beta1, beta2, beta1, ...) and superdiagonal (gamma1, gamma2, ...).
/// The transpose swaps the two off-diagonal bands, so row 1 of A^T reads
/// (alpha1, beta1, 0, ...) and row 2 starts (gamma1, alpha2, beta2, ...).
struct ToeplitzParams {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  int m = 2;

  /// Throws ConfigError unless all six constants are positive and m >= 2.
  void validate() const;
};

/// Three bands of a tridiagonal matrix; sub[i] = T(i+1, i), sup[i] = T(i, i+1).
struct TridiagonalBands {
  std::vector<double> sub;
  std::vector<double> diag;
  std::vector<double> sup;

  int size() const { return static_cast<int>(diag.size()); }
  Eigen::MatrixXd dense() const;
  TridiagonalBands transposed() const { return {sup, diag, sub}; }
};

TridiagonalBands toeplitz_bands(const ToeplitzParams& params, bool transposed);
Eigen::MatrixXd build_matrix(const ToeplitzParams& params, bool transposed);

struct DerivedConstants {
  double beta = 0.0;  // sqrt(beta2 gamma2 / (beta1 gamma1))
  double s = 0.0;     // sqrt(gamma1 gamma2 / (beta1 beta2))
};

DerivedConstants derived_constants(const ToeplitzParams& params);

/// Where an eigenvalue came from: one root of the quadratic attached to a
/// recurrence zero, or the lone alpha1 eigenvalue of odd orders.
struct EigenSource {
  enum class Kind { PZero, QZero, Alpha1 };
  Kind kind = Kind::Alpha1;
  int zero_index = 0;  // r in 1..n for P/Q zeros, 0 for Alpha1
  double zero = 0.0;   // the recurrence zero feeding the quadratic
  int root = 0;        // +1 larger root, -1 smaller root, 0 for Alpha1

  std::string label() const;
};

struct Spectrum {
  ToeplitzParams params;
  std::vector<double> eigenvalues;        // strictly descending
  std::vector<EigenSource> provenance;    // aligned with eigenvalues
  Eigen::MatrixXd eigenvectors;           // m x m, column l pairs with eigenvalue l
  double max_residual = 0.0;              // max_l ||A^T v_l - lambda_l v_l||_inf
  double oracle_max_deviation = 0.0;      // vs oracle_eigenvalues, elementwise

  int size() const { return static_cast<int>(eigenvalues.size()); }
};

/// Eigenvalues of A^T from the closed-form quadratics, descending, with
/// provenance. Leaves eigenvectors empty.
Spectrum eigenvalues(const ToeplitzParams& params);

/// Unit eigenvector of A^T for `lambda`, whose quadratic was fed by `zero`.
/// Entry 1 is positive. Pass the source tag, never the rank.
Eigen::VectorXd eigenvector(const ToeplitzParams& params, double lambda,
                            double zero);

/// Eigenvector of the alpha1 eigenvalue; odd m only.
Eigen::VectorXd alpha1_eigenvector(const ToeplitzParams& params);

Eigen::VectorXd eigenvector(const ToeplitzParams& params,
                            const EigenSource& source, double lambda);

/// Full verified spectrum: eigenvalues, eigenvectors, residuals, and a cross
/// check against oracle_eigenvalues. Throws NumericalError naming the
/// offending index on a residual breach, an oracle mismatch, or a repeated
/// eigenvalue.
Spectrum spectrum(const ToeplitzParams& params);

/// Independent eigenvalue oracle for a real tridiagonal matrix whose
/// off-diagonal products sub_i * sup_i are nonnegative. Symmetrizes by a
/// diagonal similarity and runs Sturm bisection; result descending.
std::vector<double> oracle_eigenvalues(const TridiagonalBands& bands);

/// Tolerances pinned for the spectral checks.
inline constexpr double kSpectralResidualTol = 1e-8;
inline constexpr double kOracleTol = 1e-8;

}  // namespace tdrd
