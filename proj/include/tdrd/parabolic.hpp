#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tdrd/spectral.hpp"

namespace tdrd {

/// Symmetric tridiagonal matrix: diagonal a_1..a_m and off-diagonal b_1..b_{m-1}.
struct SymmetricTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  Eigen::MatrixXd dense() const;
};

enum class Definiteness { Positive, NotPositive, Indeterminate };

struct MinorReport {
  std::vector<double> minors;  // leading principal minors d_1..d_m
  Definiteness status = Definiteness::Indeterminate;
  int first_failure = 0;       // 1-based index of the first non-positive minor, 0 if none
};

struct ParabolicityReport {
  double ratio = 0.0;      // sqrt(alpha1 alpha2) / max(beta1+gamma1, beta2+gamma2)
  double threshold = 0.0;  // cos(pi/(m+1))
  double margin = 0.0;     // ratio - threshold
  bool satisfied = false;  // margin > 0
  bool minors_positive = false;
  MinorReport minors;
};

/// (A + A^T)/2 in band form.
SymmetricTridiagonal symmetric_part(const ToeplitzParams& params);

/// Leading principal minors by d_k = a_k d_{k-1} - b_{k-1}^2 d_{k-2}. A minor
/// with |d_k| < 1e-12 * scale^k (scale = largest entry magnitude) is reported
/// Indeterminate.
MinorReport leading_minors(const SymmetricTridiagonal& t);

/// True iff every leading principal minor is decisively positive.
bool is_positive_definite(const SymmetricTridiagonal& t);

/// Sufficient condition a_i a_{i+1} > 4 b_i^2 cos^2(pi/(m+1)) for every i.
bool andelic_condition(const SymmetricTridiagonal& t);

ParabolicityReport check_parabolicity(const ToeplitzParams& params);

}  // namespace tdrd
