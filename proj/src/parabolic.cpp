#include "tdrd/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tdrd/error.hpp"

namespace tdrd {

Eigen::MatrixXd SymmetricTridiagonal::dense() const {
  const auto n = static_cast<Eigen::Index>(diag.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) out(i, i) = diag[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    out(i, i + 1) = out(i + 1, i) = off[static_cast<std::size_t>(i)];
  }
  return out;
}

SymmetricTridiagonal symmetric_part(const ToeplitzParams& params) {
  const auto a = toeplitz_bands(params, false);
  SymmetricTridiagonal out;
  out.diag = a.diag;
  out.off.resize(a.sub.size());
  for (std::size_t i = 0; i < a.sub.size(); ++i) out.off[i] = 0.5 * (a.sub[i] + a.sup[i]);
  return out;
}

MinorReport leading_minors(const SymmetricTridiagonal& t) {
  const auto n = t.diag.size();
  if (n == 0 || t.off.size() + 1 != n) {
    throw ConfigError("leading_minors: band lengths are inconsistent");
  }
  double scale = 0.0;
  for (double v : t.diag) scale = std::max(scale, std::abs(v));
  for (double v : t.off) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;

  MinorReport out;
  out.status = Definiteness::Positive;
  out.minors.reserve(n);
  double prev2 = 1.0;
  double prev = t.diag[0];
  out.minors.push_back(prev);
  for (std::size_t k = 1; k < n; ++k) {
    const double cur = t.diag[k] * prev - t.off[k - 1] * t.off[k - 1] * prev2;
    out.minors.push_back(cur);
    prev2 = prev;
    prev = cur;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double d = out.minors[k];
    const double floor = 1e-12 * std::pow(scale, static_cast<double>(k + 1));
    if (d > floor) continue;
    out.first_failure = static_cast<int>(k + 1);
    out.status = std::abs(d) < floor ? Definiteness::Indeterminate : Definiteness::NotPositive;
    break;
  }
  return out;
}

bool is_positive_definite(const SymmetricTridiagonal& t) {
  return leading_minors(t).status == Definiteness::Positive;
}

bool andelic_condition(const SymmetricTridiagonal& t) {
  const auto m = static_cast<double>(t.diag.size());
  const double c = std::cos(std::numbers::pi / (m + 1.0));
  for (std::size_t i = 0; i < t.off.size(); ++i) {
    if (!(t.diag[i] > 0.0 && t.diag[i + 1] > 0.0)) return false;
    if (!(t.diag[i] * t.diag[i + 1] > 4.0 * t.off[i] * t.off[i] * c * c)) return false;
  }
  return true;
}

ParabolicityReport check_parabolicity(const ToeplitzParams& params) {
  params.validate();
  ParabolicityReport r;
  r.ratio = std::sqrt(params.alpha1 * params.alpha2) /
            std::max(params.beta1 + params.gamma1, params.beta2 + params.gamma2);
  r.threshold = std::cos(std::numbers::pi / (params.m + 1));
  r.margin = r.ratio - r.threshold;
  r.satisfied = r.margin > 0.0;
  r.minors = leading_minors(symmetric_part(params));
  r.minors_positive = r.minors.status == Definiteness::Positive;
  return r;
}

}  // namespace tdrd
