#include "tdrd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "tdrd/error.hpp"
#include "tdrd/polyrec.hpp"

namespace tdrd {

void ToeplitzParams::validate() const {
  const double c[] = {alpha1, alpha2, beta1, beta2, gamma1, gamma2};
  for (double v : c) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw ConfigError("diffusion constants must be finite and positive");
    }
  }
  if (m < 2) throw ConfigError("matrix order m must be >= 2");
}

Eigen::MatrixXd TridiagonalBands::dense() const {
  const int n = size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) out(i, i) = diag[static_cast<std::size_t>(i)];
  for (int i = 0; i + 1 < n; ++i) {
    out(i + 1, i) = sub[static_cast<std::size_t>(i)];
    out(i, i + 1) = sup[static_cast<std::size_t>(i)];
  }
  return out;
}

TridiagonalBands toeplitz_bands(const ToeplitzParams& params, bool transposed) {
  params.validate();
  const auto n = static_cast<std::size_t>(params.m);
  TridiagonalBands a;
  a.diag.resize(n);
  a.sub.resize(n - 1);
  a.sup.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    a.diag[i] = i % 2 == 0 ? params.alpha1 : params.alpha2;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    a.sub[i] = i % 2 == 0 ? params.beta1 : params.beta2;
    a.sup[i] = i % 2 == 0 ? params.gamma1 : params.gamma2;
  }
  return transposed ? a.transposed() : a;
}

Eigen::MatrixXd build_matrix(const ToeplitzParams& params, bool transposed) {
  return toeplitz_bands(params, transposed).dense();
}

DerivedConstants derived_constants(const ToeplitzParams& params) {
  params.validate();
  return {std::sqrt(params.beta2 * params.gamma2 / (params.beta1 * params.gamma1)),
          std::sqrt(params.gamma1 * params.gamma2 / (params.beta1 * params.beta2))};
}

std::string EigenSource::label() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Alpha1:
      return "alpha1";
    case Kind::PZero:
      out << "P" << zero_index;
      break;
    case Kind::QZero:
      out << "Q" << zero_index;
      break;
  }
  out << (root > 0 ? "+" : "-");
  return out.str();
}

Spectrum eigenvalues(const ToeplitzParams& params) {
  params.validate();
  const auto dc = derived_constants(params);
  const int m = params.m;
  const int n = m / 2;
  const bool odd = m % 2 == 1;

  // (alpha1 - l)(alpha2 - l) = c (Z + beta + 1/beta), c = sqrt(b1 b2 g1 g2)
  const double c = std::sqrt(params.beta1 * params.beta2 * params.gamma1 * params.gamma2);
  const double shift = dc.beta + 1.0 / dc.beta;
  const double sum = params.alpha1 + params.alpha2;
  const double diff = params.alpha1 - params.alpha2;

  const ZeroSet zeros = odd ? zeros_p(n) : zeros_q(n, dc.beta);
  const auto kind = odd ? EigenSource::Kind::PZero : EigenSource::Kind::QZero;

  std::vector<std::pair<double, EigenSource>> pairs;
  pairs.reserve(static_cast<std::size_t>(m));
  for (int r = 1; r <= n; ++r) {
    const double z = zeros.zeros[static_cast<std::size_t>(r - 1)];
    const double disc = diff * diff + 4.0 * c * (z + shift);
    if (!(disc >= 0.0)) {
      std::ostringstream msg;
      msg << "eigenvalues: negative discriminant for zero " << r << " (" << disc << ")";
      throw NumericalError(msg.str());
    }
    const double root = std::sqrt(disc);
    pairs.push_back({0.5 * (sum + root), {kind, r, z, +1}});
    pairs.push_back({0.5 * (sum - root), {kind, r, z, -1}});
  }
  if (odd) pairs.push_back({params.alpha1, {}});

  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  Spectrum out;
  out.params = params;
  for (const auto& [lambda, src] : pairs) {
    out.eigenvalues.push_back(lambda);
    out.provenance.push_back(src);
  }
  return out;
}

namespace {

Eigen::VectorXd canonical(Eigen::VectorXd v) {
  v /= v.norm();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) != 0.0) {
      if (v(i) < 0.0) v = -v;
      break;
    }
  }
  return v;
}

}  // namespace

Eigen::VectorXd eigenvector(const ToeplitzParams& params, double lambda, double zero) {
  params.validate();
  const double tol = 1e-14 * std::max(1.0, std::abs(params.alpha1));
  if (std::abs(lambda - params.alpha1) <= tol) {
    if (params.m % 2 == 0) {
      throw ConfigError("eigenvector: alpha1 is not an eigenvalue for even m");
    }
    return alpha1_eigenvector(params);
  }
  const auto dc = derived_constants(params);
  const auto qf = RecurrenceFamily::q(dc.beta);
  const auto pf = RecurrenceFamily::p();
  Eigen::VectorXd v(params.m);
  for (int l = 1; l <= params.m; ++l) {
    if (l % 2 == 1) {
      const int k = (l - 1) / 2;
      v(l - 1) = std::pow(dc.s, k) * eval_poly(qf, k, zero);
    } else {
      const int k = l / 2 - 1;
      v(l - 1) = -(1.0 / params.beta1) * std::pow(dc.s, k) * (params.alpha1 - lambda) *
                 eval_poly(pf, k, zero);
    }
  }
  return canonical(std::move(v));
}

Eigen::VectorXd alpha1_eigenvector(const ToeplitzParams& params) {
  params.validate();
  if (params.m % 2 == 0) {
    throw ConfigError("eigenvector: alpha1 is not an eigenvalue for even m");
  }
  const double ratio = -params.gamma1 / params.beta2;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(params.m);
  for (int l = 1; l <= params.m; l += 2) v(l - 1) = std::pow(ratio, (l - 1) / 2);
  return canonical(std::move(v));
}

Eigen::VectorXd eigenvector(const ToeplitzParams& params, const EigenSource& source,
                            double lambda) {
  if (source.kind == EigenSource::Kind::Alpha1) return alpha1_eigenvector(params);
  return eigenvector(params, lambda, source.zero);
}

Spectrum spectrum(const ToeplitzParams& params) {
  Spectrum out = eigenvalues(params);
  const int m = params.m;
  const Eigen::MatrixXd at = build_matrix(params, true);
  const double norm_inf = at.cwiseAbs().rowwise().sum().maxCoeff();
  const double scale = std::max(1.0, norm_inf);

  for (int i = 0; i + 1 < m; ++i) {
    const double a = out.eigenvalues[static_cast<std::size_t>(i)];
    const double b = out.eigenvalues[static_cast<std::size_t>(i + 1)];
    if (!(a - b > 1e-12 * scale)) {
      std::ostringstream msg;
      msg << "spectrum: repeated eigenvalue at index " << i + 1 << " (" << a << ", " << b
          << ")";
      throw NumericalError(msg.str());
    }
  }

  out.eigenvectors.resize(m, m);
  for (int l = 0; l < m; ++l) {
    const auto idx = static_cast<std::size_t>(l);
    const double lambda = out.eigenvalues[idx];
    const Eigen::VectorXd v = eigenvector(params, out.provenance[idx], lambda);
    const double res = (at * v - lambda * v).cwiseAbs().maxCoeff();
    if (!(res <= kSpectralResidualTol * scale)) {
      std::ostringstream msg;
      msg << "spectrum: eigenpair " << l + 1 << " (" << out.provenance[idx].label()
          << ", lambda=" << lambda << ") residual " << res;
      throw NumericalError(msg.str());
    }
    out.max_residual = std::max(out.max_residual, res);
    out.eigenvectors.col(l) = v;
  }

  const auto oracle = oracle_eigenvalues(toeplitz_bands(params, true));
  for (int l = 0; l < m; ++l) {
    const auto idx = static_cast<std::size_t>(l);
    const double dev = std::abs(oracle[idx] - out.eigenvalues[idx]);
    if (!(dev <= kOracleTol * std::max(1.0, std::abs(oracle[idx])))) {
      std::ostringstream msg;
      msg << "spectrum: eigenvalue " << l + 1 << " = " << out.eigenvalues[idx]
          << " disagrees with oracle " << oracle[idx];
      throw NumericalError(msg.str());
    }
    out.oracle_max_deviation = std::max(out.oracle_max_deviation, dev);
  }
  return out;
}

namespace {

// Eigenvalues strictly below mu, from the signs of the LDL^T pivots of
// T - mu I (symmetric tridiagonal with diagonal d and off-diagonal e).
int count_below(const std::vector<double>& d, const std::vector<double>& e2, double mu) {
  constexpr double pivmin = std::numeric_limits<double>::min();
  int count = 0;
  double piv = d[0] - mu;
  if (std::abs(piv) < pivmin) piv = -pivmin;
  if (piv < 0.0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    piv = (d[i] - mu) - e2[i - 1] / piv;
    if (std::abs(piv) < pivmin) piv = -pivmin;
    if (piv < 0.0) ++count;
  }
  return count;
}

}  // namespace

std::vector<double> oracle_eigenvalues(const TridiagonalBands& bands) {
  const auto n = bands.diag.size();
  if (n == 0) return {};
  if (bands.sub.size() + 1 != n || bands.sup.size() + 1 != n) {
    throw ConfigError("oracle_eigenvalues: band lengths are inconsistent");
  }
  std::vector<double> e(n - 1), e2(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double prod = bands.sub[i] * bands.sup[i];
    if (prod < 0.0 || !std::isfinite(prod)) {
      std::ostringstream msg;
      msg << "oracle_eigenvalues: off-diagonal product " << i + 1
          << " is negative; spectrum may be complex";
      throw ConfigError(msg.str());
    }
    e[i] = std::sqrt(prod);
    e2[i] = prod;
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? e[i - 1] : 0.0) + (i + 1 < n ? e[i] : 0.0);
    lo = std::min(lo, bands.diag[i] - r);
    hi = std::max(hi, bands.diag[i] + r);
  }
  const double pad = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
  lo -= pad;
  hi += pad;

  const int total = static_cast<int>(n);
  std::vector<double> out;
  out.reserve(n);
  for (int k = 1; k <= total; ++k) {
    // k-th largest: at least k eigenvalues >= a, fewer than k >= b.
    double a = lo;
    double b = hi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (total - count_below(bands.diag, e2, mid) >= k) {
        a = mid;
      } else {
        b = mid;
      }
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

}  // namespace tdrd
