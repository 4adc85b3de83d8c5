#include "tdrd/regions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tdrd/error.hpp"

namespace tdrd {

namespace {

constexpr double kBoundaryTol = 1e-12;
constexpr double kSimilarityTol = 1e-8;

double inf_norm(const Eigen::MatrixXd& a) { return a.cwiseAbs().rowwise().sum().maxCoeff(); }

}  // namespace

RegionSignature RegionSignature::all_positive(int m) {
  return {std::vector<int>(static_cast<std::size_t>(m), 1)};
}

RegionSignature RegionSignature::from_bits(int m, unsigned long long bits) {
  RegionSignature s = all_positive(m);
  for (int l = 0; l < m; ++l) {
    if ((bits >> l) & 1ULL) s.signs[static_cast<std::size_t>(l)] = -1;
  }
  return s;
}

RegionSignature RegionSignature::negated() const {
  RegionSignature s = *this;
  for (int& v : s.signs) v = -v;
  return s;
}

void RegionSignature::validate(int m) const {
  if (size() != m) {
    std::ostringstream msg;
    msg << "region signature has " << size() << " entries, expected " << m;
    throw ConfigError(msg.str());
  }
  for (int v : signs) {
    if (v != 1 && v != -1) throw ConfigError("region signature entries must be +1 or -1");
  }
}

Eigen::MatrixXd inverse_transpose(const Eigen::MatrixXd& P) {
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(P.transpose());
  const Eigen::Index n = P.rows();
  Eigen::MatrixXd inv = lu.solve(Eigen::MatrixXd::Identity(n, n));
  const double res = (P.transpose() * inv - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!std::isfinite(res) || res > 1e-8) {
    std::ostringstream msg;
    msg << "diagonalizing matrix is singular or ill-conditioned (inverse residual " << res << ")";
    throw NumericalError(msg.str());
  }
  return inv;
}

Diagonalizer diagonalizer(const Spectrum& spectrum, const RegionSignature& signature) {
  const int m = spectrum.size();
  signature.validate(m);
  if (spectrum.eigenvectors.cols() != m) {
    throw ConfigError("diagonalizer: spectrum carries no eigenvectors");
  }
  for (int i = 0; i + 1 < m; ++i) {
    if (!(spectrum.eigenvalues[static_cast<std::size_t>(i)] >
          spectrum.eigenvalues[static_cast<std::size_t>(i + 1)])) {
      std::ostringstream msg;
      msg << "diagonalizer: eigenvalues " << i + 1 << " and " << i + 2 << " are not strictly descending";
      throw NumericalError(msg.str());
    }
  }

  Diagonalizer d;
  d.eigenvalues = spectrum.eigenvalues;
  d.signature = signature;
  d.P = spectrum.eigenvectors;
  for (int l = 0; l < m; ++l) d.P.col(l) *= signature.signs[static_cast<std::size_t>(l)];
  d.inv_transpose = inverse_transpose(d.P);

  const Eigen::MatrixXd a = build_matrix(spectrum.params, false);
  const Eigen::VectorXd lam = Eigen::Map<const Eigen::VectorXd>(d.eigenvalues.data(), m);
  const Eigen::MatrixXd sim = d.P.transpose() * a * d.inv_transpose;
  d.similarity_residual = (sim - Eigen::MatrixXd(lam.asDiagonal())).cwiseAbs().maxCoeff();
  if (!(d.similarity_residual <= kSimilarityTol * inf_norm(a))) {
    std::ostringstream msg;
    msg << "diagonalizer: similarity residual " << d.similarity_residual;
    throw NumericalError(msg.str());
  }
  return d;
}

Membership region_membership(const Eigen::MatrixXd& columns, const Eigen::VectorXd& X,
                             const RegionSignature& signature) {
  const auto m = static_cast<int>(columns.cols());
  signature.validate(m);
  if (X.size() != columns.rows()) throw ConfigError("region_membership: dimension mismatch");
  const double tol = kBoundaryTol * X.norm();
  Membership out;
  out.member = true;
  for (int l = 0; l < m; ++l) {
    const double slack = signature.signs[static_cast<std::size_t>(l)] * columns.col(l).dot(X);
    out.slacks.push_back(slack);
    if (slack < -tol) out.member = false;
  }
  return out;
}

Membership region_membership(const Diagonalizer& d, const Eigen::VectorXd& X,
                             const RegionSignature& signature) {
  return region_membership(d.P, X, signature);
}

std::vector<RegionSignature> enclosing_regions(const Spectrum& spectrum, const Eigen::VectorXd& X) {
  const int m = spectrum.size();
  if (X.size() != m) throw ConfigError("enclosing_regions: dimension mismatch");
  if (m > 62) throw ConfigError("enclosing_regions: m too large to enumerate");
  const double tol = kBoundaryTol * X.norm();

  // Each index is forced to one sign, or free when the product is ~0.
  std::vector<int> forced(static_cast<std::size_t>(m));
  std::vector<int> free_idx;
  for (int l = 0; l < m; ++l) {
    const double ip = spectrum.eigenvectors.col(l).dot(X);
    if (std::abs(ip) <= tol) {
      forced[static_cast<std::size_t>(l)] = 0;
      free_idx.push_back(l);
    } else {
      forced[static_cast<std::size_t>(l)] = ip > 0.0 ? 1 : -1;
    }
  }
  unsigned long long base = 0;
  for (int l = 0; l < m; ++l) {
    if (forced[static_cast<std::size_t>(l)] < 0) base |= 1ULL << l;
  }
  std::vector<unsigned long long> codes;
  const auto z = free_idx.size();
  for (unsigned long long k = 0; k < (1ULL << z); ++k) {
    unsigned long long code = base;
    for (std::size_t j = 0; j < z; ++j) {
      if ((k >> j) & 1ULL) code |= 1ULL << free_idx[j];
    }
    codes.push_back(code);
  }
  std::sort(codes.begin(), codes.end());
  std::vector<RegionSignature> out;
  out.reserve(codes.size());
  for (auto c : codes) out.push_back(RegionSignature::from_bits(m, c));
  return out;
}

ColumnMatch match_columns(const Eigen::MatrixXd& computed, const Eigen::MatrixXd& reference) {
  if (computed.rows() != reference.rows() || computed.cols() != reference.cols()) {
    throw ConfigError("match_columns: shape mismatch");
  }
  const auto n = static_cast<int>(reference.cols());
  ColumnMatch out;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int k = 0; k < n; ++k) {
    const Eigen::VectorXd ref = reference.col(k);
    int best = -1;
    double best_err = 0.0;
    int best_sign = 1;
    for (int j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      for (int s : {1, -1}) {
        const double err = (s * computed.col(j) - ref).cwiseAbs().maxCoeff();
        if (best < 0 || err < best_err) {
          best = j;
          best_err = err;
          best_sign = s;
        }
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    out.permutation.push_back(best);
    out.signs.push_back(best_sign);
    out.max_abs_error = std::max(out.max_abs_error, best_err);
  }
  return out;
}

}  // namespace tdrd
