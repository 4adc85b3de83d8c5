#include "tdrd/reaction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "tdrd/error.hpp"

namespace tdrd {

QuadraticReactionSystem QuadraticReactionSystem::make(std::vector<Eigen::MatrixXd> upsilon,
                                                      std::vector<Eigen::VectorXd> sigma) {
  const auto m = static_cast<Eigen::Index>(upsilon.size());
  if (m == 0) throw ConfigError("reaction system needs at least one component");
  if (static_cast<Eigen::Index>(sigma.size()) != m) {
    throw ConfigError("reaction system: Upsilon and sigma counts differ");
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    auto& u = upsilon[static_cast<std::size_t>(j)];
    if (u.rows() != m || u.cols() != m || sigma[static_cast<std::size_t>(j)].size() != m) {
      std::ostringstream msg;
      msg << "reaction system: component " << j + 1 << " has the wrong shape";
      throw ConfigError(msg.str());
    }
    if (!u.allFinite() || !sigma[static_cast<std::size_t>(j)].allFinite()) {
      throw ConfigError("reaction system: coefficients must be finite");
    }
    u = 0.5 * (u + u.transpose()).eval();
  }
  return {std::move(upsilon), std::move(sigma)};
}

QuadraticReactionSystem QuadraticReactionSystem::zero(int m) {
  return {std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(m), Eigen::MatrixXd::Zero(m, m)),
          std::vector<Eigen::VectorXd>(static_cast<std::size_t>(m), Eigen::VectorXd::Zero(m))};
}

std::vector<Monomial> monomials(const QuadraticReactionSystem& sys, int component) {
  const auto& u = sys.upsilon.at(static_cast<std::size_t>(component));
  const auto& s = sys.sigma.at(static_cast<std::size_t>(component));
  const int m = sys.size();
  std::vector<Monomial> out;
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) out.push_back({i, j, i == j ? u(i, j) : 2.0 * u(i, j)});
  }
  for (int i = 0; i < m; ++i) out.push_back({i, -1, s(i)});
  return out;
}

Eigen::VectorXd eval_reaction(const QuadraticReactionSystem& sys, const Eigen::VectorXd& U) {
  const int m = sys.size();
  if (U.size() != m) throw ConfigError("eval_reaction: dimension mismatch");
  Eigen::VectorXd out(m);
  for (int j = 0; j < m; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    out(j) = U.dot(sys.upsilon[idx] * U) + sys.sigma[idx].dot(U);
  }
  return out;
}

QuadraticReactionSystem transform_reaction(const Eigen::MatrixXd& P,
                                           const QuadraticReactionSystem& sys) {
  const int m = sys.size();
  if (P.rows() != m || P.cols() != m) throw ConfigError("transform_reaction: dimension mismatch");
  // U = R W with R = (P^T)^{-1}; G_i(W) = sum_j P_ji F_j(R W).
  const Eigen::MatrixXd R = inverse_transpose(P);
  QuadraticReactionSystem out = QuadraticReactionSystem::zero(m);
  for (int i = 0; i < m; ++i) {
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd l = Eigen::VectorXd::Zero(m);
    for (int j = 0; j < m; ++j) {
      q += P(j, i) * sys.upsilon[static_cast<std::size_t>(j)];
      l += P(j, i) * sys.sigma[static_cast<std::size_t>(j)];
    }
    const Eigen::MatrixXd t = R.transpose() * q * R;
    out.upsilon[static_cast<std::size_t>(i)] = 0.5 * (t + t.transpose());
    out.sigma[static_cast<std::size_t>(i)] = R.transpose() * l;
  }
  return out;
}

QuadraticReactionSystem transform_reaction(const Diagonalizer& d,
                                           const QuadraticReactionSystem& sys) {
  return transform_reaction(d.P, sys);
}

namespace {

double radical_inverse(std::uint64_t index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % static_cast<std::uint64_t>(base));
    index /= static_cast<std::uint64_t>(base);
    f /= base;
  }
  return result;
}

std::vector<int> first_primes(int count) {
  std::vector<int> primes;
  for (int c = 2; static_cast<int>(primes.size()) < count; ++c) {
    bool is_prime = true;
    for (int p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        is_prime = false;
        break;
      }
    }
    if (is_prime) primes.push_back(c);
  }
  return primes;
}

}  // namespace

QuasipositivityReport check_quasipositivity(const QuadraticReactionSystem& sys,
                                            const Eigen::VectorXd& box, int samples_per_face,
                                            std::uint64_t seed) {
  const int m = sys.size();
  if (box.size() != m) throw ConfigError("check_quasipositivity: box has the wrong size");
  if (!(box.array() > 0.0).all()) throw ConfigError("check_quasipositivity: box bounds must be positive");
  if (samples_per_face < 0) throw ConfigError("check_quasipositivity: negative sample count");
  if (m > 24) throw ConfigError("check_quasipositivity: too many components for corner enumeration");

  QuasipositivityReport rep;
  rep.min_value = std::numeric_limits<double>::infinity();
  for (int l = 0; l < m; ++l) {
    const auto idx = static_cast<std::size_t>(l);
    const double s = (sys.upsilon[idx].cwiseAbs() * box).dot(box) + sys.sigma[idx].cwiseAbs().dot(box);
    rep.scale = std::max(rep.scale, s);
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto primes = first_primes(std::max(1, m - 1));

  auto visit = [&](int l, const Eigen::VectorXd& w) {
    const auto idx = static_cast<std::size_t>(l);
    const double v = w.dot(sys.upsilon[idx] * w) + sys.sigma[idx].dot(w);
    ++rep.samples;
    if (v < rep.min_value) {
      rep.min_value = v;
      rep.worst_component = l;
      rep.worst_point = w;
    }
  };

  for (int l = 0; l < m; ++l) {
    std::vector<int> free_axes;
    for (int k = 0; k < m; ++k) {
      if (k != l) free_axes.push_back(k);
    }
    const auto f = free_axes.size();
    Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
    for (unsigned long long c = 0; c < (1ULL << f); ++c) {
      for (std::size_t a = 0; a < f; ++a) w(free_axes[a]) = ((c >> a) & 1ULL) ? box(free_axes[a]) : 0.0;
      visit(l, w);
    }
    std::vector<double> shift(f);
    for (auto& sh : shift) sh = unif(rng);
    for (int n = 1; n <= samples_per_face; ++n) {
      for (std::size_t a = 0; a < f; ++a) {
        double u = radical_inverse(static_cast<std::uint64_t>(n), primes[a]) + shift[a];
        u -= std::floor(u);
        w(free_axes[a]) = u * box(free_axes[a]);
      }
      visit(l, w);
    }
  }
  if (rep.samples == 0) rep.min_value = 0.0;
  rep.ok = rep.min_value >= -1e-12 * rep.scale;
  return rep;
}

A3Report check_A3(const QuadraticReactionSystem& sys, const Eigen::VectorXd& D) {
  const int m = sys.size();
  if (D.size() != m) throw ConfigError("check_A3: D has the wrong size");
  if ((D.array() < 0.0).any()) throw ConfigError("check_A3: D entries must be nonnegative");
  if (D(m - 1) != 1.0) throw ConfigError("check_A3: the last entry of D must be 1");

  A3Report rep;
  rep.D = D;
  rep.quadratic = Eigen::MatrixXd::Zero(m, m);
  rep.linear = Eigen::VectorXd::Zero(m);
  for (int l = 0; l < m; ++l) {
    rep.quadratic += D(l) * sys.upsilon[static_cast<std::size_t>(l)];
    rep.linear += D(l) * sys.sigma[static_cast<std::size_t>(l)];
  }
  rep.ok = true;
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const double c = i == j ? rep.quadratic(i, j) : 2.0 * rep.quadratic(i, j);
      if (c > 1e-12 && c > rep.offender_coeff) {
        rep.ok = false;
        rep.offender_i = i;
        rep.offender_j = j;
        rep.offender_coeff = c;
      }
    }
  }
  if (rep.ok) rep.C2 = std::max(0.0, rep.linear.maxCoeff());
  return rep;
}

A3Report search_A3(const QuadraticReactionSystem& sys, int levels) {
  const int m = sys.size();
  const A3Report unit = check_A3(sys, Eigen::VectorXd::Ones(m));
  if (unit.ok || m == 1 || levels < 1) return unit;
  std::vector<int> idx(static_cast<std::size_t>(m - 1), 0);
  while (true) {
    Eigen::VectorXd D = Eigen::VectorXd::Ones(m);
    for (int l = 0; l + 1 < m; ++l) D(l) = std::pow(10.0, idx[static_cast<std::size_t>(l)]);
    auto rep = check_A3(sys, D);
    if (rep.ok) return rep;
    int pos = m - 2;
    while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == levels) {
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return unit;
}

GrowthCheckReport check_growth_conditions(const QuadraticReactionSystem& sys,
                                          const Eigen::VectorXd& box, int samples_per_face,
                                          std::uint64_t seed,
                                          const std::optional<Eigen::VectorXd>& D) {
  GrowthCheckReport rep;
  rep.a1 = check_quasipositivity(sys, box, samples_per_face, seed);
  rep.a3 = D ? check_A3(sys, *D) : search_A3(sys);
  return rep;
}

}  // namespace tdrd
