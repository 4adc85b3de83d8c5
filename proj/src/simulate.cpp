#include "tdrd/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tdrd/error.hpp"
#include "tdrd/parabolic.hpp"

namespace tdrd {

Eigen::VectorXd quadrature_weights(const Trajectory& t) {
  const int n = t.points();
  if (!t.spatial() || n <= 1) return Eigen::VectorXd::Ones(std::max(n, 1));
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, t.cell_width());
  w(0) *= 0.5;
  w(n - 1) *= 0.5;
  return w;
}

std::string to_string(Integrator i) { return i == Integrator::Rk4 ? "rk4" : "explicit-euler"; }

std::string to_string(StateSpace s) { return s == StateSpace::Original ? "original" : "diagonal"; }

std::string to_string(SimulationMode m) { return m == SimulationMode::Ode0d ? "ode0d" : "pde1d"; }

std::string to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::NeumannHomogeneous:
      return "neumann";
    case BoundaryKind::DirichletHomogeneous:
      return "dirichlet";
    case BoundaryKind::Robin:
      return "robin";
  }
  return "unknown";
}

void SimulationConfig::validate(int m) const {
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw ConfigError("time.t_final must be positive");
  if (dt && !(*dt > 0.0)) throw ConfigError("time.dt must be positive");
  if (!(sample_interval > 0.0)) throw ConfigError("time.sample_interval must be positive");
  if (initial.base.size() != m) {
    std::ostringstream msg;
    msg << "initial.base has " << initial.base.size() << " entries, expected " << m;
    throw ConfigError(msg.str());
  }
  if (!initial.base.allFinite()) throw ConfigError("initial.base must be finite");
  if (mode == SimulationMode::Pde1d) {
    if (grid_points < 3) throw ConfigError("grid.points must be >= 3");
    if (!(length > 0.0)) throw ConfigError("grid.length must be positive");
    if (boundary.kind == BoundaryKind::Robin) {
      if (!(boundary.alpha > 0.0 && boundary.alpha < 1.0)) {
        throw ConfigError("boundary.alpha must lie in (0, 1) for Robin conditions");
      }
      if (boundary.b.size() != m) throw ConfigError("boundary.b must have m entries");
    }
    if (initial.perturbation && initial.perturbation->modes < 1) {
      throw ConfigError("initial.perturbation.modes must be >= 1");
    }
  }
}

double cfl_limit(double dx, double lambda_max) {
  return kCflSafety * dx * dx / (2.0 * lambda_max);
}

namespace {

// Right-hand side of one semi-discrete system.
class Operator {
 public:
  Operator(Eigen::MatrixXd diffusion, QuadraticReactionSystem reaction, int points, double dx,
           const BoundaryCondition& bc, Eigen::VectorXd boundary_rhs, Eigen::MatrixXd flux_inverse)
      : m_(static_cast<int>(diffusion.rows())),
        n_(points),
        dx_(dx),
        inv_dx2_(points > 1 ? 1.0 / (dx * dx) : 0.0),
        diffusion_(std::move(diffusion)),
        reaction_(std::move(reaction)),
        bc_(bc),
        boundary_rhs_(std::move(boundary_rhs)),
        flux_inverse_(std::move(flux_inverse)),
        lap_(m_),
        tmp_(m_),
        ghost_(m_) {}

  void operator()(const Eigen::MatrixXd& X, Eigen::MatrixXd& out) {
    if (n_ == 1) {
      react(X.col(0), out.col(0));
      return;
    }
    const bool dirichlet = bc_.kind == BoundaryKind::DirichletHomogeneous;
    for (int j = 0; j < n_; ++j) {
      if (dirichlet && (j == 0 || j == n_ - 1)) {
        out.col(j).setZero();
        continue;
      }
      if (j == 0) {
        ghost(X.col(0), X.col(1));
        lap_ = (ghost_ - 2.0 * X.col(0) + X.col(1)) * inv_dx2_;
      } else if (j == n_ - 1) {
        ghost(X.col(n_ - 1), X.col(n_ - 2));
        lap_ = (X.col(n_ - 2) - 2.0 * X.col(n_ - 1) + ghost_) * inv_dx2_;
      } else {
        lap_ = (X.col(j - 1) - 2.0 * X.col(j) + X.col(j + 1)) * inv_dx2_;
      }
      react(X.col(j), out.col(j));
      out.col(j).noalias() += diffusion_ * lap_;
    }
  }

 private:
  template <typename In, typename Out>
  void react(const In& u, Out&& out) {
    for (int i = 0; i < m_; ++i) {
      const auto& Y = reaction_.upsilon[static_cast<std::size_t>(i)];
      tmp_.noalias() = Y * u;
      out(i) = u.dot(tmp_) + reaction_.sigma[static_cast<std::size_t>(i)].dot(u);
    }
  }

  // Centered ghost value beyond a boundary node: u_ghost = u_inner + 2 dx dU/dn.
  template <typename B, typename I>
  void ghost(const B& boundary, const I& inner) {
    if (bc_.kind == BoundaryKind::Robin) {
      tmp_ = (boundary_rhs_ - bc_.alpha * boundary) / (1.0 - bc_.alpha);
      if (bc_.form == RobinForm::DiffusionWeighted) tmp_ = (flux_inverse_ * tmp_).eval();
      ghost_ = inner + 2.0 * dx_ * tmp_;
    } else {
      ghost_ = inner;
    }
  }

  int m_;
  int n_;
  double dx_;
  double inv_dx2_;
  Eigen::MatrixXd diffusion_;
  QuadraticReactionSystem reaction_;
  BoundaryCondition bc_;
  Eigen::VectorXd boundary_rhs_;
  Eigen::MatrixXd flux_inverse_;
  Eigen::VectorXd lap_;
  Eigen::VectorXd tmp_;
  Eigen::VectorXd ghost_;
};

struct RunOutput {
  Trajectory trajectory;
  std::vector<double> minima;
};

RunOutput integrate(Operator op, Eigen::MatrixXd X, StateSpace space, Integrator integrator,
                    double dt, long steps, long sample_every, const std::vector<double>& x) {
  RunOutput out;
  out.trajectory.space = space;
  out.trajectory.integrator = integrator;
  out.trajectory.dt = dt;
  out.trajectory.x = x;
  out.trajectory.times.push_back(0.0);
  out.trajectory.states.push_back(X);
  out.minima.resize(static_cast<std::size_t>(X.rows()));
  for (Eigen::Index i = 0; i < X.rows(); ++i) out.minima[static_cast<std::size_t>(i)] = X.row(i).minCoeff();

  const auto rows = X.rows();
  const auto cols = X.cols();
  Eigen::MatrixXd k1(rows, cols), k2(rows, cols), k3(rows, cols), k4(rows, cols), stage(rows, cols);
  for (long step = 1; step <= steps; ++step) {
    if (integrator == Integrator::ExplicitEuler) {
      op(X, k1);
      X.noalias() += dt * k1;
    } else {
      op(X, k1);
      stage = X + (0.5 * dt) * k1;
      op(stage, k2);
      stage = X + (0.5 * dt) * k2;
      op(stage, k3);
      stage = X + dt * k3;
      op(stage, k4);
      X.noalias() += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (!X.allFinite()) {
      std::ostringstream msg;
      msg << "simulate: non-finite " << to_string(space) << " state at step " << step
          << " (t = " << step * dt << ")";
      throw NumericalError(msg.str());
    }
    for (Eigen::Index i = 0; i < rows; ++i) {
      auto& mn = out.minima[static_cast<std::size_t>(i)];
      mn = std::min(mn, X.row(i).minCoeff());
    }
    if (step % sample_every == 0 || step == steps) {
      out.trajectory.times.push_back(static_cast<double>(step) * dt);
      out.trajectory.states.push_back(X);
    }
  }
  return out;
}

}  // namespace

SimulationResult simulate(const SimulationConfig& config, const ToeplitzParams& params,
                          const QuadraticReactionSystem& system, const Diagonalizer& P) {
  params.validate();
  const int m = params.m;
  config.validate(m);
  if (system.size() != m) throw ConfigError("simulate: reaction system size does not match m");
  if (P.size() != m) throw ConfigError("simulate: diagonalizer size does not match m");

  SimulationResult res;
  res.parabolic = check_parabolicity(params).satisfied;
  if (!res.parabolic && !config.allow_nonparabolic) {
    throw ParabolicityError("simulate: the diffusion matrix violates the parabolicity condition");
  }

  const bool spatial = config.mode == SimulationMode::Pde1d;
  const int n = spatial ? config.grid_points : 1;
  const double dx = spatial ? config.length / (n - 1) : 1.0;
  const double lambda_max = *std::max_element(P.eigenvalues.begin(), P.eigenvalues.end());

  double dt_target;
  if (config.dt) {
    if (spatial && *config.dt > cfl_limit(dx, lambda_max) * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "simulate: dt = " << *config.dt << " exceeds the stability limit "
          << cfl_limit(dx, lambda_max);
      throw ConfigError(msg.str());
    }
    dt_target = *config.dt;
  } else {
    dt_target = spatial ? cfl_limit(dx, lambda_max) : std::min(kAutoDt0d, config.t_final);
  }
  res.steps = static_cast<long>(std::ceil(config.t_final / dt_target - 1e-9));
  res.steps = std::max(res.steps, 1L);
  res.dt = config.t_final / static_cast<double>(res.steps);
  const long sample_every = std::max(1L, std::lround(config.sample_interval / res.dt));

  std::vector<double> x;
  if (spatial) {
    for (int j = 0; j < n; ++j) x.push_back(j * dx);
  }

  // Initial field.
  const Eigen::VectorXd& base = config.initial.base;
  Eigen::MatrixXd U0 = base.replicate(1, n);
  const Eigen::VectorXd base_slacks = P.P.transpose() * base;
  const bool base_in_region = (base_slacks.array() >= -1e-12 * base.norm()).all();
  if (spatial && config.initial.perturbation) {
    const auto& pert = *config.initial.perturbation;
    double amp = pert.amplitude ? *pert.amplitude : 0.1 * base.cwiseAbs().maxCoeff();
    if (base_in_region) {
      const Eigen::VectorXd dir = P.P.transpose() * Eigen::VectorXd::Ones(m);
      for (int l = 0; l < m; ++l) {
        if (std::abs(dir(l)) > 0.0) amp = std::min(amp, std::max(0.0, base_slacks(l)) / std::abs(dir(l)));
      }
    }
    res.perturbation_amplitude = amp;
    for (int j = 0; j < n; ++j) {
      const double s = std::sin(pert.modes * std::numbers::pi * x[static_cast<std::size_t>(j)] / config.length);
      U0.col(j).array() += amp * s;
    }
  }
  if (spatial && config.boundary.kind == BoundaryKind::DirichletHomogeneous) {
    U0.col(0).setZero();
    U0.col(n - 1).setZero();
  }
  const Eigen::MatrixXd W0 = P.P.transpose() * U0;
  res.initial_slacks.resize(static_cast<std::size_t>(m));
  for (int l = 0; l < m; ++l) res.initial_slacks[static_cast<std::size_t>(l)] = W0.row(l).minCoeff();
  res.initial_in_region = (W0.array() >= -1e-12 * std::max(1.0, U0.cwiseAbs().maxCoeff())).all();

  res.diagonal_reaction = transform_reaction(P, system);

  const Eigen::MatrixXd A = build_matrix(params, false);
  const Eigen::VectorXd lam = Eigen::Map<const Eigen::VectorXd>(P.eigenvalues.data(), m);
  Eigen::VectorXd b_orig = Eigen::VectorXd::Zero(m);
  if (config.boundary.kind == BoundaryKind::Robin) b_orig = config.boundary.b;
  const Eigen::VectorXd b_diag = P.P.transpose() * b_orig;

  const bool want_original = config.spaces != SpaceSelection::Diagonal;
  const bool want_diagonal = config.spaces != SpaceSelection::Original;
  if (want_original) {
    Operator op(A, system, n, dx, config.boundary, b_orig, A.inverse());
    auto run = integrate(std::move(op), U0, StateSpace::Original, config.integrator, res.dt,
                         res.steps, sample_every, x);
    res.original = std::move(run.trajectory);
    res.original_step_minima = std::move(run.minima);
  }
  if (want_diagonal) {
    Operator op(Eigen::MatrixXd(lam.asDiagonal()), res.diagonal_reaction, n, dx, config.boundary,
                b_diag, Eigen::MatrixXd(lam.cwiseInverse().asDiagonal()));
    auto run = integrate(std::move(op), W0, StateSpace::Diagonal, config.integrator, res.dt,
                         res.steps, sample_every, x);
    res.diagonal = std::move(run.trajectory);
    res.diagonal_step_minima = std::move(run.minima);
  }
  return res;
}

double compare_original_diagonal(const Trajectory& original, const Trajectory& diagonal,
                                 const Diagonalizer& P) {
  if (original.dt != diagonal.dt || original.integrator != diagonal.integrator) {
    throw ConfigError("compare_original_diagonal: runs use different time steps or integrators");
  }
  if (original.times != diagonal.times || original.x != diagonal.x ||
      original.states.size() != diagonal.states.size()) {
    throw ConfigError("compare_original_diagonal: trajectory shapes differ");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < original.states.size(); ++k) {
    const auto& U = original.states[k];
    const auto& W = diagonal.states[k];
    if (U.rows() != P.size() || U.rows() != W.rows() || U.cols() != W.cols()) {
      throw ConfigError("compare_original_diagonal: state shapes differ");
    }
    worst = std::max(worst, (P.P.transpose() * U - W).cwiseAbs().maxCoeff());
  }
  return worst;
}

InvarianceReport invariance_monitor(const Trajectory& diagonal) {
  InvarianceReport rep;
  const int m = diagonal.components();
  rep.minima.assign(static_cast<std::size_t>(m), std::numeric_limits<double>::infinity());
  double maxabs = 0.0;
  for (const auto& s : diagonal.states) {
    for (int l = 0; l < m; ++l) {
      auto& mn = rep.minima[static_cast<std::size_t>(l)];
      mn = std::min(mn, s.row(l).minCoeff());
    }
    maxabs = std::max(maxabs, s.cwiseAbs().maxCoeff());
  }
  rep.scale = std::max(1.0, maxabs);
  rep.invariant = std::all_of(rep.minima.begin(), rep.minima.end(),
                              [&](double v) { return v >= -1e-8 * rep.scale; });
  return rep;
}

std::vector<double> conserved_series(const Trajectory& t, const std::vector<int>& group) {
  const Eigen::VectorXd w = quadrature_weights(t);
  std::vector<double> out;
  out.reserve(t.states.size());
  for (const auto& s : t.states) {
    double q = 0.0;
    for (int c : group) {
      if (c < 0 || c >= s.rows()) throw ConfigError("conserved_series: component out of range");
      q += s.row(c).dot(w);
    }
    out.push_back(q);
  }
  return out;
}

double conserved_drift(const Trajectory& t, const std::vector<int>& group) {
  const auto q = conserved_series(t, group);
  if (q.empty()) return 0.0;
  double worst = 0.0;
  for (double v : q) worst = std::max(worst, std::abs(v - q.front()));
  return worst / std::max(std::abs(q.front()), std::numeric_limits<double>::min());
}

std::vector<std::pair<int, int>> detect_conserved_pairs(const QuadraticReactionSystem& sys) {
  const int m = sys.size();
  double scale = 0.0;
  for (int i = 0; i < m; ++i) {
    scale = std::max(scale, sys.upsilon[static_cast<std::size_t>(i)].cwiseAbs().maxCoeff());
    scale = std::max(scale, sys.sigma[static_cast<std::size_t>(i)].cwiseAbs().maxCoeff());
  }
  const double tol = 1e-12 * std::max(scale, 1.0);
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const auto a = static_cast<std::size_t>(i);
      const auto b = static_cast<std::size_t>(j);
      const double q = (sys.upsilon[a] + sys.upsilon[b]).cwiseAbs().maxCoeff();
      const double l = (sys.sigma[a] + sys.sigma[b]).cwiseAbs().maxCoeff();
      const bool trivial = sys.upsilon[a].cwiseAbs().maxCoeff() <= tol &&
                           sys.sigma[a].cwiseAbs().maxCoeff() <= tol;
      if (q <= tol && l <= tol && !trivial) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace tdrd
