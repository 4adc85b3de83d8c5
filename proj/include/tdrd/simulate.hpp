#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "tdrd/reaction.hpp"
#include "tdrd/regions.hpp"
#include "tdrd/spectral.hpp"
#include "tdrd/trajectory.hpp"

namespace tdrd {

enum class SimulationMode { Ode0d, Pde1d };
enum class SpaceSelection { Original, Diagonal, Both };

enum class BoundaryKind { NeumannHomogeneous, DirichletHomogeneous, Robin };

/// alpha U + (1 - alpha) dU/dn = b           (Plain)
/// alpha U + (1 - alpha) A dU/dn = b         (DiffusionWeighted)
enum class RobinForm { Plain, DiffusionWeighted };

struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::NeumannHomogeneous;
  double alpha = 0.5;     // Robin only, in (0, 1)
  Eigen::VectorXd b;      // Robin only; components b_1..b_m
  RobinForm form = RobinForm::Plain;
};

struct Perturbation {
  std::optional<double> amplitude;  // default 0.1 * ||U0||_inf
  int modes = 1;
};

/// U0(x) = base + a sin(k pi x / L) (1, ..., 1); the perturbation applies in
/// 1D only and its amplitude is clipped so U0(x) stays in the diagonalizer's
/// region whenever the base does.
struct InitialData {
  Eigen::VectorXd base;
  std::optional<Perturbation> perturbation;
};

struct SimulationConfig {
  SimulationMode mode = SimulationMode::Ode0d;
  SpaceSelection spaces = SpaceSelection::Both;
  double length = 1.0;
  int grid_points = 41;
  double t_final = 10.0;
  std::optional<double> dt;  // nullopt = auto
  Integrator integrator = Integrator::Rk4;
  BoundaryCondition boundary;
  InitialData initial;
  double sample_interval = 0.1;
  bool allow_nonparabolic = false;

  void validate(int m) const;
};

inline constexpr double kCflSafety = 0.9;
inline constexpr double kAutoDt0d = 1e-3;

struct SimulationResult {
  std::optional<Trajectory> original;
  std::optional<Trajectory> diagonal;
  QuadraticReactionSystem diagonal_reaction;  // the reaction in W-coordinates
  double dt = 0.0;
  long steps = 0;
  double perturbation_amplitude = 0.0;
  bool initial_in_region = false;
  std::vector<double> initial_slacks;  // <P_l, U0(x)> minimised over x
  bool parabolic = true;
  // Componentwise minima over every step and grid point (not only samples).
  std::vector<double> original_step_minima;
  std::vector<double> diagonal_step_minima;
};

/// Largest stable step for the explicit schemes: 0.9 dx^2 / (2 lambda_max).
double cfl_limit(double dx, double lambda_max);

/// Method-of-lines integration of dU/dt = A Lap_h U + F(U) and/or
/// dW/dt = diag(lambda) Lap_h W + G(W) with G = transform_reaction(P, F).
/// Lap_h is the second-order central difference; 0D mode drops it.
/// Throws ParabolicityError unless parabolic (or allowed), ConfigError on a
/// manual dt above the CFL limit, NumericalError on the first non-finite step.
SimulationResult simulate(const SimulationConfig& config, const ToeplitzParams& params,
                          const QuadraticReactionSystem& system, const Diagonalizer& P);

/// max over samples and grid of ||P^T U - W||_inf. Requires identical times,
/// grids, integrator and dt.
double compare_original_diagonal(const Trajectory& original, const Trajectory& diagonal,
                                 const Diagonalizer& P);

struct InvarianceReport {
  std::vector<double> minima;  // min over time x space of each w_l
  double scale = 1.0;
  bool invariant = false;      // every minimum >= -1e-8 * scale
};

InvarianceReport invariance_monitor(const Trajectory& diagonal);

/// Integral (trapezoid, or point value in 0D) of the sum of the given
/// components, at each sample.
std::vector<double> conserved_series(const Trajectory& t, const std::vector<int>& group);

/// max_t |q(t) - q(0)| / max(|q(0)|, tiny) for q = conserved_series(t, group).
double conserved_drift(const Trajectory& t, const std::vector<int>& group);

/// Component pairs (i, j) with G_i + G_j identically zero (coefficients within
/// 1e-12 * scale), i.e. w_i + w_j is conserved by the reaction.
std::vector<std::pair<int, int>> detect_conserved_pairs(const QuadraticReactionSystem& sys);

std::string to_string(SimulationMode m);
std::string to_string(BoundaryKind k);

}  // namespace tdrd
