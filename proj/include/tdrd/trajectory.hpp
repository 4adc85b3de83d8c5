#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace tdrd {

enum class Integrator { ExplicitEuler, Rk4 };
enum class StateSpace { Original, Diagonal };

/// Sampled solution of one run. Each state is m x n_points; in 0D runs
/// n_points = 1 and `x` is empty.
struct Trajectory {
  StateSpace space = StateSpace::Original;
  Integrator integrator = Integrator::Rk4;
  double dt = 0.0;
  std::vector<double> x;
  std::vector<double> times;
  std::vector<Eigen::MatrixXd> states;

  int components() const { return states.empty() ? 0 : static_cast<int>(states.front().rows()); }
  int points() const { return states.empty() ? 0 : static_cast<int>(states.front().cols()); }
  bool spatial() const { return !x.empty(); }
  double cell_width() const { return x.size() > 1 ? x[1] - x[0] : 1.0; }
};

/// Trapezoid weights of the grid, or {1} in 0D.
Eigen::VectorXd quadrature_weights(const Trajectory& t);

std::string to_string(Integrator i);
std::string to_string(StateSpace s);

}  // namespace tdrd
