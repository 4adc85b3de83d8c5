#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tdrd/datasets.hpp"
#include "tdrd/error.hpp"
#include "tdrd/simulate.hpp"

using namespace tdrd;

namespace {

struct Example {
  ToeplitzParams params = datasets::ex5_params();
  Spectrum spec = spectrum(params);
  Diagonalizer P = diagonalizer(spec, datasets::ex5_signature());
  QuadraticReactionSystem sys = datasets::ex5_consistent_system();
};

const Example& ex() {
  static const Example e;
  return e;
}

SimulationConfig base_config(SimulationMode mode) {
  SimulationConfig c;
  c.mode = mode;
  c.initial.base = datasets::ex5_initial();
  c.t_final = 10.0;
  return c;
}

}  // namespace

TEST(Simulate, CflLimit) {
  EXPECT_DOUBLE_EQ(cfl_limit(0.1, 2.0), 0.9 * 0.01 / 4.0);
}

TEST(Simulate, ExampleZeroDimensional) {
  const auto& e = ex();
  const auto r = simulate(base_config(SimulationMode::Ode0d), e.params, e.sys, e.P);
  EXPECT_DOUBLE_EQ(r.dt, kAutoDt0d);
  EXPECT_EQ(r.steps, 10000);
  ASSERT_TRUE(r.original && r.diagonal);
  EXPECT_TRUE(r.initial_in_region);
  EXPECT_NEAR(r.diagonal->times.back(), 10.0, 1e-12);
  EXPECT_LE(compare_original_diagonal(*r.original, *r.diagonal, e.P), 1e-6);
  const auto inv = invariance_monitor(*r.diagonal);
  EXPECT_TRUE(inv.invariant);
  for (auto [a, b] : detect_conserved_pairs(r.diagonal_reaction)) {
    EXPECT_LE(conserved_drift(*r.diagonal, {a, b}), 1e-8);
  }
  EXPECT_EQ(detect_conserved_pairs(r.diagonal_reaction).size(), 2u);
  // Components stay bounded and settle.
  const Eigen::MatrixXd& end = r.diagonal->states.back();
  const Eigen::MatrixXd& before = r.diagonal->states[r.diagonal->states.size() - 11];
  EXPECT_LE((end - before).cwiseAbs().maxCoeff(), 0.05);
  EXPECT_LE(end.cwiseAbs().maxCoeff(), 100.0);
}

TEST(Simulate, FirstSampleMatchesTransform) {
  const auto& e = ex();
  auto c = base_config(SimulationMode::Pde1d);
  c.t_final = 0.01;
  c.initial.perturbation = Perturbation{};
  const auto r = simulate(c, e.params, e.sys, e.P);
  const Eigen::MatrixXd U0 = r.original->states.front();
  EXPECT_LE((e.P.P.transpose() * U0 - r.diagonal->states.front()).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_GT(r.perturbation_amplitude, 0.0);
  EXPECT_LE(r.perturbation_amplitude, 0.1 * 29.0);
  EXPECT_TRUE(r.initial_in_region);
  for (double s : r.initial_slacks) EXPECT_GE(s, -1e-10);
}

TEST(Simulate, CommutationEulerAndRk4) {
  const auto& e = ex();
  for (auto integ : {Integrator::ExplicitEuler, Integrator::Rk4}) {
    auto c = base_config(SimulationMode::Pde1d);
    c.t_final = 0.5;
    c.grid_points = 21;
    c.integrator = integ;
    c.initial.perturbation = Perturbation{};
    const auto r = simulate(c, e.params, e.sys, e.P);
    EXPECT_LE(compare_original_diagonal(*r.original, *r.diagonal, e.P), 1e-6);
  }
}

TEST(Simulate, CompareRejectsMismatch) {
  const auto& e = ex();
  auto c = base_config(SimulationMode::Ode0d);
  c.t_final = 0.1;
  const auto a = simulate(c, e.params, e.sys, e.P);
  c.dt = 5e-4;
  const auto b = simulate(c, e.params, e.sys, e.P);
  EXPECT_THROW(compare_original_diagonal(*a.original, *b.diagonal, e.P), ConfigError);
}

TEST(Simulate, PureDiffusionDirichletDecays) {
  const auto& e = ex();
  auto c = base_config(SimulationMode::Pde1d);
  c.boundary.kind = BoundaryKind::DirichletHomogeneous;
  c.t_final = 2.0;
  c.grid_points = 21;
  c.initial.perturbation = Perturbation{};
  const auto r = simulate(c, e.params, QuadraticReactionSystem::zero(5), e.P);
  const double start = r.original->states.front().cwiseAbs().maxCoeff();
  double prev = start;
  for (std::size_t k = 10; k < r.original->states.size(); k += 10) {
    const double now = r.original->states[k].cwiseAbs().maxCoeff();
    EXPECT_LT(now, prev);
    prev = now;
  }
  EXPECT_LT(prev, 1e-2 * start);
}

TEST(Simulate, PureDiffusionNeumannConservesMeans) {
  const auto& e = ex();
  auto c = base_config(SimulationMode::Pde1d);
  c.t_final = 1.0;
  c.grid_points = 31;
  c.initial.perturbation = Perturbation{std::nullopt, 3};
  const auto r = simulate(c, e.params, QuadraticReactionSystem::zero(5), e.P);
  for (int i = 0; i < 5; ++i) {
    if (std::abs(conserved_series(*r.original, {i}).front()) < 1e-12) continue;
    EXPECT_LE(conserved_drift(*r.original, {i}), 1e-10) << "component " << i;
  }
}

TEST(Simulate, LinearModeDecayRate) {
  const auto& e = ex();
  SimulationConfig c;
  c.mode = SimulationMode::Pde1d;
  c.boundary.kind = BoundaryKind::DirichletHomogeneous;
  c.spaces = SpaceSelection::Diagonal;
  c.grid_points = 41;
  c.length = 2.0;
  c.t_final = 0.2;
  c.initial.base = Eigen::VectorXd::Zero(5);
  c.initial.perturbation = Perturbation{1.0, 1};
  const auto r = simulate(c, e.params, QuadraticReactionSystem::zero(5), e.P);
  const double dx = c.length / (c.grid_points - 1);
  const int mid = c.grid_points / 2;
  const auto& W = *r.diagonal;
  for (int l = 0; l < 5; ++l) {
    const double w0 = W.states.front()(l, mid);
    if (std::abs(w0) < 1e-8) continue;
    const double w1 = W.states.back()(l, mid);
    const double rate = -std::log(w1 / w0) / W.times.back();
    const double expect = e.P.eigenvalues[static_cast<std::size_t>(l)] * (2 / (dx * dx)) *
                          (1 - std::cos(std::numbers::pi * dx / c.length));
    EXPECT_NEAR(rate, expect, 1e-6 * expect) << "component " << l;
  }
}

TEST(Simulate, TemporalConvergenceOrder) {
  const auto& e = ex();
  auto endpoint = [&](Integrator integ, double dt) {
    auto c = base_config(SimulationMode::Ode0d);
    c.t_final = 2.0;
    c.integrator = integ;
    c.dt = dt;
    c.spaces = SpaceSelection::Original;
    c.sample_interval = 2.0;
    return Eigen::VectorXd(simulate(c, e.params, e.sys, e.P).original->states.back().col(0));
  };
  // Against a dt/8 reference the asymptotic ratios are (1 - 8^-q) / (2^-q - 8^-q):
  // 2.33 for Euler (q = 1) and 16.06 for RK4 (q = 4).
  for (auto [integ, dt, lo, hi] : {std::tuple{Integrator::ExplicitEuler, 2e-3, 2.0, 2.6},
                                   std::tuple{Integrator::Rk4, 0.01, 14.5, 18.5}}) {
    const Eigen::VectorXd ref = endpoint(integ, dt / 8);
    const double e1 = (endpoint(integ, dt) - ref).norm();
    const double e2 = (endpoint(integ, dt / 2) - ref).norm();
    const double ratio = e1 / e2;
    EXPECT_GT(ratio, lo) << to_string(integ);
    EXPECT_LT(ratio, hi) << to_string(integ);
  }
}

TEST(Simulate, InvarianceMonitorReportsViolation) {
  const auto& e = ex();
  auto c = base_config(SimulationMode::Ode0d);
  c.t_final = 0.1;
  // Push U0 outside along the negative of column 1 of P^{-T}.
  c.initial.base = -e.P.inv_transpose.col(1);
  const auto r = simulate(c, e.params, e.sys, e.P);
  EXPECT_FALSE(r.initial_in_region);
  const auto inv = invariance_monitor(*r.diagonal);
  EXPECT_FALSE(inv.invariant);
  EXPECT_LT(inv.minima[1], 0.0);

  c.initial.base = Eigen::VectorXd::Zero(5);
  const auto z = simulate(c, e.params, e.sys, e.P);
  EXPECT_TRUE(invariance_monitor(*z.diagonal).invariant);
}

TEST(Simulate, RejectsBadSetups) {
  const auto& e = ex();
  auto c = base_config(SimulationMode::Pde1d);
  c.dt = 1.0;
  EXPECT_THROW(simulate(c, e.params, e.sys, e.P), ConfigError);

  ToeplitzParams bad{1, 1, 1.2, 0.5, 0.8, 1.5, 5};
  const auto sp = spectrum(bad);
  const auto d = diagonalizer(sp, RegionSignature::all_positive(5));
  auto c0 = base_config(SimulationMode::Ode0d);
  c0.t_final = 0.01;
  EXPECT_THROW(simulate(c0, bad, QuadraticReactionSystem::zero(5), d), ParabolicityError);
  c0.allow_nonparabolic = true;
  const auto r = simulate(c0, bad, QuadraticReactionSystem::zero(5), d);
  EXPECT_FALSE(r.parabolic);

  auto c1 = base_config(SimulationMode::Ode0d);
  c1.initial.base = Eigen::VectorXd::Zero(4);
  EXPECT_THROW(simulate(c1, e.params, e.sys, e.P), ConfigError);
}

TEST(Simulate, BlowUpAborts) {
  const auto& e = ex();
  auto sys = QuadraticReactionSystem::zero(5);
  sys.upsilon[0](0, 0) = 1.0;  // u1' = u1^2
  auto c = base_config(SimulationMode::Ode0d);
  c.initial.base = Eigen::VectorXd::Constant(5, 1.0);
  c.t_final = 5.0;
  try {
    simulate(c, e.params, sys, e.P);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& err) {
    EXPECT_NE(std::string(err.what()).find("step"), std::string::npos);
  }
}

TEST(Simulate, RobinSteadyState) {
  const auto& e = ex();
  for (auto form : {RobinForm::Plain, RobinForm::DiffusionWeighted}) {
    SimulationConfig c;
    c.mode = SimulationMode::Pde1d;
    c.grid_points = 21;
    c.t_final = 10.0;
    c.boundary.kind = BoundaryKind::Robin;
    c.boundary.alpha = 0.8;
    c.boundary.form = form;
    c.boundary.b = datasets::ex5_initial() * 0.1;
    c.initial.base = Eigen::VectorXd::Zero(5);
    const auto r = simulate(c, e.params, QuadraticReactionSystem::zero(5), e.P);
    const Eigen::VectorXd target = c.boundary.b / c.boundary.alpha;
    const Eigen::MatrixXd& end = r.original->states.back();
    for (int j = 0; j < end.cols(); ++j) {
      EXPECT_LE((end.col(j) - target).cwiseAbs().maxCoeff(), 1e-3 * target.cwiseAbs().maxCoeff());
    }
    EXPECT_LE(compare_original_diagonal(*r.original, *r.diagonal, e.P), 1e-8);
  }
}

TEST(Simulate, Deterministic) {
  const auto& e = ex();
  auto c = base_config(SimulationMode::Ode0d);
  c.t_final = 1.0;
  const auto a = simulate(c, e.params, e.sys, e.P);
  const auto b = simulate(c, e.params, e.sys, e.P);
  for (std::size_t k = 0; k < a.original->states.size(); ++k) {
    EXPECT_EQ(a.original->states[k], b.original->states[k]);
  }
}
