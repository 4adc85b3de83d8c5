#include "tdrd/datasets.hpp"

#include "tdrd/error.hpp"

namespace tdrd::datasets {

namespace {

Eigen::MatrixXd rows5(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd M(5, 5);
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (double v : r) M(i, j++) = v;
    ++i;
  }
  return M;
}

Eigen::VectorXd vec5(std::initializer_list<double> v) {
  Eigen::VectorXd x(5);
  int i = 0;
  for (double e : v) x(i++) = e;
  return x;
}

}  // namespace

ToeplitzParams ex5_params() {
  ToeplitzParams p;
  p.alpha1 = 1.0;
  p.alpha2 = 1.5;
  p.beta1 = 0.5;
  p.gamma1 = 0.3;
  p.beta2 = 0.7;
  p.gamma2 = 0.25;
  p.m = 5;
  return p;
}

Eigen::VectorXd ex5_initial() { return vec5({0, 15, 14, 29, 20}); }

Eigen::MatrixXd ex5_printed_P() {
  return rows5({{0.3848, -0.5265, -0.5632, -0.9063, -0.8769},
                {0.7629, -0.7633, 0.5534, 0, 0.3943},
                {0.3705, -0.0195, -0.5423, 0.3884, -0.0325},
                {0.3531, 0.3534, 0.2562, 0, -0.1825},
                {0.0891, 0.1219, -0.1303, -0.1665, 0.2030}});
}

QuadraticReactionSystem ex5_tables() {
  std::vector<Eigen::MatrixXd> Y = {
      rows5({{0.0146, -0.0257, 0.0073, -0.0088, 0},
             {-0.0257, 0.0202, -0.004, 0, 0.0044},
             {0.0073, -0.004, 0.0005, 0.0011, -0.0015},
             {-0.0088, 0, 0.0011, -0.0043, 0.0027},
             {0, 0.0044, -0.0015, 0.0027, -0.0007}}),
      rows5({{0.1142, 0.228, 0.0571, 0.1293, 0},
             {0.228, -0.2281, -0.0153, 0, -0.0646},
             {0.0571, -0.0153, 0.0041, 0.0158, -0.0122},
             {0.1293, 0, 0.0158, 0.0489, -0.0244},
             {0, -0.0646, -0.0122, -0.0244, -0.0061}}),
      rows5({{0.3702, -0.1245, 0.1851, 0.0194, 0},
             {-0.1245, 0.0371, -0.0817, 0, -0.0097},
             {0.1851, -0.0817, 0.0132, 0.0364, -0.0397},
             {0.0194, 0, 0.0364, -0.0079, 0.0133},
             {0, -0.0097, -0.0397, 0.0133, -0.0198}}),
      rows5({{-0.1316, -0.1013, -0.0658, -0.0743, 0},
             {-0.1013, 0.1177, 0.0236, 0, 0.0371},
             {-0.0658, 0.0236, -0.0047, -0.0154, 0.0141},
             {-0.0743, 0, -0.0154, -0.0252, 0.0108},
             {0, 0.0371, 0.0141, 0.0108, 0.0070}}),
      rows5({{-0.1651, 0.5295, -0.0825, 0.2108, 0},
             {0.5295, -0.4429, 0.0539, 0, -0.1054},
             {-0.0825, 0.0539, -0.0059, -0.0081, 0.0177},
             {0.2108, 0, -0.0081, 0.0949, -0.0567},
             {0, -0.1054, 0.0177, -0.0567, 0.0088}}),
  };
  std::vector<Eigen::VectorXd> s = {
      vec5({0.0795, 0.0303, -0.0243, -0.014, 0.0059}),
      vec5({-0.6466, -0.6144, 0.0798, 0.2844, 0.0572}),
      vec5({0.4549, -0.2791, -0.2846, 0.1292, 0.1635}),
      vec5({0.2682, 0.3879, 0.0097, -0.1796, -0.0618}),
      vec5({-1.6033, -0.8159, 0.4251, 0.3777, -0.0608}),
  };
  return QuadraticReactionSystem::make(std::move(Y), std::move(s));
}

QuadraticReactionSystem ex5_diagonal_system() {
  auto sys = QuadraticReactionSystem::zero(5);
  // w_i w_j with coefficient c is Upsilon(i,j) = Upsilon(j,i) = c/2.
  auto add = [&](int comp, double sign) {
    auto& Y = sys.upsilon[static_cast<std::size_t>(comp)];
    auto& s = sys.sigma[static_cast<std::size_t>(comp)];
    if (comp != 2 && comp != 3) {  // G1 part
      Y(0, 4) += sign * -0.25;
      Y(4, 0) += sign * -0.25;
      s(1) += sign * 0.65;
    }
    if (comp != 0 && comp != 1) {  // G3 part
      Y(2, 4) += sign * -0.16;
      Y(4, 2) += sign * -0.16;
      s(3) += sign * 0.41;
    }
  };
  add(0, 1.0);
  add(1, -1.0);
  add(2, 1.0);
  add(3, -1.0);
  add(4, 1.0);
  return sys;
}

PrintedOrder ex5_printed_order() { return {{0, 1, 4, 2, 3}, {1, -1, -1, -1, -1}}; }

RegionSignature ex5_signature() {
  const auto order = ex5_printed_order();
  RegionSignature sig{std::vector<int>(5, 1)};
  for (int k = 0; k < 5; ++k) {
    sig.signs[static_cast<std::size_t>(order.perm[static_cast<std::size_t>(k)])] =
        order.signs[static_cast<std::size_t>(k)];
  }
  return sig;
}

Eigen::MatrixXd ex5_aligned_P() {
  const Spectrum spec = spectrum(ex5_params());
  const auto order = ex5_printed_order();
  Eigen::MatrixXd P(5, 5);
  for (int k = 0; k < 5; ++k) {
    P.col(k) = order.signs[static_cast<std::size_t>(k)] *
               spec.eigenvectors.col(order.perm[static_cast<std::size_t>(k)]);
  }
  return P;
}

QuadraticReactionSystem ex5_consistent_system() {
  return transform_reaction(Eigen::MatrixXd(ex5_aligned_P().inverse()), ex5_diagonal_system());
}

std::vector<std::string> reaction_presets() { return {"paper-ex5", "paper-ex5-tables"}; }

QuadraticReactionSystem reaction_preset(const std::string& name) {
  if (name == "paper-ex5") return ex5_consistent_system();
  if (name == "paper-ex5-tables") return ex5_tables();
  throw ConfigError("unknown reaction preset '" + name + "'");
}

}  // namespace tdrd::datasets
