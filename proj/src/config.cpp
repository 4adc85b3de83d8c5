#include "tdrd/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "tdrd/datasets.hpp"
#include "tdrd/error.hpp"

namespace tdrd {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) fail(path + "." + key, "unknown key");
  }
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path, "expected a finite number");
  return x;
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

std::string text(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

Eigen::VectorXd vector(const json& v, const std::string& path, int expected = -1) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  if (expected >= 0 && static_cast<int>(v.size()) != expected) {
    fail(path, "expected " + std::to_string(expected) + " entries, got " + std::to_string(v.size()));
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = number(v[i], path + "[" + std::to_string(i) + "]");
  }
  return out;
}

Eigen::MatrixXd matrix(const json& v, const std::string& path, int m) {
  if (!v.is_array() || static_cast<int>(v.size()) != m) fail(path, "expected " + std::to_string(m) + " rows");
  Eigen::MatrixXd M(m, m);
  for (int i = 0; i < m; ++i) {
    M.row(i) = vector(v[static_cast<std::size_t>(i)], path + "[" + std::to_string(i) + "]", m).transpose();
  }
  return M;
}

template <typename Fn>
void optional_field(const json& obj, const char* key, const std::string& path, Fn&& fn) {
  if (obj.contains(key)) fn(obj.at(key), path + "." + key);
}

ToeplitzParams parse_diffusion(const json& d, const std::string& path) {
  check_keys(d, path, {"alpha1", "alpha2", "beta1", "beta2", "gamma1", "gamma2", "m"});
  ToeplitzParams p;
  auto req = [&](const char* key) -> const json& {
    if (!d.contains(key)) fail(path + "." + key, "missing");
    return d.at(key);
  };
  p.alpha1 = number(req("alpha1"), path + ".alpha1");
  p.alpha2 = number(req("alpha2"), path + ".alpha2");
  p.beta1 = number(req("beta1"), path + ".beta1");
  p.beta2 = number(req("beta2"), path + ".beta2");
  p.gamma1 = number(req("gamma1"), path + ".gamma1");
  p.gamma2 = number(req("gamma2"), path + ".gamma2");
  p.m = integer(req("m"), path + ".m");
  try {
    p.validate();
  } catch (const ConfigError& e) {
    fail(path, e.what());
  }
  return p;
}

QuadraticReactionSystem parse_reaction(const json& r, const std::string& path, int m,
                                       std::string& label) {
  check_keys(r, path, {"preset", "Upsilon", "sigma"});
  if (r.contains("preset")) {
    if (r.contains("Upsilon") || r.contains("sigma")) fail(path, "preset excludes Upsilon/sigma");
    label = text(r.at("preset"), path + ".preset");
    QuadraticReactionSystem sys;
    try {
      sys = datasets::reaction_preset(label);
    } catch (const ConfigError& e) {
      fail(path + ".preset", e.what());
    }
    if (sys.size() != m) fail(path + ".preset", "preset has " + std::to_string(sys.size()) + " components, m = " + std::to_string(m));
    return sys;
  }
  if (!r.contains("Upsilon")) fail(path + ".Upsilon", "missing");
  if (!r.contains("sigma")) fail(path + ".sigma", "missing");
  const json& U = r.at("Upsilon");
  const json& S = r.at("sigma");
  if (!U.is_array() || static_cast<int>(U.size()) != m) fail(path + ".Upsilon", "expected m matrices");
  if (!S.is_array() || static_cast<int>(S.size()) != m) fail(path + ".sigma", "expected m vectors");
  std::vector<Eigen::MatrixXd> Y;
  std::vector<Eigen::VectorXd> s;
  for (int i = 0; i < m; ++i) {
    const std::string idx = "[" + std::to_string(i) + "]";
    Y.push_back(matrix(U[static_cast<std::size_t>(i)], path + ".Upsilon" + idx, m));
    s.push_back(vector(S[static_cast<std::size_t>(i)], path + ".sigma" + idx, m));
  }
  label = "inline";
  return QuadraticReactionSystem::make(std::move(Y), std::move(s));
}

}  // namespace

RegionSignature RunConfig::resolved_signature() const {
  return signature ? *signature : RegionSignature::all_positive(params.m);
}

RunConfig parse_config(const json& doc) {
  check_keys(doc, "$", {"diffusion", "reaction", "region", "boundary", "initial", "grid", "time",
                        "lyapunov", "checks", "allow_nonparabolic"});
  if (!doc.contains("diffusion")) fail("$.diffusion", "missing");
  RunConfig cfg;
  cfg.params = parse_diffusion(doc.at("diffusion"), "$.diffusion");
  const int m = cfg.params.m;
  auto& sim = cfg.simulation;
  sim.initial.base = Eigen::VectorXd::Zero(m);

  optional_field(doc, "reaction", "$", [&](const json& r, const std::string& p) {
    cfg.reaction = parse_reaction(r, p, m, cfg.reaction_label);
  });
  optional_field(doc, "region", "$", [&](const json& r, const std::string& p) {
    check_keys(r, p, {"signs"});
    if (!r.contains("signs")) fail(p + ".signs", "missing");
    const json& s = r.at("signs");
    if (!s.is_array() || static_cast<int>(s.size()) != m) fail(p + ".signs", "expected m entries");
    RegionSignature sig;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const int v = integer(s[i], p + ".signs[" + std::to_string(i) + "]");
      if (v != 1 && v != -1) fail(p + ".signs[" + std::to_string(i) + "]", "expected 1 or -1");
      sig.signs.push_back(v);
    }
    cfg.signature = sig;
  });
  optional_field(doc, "boundary", "$", [&](const json& b, const std::string& p) {
    check_keys(b, p, {"kind", "alpha", "b", "form"});
    const std::string kind = b.contains("kind") ? text(b.at("kind"), p + ".kind") : "neumann";
    if (kind == "neumann") {
      sim.boundary.kind = BoundaryKind::NeumannHomogeneous;
    } else if (kind == "dirichlet") {
      sim.boundary.kind = BoundaryKind::DirichletHomogeneous;
    } else if (kind == "robin") {
      sim.boundary.kind = BoundaryKind::Robin;
      if (!b.contains("b")) fail(p + ".b", "missing (required for robin)");
    } else {
      fail(p + ".kind", "expected neumann, dirichlet or robin");
    }
    optional_field(b, "alpha", p, [&](const json& v, const std::string& q) {
      sim.boundary.alpha = number(v, q);
      if (!(sim.boundary.alpha > 0.0 && sim.boundary.alpha < 1.0)) fail(q, "expected a value in (0, 1)");
    });
    optional_field(b, "b", p, [&](const json& v, const std::string& q) { sim.boundary.b = vector(v, q, m); });
    optional_field(b, "form", p, [&](const json& v, const std::string& q) {
      const std::string f = text(v, q);
      if (f == "plain") {
        sim.boundary.form = RobinForm::Plain;
      } else if (f == "diffusion-weighted") {
        sim.boundary.form = RobinForm::DiffusionWeighted;
      } else {
        fail(q, "expected plain or diffusion-weighted");
      }
    });
  });
  optional_field(doc, "initial", "$", [&](const json& in, const std::string& p) {
    check_keys(in, p, {"base", "perturbation"});
    optional_field(in, "base", p, [&](const json& v, const std::string& q) { sim.initial.base = vector(v, q, m); });
    optional_field(in, "perturbation", p, [&](const json& v, const std::string& q) {
      check_keys(v, q, {"amplitude", "modes"});
      Perturbation pert;
      optional_field(v, "amplitude", q, [&](const json& a, const std::string& r) {
        pert.amplitude = number(a, r);
        if (*pert.amplitude < 0.0) fail(r, "expected a nonnegative number");
      });
      optional_field(v, "modes", q, [&](const json& a, const std::string& r) {
        pert.modes = integer(a, r);
        if (pert.modes < 1) fail(r, "expected an integer >= 1");
      });
      sim.initial.perturbation = pert;
    });
  });
  optional_field(doc, "grid", "$", [&](const json& g, const std::string& p) {
    check_keys(g, p, {"mode", "length", "points"});
    optional_field(g, "mode", p, [&](const json& v, const std::string& q) {
      const std::string mode = text(v, q);
      if (mode == "ode0d") {
        sim.mode = SimulationMode::Ode0d;
      } else if (mode == "pde1d") {
        sim.mode = SimulationMode::Pde1d;
      } else {
        fail(q, "expected ode0d or pde1d");
      }
    });
    optional_field(g, "length", p, [&](const json& v, const std::string& q) {
      sim.length = number(v, q);
      if (!(sim.length > 0.0)) fail(q, "expected a positive number");
    });
    optional_field(g, "points", p, [&](const json& v, const std::string& q) {
      sim.grid_points = integer(v, q);
      if (sim.grid_points < 3) fail(q, "expected an integer >= 3");
    });
  });
  optional_field(doc, "time", "$", [&](const json& t, const std::string& p) {
    check_keys(t, p, {"t_final", "dt", "integrator", "sample_interval", "spaces"});
    optional_field(t, "t_final", p, [&](const json& v, const std::string& q) {
      sim.t_final = number(v, q);
      if (!(sim.t_final > 0.0)) fail(q, "expected a positive number");
    });
    optional_field(t, "dt", p, [&](const json& v, const std::string& q) {
      if (v.is_string()) {
        if (v.get<std::string>() != "auto") fail(q, "expected a positive number or \"auto\"");
        sim.dt.reset();
      } else {
        sim.dt = number(v, q);
        if (!(*sim.dt > 0.0)) fail(q, "expected a positive number");
      }
    });
    optional_field(t, "integrator", p, [&](const json& v, const std::string& q) {
      const std::string s = text(v, q);
      if (s == "rk4") {
        sim.integrator = Integrator::Rk4;
      } else if (s == "explicit-euler") {
        sim.integrator = Integrator::ExplicitEuler;
      } else {
        fail(q, "expected rk4 or explicit-euler");
      }
    });
    optional_field(t, "sample_interval", p, [&](const json& v, const std::string& q) {
      sim.sample_interval = number(v, q);
      if (!(sim.sample_interval > 0.0)) fail(q, "expected a positive number");
    });
    optional_field(t, "spaces", p, [&](const json& v, const std::string& q) {
      const std::string s = text(v, q);
      if (s == "both") {
        sim.spaces = SpaceSelection::Both;
      } else if (s == "original") {
        sim.spaces = SpaceSelection::Original;
      } else if (s == "diagonal") {
        sim.spaces = SpaceSelection::Diagonal;
      } else {
        fail(q, "expected both, original or diagonal");
      }
    });
  });
  optional_field(doc, "lyapunov", "$", [&](const json& l, const std::string& p) {
    check_keys(l, p, {"p_m", "p_ks", "theta", "max_level"});
    auto& ly = cfg.lyapunov;
    optional_field(l, "p_m", p, [&](const json& v, const std::string& q) {
      ly.p_m = integer(v, q);
      if (ly.p_m < 1) fail(q, "expected an integer >= 1");
    });
    optional_field(l, "p_ks", p, [&](const json& v, const std::string& q) {
      if (!v.is_array() || static_cast<int>(v.size()) != m - 1) fail(q, "expected m-1 integers");
      ly.p_ks.clear();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const int k = integer(v[i], q + "[" + std::to_string(i) + "]");
        if (k < 0) fail(q + "[" + std::to_string(i) + "]", "expected a nonnegative integer");
        ly.p_ks.push_back(k);
      }
    });
    optional_field(l, "theta", p, [&](const json& v, const std::string& q) {
      const Eigen::VectorXd th = vector(v, q, m - 1);
      for (Eigen::Index i = 0; i < th.size(); ++i) {
        if (!(th(i) > 0.0)) fail(q + "[" + std::to_string(i) + "]", "expected a positive number");
      }
      ly.theta = std::vector<double>(th.data(), th.data() + th.size());
    });
    optional_field(l, "max_level", p, [&](const json& v, const std::string& q) {
      ly.max_level = integer(v, q);
      if (ly.max_level < 0) fail(q, "expected a nonnegative integer");
    });
  });
  if (cfg.lyapunov.p_ks.empty()) cfg.lyapunov.p_ks.assign(static_cast<std::size_t>(m - 1), 0);
  optional_field(doc, "checks", "$", [&](const json& c, const std::string& p) {
    check_keys(c, p, {"box", "samples_per_face", "D"});
    optional_field(c, "box", p, [&](const json& v, const std::string& q) {
      cfg.checks.box = number(v, q);
      if (!(cfg.checks.box > 0.0)) fail(q, "expected a positive number");
    });
    optional_field(c, "samples_per_face", p, [&](const json& v, const std::string& q) {
      cfg.checks.samples_per_face = integer(v, q);
      if (cfg.checks.samples_per_face < 0) fail(q, "expected a nonnegative integer");
    });
    optional_field(c, "D", p, [&](const json& v, const std::string& q) { cfg.checks.D = vector(v, q, m); });
  });
  optional_field(doc, "allow_nonparabolic", "$", [&](const json& v, const std::string& q) {
    if (!v.is_boolean()) fail(q, "expected a boolean");
    sim.allow_nonparabolic = v.get<bool>();
  });
  try {
    sim.validate(m);
  } catch (const ConfigError& e) {
    fail("$", e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "' (file not found or unreadable)");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
  return parse_config(doc);
}

json example_config_json(const std::string& name) {
  if (name != "paper-ex5") throw ConfigError("unknown example '" + name + "' (known: paper-ex5)");
  json doc;
  doc["diffusion"] = to_json(datasets::ex5_params());
  doc["reaction"] = {{"preset", "paper-ex5"}};
  doc["region"] = {{"signs", datasets::ex5_signature().signs}};
  const Eigen::VectorXd u0 = datasets::ex5_initial();
  doc["initial"] = {{"base", std::vector<double>(u0.data(), u0.data() + u0.size())}};
  doc["grid"] = {{"mode", "ode0d"}, {"length", 1.0}, {"points", 41}};
  doc["boundary"] = {{"kind", "neumann"}};
  doc["time"] = {{"t_final", 10.0}, {"dt", "auto"}, {"integrator", "rk4"}, {"sample_interval", 0.1}, {"spaces", "both"}};
  doc["lyapunov"] = {{"p_m", 2}, {"p_ks", {0, 0, 0, 0}}};
  doc["checks"] = {{"box", 50.0}, {"samples_per_face", 1000}};
  return doc;
}

RunConfig example_config(const std::string& name) { return parse_config(example_config_json(name)); }

json to_json(const ToeplitzParams& p) {
  return {{"alpha1", p.alpha1}, {"alpha2", p.alpha2}, {"beta1", p.beta1}, {"beta2", p.beta2},
          {"gamma1", p.gamma1}, {"gamma2", p.gamma2}, {"m", p.m}};
}

json to_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json to_json(const Eigen::MatrixXd& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) rows.push_back(to_json(Eigen::VectorXd(M.row(i).transpose())));
  return rows;
}

json to_json(const QuadraticReactionSystem& sys) {
  json U = json::array();
  json s = json::array();
  for (int i = 0; i < sys.size(); ++i) {
    U.push_back(to_json(sys.upsilon[static_cast<std::size_t>(i)]));
    s.push_back(to_json(sys.sigma[static_cast<std::size_t>(i)]));
  }
  return {{"Upsilon", U}, {"sigma", s}};
}

}  // namespace tdrd
