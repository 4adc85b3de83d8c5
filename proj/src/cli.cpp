#include "tdrd/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "tdrd/config.hpp"
#include "tdrd/datasets.hpp"
#include "tdrd/error.hpp"
#include "tdrd/lyapunov.hpp"
#include "tdrd/parabolic.hpp"
#include "tdrd/polyrec.hpp"
#include "tdrd/reaction.hpp"
#include "tdrd/regions.hpp"
#include "tdrd/simulate.hpp"
#include "tdrd/spectral.hpp"

namespace tdrd {

using nlohmann::json;

namespace {

struct Options {
  std::string config;
  std::string example;
  std::string out = "out";
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string format = "json";
};

RunConfig load(const Options& o) {
  if (!o.config.empty() && !o.example.empty()) throw ConfigError("--config and --example are exclusive");
  if (!o.example.empty()) return example_config(o.example);
  if (o.config.empty()) throw ConfigError("missing --config <file> (or --example paper-ex5)");
  return load_config(o.config);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json signs_json(const RegionSignature& s) { return s.signs; }

json spectrum_report(const RunConfig& cfg) {
  const Spectrum sp = spectrum(cfg.params);
  const auto dc = derived_constants(cfg.params);
  json labels = json::array();
  for (const auto& src : sp.provenance) labels.push_back(src.label());
  json cols = json::array();
  for (int l = 0; l < sp.size(); ++l) cols.push_back(to_json(Eigen::VectorXd(sp.eigenvectors.col(l))));
  return {{"command", "spectrum"},
          {"params", to_json(cfg.params)},
          {"derived", {{"beta", dc.beta}, {"s", dc.s}}},
          {"eigenvalues", sp.eigenvalues},
          {"provenance", labels},
          {"eigenvectors", cols},
          {"max_residual", sp.max_residual},
          {"oracle", {{"eigenvalues", oracle_eigenvalues(toeplitz_bands(cfg.params, true))},
                      {"max_deviation", sp.oracle_max_deviation}}}};
}

json growth_json(const GrowthCheckReport& g) {
  return {{"quasipositivity",
           {{"ok", g.a1.ok},
            {"min_value", g.a1.min_value},
            {"worst_component", g.a1.worst_component + 1},
            {"worst_point", to_json(g.a1.worst_point)},
            {"samples", g.a1.samples}}},
          {"growth_degree", g.growth_degree},
          {"A3",
           {{"ok", g.a3.ok},
            {"C2", g.a3.C2},
            {"D", to_json(g.a3.D)},
            {"offender", g.a3.ok ? json(nullptr)
                                 : json{{"i", g.a3.offender_i + 1},
                                        {"j", g.a3.offender_j + 1},
                                        {"coeff", g.a3.offender_coeff}}}}}};
}

int cmd_check(const Options& o, std::ostream& out) {
  const RunConfig cfg = load(o);
  const auto rep = check_parabolicity(cfg.params);
  json j = {{"command", "check"},
            {"ratio", rep.ratio},
            {"threshold", rep.threshold},
            {"margin", rep.margin},
            {"satisfied", rep.satisfied},
            {"minors_positive", rep.minors_positive},
            {"minors", rep.minors.minors}};
  if (cfg.reaction) {
    const Spectrum sp = spectrum(cfg.params);
    const Diagonalizer d = diagonalizer(sp, cfg.resolved_signature());
    const auto G = transform_reaction(d, *cfg.reaction);
    const Eigen::VectorXd box = Eigen::VectorXd::Constant(cfg.params.m, cfg.checks.box);
    const auto g = check_growth_conditions(G, box, cfg.checks.samples_per_face, o.seed, cfg.checks.D);
    j["reaction"] = growth_json(g);
    j["reaction"]["signature"] = signs_json(d.signature);
  }
  out << j.dump(2) << "\n";
  return rep.satisfied ? 0 : 2;
}

int cmd_regions(const Options& o, std::ostream& out) {
  const RunConfig cfg = load(o);
  const Spectrum sp = spectrum(cfg.params);
  const RegionSignature sig = cfg.resolved_signature();
  const Diagonalizer d = diagonalizer(sp, sig);
  const Eigen::VectorXd& X = cfg.simulation.initial.base;
  const auto mem = region_membership(sp.eigenvectors, X, sig);
  json enclosing = json::array();
  for (const auto& s : enclosing_regions(sp, X)) enclosing.push_back(signs_json(s));
  json j = {{"command", "regions"},
            {"signature", signs_json(sig)},
            {"point", to_json(X)},
            {"member", mem.member},
            {"slacks", mem.slacks},
            {"enclosing", enclosing}};
  if (cfg.simulation.boundary.kind == BoundaryKind::Robin) {
    const auto bm = region_membership(sp.eigenvectors, cfg.simulation.boundary.b, sig);
    j["boundary"] = {{"member", bm.member}, {"slacks", bm.slacks}};
  }
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_diagonalize(const Options& o, std::ostream& out) {
  const RunConfig cfg = load(o);
  const Spectrum sp = spectrum(cfg.params);
  const Diagonalizer d = diagonalizer(sp, cfg.resolved_signature());
  json j = {{"command", "diagonalize"},
            {"signature", signs_json(d.signature)},
            {"eigenvalues", d.eigenvalues},
            {"P", to_json(d.P)},
            {"inv_transpose", to_json(d.inv_transpose)},
            {"similarity_residual", d.similarity_residual}};
  if (cfg.reaction) {
    const auto G = transform_reaction(d, *cfg.reaction);
    j["reaction"] = to_json(G);
    json pairs = json::array();
    for (auto [a, b] : detect_conserved_pairs(G)) pairs.push_back({a + 1, b + 1});
    j["conserved_pairs"] = pairs;
  }
  out << j.dump(2) << "\n";
  return 0;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  f << content;
}

std::filesystem::path out_dir(const Options& o) {
  std::filesystem::path dir(o.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const RunConfig cfg = load(o);
  const Spectrum sp = spectrum(cfg.params);
  const Diagonalizer d = diagonalizer(sp, cfg.resolved_signature());
  const auto sys = cfg.reaction ? *cfg.reaction : QuadraticReactionSystem::zero(cfg.params.m);
  const auto res = simulate(cfg.simulation, cfg.params, sys, d);
  const double tol = o.tol.value_or(1e-8);

  json mon = {{"command", "simulate"},
              {"mode", to_string(cfg.simulation.mode)},
              {"boundary", to_string(cfg.simulation.boundary.kind)},
              {"integrator", to_string(cfg.simulation.integrator)},
              {"reaction", cfg.reaction ? cfg.reaction_label : "zero"},
              {"signature", signs_json(d.signature)},
              {"dt", res.dt},
              {"steps", res.steps},
              {"parabolic", res.parabolic},
              {"perturbation_amplitude", res.perturbation_amplitude},
              {"initial_in_region", res.initial_in_region},
              {"initial_slacks", res.initial_slacks}};
  const auto dir = out_dir(o);
  json files = json::array();
  auto dump = [&](const Trajectory& t, const std::string& name) {
    std::ostringstream csv;
    write_trajectory_csv(csv, t);
    write_file(dir / name, csv.str());
    files.push_back(name);
  };
  if (res.original) {
    dump(*res.original, "trajectory_original.csv");
    mon["original_step_minima"] = res.original_step_minima;
  }
  if (res.diagonal) {
    dump(*res.diagonal, "trajectory_diagonal.csv");
    mon["diagonal_step_minima"] = res.diagonal_step_minima;
    const auto inv = invariance_monitor(*res.diagonal);
    bool invariant = true;
    for (double v : res.diagonal_step_minima) invariant = invariant && v >= -tol * inv.scale;
    mon["invariance"] = {{"minima", inv.minima}, {"scale", inv.scale}, {"tolerance", tol}, {"invariant", invariant}};
    json cons = json::array();
    for (auto [a, b] : detect_conserved_pairs(res.diagonal_reaction)) {
      cons.push_back({{"pair", {a + 1, b + 1}}, {"drift", conserved_drift(*res.diagonal, {a, b})}});
    }
    mon["conserved"] = cons;
  }
  if (res.original && res.diagonal) {
    mon["discrepancy"] = compare_original_diagonal(*res.original, *res.diagonal, d);
  }
  mon["files"] = files;
  write_file(dir / "monitors.json", mon.dump(2) + "\n");
  out << mon.dump(2) << "\n";
  return 0;
}

int cmd_lyapunov(const Options& o, std::ostream& out) {
  const RunConfig cfg = load(o);
  const Spectrum sp = spectrum(cfg.params);
  const auto& ly = cfg.lyapunov;
  json j = {{"command", "lyapunov"}, {"eigenvalues", sp.eigenvalues}, {"p_m", ly.p_m}, {"p_ks", ly.p_ks}};
  std::optional<LyapunovSpec> spec;
  if (ly.theta) {
    spec = LyapunovSpec{ly.p_m, *ly.theta, ly.p_ks};
    spec->validate();
    j["theta_source"] = "config";
  } else {
    spec = search_theta(sp.eigenvalues, ly.p_ks, ly.p_m, ly.max_level);
    j["theta_source"] = "search";
  }
  if (!spec) {
    j["found"] = false;
    out << j.dump(2) << "\n";
    return 3;
  }
  j["found"] = true;
  j["theta"] = spec->theta;
  const auto pos = check_condition_1_12(sp.eigenvalues, *spec);
  j["condition"] = {{"satisfied", pos.satisfied},
                    {"K", pos.K},
                    {"K_sign", pos.K_sign},
                    {"log10_abs_K", pos.log10_abs_K},
                    {"a_minors", pos.a_minors}};
  // nlohmann writes non-finite doubles as null; K may overflow to +-inf.
  if (cfg.reaction) {
    const Diagonalizer d = diagonalizer(sp, cfg.resolved_signature());
    SimulationConfig sc = cfg.simulation;
    sc.spaces = SpaceSelection::Diagonal;
    auto res = simulate(sc, cfg.params, *cfg.reaction, d);
    Trajectory& W = *res.diagonal;
    const auto inv = invariance_monitor(W);
    const double tol = o.tol.value_or(1e-8);
    bool inside = true;
    for (double v : inv.minima) inside = inside && v >= -tol * inv.scale;
    j["trajectory_in_region"] = inside;
    if (inside) {
      for (auto& s : W.states) s = s.cwiseMax(0.0);
      const auto b = monitor_L(W, *spec);
      j["L"] = {{"sup", b.sup},
                {"first_half_max", b.first_half_max},
                {"second_half_max", b.second_half_max},
                {"bounded", b.bounded},
                {"factor", kBoundednessFactor}};
      std::ostringstream csv;
      csv << "t,L\n";
      for (std::size_t i = 0; i < b.times.size(); ++i) csv << fmt(b.times[i]) << "," << fmt(b.L[i]) << "\n";
      write_file(out_dir(o) / "lyapunov_L.csv", csv.str());
      j["files"] = {"lyapunov_L.csv"};
    }
  }
  out << j.dump(2) << "\n";
  return pos.satisfied ? 0 : 3;
}

// ---- verify-example ----

struct Row {
  std::string name;
  json expected;
  json computed;
  double tol;
  bool pass;
  std::string note = {};
};

int cmd_verify(const Options& o, std::ostream& out) {
  if (!o.config.empty()) throw ConfigError("verify-example uses the built-in paper-ex5 data; --config is not accepted");
  const ToeplitzParams p = datasets::ex5_params();
  std::vector<Row> rows;
  auto tol = [&](double t) { return o.tol.value_or(t); };
  auto scalar = [&](const std::string& name, double expected, double computed, double t) {
    const double tt = tol(t);
    rows.push_back({name, expected, computed, tt, std::abs(expected - computed) <= tt});
  };

  const Spectrum sp = spectrum(p);
  const double printed_eigs[] = {1.9913, 1.7248, 1.0, 0.77516, 0.50871};
  for (int l = 0; l < 5; ++l) {
    scalar("eigenvalue " + std::to_string(l + 1), printed_eigs[l], sp.eigenvalues[static_cast<std::size_t>(l)], 1e-3);
  }
  rows.push_back({"eigenvalues vs oracle", 0.0, sp.oracle_max_deviation, tol(kOracleTol),
                  sp.oracle_max_deviation <= tol(kOracleTol)});
  scalar("beta", 1.0801, derived_constants(p).beta, 1e-4);

  const auto par = check_parabolicity(p);
  scalar("parabolicity ratio", 1.2892, par.ratio, 1e-4);
  scalar("parabolicity threshold", 0.8090, par.threshold, 1e-4);
  rows.back().note = "printed value is cos(pi/5); cos(pi/(m+1)) with m = 5 is cos(pi/6)";
  rows.push_back({"parabolicity satisfied", true, par.satisfied, 0.0, par.satisfied});

  const auto zp = zeros_p(2);
  const double zerr = std::max(std::abs(zp.zeros.at(0) - 1.0), std::abs(zp.zeros.at(1) + 1.0));
  rows.push_back({"zeros_p(2)", json::array({1.0, -1.0}), zp.zeros, tol(1e-12), zerr <= tol(1e-12)});

  const Eigen::MatrixXd printedP = datasets::ex5_printed_P();
  const auto cm = match_columns(sp.eigenvectors, printedP);
  rows.push_back({"P match (max entry error)", 0.0,
                  {{"max_abs_error", cm.max_abs_error}, {"permutation", cm.permutation}, {"signs", cm.signs}},
                  tol(2e-3), cm.max_abs_error <= tol(2e-3)});

  const Eigen::VectorXd u0 = datasets::ex5_initial();
  const auto mem = region_membership(printedP, u0, RegionSignature::all_positive(5));
  for (int l = 0; l < 5; ++l) {
    double dot = 0.0;
    for (int i = 0; i < 5; ++i) dot += printedP(i, l) * u0(i);
    const double slack = mem.slacks[static_cast<std::size_t>(l)];
    const bool ok = slack > 0.0 && std::abs(slack - dot) <= tol(1e-3);
    rows.push_back({"U0 slack " + std::to_string(l + 1), dot, slack, tol(1e-3), ok});
  }
  rows.push_back({"U0 in printed region", true, mem.member, 0.0, mem.member});

  bool all = true;
  for (const auto& r : rows) all = all && r.pass;
  if (o.format == "text") {
    for (const auto& r : rows) {
      out << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(28) << r.name
          << " expected=" << r.expected.dump() << " computed=" << r.computed.dump() << " tol=" << fmt(r.tol);
      if (!r.note.empty()) out << " note: " << r.note;
      out << "\n";
    }
    out << (all ? "ALL PASS" : "SOME CHECKS FAILED") << "\n";
  } else {
    json arr = json::array();
    for (const auto& r : rows) {
      json row = {{"name", r.name}, {"expected", r.expected}, {"computed", r.computed}, {"tol", r.tol}, {"pass", r.pass}};
      if (!r.note.empty()) row["note"] = r.note;
      arr.push_back(row);
    }
    out << json{{"command", "verify-example"}, {"dataset", "paper-ex5"}, {"checks", arr}, {"all_pass", all}}.dump(2)
        << "\n";
  }
  return all ? 0 : 3;
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
  const int m = t.components();
  os << "t,x";
  for (int i = 1; i <= m; ++i) os << ",c" << i;
  os << "\n";
  for (std::size_t k = 0; k < t.states.size(); ++k) {
    const auto& S = t.states[k];
    for (Eigen::Index j = 0; j < S.cols(); ++j) {
      os << fmt(t.times[k]) << ",";
      if (t.spatial()) os << fmt(t.x[static_cast<std::size_t>(j)]);
      for (int i = 0; i < m; ++i) os << "," << fmt(S(i, j));
      os << "\n";
    }
  }
}

void validate_report(const json& r) {
  enum Kind { Num, Arr, Bool, Obj, Str, Any };
  static const std::map<std::string, std::vector<std::pair<std::string, Kind>>> schema = {
      {"spectrum", {{"params", Obj}, {"derived", Obj}, {"eigenvalues", Arr}, {"provenance", Arr},
                    {"eigenvectors", Arr}, {"max_residual", Num}, {"oracle", Obj}}},
      {"check", {{"ratio", Num}, {"threshold", Num}, {"margin", Num}, {"satisfied", Bool},
                 {"minors_positive", Bool}, {"minors", Arr}}},
      {"regions", {{"signature", Arr}, {"point", Arr}, {"member", Bool}, {"slacks", Arr}, {"enclosing", Arr}}},
      {"diagonalize", {{"signature", Arr}, {"eigenvalues", Arr}, {"P", Arr}, {"inv_transpose", Arr},
                       {"similarity_residual", Num}}},
      {"simulate", {{"mode", Str}, {"boundary", Str}, {"integrator", Str}, {"dt", Num}, {"steps", Num},
                    {"initial_in_region", Bool}, {"initial_slacks", Arr}, {"files", Arr}}},
      {"lyapunov", {{"eigenvalues", Arr}, {"p_m", Num}, {"p_ks", Arr}, {"found", Bool}}},
      {"verify-example", {{"dataset", Str}, {"checks", Arr}, {"all_pass", Bool}}},
  };
  if (!r.is_object() || !r.contains("command") || !r["command"].is_string()) {
    throw ConfigError("$.command: missing report type");
  }
  const auto it = schema.find(r["command"].get<std::string>());
  if (it == schema.end()) throw ConfigError("$.command: unknown report type");
  for (const auto& [key, kind] : it->second) {
    if (!r.contains(key)) throw ConfigError("$." + key + ": missing");
    const json& v = r[key];
    const bool ok = (kind == Num && v.is_number()) || (kind == Arr && v.is_array()) ||
                    (kind == Bool && v.is_boolean()) || (kind == Obj && v.is_object()) ||
                    (kind == Str && v.is_string()) || kind == Any;
    if (!ok) throw ConfigError("$." + key + ": wrong type");
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tridiagonal 2-Toeplitz reaction-diffusion toolkit", "tdrd"};
  app.require_subcommand(1);
  Options o;
  std::string cmd;
  auto add = [&](const char* name, const char* desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    if (std::string(name) != "verify-example") {
      sub->add_option("--config", o.config, "JSON config file");
      sub->add_option("--example", o.example, "built-in dataset (paper-ex5)");
    } else {
      sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    }
    sub->add_option("--out", o.out, "directory for CSV artifacts");
    sub->add_option("--seed", o.seed, "seed for samplers");
    sub->add_option("--tol", o.tol, "override report tolerances");
    sub->callback([&cmd, name] { cmd = name; });
  };
  add("spectrum", "eigenvalues, eigenvectors and oracle cross-check");
  add("check", "parabolicity (exit 2 if violated) and reaction conditions");
  add("regions", "region membership of the initial data");
  add("diagonalize", "diagonalizing matrix and transformed reaction");
  add("simulate", "method-of-lines run; CSV and monitors to --out");
  add("lyapunov", "theta search, positivity condition, L(t)");
  add("verify-example", "check the built-in example against its printed numbers");

  std::vector<const char*> argv;
  argv.push_back("tdrd");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd == "spectrum") {
      out << spectrum_report(load(o)).dump(2) << "\n";
      return 0;
    }
    if (cmd == "check") return cmd_check(o, out);
    if (cmd == "regions") return cmd_regions(o, out);
    if (cmd == "diagonalize") return cmd_diagonalize(o, out);
    if (cmd == "simulate") return cmd_simulate(o, out);
    if (cmd == "lyapunov") return cmd_lyapunov(o, out);
    if (cmd == "verify-example") return cmd_verify(o, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  } catch (const ParabolicityError& e) {
    err << "parabolicity error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace tdrd
