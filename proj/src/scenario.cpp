#include "spincm/scenario.hpp"

#include "spincm/rmatrix.hpp"
#include "spincm/verify.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

namespace spincm {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const char* where,
                         std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (key == a) known = true;
    if (!known)
      throw ConfigError(std::string("unknown key '") + key + "' in " + where);
  }
}

CMatrix parse_complex_matrix(const json& rows, int n, const char* what) {
  if (!rows.is_array() || int(rows.size()) != n)
    throw ConfigError(std::string(what) + ": expected " + std::to_string(n) + " rows");
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    if (int(rows[i].size()) != n)
      throw ConfigError(std::string(what) + ": row length mismatch");
    for (int j = 0; j < n; ++j) {
      const json& e = rows[i][j];
      if (!e.is_array() || e.size() != 2)
        throw ConfigError(std::string(what) + ": entries must be [re, im] pairs");
      m(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

RVector parse_vector(const json& arr, int n, const char* what) {
  if (!arr.is_array() || int(arr.size()) != n)
    throw ConfigError(std::string(what) + ": expected " + std::to_string(n) + " entries");
  RVector v(n);
  for (int i = 0; i < n; ++i) v[i] = arr[i].get<double>();
  return v;
}

}  // namespace

namespace {
Scenario parse_scenario_impl(const json& doc);
}

Scenario parse_scenario(const json& doc) {
  try {
    return parse_scenario_impl(doc);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario error: ") + e.what());
  }
}

namespace {

Scenario parse_scenario_impl(const json& doc) {
  reject_unknown_keys(doc, "scenario", {"system", "initial", "run", "output"});
  Scenario sc;

  const json& system = doc.at("system");
  reject_unknown_keys(system, "system", {"n", "orbit"});
  sc.n = system.at("n").get<int>();
  if (sc.n < 2) throw ConfigError("system.n must be >= 2");

  const json& orbit = system.at("orbit");
  reject_unknown_keys(orbit, "system.orbit", {"generator", "rank_one"});
  if (orbit.contains("rank_one")) {
    const json& ro = orbit["rank_one"];
    reject_unknown_keys(ro, "system.orbit.rank_one", {"v"});
    const json& varr = ro.at("v");
    if (int(varr.size()) != sc.n) throw ConfigError("rank_one.v: wrong length");
    Eigen::VectorXcd v(sc.n);
    for (int i = 0; i < sc.n; ++i)
      v[i] = Complex(varr[i][0].get<double>(), varr[i][1].get<double>());
    sc.orbit = OrbitSpec::from_rank_one(v);
  } else if (orbit.contains("generator")) {
    try {
      sc.orbit = OrbitSpec::from_generator(AlgebraElement(
          parse_complex_matrix(orbit["generator"], sc.n, "system.orbit.generator")));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("system.orbit.generator: ") + e.what());
    }
  } else {
    throw ConfigError("system.orbit needs 'generator' or 'rank_one'");
  }

  const json& initial = doc.at("initial");
  reject_unknown_keys(initial, "initial", {"q", "p", "spin"});
  sc.q0 = parse_vector(initial.at("q"), sc.n, "initial.q");
  sc.p0 = parse_vector(initial.at("p"), sc.n, "initial.p");
  for (int i = 0; i + 1 < sc.n; ++i)
    if (sc.q0[i] - sc.q0[i + 1] <= kEpsReg)
      throw ConfigError("initial.q is not strictly decreasing");
  const json& spin = initial.at("spin");
  reject_unknown_keys(spin, "initial.spin", {"explicit", "project_seed"});
  if (spin.contains("explicit")) {
    sc.explicit_spin = parse_complex_matrix(spin["explicit"], sc.n, "initial.spin.explicit");
    if (!is_anti_hermitian(*sc.explicit_spin) ||
        sc.explicit_spin->diagonal().cwiseAbs().maxCoeff() > kDerivedTol)
      throw ConfigError("initial.spin.explicit must be anti-Hermitian with zero diagonal");
  } else if (spin.contains("project_seed")) {
    sc.project_seed = spin["project_seed"].get<std::uint64_t>();
  } else {
    throw ConfigError("initial.spin needs 'explicit' or 'project_seed'");
  }

  const json& run = doc.at("run");
  reject_unknown_keys(run, "run", {"t_end", "dt", "engine", "spin_sign"});
  sc.t_end = run.at("t_end").get<double>();
  sc.dt = run.at("dt").get<double>();
  if (!(sc.t_end > 0) || !(sc.dt > 0)) throw ConfigError("run.t_end and run.dt must be positive");
  const std::string engine = run.value("engine", "projection");
  if (engine == "projection") sc.engine = EngineChoice::projection;
  else if (engine == "direct") sc.engine = EngineChoice::direct;
  else if (engine == "both") sc.engine = EngineChoice::both;
  else throw ConfigError("run.engine must be projection|direct|both");
  const std::string sign = run.value("spin_sign", "auto");
  if (sign == "auto") sc.spin_sign = SpinSign::automatic;
  else if (sign == "+1") sc.spin_sign = SpinSign::plus;
  else if (sign == "-1") sc.spin_sign = SpinSign::minus;
  else throw ConfigError("run.spin_sign must be auto|+1|-1");

  if (doc.contains("output")) {
    const json& output = doc["output"];
    reject_unknown_keys(output, "output", {"csv", "report", "gnuplot"});
    sc.csv_path = output.value("csv", sc.csv_path);
    sc.report_path = output.value("report", sc.report_path);
    sc.gnuplot = output.value("gnuplot", false);
  }
  return sc;
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario parse error: ") + e.what());
  }
  try {
    return parse_scenario(doc);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario error: ") + e.what());
  }
}

ReducedPoint scenario_initial(const Scenario& sc, std::uint64_t seed) {
  CMatrix z;
  if (sc.explicit_spin) {
    z = *sc.explicit_spin;
  } else {
    z = project_to_ann_m(sc.orbit, sc.project_seed.value_or(seed)).value.m;
  }
  auto [z_fixed, gauge] = gauge_fix_spin(z);
  return ReducedPoint(sc.q0, sc.p0, std::move(z_fixed), std::move(gauge));
}

double tol_scale() {
  if (const char* env = std::getenv("SPINCM_TOL_SCALE")) {
    const double v = std::atof(env);
    if (v > 0) return v;
  }
  return 1.0;
}

json RunReport::to_json() const {
  json j;
  j["scenario"] = scenario_echo;
  j["drifts"] = drifts;
  if (engine_agreement)
    j["engine_agreement"] = *engine_agreement;
  else
    j["engine_agreement"] = nullptr;
  j["wall_clock_seconds"] = wall_clock_seconds;
  j["status"] = status;
  return j;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj,
                          bool raw_spin) {
  std::ofstream out(path, std::ios::binary);  // LF endings on all platforms
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const int n = int(traj.points.front().n());
  out << "t";
  for (int i = 1; i <= n; ++i) out << ",q_" << i;
  for (int i = 1; i <= n; ++i) out << ",p_" << i;
  out << ",energy";
  for (int i = 1; i <= n; ++i) out << ",lax_eig_" << i;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) out << ",spin_mod2_" << i << j;
  if (raw_spin)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        out << ",gauge_dependent_spin_re_" << i << j
            << ",gauge_dependent_spin_im_" << i << j;
  out << "\n";
  for (std::size_t k = 0; k < traj.points.size(); ++k) {
    const ReducedPoint& r = traj.points[k];
    const SampleDiagnostics& d = traj.diagnostics[k];
    out << fmt17(traj.times[k]);
    for (int i = 0; i < n; ++i) out << "," << fmt17(r.q[i]);
    for (int i = 0; i < n; ++i) out << "," << fmt17(r.p[i]);
    out << "," << fmt17(d.energy);
    for (int i = 0; i < n; ++i) out << "," << fmt17(d.lax_spectrum[i]);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) out << "," << fmt17(std::norm(r.z(i, j)));
    if (raw_spin)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          out << "," << fmt17(r.z(i, j).real()) << "," << fmt17(r.z(i, j).imag());
    out << "\n";
  }
}

void write_gnuplot_script(const std::filesystem::path& path,
                          const std::filesystem::path& csv, int n) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set xlabel 't'\n"
      << "plot";
  for (int i = 0; i < n; ++i)
    out << (i ? ", " : " ") << "'" << csv.string() << "' using 1:" << (2 + i)
        << " with lines";
  out << "\n";
}

namespace {

struct CliOptions {
  std::string command;
  std::filesystem::path config;
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 1;
  bool raw_spin = false;
};

json scenario_echo_json(const std::filesystem::path& config) {
  std::ifstream in(config);
  return json::parse(in);
}

std::map<std::string, double> agreement_metrics(const Trajectory& a,
                                                const Trajectory& b) {
  const ReducedPoint& ra = a.points.back();
  const ReducedPoint& rb = b.points.back();
  std::map<std::string, double> m;
  m["endpoint_dq_inf"] = (ra.q - rb.q).cwiseAbs().maxCoeff();
  m["endpoint_dp_inf"] = (ra.p - rb.p).cwiseAbs().maxCoeff();
  m["endpoint_dspin_mod2_inf"] =
      (ra.z.cwiseAbs2() - rb.z.cwiseAbs2()).cwiseAbs().maxCoeff();
  return m;
}

int cmd_simulate(const CliOptions& opt) {
  const Scenario sc = load_scenario(opt.config);
  const auto t0 = std::chrono::steady_clock::now();
  RunReport report;
  report.scenario_echo = scenario_echo_json(opt.config);
  const double scale = tol_scale();

  ReducedPoint initial = scenario_initial(sc, opt.seed);
  SimulationConfig cfg{std::move(initial), sc.t_end, sc.dt,
                       Engine::projection, sc.spin_sign};

  std::optional<Trajectory> proj, direct;
  if (sc.engine != EngineChoice::direct) proj = trajectory_via_projection(cfg);
  if (sc.engine != EngineChoice::projection) {
    cfg.engine = Engine::direct;
    direct = integrate_direct(cfg);
  }
  const Trajectory& primary = proj ? *proj : *direct;

  const ConservedReport cons = conserved_report(primary);
  report.drifts = cons.drifts;
  if (proj && direct) report.engine_agreement = agreement_metrics(*proj, *direct);

  std::filesystem::create_directories(opt.out_dir);
  write_trajectory_csv(opt.out_dir / sc.csv_path, primary, opt.raw_spin);
  if (sc.gnuplot)
    write_gnuplot_script(opt.out_dir / (sc.csv_path + ".gp"), sc.csv_path, sc.n);

  bool ok = true;
  if (proj) {
    ok = ok && cons.drifts.at("energy") <= 1e-10 * scale &&
         cons.drifts.at("lax_spectrum") <= 1e-8 * scale &&
         cons.drifts.at("lax_trace_powers") <= 1e-8 * scale &&
         cons.drifts.at("spin_casimirs") <= 1e-8 * scale;
  }
  if (report.engine_agreement)
    for (const auto& [_, v] : *report.engine_agreement) ok = ok && v <= 1e-6 * scale;

  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report.status = ok ? "pass" : "tolerance_violation";
  std::ofstream rep(opt.out_dir / sc.report_path, std::ios::binary);
  rep << report.to_json().dump(2) << "\n";
  std::cout << report.to_json().dump(2) << std::endl;
  return ok ? kExitOk : kExitTolerance;
}

int cmd_verify(const CliOptions& opt) {
  json cfg;
  {
    std::ifstream in(opt.config);
    if (!in) throw ConfigError("cannot open config " + opt.config.string());
    cfg = json::parse(in);
  }
  reject_unknown_keys(cfg, "verify config",
                      {"n", "seed", "samples", "weinstein_pairs", "reduced_pairs",
                       "fd_step"});
  std::vector<int> dims;
  if (cfg.contains("n") && cfg["n"].is_array())
    for (const auto& v : cfg["n"]) dims.push_back(v.get<int>());
  else
    dims.push_back(cfg.value("n", 3));
  const std::uint64_t seed = cfg.value("seed", std::uint64_t(7));
  const int samples = cfg.value("samples", 100);
  const int wpairs = cfg.value("weinstein_pairs", 50);
  const int rpairs = cfg.value("reduced_pairs", 25);
  const double h = cfg.value("fd_step", 1e-5);
  const double scale = tol_scale();

  json out;
  bool ok = true;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (const int n : dims) {
    json block;
    const IdentityReport rep = check_connection_identities(n, seed + n, samples);
    block["connection_identities"] = rep.max_residuals;
    ok = ok && rep.pass(1e-9 * scale);

    double wmax = 0;
    for (int k = 0; k < wpairs; ++k) {
      const auto [w, t1, t2] = [&] {
        RVector s(n), eta(n);
        double cur = 2.0 * n;
        for (int i = 0; i < n; ++i) {
          s[i] = cur;
          cur -= 0.5 + std::abs(gauss(rng));
          eta[i] = gauss(rng);
        }
        auto mp = [&] {
          CMatrix z = CMatrix::Zero(n, n);
          for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
              z(i, j) = Complex(gauss(rng), gauss(rng));
              z(j, i) = -std::conj(z(i, j));
            }
          return z;
        };
        WeinsteinChartPoint w_(s, 0.3 * mp(), eta, mp());
        ChartTangent a{RVector::Random(n), mp(), RVector::Random(n), mp()};
        ChartTangent b{RVector::Random(n), mp(), RVector::Random(n), mp()};
        return std::make_tuple(w_, a, b);
      }();
      wmax = std::max(wmax, verify_weinstein_form(w, t1, t2, h).residual);
    }
    block["weinstein_form_max_residual"] = wmax;
    ok = ok && wmax <= 1e-6 * scale;

    double rmax = 0;
    for (int k = 0; k < rpairs; ++k) {
      RVector q(n), p(n);
      double cur = n;
      for (int i = 0; i < n; ++i) {
        q[i] = cur;
        cur -= 0.5 + std::abs(gauss(rng));
        p[i] = gauss(rng);
      }
      CMatrix z = CMatrix::Zero(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          z(i, j) = Complex(gauss(rng), gauss(rng));
          z(j, i) = -std::conj(z(i, j));
        }
      auto [zf, gauge] = gauge_fix_spin(z);
      const ReducedPoint r(q, p, zf, gauge);
      std::vector<CMatrix> basis = su_orthonormal_basis(n);
      auto rand_alg = [&] {
        CMatrix x = CMatrix::Zero(n, n);
        for (const auto& e : basis) x += gauss(rng) * e;
        return x;
      };
      const CMatrix g = matrix_exp(0.2 * rand_alg());
      auto rand_tangent = [&] {
        ConstrainedTangent c;
        c.dq = 0.3 * RVector::Random(n);
        c.dp = RVector::Random(n);
        c.free_weight = gauss(rng);
        c.gauge_gen = rand_alg();
        c.spin_gen = project_spin_generator(rand_alg(), r.z);
        return c;
      };
      rmax = std::max(rmax,
                      verify_reduced_form(r, g, rand_tangent(), rand_tangent(), h)
                          .residual);
    }
    block["reduced_form_max_residual"] = rmax;
    ok = ok && rmax <= 1e-6 * scale;
    out["n" + std::to_string(n)] = block;
  }
  out["status"] = ok ? "pass" : "tolerance_violation";
  std::filesystem::create_directories(opt.out_dir);
  std::ofstream rep(opt.out_dir / "verify_report.json", std::ios::binary);
  rep << out.dump(2) << "\n";
  std::cout << out.dump(2) << std::endl;
  return ok ? kExitOk : kExitTolerance;
}

int cmd_rmatrix(const CliOptions& opt) {
  json cfg;
  {
    std::ifstream in(opt.config);
    if (!in) throw ConfigError("cannot open config " + opt.config.string());
    cfg = json::parse(in);
  }
  reject_unknown_keys(cfg, "rmatrix config", {"family", "n", "points", "seed", "h_step"});
  const std::string family = cfg.value("family", "both");
  std::vector<int> dims;
  if (cfg.contains("n") && cfg["n"].is_array())
    for (const auto& v : cfg["n"]) dims.push_back(v.get<int>());
  else
    dims.push_back(cfg.value("n", 3));
  const int points = cfg.value("points", 20);
  const double h = cfg.value("h_step", 1e-5);
  std::mt19937_64 rng(cfg.value("seed", std::uint64_t(opt.seed)));
  std::normal_distribution<double> gauss;
  const double scale = tol_scale();

  json out;
  bool ok = true;
  std::vector<RMatrixFamily> families;
  if (family == "rational" || family == "both")
    families.push_back(RMatrixFamily::rational);
  if (family == "trigonometric" || family == "both")
    families.push_back(RMatrixFamily::trigonometric);
  if (families.empty()) throw ConfigError("family must be rational|trigonometric|both");

  for (const RMatrixFamily fam : families) {
    const char* name = fam == RMatrixFamily::rational ? "rational" : "trigonometric";
    for (const int n : dims) {
      json table = json::array();
      double worst = 0;
      for (int k = 0; k < points; ++k) {
        RVector q(n);
        double cur = n;
        for (int i = 0; i < n; ++i) {
          q[i] = cur;
          cur -= 0.4 + std::abs(gauss(rng));
        }
        const CdybeResult res = cdybe_check(fam, n, q, h);
        worst = std::max(worst, res.residual());
        json row;
        row["q"] = std::vector<double>(q.data(), q.data() + n);
        row["residual"] = res.residual();
        row["convention"] = res.primary_convention() ? "primary" : "mirrored";
        table.push_back(row);
      }
      ok = ok && worst <= 1e-7 * scale;
      out[name]["n" + std::to_string(n)] = {{"max_residual", worst},
                                            {"table", table}};
      std::cout << name << " n=" << n << " max CDYBE residual " << worst << "\n";
    }
  }
  out["status"] = ok ? "pass" : "tolerance_violation";
  std::filesystem::create_directories(opt.out_dir);
  std::ofstream rep(opt.out_dir / "rmatrix_report.json", std::ios::binary);
  rep << out.dump(2) << "\n";
  return ok ? kExitOk : kExitTolerance;
}

int cmd_orbit(const CliOptions& opt) {
  const Scenario sc = load_scenario(opt.config);
  json out;
  // Orbit dimension: rank of X -> [X, Z0] over an orthonormal basis of su(n).
  const int n = sc.n;
  const std::vector<CMatrix> basis = su_orthonormal_basis(n);
  Eigen::MatrixXcd map(n * n, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const CMatrix c = commutator(basis[k], sc.orbit.generator.m);
    map.col(k) = Eigen::Map<const Eigen::VectorXcd>(c.data(), n * n);
  }
  out["orbit_dimension"] = int(map.colPivHouseholderQr().rank());

  bool ok = true;
  try {
    const OrbitPoint z = project_to_ann_m(sc.orbit, opt.seed);
    out["ann_m_sample_diag_inf"] = z.value.m.diagonal().cwiseAbs().maxCoeff();
    out["ann_m_sample_spectrum_drift"] =
        (orbit_spectrum(z.value.m) - orbit_spectrum(sc.orbit.generator.m))
            .cwiseAbs()
            .maxCoeff();
    if (sc.orbit.rank_one) {
      // Minimal-orbit collapse: entrywise |Z_ij|^2 invariant across seeds.
      const double c = sc.orbit.rank_one->c;
      double worst = 0;
      for (std::uint64_t s = 0; s < 10; ++s) {
        const OrbitPoint zs = project_to_ann_m(sc.orbit, opt.seed + 1000 + s);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (i != j)
              worst = std::max(worst, std::abs(std::norm(zs.value.m(i, j)) - c * c));
      }
      out["minimal_orbit_collapse_residual"] = worst;
      ok = ok && worst <= 1e-8 * tol_scale();
    }
  } catch (const AnnMProjectionError& e) {
    out["ann_m_error"] = e.what();
    out["ann_m_best_residual"] = e.best_residual;
    std::cout << out.dump(2) << std::endl;
    return kExitNumerical;
  }
  out["status"] = ok ? "pass" : "tolerance_violation";
  std::filesystem::create_directories(opt.out_dir);
  std::ofstream rep(opt.out_dir / "orbit_report.json", std::ios::binary);
  rep << out.dump(2) << "\n";
  std::cout << out.dump(2) << std::endl;
  return ok ? kExitOk : kExitTolerance;
}

}  // namespace

int run_command(const std::vector<std::string>& argv) {
  CliOptions opt;
  std::vector<std::string> positional;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    const std::string& arg = argv[i];
    auto next = [&]() -> const std::string& {
      if (i + 1 >= argv.size()) throw ConfigError("missing value for " + arg);
      return argv[++i];
    };
    if (arg == "--config") opt.config = next();
    else if (arg == "--out") opt.out_dir = next();
    else if (arg == "--seed") opt.seed = std::stoull(next());
    else if (arg == "--raw-spin") opt.raw_spin = true;
    else if (!arg.empty() && arg[0] == '-') throw ConfigError("unknown option " + arg);
    else positional.push_back(arg);
  }
  if (positional.size() != 1)
    throw ConfigError("usage: spincm simulate|verify|rmatrix|orbit --config <path> "
                      "[--out <dir>] [--seed <u64>] [--raw-spin]");
  opt.command = positional[0];
  if (opt.config.empty()) throw ConfigError("--config is required");

  try {
    if (opt.command == "simulate") return cmd_simulate(opt);
    if (opt.command == "verify") return cmd_verify(opt);
    if (opt.command == "rmatrix") return cmd_rmatrix(opt);
    if (opt.command == "orbit") return cmd_orbit(opt);
    throw ConfigError("unknown command '" + opt.command + "'");
  } catch (const ConfigError&) {
    throw;
  } catch (const WallCollisionError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const AnnMProjectionError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::runtime_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace spincm
