// Experiment runner for the exterior Stokes resolvent laboratory.
//
// Subcommands:
//   kernels-check  special-function / kernel invariant suites, pass-fail
//   sweep-lambda   resolvent sweep over rays x decades, sup-norm diagnostics
//   net-force      small-lambda net-force asymptotics on one ray
//   paradox        window sups of |lambda v|, |lambda grad v|, |lambda q|
//   semigroup      S(t)f over a time grid via the Dunford contour
//
// Every command reads an optional JSON config (--config), writes a CSV
// (--out) plus a "<out>.summary.json" aggregating pass/fail, and is
// deterministic: fixed iteration order, worker results assembled by row
// index, all numbers printed with %.17g. Complex entries use the "re+imj"
// format. The config schema is documented in docs/cli.md.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <exstokes/bessel.hpp>
#include <exstokes/fields.hpp>
#include <exstokes/geometry.hpp>
#include <exstokes/kernels.hpp>
#include <exstokes/resolvent.hpp>
#include <exstokes/semigroup.hpp>

using json = nlohmann::json;
using namespace exstokes;
using cd = std::complex<double>;
using Eigen::Vector2d;

namespace {

// ---------- formatting ----------

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt(cd z) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gj", z.real(), z.imag());
  return buf;
}

// RFC-4180: quote a field iff it contains a comma, quote, or newline.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct CsvWriter {
  std::ofstream os;
  explicit CsvWriter(const std::string& path) : os(path) {
    if (!os) throw std::runtime_error("cannot open output file: " + path);
  }
  void row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << csv_field(cells[i]);
    }
    os << "\r\n";
  }
};

void write_summary(const std::string& csv_path, const json& summary) {
  const std::string path = csv_path + ".summary.json";
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  os << summary.dump(2) << "\n";
}

// ---------- config ----------

struct Options {
  std::string config_path;
  std::string out_path;
  int workers = 0;  // 0: config value, else hardware
  int nodes = 0;    // 0: config value
};

json load_config(const Options& opt) {
  if (opt.config_path.empty()) return json::object();
  std::ifstream is(opt.config_path);
  if (!is)
    throw std::runtime_error("cannot open config: " + opt.config_path);
  json j;
  is >> j;
  return j;
}

int resolve_workers(const Options& opt, const json& cfg) {
  if (opt.workers > 0) return opt.workers;
  if (cfg.contains("workers")) return cfg["workers"].get<int>();
  return std::max(1u, std::thread::hardware_concurrency());
}

int resolve_nodes(const Options& opt, const json& cfg, int fallback) {
  if (opt.nodes > 0) return opt.nodes;
  if (cfg.contains("nodes")) return cfg["nodes"].get<int>();
  return fallback;
}

BoundaryCurve parse_geometry(const json& cfg, int nodes) {
  const json g = cfg.value("geometry", json{{"kind", "circle"}});
  const std::string kind = g.value("kind", "circle");
  if (kind == "circle") return circle_curve(nodes, g.value("radius", 1.0));
  if (kind == "ellipse")
    return ellipse_curve(g.value("a", 1.6), g.value("b", 0.8), nodes);
  if (kind == "kite") return kite_curve(nodes);
  if (kind == "fourier") {
    BoundaryCurve::ModeList modes;
    for (const auto& m : g.at("modes"))
      modes.push_back({m.at(0).get<int>(),
                       cd(m.at(1).get<double>(), m.at(2).get<double>())});
    return make_curve(std::move(modes), nodes);
  }
  throw std::runtime_error("geometry.kind must be circle|ellipse|kite|fourier");
}

SolenoidalField parse_field(const json& cfg, const BoundaryCurve& curve,
                            const json& fallback) {
  const json f = cfg.value("field", fallback);
  const std::string kind = f.value("kind", "bump");
  if (kind == "bump") {
    // default: an annular swirl enclosing the obstacle; keeping the
    // boundary inside the inner break radius keeps the volume-potential
    // quadrature on its cheap tangency-free path for boundary targets
    const auto c = f.value("center", std::vector<double>{0.3, 0.2});
    return bump_field(Vector2d(c.at(0), c.at(1)), f.value("r0", 1.5),
                      f.value("r1", 2.5), f.value("amplitude", 1.0), &curve);
  }
  if (kind == "asymptotically_constant") {
    const auto fi = f.value("f_inf", std::vector<double>{1.0, 0.0});
    return asymptotically_constant_field(Vector2d(fi.at(0), fi.at(1)), curve,
                                         f.value("r0", 2.0),
                                         f.value("r1", 3.5));
  }
  throw std::runtime_error("field.kind must be bump|asymptotically_constant");
}

PotentialParams parse_potential(const json& cfg, PotentialParams dflt) {
  const json p = cfg.value("potential", json::object());
  PotentialParams out = dflt;
  out.angular_nodes = p.value("angular_nodes", out.angular_nodes);
  out.radial_points = p.value("radial_points", out.radial_points);
  out.graded_panels = p.value("graded_panels", out.graded_panels);
  return out;
}

double parse_theta(const json& cfg) {
  return cfg.value("theta", 0.25 * std::numbers::pi);
}

// ---------- worker pool: deterministic by row index ----------

template <class Body>
void parallel_rows(int n, int workers, Body&& body) {
  std::atomic<int> next{0};
  auto run = [&]() {
    for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
  };
  const int nw = std::max(1, std::min(workers, n));
  std::vector<std::thread> pool;
  for (int w = 0; w < nw; ++w) pool.emplace_back(run);
  for (auto& th : pool) th.join();
}

// ---------- kernels-check ----------

struct Check {
  std::string name;
  bool pass;
  double measure;
  std::string note;
};

int cmd_kernels_check(const Options& opt, double gamma_perturbation) {
  detail::euler_gamma_perturbation = gamma_perturbation;
  std::vector<Check> checks;

  // Wronskian of the modified Bessel pair: I1 K0 + I0 K1 = 1/z, checked on a
  // log grid covering series, continued-fraction, and asymptotic branches.
  {
    double worst = 0.0;
    for (int i = 0; i < 160; ++i) {
      const double r = std::pow(10.0, -4.0 + 8.0 * i / 159.0);
      for (double ph : {-1.2, -0.5, 0.0, 0.7, 1.3}) {
        const cd z = std::polar(r, ph);
        // the e^{-z} I and e^{z} K scalings cancel in the product
        const cd w = bessel_i_scaled(1, RightHalfPlaneArg(z)) *
                         bessel_k_scaled(0, RightHalfPlaneArg(z)) +
                     bessel_i_scaled(0, RightHalfPlaneArg(z)) *
                         bessel_k_scaled(1, RightHalfPlaneArg(z));
        worst = std::max(worst, std::abs(w * z - 1.0));
      }
    }
    // The Wronskian itself is invariant under a shift of the Euler
    // constant (the K0 and K1 shifts cancel), so the suite also checks the
    // connection formula K0 + (log(z/2) + gamma) I0 -> 0 as z -> 0 against
    // the true constant, which the perturbation hook does break.
    for (double r : {1e-8, 1e-4}) {
      const cd z(r, 0.0);
      const cd res = bessel_k0(RightHalfPlaneArg(z)) +
                     (std::log(z / 2.0) + euler_gamma) *
                         bessel_i_scaled(0, RightHalfPlaneArg(z)) *
                         std::exp(z);
      worst = std::max(worst, std::abs(res) - 0.25 * r * r);
    }
    checks.push_back({"bessel_wronskian", worst < 1e-11, worst,
                      "z (I1 K0 + I0 K1) = 1 and the K0 connection formula "
                      "at small z"});
  }

  // K0' = -K1 by central finite differences along the real axis.
  {
    double worst = 0.0;
    for (double x : {0.3, 1.0, 3.0, 8.0, 20.0}) {
      const double h = 1e-5 * std::max(1.0, x);
      const cd d = (bessel_k0(RightHalfPlaneArg(cd(x + h))) -
                    bessel_k0(RightHalfPlaneArg(cd(x - h)))) /
                   (2.0 * h);
      const cd k1 = bessel_k1(RightHalfPlaneArg(cd(x)));
      worst = std::max(worst, std::abs(d + k1) / std::abs(k1));
    }
    checks.push_back({"bessel_k_derivative", worst < 1e-8, worst,
                      "relative FD residual of K0' = -K1"});
  }

  // Small-argument limits of the resolvent kernel coefficients.
  const double l1_ref = e1_log_limit;
  {
    const auto v = detail::e12(cd(1e-8, 0.0));
    const double d1 = std::abs(v.e1reg - l1_ref);
    const double d2 = std::abs(v.e2 - 0.5);
    checks.push_back({"e1_log_limit", d1 < 1e-6, d1,
                      "e1 + (1/2) log kappa at kappa = 1e-8 vs log2/2 - "
                      "gamma/2 - 1/4 = " +
                          fmt(l1_ref)});
    checks.push_back({"e2_zero_limit", d2 < 1e-6, d2,
                      "e2 at kappa = 1e-8 vs the limit 1/2"});
  }

  // Series/direct agreement of e1, e2 across the handover radius.
  {
    double worst = 0.0;
    for (double r : {3e-3, 6e-3, 1e-2})
      for (double ph : {-0.7, 0.0, 0.7}) {
        const cd kap = std::polar(r, ph);
        const auto a = detail::e12_series(kap);
        const auto b = detail::e12_direct(kap);
        worst = std::max({worst, std::abs(a.e1reg - b.e1reg),
                          std::abs(a.e2 - b.e2)});
      }
    // the direct path loses ~1e-10 to cancellation at the switch radius
    checks.push_back({"e12_branch_agreement", worst < 1e-10, worst,
                      "series vs direct evaluation up to |kappa| = 1e-2"});
  }

  // Pressure kernel: homogeneity of degree -1 and zero circular mean.
  {
    double worst = 0.0;
    cd mean0 = 0.0, mean1 = 0.0;
    for (int i = 0; i < 64; ++i) {
      const double th = 2.0 * std::numbers::pi * i / 64;
      const Vector2d x(std::cos(th), std::sin(th));
      const Vector2d q1 = pressure_kernel(x);
      const Vector2d q2 = pressure_kernel((3.7 * x).eval());
      worst = std::max(worst, (3.7 * q2 - q1).norm());
      mean0 += q1(0);
      mean1 += q1(1);
    }
    worst = std::max({worst, std::abs(mean0) / 64, std::abs(mean1) / 64});
    checks.push_back({"pressure_kernel_structure", worst < 1e-14, worst,
                      "degree -1 homogeneity and zero angular mean"});
  }

  detail::euler_gamma_perturbation = 0.0;

  bool all = true;
  json jchecks = json::array();
  for (const auto& c : checks) {
    all = all && c.pass;
    std::printf("%-28s %s  measure=%.3e  %s\n", c.name.c_str(),
                c.pass ? "PASS" : "FAIL", c.measure, c.note.c_str());
    jchecks.push_back({{"name", c.name},
                       {"pass", c.pass},
                       {"measure", c.measure},
                       {"note", c.note}});
  }
  std::printf("e1 small-kappa limit constant: %s\n", fmt(l1_ref).c_str());
  std::printf("e2 small-kappa limit constant: %s\n", fmt(0.5).c_str());
  if (!opt.out_path.empty()) {
    json summary = {{"command", "kernels-check"},
                    {"gamma_perturbation", gamma_perturbation},
                    {"e1_log_limit", l1_ref},
                    {"e2_zero_limit", 0.5},
                    {"checks", jchecks},
                    {"pass", all}};
    std::ofstream os(opt.out_path);
    os << summary.dump(2) << "\n";
  }
  return all ? 0 : 1;
}

// ---------- shared sweep machinery ----------

struct SweepRow {
  cd lambda;
  double ray = 0.0;
  bool ok = false;
  std::string flag = "ok";
  double sup = 0.0;
  Vector2d argmax = Vector2d::Zero();
  double scale_diag = 0.0;
  cd force0 = 0.0, force1 = 0.0;
  bool has_force = false;
  double condition = 0.0;
  double boundary_residual = 0.0;
};

// max |v| at a few collocation midpoints pushed just outside the uncertified
// band; a cheap proxy for the boundary condition residual
double boundary_residual(const ResolventSolution& sol, int samples = 8) {
  const int n = sol.curve.size();
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int k = (i * n) / samples;
    const double s = 2.0 * std::numbers::pi * (k + 0.5) / n;
    // outward normal at the midpoint from the tangent, oriented to match
    // the nearest nodal normal
    const Vector2d t = sol.curve.velocity(s).normalized();
    Vector2d nrm(t(1), -t(0));
    if (nrm.dot(sol.curve.outward_normal(k)) < 0.0) nrm = -nrm;
    const Vector2d x =
        sol.curve.position(s) + 1.5 * sol.delta_near * nrm;
    worst = std::max(worst, detail::velocity_unchecked(sol, x).norm());
  }
  return worst;
}

// ---------- sweep-lambda ----------

int cmd_sweep_lambda(const Options& opt) {
  const json cfg = load_config(opt);
  const int workers = resolve_workers(opt, cfg);
  const int nodes = resolve_nodes(opt, cfg, 128);
  const double theta = parse_theta(cfg);
  const BoundaryCurve curve = parse_geometry(cfg, nodes);
  const SolenoidalField field = parse_field(
      cfg, curve,
      json{{"kind", "bump"}, {"center", {0.3, 0.2}}, {"r0", 1.5},
           {"r1", 2.5}, {"amplitude", 1.0}});
  const PotentialParams pp =
      parse_potential(cfg, PotentialParams{96, 10, 14, 40.0});

  const json lg = cfg.value("lambda_grid", json::object());
  const int dmin = lg.value("decade_min", -6);
  const int dmax = lg.value("decade_max", 2);
  if (dmin < -8 || dmax > 6 || dmin > dmax)
    throw std::runtime_error("lambda_grid decades must lie in [-8, 6]");
  std::vector<double> rays = lg.value(
      "rays", std::vector<double>{0.0, 0.25 * std::numbers::pi,
                                  -0.25 * std::numbers::pi,
                                  0.375 * std::numbers::pi,
                                  -0.375 * std::numbers::pi});
  for (double r : rays)
    if (!(std::abs(r) < theta + 0.5 * std::numbers::pi))
      throw std::runtime_error("ray angle outside the resolvent sector");
  const json nf = cfg.value("net_force", json::object());
  const bool with_force = nf.value("enabled", false);
  const int angular = cfg.value("eval_grid", json::object())
                          .value("angular", 64);

  std::vector<SweepRow> rows;
  for (double ray : rays)
    for (int d = dmin; d <= dmax; ++d) {
      SweepRow r;
      r.ray = ray;
      r.lambda = std::polar(std::pow(10.0, d), ray);
      rows.push_back(r);
    }

  double fr1 = 0.0, fr2 = 0.0;
  if (with_force) {
    double extent = 0.0;
    for (int k = 0; k < curve.size(); ++k)
      extent = std::max(extent, curve.node(k).norm());
    const double rmin = 1.2 * std::max(field.support_radius(), extent);
    fr1 = nf.value("r1", 1.4 * rmin);
    fr2 = nf.value("r2", 2.0 * rmin);
  }

  parallel_rows(static_cast<int>(rows.size()), workers, [&](int i) {
    SweepRow& r = rows[i];
    try {
      const ResolventSolution sol =
          solve_resolvent(SectorScalar(r.lambda, theta), curve, field, pp);
      const SupEstimate se = estimate_velocity_sup(sol, angular);
      r.sup = se.value;
      r.argmax = se.argmax;
      r.scale_diag = se.scaled_radius;
      r.condition = sol.condition_estimate;
      r.boundary_residual = boundary_residual(sol);
      if (with_force) {
        const NetForce f = net_force(sol, fr1, fr2);
        r.force0 = f.force(0);
        r.force1 = f.force(1);
        r.has_force = true;
      }
      const bool finite =
          std::isfinite(r.sup) && std::isfinite(r.condition) &&
          std::isfinite(r.boundary_residual);
      r.ok = finite;
      if (!finite) r.flag = "non-finite diagnostic";
    } catch (const std::exception& e) {
      r.ok = false;
      r.flag = e.what();
    }
  });

  CsvWriter csv(opt.out_path);
  csv.row({"ray", "lambda", "abs_lambda", "norm_v_sup", "argmax_x0",
           "argmax_x1", "scale_diag", "net_force_0", "net_force_1",
           "condition_estimate", "boundary_residual", "flag"});
  for (const auto& r : rows)
    csv.row({fmt(r.ray), fmt(r.lambda), fmt(std::abs(r.lambda)), fmt(r.sup),
             fmt(r.argmax(0)), fmt(r.argmax(1)), fmt(r.scale_diag),
             r.has_force ? fmt(r.force0) : "", r.has_force ? fmt(r.force1)
                                                           : "",
             fmt(r.condition), fmt(r.boundary_residual), r.flag});

  // measured constant of the resolvent bound, per decade and overall
  std::map<int, double> per_decade;
  double measured_c = 0.0;
  bool all_ok = true;
  for (const auto& r : rows) {
    if (!r.ok) {
      all_ok = false;
      continue;
    }
    const double c = std::abs(r.lambda) * r.sup / field.sup_norm();
    const int d = static_cast<int>(std::lround(std::log10(std::abs(r.lambda))));
    per_decade[d] = std::max(per_decade[d], c);
    measured_c = std::max(measured_c, c);
  }
  // no blow-up toward lambda -> 0: per-decade maxima non-increasing as the
  // decade drops below the largest one
  bool no_blowup = true;
  for (auto it = per_decade.begin(); std::next(it) != per_decade.end(); ++it)
    if (it->first < dmax && it->second > std::next(it)->second * 1.000001)
      no_blowup = false;
  json jd = json::object();
  for (const auto& [d, c] : per_decade) jd[std::to_string(d)] = c;
  write_summary(opt.out_path,
                {{"command", "sweep-lambda"},
                 {"nodes", nodes},
                 {"field_sup", field.sup_norm()},
                 {"measured_C", measured_c},
                 {"per_decade_max", jd},
                 {"no_blowup_toward_zero", no_blowup},
                 {"all_rows_ok", all_ok},
                 {"pass", all_ok && no_blowup && std::isfinite(measured_c)}});
  return all_ok && no_blowup ? 0 : 1;
}

// ---------- net-force ----------

int cmd_net_force(const Options& opt) {
  const json cfg = load_config(opt);
  const int workers = resolve_workers(opt, cfg);
  const int nodes = resolve_nodes(opt, cfg, 128);
  const double theta = parse_theta(cfg);
  json gdflt = {{"kind", "ellipse"}, {"a", 1.6}, {"b", 0.8}};
  json c2 = cfg;
  if (!c2.contains("geometry")) c2["geometry"] = gdflt;
  const BoundaryCurve curve = parse_geometry(c2, nodes);
  const SolenoidalField field = parse_field(
      cfg, curve,
      json{{"kind", "asymptotically_constant"}, {"f_inf", {1.0, 0.0}},
           {"r0", 2.0}, {"r1", 3.5}});
  if (field.f_infinity().norm() == 0.0)
    throw std::runtime_error("net-force needs a field with f_inf != 0");
  const PotentialParams pp = parse_potential(cfg, PotentialParams::fast());
  const int kmin = cfg.value("decade_first", 1);
  const int kmax = cfg.value("decade_last", 6);
  double extent = 0.0;
  for (int k = 0; k < curve.size(); ++k)
    extent = std::max(extent, curve.node(k).norm());
  const double rmin = 1.2 * std::max(field.support_radius(), extent);
  const double r1 = cfg.value("control_r1", 1.4 * rmin);
  const double r2 = cfg.value("control_r2", 2.0 * rmin);

  struct Row {
    double lambda = 0.0;
    bool ok = false;
    std::string flag = "ok";
    cd f0 = 0.0, f1 = 0.0, g0 = 0.0, g1 = 0.0;
    double err = 0.0, angle = 0.0, resid = 0.0;
  };
  std::vector<Row> rows(kmax - kmin + 1);
  const Vector2d finf = field.f_infinity();
  parallel_rows(static_cast<int>(rows.size()), workers, [&](int i) {
    Row& r = rows[i];
    r.lambda = std::pow(10.0, -(kmin + i));
    try {
      const ResolventSolution sol = solve_resolvent(
          SectorScalar(cd(r.lambda, 0.0), theta), curve, field, pp);
      const NetForce nf = net_force(sol, r1, r2);
      r.f0 = nf.force(0);
      r.f1 = nf.force(1);
      r.resid = nf.balance_residual;
      const double scale =
          0.5 * std::log(r.lambda) / (4.0 * std::numbers::pi);
      r.g0 = scale * r.f0;
      r.g1 = scale * r.f1;
      const Vector2d g(r.g0.real(), r.g1.real());
      r.err = std::sqrt(std::norm(r.g0 - cd(finf(0))) +
                        std::norm(r.g1 - cd(finf(1))));
      r.angle = std::atan2(g(0) * finf(1) - g(1) * finf(0),
                           g.dot(finf));
      r.ok = std::isfinite(r.err);
    } catch (const std::exception& e) {
      r.flag = e.what();
    }
  });

  CsvWriter csv(opt.out_path);
  csv.row({"lambda", "force_0", "force_1", "rescaled_0", "rescaled_1",
           "err_vs_f_inf", "angle_vs_f_inf", "balance_residual", "flag"});
  for (const auto& r : rows)
    csv.row({fmt(r.lambda), fmt(r.f0), fmt(r.f1), fmt(r.g0), fmt(r.g1),
             fmt(r.err), fmt(r.angle), fmt(r.resid), r.flag});

  bool all_ok = true, decreasing = true;
  for (size_t i = 0; i < rows.size(); ++i) {
    all_ok = all_ok && rows[i].ok;
    if (i > 0 && rows[i].err >= rows[i - 1].err) decreasing = false;
  }
  const double fmag_first =
      std::sqrt(std::norm(rows.front().f0) + std::norm(rows.front().f1));
  const double fmag_last =
      std::sqrt(std::norm(rows.back().f0) + std::norm(rows.back().f1));
  double fmag_mid = fmag_first;  // |F| at lambda = 1e-2 when present
  for (const auto& r : rows)
    if (std::abs(r.lambda - 1e-2) < 1e-12)
      fmag_mid = std::sqrt(std::norm(r.f0) + std::norm(r.f1));
  const bool angle_ok = std::abs(rows.back().angle) <= 0.2;
  const bool force_vanishes = fmag_last < fmag_mid;
  write_summary(opt.out_path,
                {{"command", "net-force"},
                 {"nodes", nodes},
                 {"control_radii", {r1, r2}},
                 {"err_decreasing", decreasing},
                 {"final_angle", rows.back().angle},
                 {"angle_ok", angle_ok},
                 {"force_magnitude_first", fmag_first},
                 {"force_magnitude_last", fmag_last},
                 {"force_vanishes", force_vanishes},
                 {"all_rows_ok", all_ok},
                 {"pass",
                  all_ok && decreasing && angle_ok && force_vanishes}});
  return all_ok && decreasing && angle_ok && force_vanishes ? 0 : 1;
}

// ---------- paradox ----------

int cmd_paradox(const Options& opt) {
  const json cfg = load_config(opt);
  const int workers = resolve_workers(opt, cfg);
  const int nodes = resolve_nodes(opt, cfg, 128);
  const double theta = parse_theta(cfg);
  const BoundaryCurve curve = parse_geometry(cfg, nodes);
  const SolenoidalField field = parse_field(
      cfg, curve,
      json{{"kind", "bump"}, {"center", {0.3, 0.2}}, {"r0", 1.5},
           {"r1", 2.5}, {"amplitude", 1.0}});
  if (field.f_infinity().norm() != 0.0)
    throw std::runtime_error("paradox needs a compactly supported field");
  const PotentialParams pp = parse_potential(cfg, PotentialParams::fast());
  const json eg = cfg.value("eval_grid", json::object());
  const double w0 = eg.value("window_r0", 1.2);
  const double w1 = eg.value("window_r1", 3.0);
  const int na = eg.value("angular", 48);
  const int nr = eg.value("window_radial", 5);
  const int kmin = cfg.value("decade_first", 1);
  const int kmax = cfg.value("decade_last", 6);

  std::vector<Vector2d> window;
  for (int j = 0; j < nr; ++j) {
    const double r = w0 + (w1 - w0) * j / (nr - 1.0);
    for (int i = 0; i < na; ++i) {
      const double th = 2.0 * std::numbers::pi * i / na;
      window.emplace_back(r * std::cos(th), r * std::sin(th));
    }
  }

  struct Row {
    double lambda = 0.0;
    bool ok = false;
    std::string flag = "ok";
    double sv = 0.0, sg = 0.0, sq = 0.0;
  };
  std::vector<Row> rows(kmax - kmin + 1);
  parallel_rows(static_cast<int>(rows.size()), workers, [&](int i) {
    Row& r = rows[i];
    r.lambda = std::pow(10.0, -(kmin + i));
    try {
      const ResolventSolution sol = solve_resolvent(
          SectorScalar(cd(r.lambda, 0.0), theta), curve, field, pp);
      for (const auto& x : window) {
        if (sol.curve.polygon_distance(x) < sol.delta_near) continue;
        r.sv = std::max(
            r.sv, r.lambda * detail::velocity_unchecked(sol, x).norm());
        r.sg = std::max(
            r.sg, r.lambda * detail::gradient_unchecked(sol, x).norm());
        r.sq = std::max(
            r.sq, r.lambda * std::abs(detail::pressure_unchecked(sol, x)));
      }
      r.ok = std::isfinite(r.sv + r.sg + r.sq);
      if (!r.ok) r.flag = "non-finite window sup";
    } catch (const std::exception& e) {
      r.flag = e.what();
    }
  });

  CsvWriter csv(opt.out_path);
  csv.row({"lambda", "window_sup_lambda_v", "window_sup_lambda_grad_v",
           "window_sup_lambda_q", "flag"});
  for (const auto& r : rows)
    csv.row({fmt(r.lambda), fmt(r.sv), fmt(r.sg), fmt(r.sq), r.flag});

  bool all_ok = true;
  for (const auto& r : rows) all_ok = all_ok && r.ok;
  const Row& first = rows.front();
  const Row& last = rows.back();
  const bool zero_field = field.sup_norm() == 0.0;
  const bool decay =
      zero_field ||
      (last.sv < 0.1 * first.sv && last.sg < 0.1 * first.sg &&
       last.sq < 0.1 * first.sq);
  write_summary(
      opt.out_path,
      {{"command", "paradox"},
       {"nodes", nodes},
       {"window", {w0, w1}},
       {"ratio_v", zero_field ? 0.0 : last.sv / first.sv},
       {"ratio_grad", zero_field ? 0.0 : last.sg / first.sg},
       {"ratio_q", zero_field ? 0.0 : last.sq / first.sq},
       {"all_rows_ok", all_ok},
       {"pass", all_ok && decay}});
  return all_ok && decay ? 0 : 1;
}

// ---------- semigroup ----------

int cmd_semigroup(const Options& opt) {
  const json cfg = load_config(opt);
  const int workers = resolve_workers(opt, cfg);
  const int nodes = resolve_nodes(opt, cfg, 96);
  const double theta = parse_theta(cfg);
  const BoundaryCurve curve = parse_geometry(cfg, nodes);
  const SolenoidalField field = parse_field(
      cfg, curve,
      json{{"kind", "bump"}, {"center", {0.3, 0.2}}, {"r0", 1.5},
           {"r1", 2.5}, {"amplitude", 1.0}});
  const PotentialParams pp = parse_potential(cfg, PotentialParams::fast());
  std::vector<double> times = cfg.value(
      "times", std::vector<double>{1e-3, 1e-1, 1.0, 10.0, 100.0});
  for (double t : times)
    if (!(t >= 1e-3 && t <= 1e3))
      throw std::runtime_error("times must lie in [1e-3, 1e3]");
  const int m = cfg.value("contour_nodes", 24);

  // evaluation points: a near ring around the obstacle plus a window inside
  // the data support
  const json eg = cfg.value("eval_grid", json::object());
  const int na = eg.value("angular", 8);
  double extent = 0.0;
  for (int k = 0; k < curve.size(); ++k)
    extent = std::max(extent, curve.node(k).norm());
  std::vector<Vector2d> grid, window;
  for (double mfac : {1.4, 2.2})
    for (int i = 0; i < na; ++i) {
      const double th = 2.0 * std::numbers::pi * i / na;
      grid.emplace_back(mfac * extent * std::cos(th),
                        mfac * extent * std::sin(th));
    }
  const Vector2d wc = field.compact_center();
  window = {wc + Vector2d(0.45 * field.compact_radius(), 0.0),
            wc - Vector2d(0.0, 0.45 * field.compact_radius()),
            wc + Vector2d(0.0, 0.6 * field.compact_radius())};
  std::vector<Vector2d> all_pts = grid;
  all_pts.insert(all_pts.end(), window.begin(), window.end());

  SemigroupEvaluator ev(curve, field, pp, workers);
  ev.set_theta(theta);

  struct Row {
    double t = 0.0;
    bool ok = false;
    std::string flag = "ok";
    double grid_sup = 0.0, window_sup = 0.0, t_dt = 0.0, gap = 0.0;
  };
  std::vector<Row> rows(times.size());
  // times run serially: the evaluator parallelizes the resolvent solves and
  // sampling internally, and its cache is not thread-safe across rows
  for (size_t i = 0; i < times.size(); ++i) {
    Row& r = rows[i];
    r.t = times[i];
    try {
      const auto res = ev.apply(cd(r.t, 0.0), all_pts, m);
      for (size_t j = 0; j < all_pts.size(); ++j) {
        const double v = res.values[j].norm();
        r.grid_sup = std::max(r.grid_sup, v);
        if (j >= grid.size()) r.window_sup = std::max(r.window_sup, v);
      }
      r.gap = res.refinement_gap;
      // t |d_t S(t) f| from the differentiated contour; the nodes coincide
      // with apply()'s fine contour, so this reuses the caches
      const auto dv = ev.apply_time_derivative(cd(r.t, 0.0), all_pts, 2 * m);
      for (const auto& v : dv) r.t_dt = std::max(r.t_dt, v.norm());
      r.ok = std::isfinite(r.grid_sup + r.window_sup);
      if (!r.ok) r.flag = "non-finite sup";
    } catch (const std::exception& e) {
      r.flag = e.what();
    }
  }

  CsvWriter csv(opt.out_path);
  csv.row({"t", "grid_sup", "window_sup", "t_dt_sup", "refinement_gap",
           "flag"});
  for (const auto& r : rows)
    csv.row({fmt(r.t), fmt(r.grid_sup), fmt(r.window_sup), fmt(r.t_dt),
             fmt(r.gap), r.flag});

  bool all_ok = true;
  double c_measured = 0.0;
  for (const auto& r : rows) {
    all_ok = all_ok && r.ok;
    c_measured = std::max(c_measured, r.grid_sup / field.sup_norm());
  }
  const double wfirst = rows.front().window_sup;
  const double wlast = rows.back().window_sup;
  const bool decay = wlast < 0.05 * wfirst;
  // short-time consistency: S(t)f ~ f deep inside the support for small t
  bool short_time_ok = true;
  double short_time_err = 0.0;
  if (times.front() <= 1e-2) {
    // compare against f at the window points using the first row's values
    // (recomputed here for clarity)
    const auto res = ev.apply(cd(times.front(), 0.0), window, m);
    for (size_t j = 0; j < window.size(); ++j) {
      const Eigen::Vector2d fx = field(window[j]);
      short_time_err = std::max(
          short_time_err, (res.values[j] - fx.cast<cd>()).norm());
    }
    short_time_ok = short_time_err < 0.05 * field.sup_norm();
  }
  write_summary(opt.out_path,
                {{"command", "semigroup"},
                 {"nodes", nodes},
                 {"contour_nodes", m},
                 {"measured_C", c_measured},
                 {"window_first", wfirst},
                 {"window_last", wlast},
                 {"window_decay_ok", decay},
                 {"short_time_error", short_time_err},
                 {"short_time_ok", short_time_ok},
                 {"all_rows_ok", all_ok},
                 {"pass", all_ok && decay && short_time_ok}});
  return all_ok && decay && short_time_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exterior Stokes resolvent and semigroup laboratory"};
  app.require_subcommand(1);

  Options opt;
  double gamma_perturbation = 0.0;

  auto add_common = [&](CLI::App* sub, bool needs_out) {
    sub->add_option("--config", opt.config_path, "JSON config file");
    auto* o = sub->add_option("--out", opt.out_path, "output path");
    if (needs_out) o->required();
    sub->add_option("--workers", opt.workers, "worker thread count");
    sub->add_option("--nodes", opt.nodes, "boundary node count override");
  };

  auto* kc = app.add_subcommand("kernels-check",
                                "special-function invariant suites");
  add_common(kc, false);
  kc->add_option("--perturb-gamma", gamma_perturbation,
                 "negative-control hook: offset the Euler constant");

  auto* sw = app.add_subcommand("sweep-lambda",
                                "resolvent sweep over rays and decades");
  add_common(sw, true);
  auto* nf = app.add_subcommand("net-force",
                                "small-lambda net-force asymptotics");
  add_common(nf, true);
  auto* pd = app.add_subcommand("paradox",
                                "window decay of lambda v, grad, pressure");
  add_common(pd, true);
  auto* sg = app.add_subcommand("semigroup",
                                "semigroup evaluation over a time grid");
  add_common(sg, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (kc->parsed()) return cmd_kernels_check(opt, gamma_perturbation);
    if (sw->parsed()) return cmd_sweep_lambda(opt);
    if (nf->parsed()) return cmd_net_force(opt);
    if (pd->parsed()) return cmd_paradox(opt);
    if (sg->parsed()) return cmd_semigroup(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
