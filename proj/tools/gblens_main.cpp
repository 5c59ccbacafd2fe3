#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gblens/curvature.hpp"
#include "gblens/gauss_bonnet.hpp"
#include "gblens/geodesic.hpp"
#include "gblens/metric.hpp"
#include "gblens/series.hpp"

namespace {

using namespace gblens;

struct Cell {
  enum Kind { Num, Str, Null } kind = Null;
  double num = 0.0;
  std::string str;

  static Cell number(double v) { return {Num, v, {}}; }
  static Cell text(std::string s) { return {Str, 0.0, std::move(s)}; }
  static Cell null() { return {}; }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i)
        os << ",";
      switch (row[i].kind) {
      case Cell::Num:
        os << fmt_g17(row[i].num);
        break;
      case Cell::Str:
        os << row[i].str;
        break;
      case Cell::Null:
        break;
      }
    }
    os << "\n";
  }
}

void write_json(std::ostream& os, const Table& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      switch (row[i].kind) {
      case Cell::Num:
        obj[t.columns[i]] = row[i].num;
        break;
      case Cell::Str:
        obj[t.columns[i]] = row[i].str;
        break;
      case Cell::Null:
        obj[t.columns[i]] = nullptr;
        break;
      }
    }
    rows.push_back(std::move(obj));
  }
  os << rows.dump(2) << "\n";
}

struct CommonOpts {
  std::string metric;
  double mass = 0.0;
  double spin = 0.0;
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  unsigned max_subdivisions = 15;
  std::string out = "-";
  std::string format = "csv";
  bool arcsec = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool angular) {
  cmd->add_option("--metric", o.metric, "flat, schwarzschild or kerr")
      ->required()
      ->check(CLI::IsMember({"flat", "schwarzschild", "kerr"}));
  cmd->add_option("--mass", o.mass, "mass M in geometrized units")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--spin", o.spin, "spin a, same unit as M")->check(CLI::NonNegativeNumber);
  cmd->add_option("--rel-tol", o.rel_tol, "relative tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--abs-tol", o.abs_tol, "absolute tolerance floor")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-subdivisions", o.max_subdivisions, "quadrature recursion depth");
  cmd->add_option("--out", o.out, "output path, - for stdout");
  cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  if (angular)
    cmd->add_flag("--arcsec", o.arcsec, "report angles in arcseconds instead of radians");
}

MetricId metric_id(const CommonOpts& o) {
  const auto id = metric_from_string(o.metric);
  if (!id)
    throw domain_error("--metric: unknown metric '" + o.metric + "'");
  return *id;
}

// Series references describe the selected metric, so flat drops the mass and
// schwarzschild drops the spin.
SpacetimeParams effective_params(MetricId id, const CommonOpts& o) {
  switch (id) {
  case MetricId::Flat:
    return {0.0, 0.0};
  case MetricId::SchwarzschildOptical:
    return {o.mass, 0.0};
  case MetricId::KerrReducedOptical:
    return {o.mass, o.spin};
  }
  return {0.0, 0.0};
}

QuadratureConfig quad_config(const CommonOpts& o) {
  QuadratureConfig cfg;
  cfg.rel_tol = o.rel_tol;
  cfg.abs_tol = o.abs_tol;
  cfg.max_subdivisions = o.max_subdivisions;
  return cfg;
}

int emit(const CommonOpts& o, const Table& t) {
  if (o.out == "-") {
    if (o.format == "csv")
      write_csv(std::cout, t);
    else
      write_json(std::cout, t);
    return 0;
  }
  std::ofstream file(o.out);
  if (!file)
    throw domain_error("--out: cannot open '" + o.out + "' for writing");
  if (o.format == "csv")
    write_csv(file, t);
  else
    write_json(file, t);
  return 0;
}

const std::vector<std::string> kMethodOrder = {"gauss-bonnet", "shooting", "series",
                                               "riemannian-series"};

std::vector<std::string> parse_methods(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty())
      continue;
    if (std::find(kMethodOrder.begin(), kMethodOrder.end(), item) == kMethodOrder.end())
      throw domain_error("--method: unknown method '" + item + "'");
    if (std::find(out.begin(), out.end(), item) == out.end())
      out.push_back(item);
  }
  if (out.empty())
    throw domain_error("--method: no methods requested");
  return out;
}

DeflectionResult run_method(const std::string& method, MetricId id, const SpacetimeParams& par,
                            double b, OrbitSense sense, const CommonOpts& o) {
  if (method == "gauss-bonnet")
    return deflection_gb(id, par, b, quad_config(o));
  if (method == "shooting") {
    ShootConfig cfg;
    cfg.rel_tol = o.rel_tol;
    cfg.abs_tol = o.abs_tol;
    return shoot_deflection(id, par, b, cfg);
  }
  if (method == "series")
    return series_deflection(par.mass, par.spin, b, sense);
  return riemannian_series_deflection(par.mass, par.spin, b);
}

bool sense_aware(const std::string& method) { return method == "series"; }

int severity(const std::string& status) {
  if (status == "capture")
    return 3;
  if (status == "domain")
    return 2;
  if (status == "tolerance" || status == "convergence")
    return 1;
  return 0;
}

int run_curvature(const CommonOpts& o, const std::vector<double>& rs, double phi) {
  const MetricId id = metric_id(o);
  const SpacetimeParams par{o.mass, o.spin};
  Table t;
  t.columns = {"r", "phi", "K_riemann", "K_liouville", "K_closed_form", "max_pairwise_rel_err"};
  for (double r : rs) {
    const Point p{r, phi};
    const double kr = gauss_curvature(id, par, p);
    const double kl = gauss_curvature_liouville(id, par, p);
    const double kc = closed_form_gauss_curvature(id, par, p);
    const double scale = std::max({std::abs(kr), std::abs(kl), std::abs(kc)});
    const double spread = std::max({std::abs(kr - kl), std::abs(kr - kc), std::abs(kl - kc)});
    const double rel = scale > 1e-300 ? spread / scale : 0.0;
    t.rows.push_back({Cell::number(r), Cell::number(phi), Cell::number(kr), Cell::number(kl),
                      Cell::number(kc), Cell::number(rel)});
  }
  return emit(o, t);
}

int run_deflect(const CommonOpts& o, double b, const std::string& methods_csv,
                const std::string& sense_name) {
  const MetricId id = metric_id(o);
  const SpacetimeParams par = effective_params(id, o);
  const OrbitSense sense =
      sense_name == "pro" ? OrbitSense::Prograde : OrbitSense::Retrograde;
  const double unit = o.arcsec ? arcsec_per_radian : 1.0;

  Table t;
  t.columns = {"metric", "M", "a", "sense", "b", "method", "delta", "error_estimate",
               "evaluations"};
  for (const auto& method : parse_methods(methods_csv)) {
    const DeflectionResult res = run_method(method, id, par, b, sense, o);
    t.rows.push_back({Cell::text(std::string(to_string(id))), Cell::number(par.mass),
                      Cell::number(par.spin),
                      Cell::text(sense_aware(method) ? sense_name : "none"), Cell::number(b),
                      Cell::text(method), Cell::number(res.angle * unit),
                      Cell::number(res.error_estimate * unit),
                      Cell::number(static_cast<double>(res.evaluations))});
  }
  return emit(o, t);
}

int run_sweep(const CommonOpts& o, double b_min, double b_max, unsigned b_points,
              const std::string& b_scale, const std::string& methods_csv,
              const std::string& sense_name) {
  if (!(b_min > 0.0) || !(b_max > b_min))
    throw domain_error("--b-min/--b-max: need 0 < b-min < b-max");
  if (b_points < 2)
    throw domain_error("--b-points: need at least 2 points");
  const MetricId id = metric_id(o);
  const SpacetimeParams par = effective_params(id, o);
  const OrbitSense sense =
      sense_name == "pro" ? OrbitSense::Prograde : OrbitSense::Retrograde;
  const double unit = o.arcsec ? arcsec_per_radian : 1.0;
  const auto methods = parse_methods(methods_csv);

  std::vector<double> grid(b_points);
  for (unsigned i = 0; i < b_points; ++i) {
    const double f = static_cast<double>(i) / (b_points - 1);
    grid[i] = b_scale == "log" ? b_min * std::exp(f * std::log(b_max / b_min))
                               : b_min + f * (b_max - b_min);
  }

  Table t;
  t.columns = {"metric", "M", "a", "sense", "b", "method", "delta", "error_estimate", "status"};
  int exit_code = 0;
  for (double b : grid) {
    for (const auto& method : methods) {
      std::string status = "ok";
      Cell delta = Cell::null();
      Cell err = Cell::null();
      try {
        const DeflectionResult res = run_method(method, id, par, b, sense, o);
        delta = Cell::number(res.angle * unit);
        err = Cell::number(res.error_estimate * unit);
      } catch (const capture_error&) {
        status = "capture";
      } catch (const domain_error&) {
        status = "domain";
      } catch (const tolerance_error&) {
        status = "tolerance";
      } catch (const convergence_error&) {
        status = "convergence";
      }
      exit_code = std::max(exit_code, severity(status));
      t.rows.push_back({Cell::text(std::string(to_string(id))), Cell::number(par.mass),
                        Cell::number(par.spin),
                        Cell::text(sense_aware(method) ? sense_name : "none"), Cell::number(b),
                        Cell::text(method), delta, err, Cell::text(status)});
    }
  }
  emit(o, t);
  return exit_code;
}

int run_gbcheck(const CommonOpts& o, double r_min, double r_max, double phi_min, double phi_max,
                double tol) {
  const MetricId id = metric_id(o);
  const SpacetimeParams par{o.mass, o.spin};
  SectorRegion region;
  region.r_min = r_min;
  region.r_max = r_max;
  region.phi_min = phi_min;
  region.phi_max = phi_max;
  const GaussBonnetBreakdown gb = gb_identity(id, par, region, quad_config(o));

  Table t;
  t.columns = {"metric", "r_min", "r_max", "phi_min", "phi_max", "boundary_integral",
               "area_integral", "corner_sum", "residual"};
  t.rows.push_back({Cell::text(std::string(to_string(id))), Cell::number(r_min),
                    Cell::number(r_max), Cell::number(phi_min), Cell::number(phi_max),
                    Cell::number(gb.boundary_integral), Cell::number(gb.area_integral),
                    Cell::number(gb.corner_sum), Cell::number(gb.residual)});
  emit(o, t);
  // a residual smaller than the quadrature's own error estimate is not
  // evidence, so the certified residual is the larger of the two
  const double certified = std::max(std::abs(gb.residual), gb.error_estimate);
  if (certified > tol) {
    std::cerr << "gbcheck: certified |residual| = " << fmt_g17(certified)
              << " exceeds tolerance " << fmt_g17(tol) << "\n";
    return 1;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Light deflection in static optical geometries"};
  app.require_subcommand(1);

  CommonOpts opts;

  auto* curvature = app.add_subcommand("curvature", "Gauss curvature by three routes");
  std::vector<double> rs;
  double phi = 0.0;
  add_common(curvature, opts, false);
  curvature->add_option("--r", rs, "radii to sample")->required()->expected(-1);
  curvature->add_option("--phi", phi, "angle of the sample points");

  auto* deflect = app.add_subcommand("deflect", "deflection angle for one impact parameter");
  double b = 0.0;
  std::string methods = "gauss-bonnet,shooting,series";
  std::string sense = "retro";
  add_common(deflect, opts, true);
  deflect->add_option("--b", b, "impact parameter")->required()->check(CLI::PositiveNumber);
  deflect->add_option("--method", methods,
                      "comma list of gauss-bonnet, shooting, series, riemannian-series");
  deflect->add_option("--sense", sense, "orbit sense for the series method")
      ->check(CLI::IsMember({"pro", "retro"}));

  auto* sweep = app.add_subcommand("sweep", "deflection over a grid of impact parameters");
  double b_min = 0.0, b_max = 0.0;
  unsigned b_points = 0;
  std::string b_scale = "log";
  add_common(sweep, opts, true);
  sweep->add_option("--b-min", b_min, "smallest impact parameter")->required();
  sweep->add_option("--b-max", b_max, "largest impact parameter")->required();
  sweep->add_option("--b-points", b_points, "grid size, at least 2")->required();
  sweep->add_option("--b-scale", b_scale, "log or lin spacing")
      ->check(CLI::IsMember({"log", "lin"}));
  sweep->add_option("--method", methods,
                    "comma list of gauss-bonnet, shooting, series, riemannian-series");
  sweep->add_option("--sense", sense, "orbit sense for the series method")
      ->check(CLI::IsMember({"pro", "retro"}));

  auto* gbcheck = app.add_subcommand("gbcheck", "Gauss-Bonnet identity residual on a sector");
  double r_min = 0.0, r_max = 0.0, phi_min = 0.0, phi_max = gblens::pi / 2;
  double gb_tol = 1e-6;
  add_common(gbcheck, opts, false);
  gbcheck->add_option("--r-min", r_min, "inner arc radius")->required();
  gbcheck->add_option("--r-max", r_max, "outer arc radius")->required();
  gbcheck->add_option("--phi-min", phi_min, "lower angle");
  gbcheck->add_option("--phi-max", phi_max, "upper angle");
  gbcheck->add_option("--tol", gb_tol, "residual tolerance for the exit code")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(curvature))
      return run_curvature(opts, rs, phi);
    if (app.got_subcommand(deflect))
      return run_deflect(opts, b, methods, sense);
    if (app.got_subcommand(sweep))
      return run_sweep(opts, b_min, b_max, b_points, b_scale, methods, sense);
    return run_gbcheck(opts, r_min, r_max, phi_min, phi_max, gb_tol);
  } catch (const gblens::capture_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const gblens::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const gblens::tolerance_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const gblens::convergence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
