#include "courant/cli.hpp"

#include <omp.h>

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "courant/bounds.hpp"
#include "courant/constants.hpp"
#include "courant/domain.hpp"
#include "courant/error.hpp"
#include "courant/fractals.hpp"
#include "courant/geometry.hpp"
#include "courant/golden.hpp"
#include "courant/spectral.hpp"

namespace courant::cli {

using nlohmann::json;

namespace {

std::string sig15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::validation, "out: cannot write '" + path + "'");
  f << text;
}

void write_json(const json& v, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
      out += "null";
      return;
    }
    std::string t = sig15(d);
    if (t.find_first_of(".e") == std::string::npos) t += ".0";
    out += t;
  } else if (v.is_object() && !v.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (auto it = v.begin(); it != v.end(); ++it, ++i) {
      out += pad + "  " + json(it.key()).dump() + ": ";
      write_json(it.value(), indent + 1, out);
      out += i + 1 < v.size() ? ",\n" : "\n";
    }
    out += pad + "}";
  } else if (v.is_array() && !v.empty()) {
    out += "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      out += pad + "  ";
      write_json(v[i], indent + 1, out);
      out += i + 1 < v.size() ? ",\n" : "\n";
    }
    out += pad + "]";
  } else {
    out += v.dump();
  }
}

std::string dump(const json& doc) {
  std::string out;
  write_json(doc, 0, out);
  return out + "\n";
}

/// JSON to --out with a summary line, or to stdout when no path is given.
void emit(const RunConfig& cfg, const json& doc, std::ostream& out, const std::string& summary) {
  if (cfg.output_path) {
    write_text(*cfg.output_path, dump(doc));
    out << summary << "\n";
  } else {
    out << dump(doc);
  }
}

int report_checks(const std::vector<golden::Check>& checks, std::ostream& out) {
  for (const auto& c : checks) {
    out << "paper-check: " << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << " [" << c.detail << "]";
    out << "\n";
  }
  return golden::all_passed(checks) ? 0 : 1;
}

Domain load_domain(const RunConfig& cfg) {
  if (!cfg.domain_path) fail(ErrorKind::validation, "domain: --domain is required");
  return read_domain(*cfg.domain_path);
}

json bound_report_json(const BoundReport& r) {
  return {{"m", r.m},
          {"volume", r.volume},
          {"gamma", r.gamma},
          {"eps_omega", r.eps_omega},
          {"eps_provenance", r.eps_provenance},
          {"resolution_h", optional_number(r.resolution_h)},
          {"lambda_star", r.lambda_star},
          {"count_star", r.count_star},
          {"threshold_index", r.threshold_index}};
}

int cmd_constants(const RunConfig& cfg, std::ostream& out) {
  const PleijelConstants c = pleijel_constants(cfg.dim);
  const BesselZero z = bessel_zero(cfg.dim / 2.0 - 1.0, 1);
  emit(cfg,
       {{"m", c.m},
        {"omega_m", c.omega_m},
        {"bessel_order", z.order},
        {"bessel_zero", z.value},
        {"lambda1_ball", c.lambda1_ball},
        {"gamma_m", c.gamma_m},
        {"one_minus_gamma", c.one_minus_gamma()}},
       out, "constants: m = " + std::to_string(c.m) + ", gamma_m = " + sig15(c.gamma_m));
  return 0;
}

int cmd_mu(const RunConfig& cfg, std::ostream& out) {
  if (!(cfg.eps_max > 0.0)) fail(ErrorKind::validation, "eps-max: must be positive");
  if (cfg.steps < 1) fail(ErrorKind::validation, "steps: must be at least 1");
  if (!cfg.output_path) fail(ErrorKind::validation, "out: mu writes a CSV file and needs --out");
  const MuFunction f = domain_mu(load_domain(cfg));
  const MuCurve curve = mu_curve(f.mu, f.total, cfg.eps_max, cfg.steps);
  std::ostringstream csv;
  csv << "eps,mu\n";
  for (std::size_t i = 0; i < curve.eps_samples.size(); ++i) {
    csv << sig15(curve.eps_samples[i]) << "," << sig15(curve.mu_values[i]) << "\n";
  }
  write_text(*cfg.output_path, csv.str());
  out << "mu: " << curve.eps_samples.size() << " samples to " << *cfg.output_path;
  if (f.resolution_h) out << " (raster h = " << sig15(*f.resolution_h) << ")";
  out << "\n";
  return 0;
}

int cmd_epsilon(const RunConfig& cfg, std::ostream& out) {
  const Domain d = load_domain(cfg);
  const EpsilonOmega e = domain_epsilon(d);
  emit(cfg,
       {{"m", domain_dimension(d)},
        {"measure", domain_measure(d)},
        {"value", e.value},
        {"threshold", e.threshold},
        {"residual", e.residual},
        {"resolution_h", optional_number(e.resolution_h)},
        {"provenance", e.provenance}},
       out, "epsilon: " + sig15(e.value) + " (" + e.provenance + ")");
  return 0;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  const Domain d = load_domain(cfg);
  const BoundReport r = domain_bound_report(d, cfg.analytic);
  json doc = bound_report_json(r);
  doc["domain_type"] = domain_type(d);
  if (cfg.analytic && (std::holds_alternative<ConvexPolygon>(d) || std::holds_alternative<Disk>(d))) {
    doc["eps_diagnostic"] = domain_epsilon(d).value;  // exact-mu value, for comparison only
  }
  emit(cfg, doc, out, "bounds: lambda_star = " + sig15(r.lambda_star) + ", count_star = " + sig15(r.count_star));
  return cfg.paper_check ? report_checks(golden::check_bounds(d, r, cfg.analytic), out) : 0;
}

int cmd_remainder(const RunConfig& cfg, std::ostream& out) {
  if (!(cfg.lambda > 0.0)) fail(ErrorKind::validation, "lambda: must be positive");
  if (cfg.eps && !(*cfg.eps > 0.0)) fail(ErrorKind::validation, "eps: must be positive");
  const Domain d = load_domain(cfg);
  const MuFunction f = domain_mu(d);
  const RemainderReport r = remainder_upper_bound(domain_dimension(d), domain_measure(d), f.mu, cfg.lambda, cfg.eps,
                                                  exact_counting_function(d, cfg.lambda));
  json doc = {{"lambda", r.lambda},
              {"eps", r.eps},
              {"eps_balanced", r.eps_balanced},
              {"weyl_leading", r.weyl_leading},
              {"exact_count", r.exact_count ? json(*r.exact_count) : json(nullptr)},
              {"remainder", optional_number(r.remainder)},
              {"mu_value", r.mu_value},
              {"upper_bound", r.upper_bound},
              {"resolution_h", optional_number(f.resolution_h)}};
  emit(cfg, doc, out, "remainder: upper bound " + sig15(r.upper_bound));
  return 0;
}

int cmd_fractal(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.output_path) fail(ErrorKind::validation, "out: fractal writes a domain file and needs --out");
  json doc;
  std::string summary;
  std::vector<golden::Check> checks;
  if (cfg.fractal_kind == "snowflake") {
    const SnowflakeSpec spec = build_snowflake(cfg.generations);
    std::optional<RasterDomain> raster;
    if (cfg.raster) raster = domain_raster(spec, *cfg.raster);
    doc = raster ? raster_to_json(*raster) : domain_to_json(spec);
    summary = "fractal snowflake: J = " + std::to_string(spec.generations) + ", " +
              std::to_string(spec.squares.size()) + " squares, measure " + sig15(spec.measure());
    if (raster) summary += ", raster measure " + sig15(raster->measure());
    if (cfg.paper_check) checks = golden::check_snowflake(spec, raster);
  } else if (cfg.fractal_kind == "cubes") {
    const CubeFractalSpec spec = build_cube_fractal(cfg.s, cfg.generations);
    doc = cfg.raster ? raster_to_json(domain_raster(spec, *cfg.raster)) : domain_to_json(spec);
    summary = "fractal cubes: s = " + sig15(spec.s) + ", J = " + std::to_string(spec.generations) + ", " +
              std::to_string(spec.cubes.size()) + " cubes";
    if (cfg.paper_check) checks = golden::check_cubes(spec);
  } else {
    fail(ErrorKind::validation, "kind: fractal kind must be 'snowflake' or 'cubes'");
  }
  write_text(*cfg.output_path, dump(doc));
  out << summary << "\n";
  return cfg.paper_check ? report_checks(checks, out) : 0;
}

SpectrumResult solve(const RunConfig& cfg, const RasterDomain& raster) {
  SpectrumOptions opt;
  opt.seed = cfg.seed;
  return solve_dirichlet_spectrum(raster, cfg.k, opt);
}

std::string sidecar_path(const std::string& out) {
  std::filesystem::path p(out);
  p.replace_extension(".bin");
  return p.string();
}

int cmd_eigen(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.output_path) fail(ErrorKind::validation, "out: eigen writes a spectrum file and needs --out");
  const RasterDomain raster = domain_raster(load_domain(cfg), cfg.h);
  const SpectrumResult sp = solve(cfg, raster);
  static_assert(std::endian::native == std::endian::little, "sidecar is written in native little-endian order");
  const std::string bin = sidecar_path(*cfg.output_path);
  {
    std::ofstream f(bin, std::ios::binary);
    if (!f) fail(ErrorKind::validation, "out: cannot write '" + bin + "'");
    for (int n = 1; n <= sp.size(); ++n) {
      const std::vector<double> g = sp.grid_vector(n);
      f.write(reinterpret_cast<const char*>(g.data()), static_cast<std::streamsize>(g.size() * sizeof(double)));
    }
  }
  const Index3& d = raster.dims();
  json residuals = json::array();
  for (int i = 0; i < sp.size(); ++i) residuals.push_back(sp.residuals[i] / sp.eigenvalues[i]);
  json doc = {{"k", sp.size()},
              {"h", sp.h},
              {"seed", cfg.seed},
              {"eigenvalues", sp.eigenvalues},
              {"relative_residuals", residuals},
              {"cluster_ids", sp.cluster_ids},
              {"eigenvectors",
               {{"file", std::filesystem::path(bin).filename().string()},
                {"dtype", "float64-le"},
                {"order", "row-major"},
                {"shape", {sp.size(), d[1], d[0]}}}},
              {"domain", raster_to_json(raster)}};
  write_text(*cfg.output_path, dump(doc));
  out << "eigen: " << sp.size() << " eigenpairs on " << raster.inside_count() << " cells, lambda_1 = "
      << sig15(sp.eigenvalues[0]) << "\n";
  return 0;
}

std::string list(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const Domain d = load_domain(cfg);
  const RasterDomain raster = domain_raster(d, cfg.h);
  const SpectrumResult sp = solve(cfg, raster);
  const EpsilonOmega e = epsilon_omega(DistanceField(raster), pleijel_constants(2));
  const BoundReport br = make_bound_report(2, raster.measure(), e.value, e.provenance, e.resolution_h);
  const CourantScan scan = courant_sharp_scan(sp, br);

  json records = json::array();
  for (const auto& r : scan.records) {
    records.push_back({{"n", r.n},
                       {"lambda", r.lambda},
                       {"nu", r.nu},
                       {"nu_best", r.nu_best},
                       {"first_of_cluster", r.first_of_cluster},
                       {"courant_sharp", r.courant_sharp}});
  }
  json doc = {{"k", sp.size()},
              {"h", sp.h},
              {"seed", cfg.seed},
              {"bounds", bound_report_json(br)},
              {"rotations_per_cluster", scan.rotations_per_cluster},
              {"sharp_semantics", "witnessed by a computed vector or a random rotation within the cluster; "
                                  "unflagged means not witnessed at this resolution"},
              {"courant_violations", scan.courant_violations},
              {"bounds_dominate", scan.bounds_dominate},
              {"sharp_set", scan.sharp_set},
              {"records", records}};
  const std::string summary = "courant_sharp = " + list(scan.sharp_set);
  if (cfg.output_path) {
    write_text(*cfg.output_path, dump(doc));
  } else {
    out << dump(doc);
  }
  out << summary << "\n";
  return cfg.paper_check ? report_checks(golden::check_verify(d, sp, scan), out) : 0;
}

int cmd_plot(const RunConfig& cfg, std::ostream& out) {
  if (cfg.plot_kind != "nodal") fail(ErrorKind::validation, "kind: only 'plot nodal' is available");
  if (!cfg.spectrum_path) fail(ErrorKind::validation, "spectrum: --spectrum is required");
  if (!cfg.output_path) fail(ErrorKind::validation, "out: plot writes an SVG file and needs --out");
  std::ifstream in(*cfg.spectrum_path);
  if (!in) fail(ErrorKind::validation, "spectrum: cannot open '" + *cfg.spectrum_path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& ex) {
    fail(ErrorKind::validation, std::string("spectrum: not valid JSON: ") + ex.what());
  }
  if (!doc.contains("domain") || !doc.contains("eigenvectors") || !doc.contains("k")) {
    fail(ErrorKind::validation, "spectrum: missing 'domain', 'eigenvectors' or 'k'");
  }
  const Domain dom = domain_from_json(doc.at("domain"));
  const auto* raster = std::get_if<RasterDomain>(&dom);
  if (!raster || raster->dim() != 2) fail(ErrorKind::validation, "spectrum: 'domain' must be a 2-D raster");
  const int k = doc.at("k").get<int>();
  if (cfg.n < 1 || cfg.n > k) fail(ErrorKind::validation, "n: must lie in [1, k]");

  const auto bin = std::filesystem::path(*cfg.spectrum_path).parent_path() /
                   doc.at("eigenvectors").at("file").get<std::string>();
  std::ifstream f(bin, std::ios::binary);
  if (!f) fail(ErrorKind::validation, "spectrum: cannot open eigenvector file '" + bin.string() + "'");
  const std::size_t cells = raster->size();
  std::vector<double> grid(cells);
  f.seekg(static_cast<std::streamoff>((cfg.n - 1) * cells * sizeof(double)));
  f.read(reinterpret_cast<char*>(grid.data()), static_cast<std::streamsize>(cells * sizeof(double)));
  if (!f) fail(ErrorKind::validation, "spectrum: eigenvector file is truncated");

  const LaplacianStencil op = make_laplacian_stencil(*raster);
  std::vector<double> values(op.size());
  for (std::size_t r = 0; r < op.size(); ++r) values[r] = grid[op.cell[r]];
  const NodalDecomposition nd = count_nodal_domains(*raster, op, values);

  const Index3& d = raster->dims();
  const int px = std::max(1, 512 / std::max(d[0], d[1]));
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << d[0] * px << "\" height=\"" << d[1] * px
      << "\" shape-rendering=\"crispEdges\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  for (std::size_t idx = 0; idx < cells; ++idx) {
    if (nd.labels[idx] < 0) continue;
    const Index3 c = raster->coords(idx);
    const int y = d[1] - 1 - c[1];  // SVG y grows downward
    svg << "<rect x=\"" << c[0] * px << "\" y=\"" << y * px << "\" width=\"" << px << "\" height=\"" << px
        << "\" fill=\"" << (grid[idx] > 0.0 ? "#c0392b" : "#2471a3") << "\"/>\n";
  }
  svg << "</svg>\n";
  write_text(*cfg.output_path, svg.str());
  out << "plot nodal: n = " << cfg.n << ", " << nd.domain_count << " nodal domains\n";
  return 0;
}

void apply_thread_cap() {
  if (const char* t = std::getenv("COURANT_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(t, &end, 10);
    if (end == t || *end != '\0' || n < 1) fail(ErrorKind::validation, "COURANT_THREADS: must be a positive integer");
    omp_set_num_threads(static_cast<int>(n));
  }
}

// Lets lengths be written as exact ratios such as 1/162.
const CLI::Validator fraction(
    [](std::string& v) {
      const auto slash = v.find('/');
      if (slash == std::string::npos) return std::string();
      try {
        std::size_t a = 0, b = 0;
        const double num = std::stod(v.substr(0, slash), &a);
        const double den = std::stod(v.substr(slash + 1), &b);
        if (a != slash || b != v.size() - slash - 1 || den == 0.0) return "invalid ratio " + v;
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", num / den);
        v = buf;
      } catch (const std::exception&) {
        return "invalid ratio " + v;
      }
      return std::string();
    },
    "", "ratio");

}  // namespace

std::string to_json_text(const json& doc) { return dump(doc); }

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out) {
  RunConfig cfg;
  CLI::App app{"Courant-sharp eigenvalue bounds and their desk-scale verification", "courant"};
  app.require_subcommand(1);
  std::string domain, output, spectrum;
  double eps = 0.0, raster = 0.0, h = 0.0;

  auto* constants = app.add_subcommand("constants", "Unit-ball volume, ball eigenvalue and Pleijel constant");
  constants->add_option("--dim", cfg.dim, "Dimension m")->required();

  auto* mu = app.add_subcommand("mu", "Sample mu(eps) to a CSV file");
  mu->add_option("--domain", domain)->required();
  mu->add_option("--eps-max", cfg.eps_max)->transform(fraction)->required();
  mu->add_option("--steps", cfg.steps);
  mu->add_option("--out", output)->required();

  auto* epsilon = app.add_subcommand("epsilon", "Critical width eps(Omega)");
  epsilon->add_option("--domain", domain)->required();
  epsilon->add_option("--out", output);

  auto* bounds = app.add_subcommand("bounds", "Courant-sharp eigenvalue and count bounds");
  bounds->add_option("--domain", domain)->required();
  bounds->add_flag("--analytic", cfg.analytic, "Use the analytic lower bound on eps(Omega)");
  bounds->add_flag("--paper-check", cfg.paper_check);
  bounds->add_option("--out", output);

  auto* remainder = app.add_subcommand("remainder", "Upper bound on the Weyl remainder");
  remainder->add_option("--domain", domain)->required();
  remainder->add_option("--lambda", cfg.lambda)->required();
  auto* eps_opt = remainder->add_option("--eps", eps, "Cube side (default: the balancing choice)")->transform(fraction);
  remainder->add_option("--out", output);

  auto* fractal = app.add_subcommand("fractal", "Build a snowflake or cube-fractal domain file");
  fractal->add_option("kind", cfg.fractal_kind, "snowflake | cubes")->required();
  fractal->add_option("--generations", cfg.generations)->required();
  fractal->add_option("--s", cfg.s, "Cube scale factor")->transform(fraction);
  auto* raster_opt = fractal->add_option("--raster", raster, "Emit a raster at this spacing")->transform(fraction);
  fractal->add_option("--out", output)->required();
  fractal->add_flag("--paper-check", cfg.paper_check);

  auto* eigen = app.add_subcommand("eigen", "Lowest Dirichlet eigenpairs on a raster");
  eigen->add_option("--domain", domain)->required();
  eigen->add_option("--k", cfg.k);
  eigen->set_help_flag("--help", "Print this help message and exit");
  auto* eigen_h = eigen->add_option("--h", h, "Grid spacing")->transform(fraction);
  eigen->add_option("--seed", cfg.seed);
  eigen->add_option("--out", output)->required();

  auto* verify = app.add_subcommand("verify", "Courant-sharp scan checked against the bounds");
  verify->add_option("--domain", domain)->required();
  verify->add_option("--k", cfg.k);
  verify->set_help_flag("--help", "Print this help message and exit");
  auto* verify_h = verify->add_option("--h", h, "Grid spacing")->transform(fraction);
  verify->add_option("--seed", cfg.seed);
  verify->add_option("--out", output);
  verify->add_flag("--paper-check", cfg.paper_check);

  auto* plot = app.add_subcommand("plot", "Render a nodal pattern as SVG");
  plot->add_option("kind", cfg.plot_kind, "nodal")->required();
  plot->add_option("--spectrum", spectrum)->required();
  plot->add_option("--n", cfg.n)->required();
  plot->add_option("--out", output)->required();

  std::vector<std::string> argv_store{"courant"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    fail(ErrorKind::validation, e.what());
  }

  const std::pair<CLI::App*, Command> table[] = {
      {constants, Command::constants}, {mu, Command::mu},         {epsilon, Command::epsilon},
      {bounds, Command::bounds},       {remainder, Command::remainder}, {fractal, Command::fractal},
      {eigen, Command::eigen},         {verify, Command::verify}, {plot, Command::plot}};
  for (const auto& [sub, cmd] : table) {
    if (sub->parsed()) cfg.command = cmd;
  }
  if (!domain.empty()) cfg.domain_path = domain;
  if (!output.empty()) cfg.output_path = output;
  if (!spectrum.empty()) cfg.spectrum_path = spectrum;
  if (eps_opt->count()) cfg.eps = eps;
  if (raster_opt->count()) cfg.raster = raster;
  if (eigen_h->count() || verify_h->count()) cfg.h = h;
  if (cfg.h && !(*cfg.h > 0.0)) fail(ErrorKind::validation, "h: must be positive");
  if (cfg.raster && !(*cfg.raster > 0.0)) fail(ErrorKind::validation, "raster: must be positive");
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    apply_thread_cap();
    switch (cfg.command) {
      case Command::constants: return cmd_constants(cfg, out);
      case Command::mu: return cmd_mu(cfg, out);
      case Command::epsilon: return cmd_epsilon(cfg, out);
      case Command::bounds: return cmd_bounds(cfg, out);
      case Command::remainder: return cmd_remainder(cfg, out);
      case Command::fractal: return cmd_fractal(cfg, out);
      case Command::eigen: return cmd_eigen(cfg, out);
      case Command::verify: return cmd_verify(cfg, out);
      case Command::plot: return cmd_plot(cfg, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::numeric || e.kind() == ErrorKind::invariant ? 3 : 2;
  }
  return 2;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> cfg;
  try {
    cfg = parse_args(args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return cfg ? run(*cfg, out, err) : 0;
}

}  // namespace courant::cli
