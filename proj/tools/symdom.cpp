// symdom: numerical toolkit for the geometry of classical bounded symmetric
// domains. Subcommands dispatch to the library; JSON in, CSV/JSON out.

#include <CLI11.hpp>
#include <atomic>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "symdom/automorphisms.hpp"
#include "symdom/io.hpp"
#include "symdom/kobayashi.hpp"
#include "symdom/normal_forms.hpp"
#include "symdom/rescaling.hpp"

using namespace symdom;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitVerdictFail = 2;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  return json::parse(in);
}

json parse_inline(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

/// Data stream selection: file when --output given, else stdout (with the
/// human summary moved to stderr).
struct OutputTarget {
  std::ofstream file;
  bool to_file = false;
  std::ostream& data() { return to_file ? file : std::cout; }
  std::ostream& summary() { return to_file ? std::cout : std::cerr; }
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw std::invalid_argument("cannot open output file: " + path);
      to_file = true;
    }
  }
};

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  if (threads <= 1 || n < 2 * threads) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) body(i);
    });
  for (auto& th : pool) th.join();
}

struct CommonArgs {
  std::string config_path, domain_json, output_path;
  std::uint64_t seed = 0;
  double tol = kRankTol;
  int parallel = 1;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--config", a.config_path, "JSON config file");
  cmd->add_option("--domain", a.domain_json, "inline DomainSpec JSON");
  cmd->add_option("--output", a.output_path, "output file for data");
  cmd->add_option("--seed", a.seed, "RNG seed for randomized sweeps");
  cmd->add_option("--tol", a.tol, "tolerance override");
  cmd->add_option("--parallel", a.parallel, "worker threads for sweeps");
}

DomainSpec domain_from_args(const CommonArgs& a, const json& cfg) {
  if (!a.domain_json.empty())
    return io::domain_from_json(parse_inline(a.domain_json, "--domain"));
  if (cfg.contains("domain")) return io::domain_from_json(cfg.at("domain"));
  throw std::invalid_argument("no domain given (use --domain or a config file)");
}

int cmd_domain_info(const CommonArgs& a) {
  const json cfg = a.config_path.empty() ? json::object() : load_json_file(a.config_path);
  const DomainSpec d = domain_from_args(a, cfg);
  json out;
  out["spec"] = io::domain_to_json(d);
  out["dim"] = d.dim();
  out["rank"] = d.rank();
  out["genus_per_factor"] = d.genus_per_factor();
  out["tube_type"] = d.is_tube();
  OutputTarget target(a.output_path);
  target.summary() << d.describe() << ": dim " << d.dim() << ", rank " << d.rank()
                   << (d.is_tube() ? ", tube type" : ", non-tube type") << "\n";
  target.data() << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_normal_form(const CommonArgs& a, const std::string& vec_json,
                    const std::string& base_json) {
  const json cfg = a.config_path.empty() ? json::object() : load_json_file(a.config_path);
  const DomainSpec d = domain_from_args(a, cfg);
  TangentVector v;
  v.dir = io::cvector_from_json(
      vec_json.empty() ? cfg.at("vector") : parse_inline(vec_json, "--vector"));
  if (!base_json.empty())
    v.base = io::cvector_from_json(parse_inline(base_json, "--base"));
  else if (cfg.contains("base"))
    v.base = io::cvector_from_json(cfg.at("base"));
  else
    v.base = VectorXcd::Zero(d.dim());
  const NormalForm nf = normal_form(d, v, a.tol);
  json out;
  out["values"] = nf.values;
  out["rank"] = nf.rank;
  out["generic"] = (nf.rank == d.rank());
  OutputTarget target(a.output_path);
  target.summary() << "normal form rank " << nf.rank
                   << (nf.rank == d.rank() ? " (generic)" : "") << "\n";
  target.data() << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_heta_eigs(const CommonArgs& a, const std::string& vec_json,
                  const std::string& base_json) {
  const json cfg = a.config_path.empty() ? json::object() : load_json_file(a.config_path);
  const DomainSpec d = domain_from_args(a, cfg);
  TangentVector v;
  v.dir = io::cvector_from_json(
      vec_json.empty() ? cfg.at("vector") : parse_inline(vec_json, "--vector"));
  if (!base_json.empty())
    v.base = io::cvector_from_json(parse_inline(base_json, "--base"));
  else
    v.base = VectorXcd::Zero(d.dim());
  const HEtaForm f = h_eta(d, v);
  json out;
  out["eigenvalues"] = std::vector<double>(
      f.eigenvalues.data(), f.eigenvalues.data() + f.eigenvalues.size());
  OutputTarget target(a.output_path);
  target.summary() << "H_eta spectrum in [" << f.eigenvalues.minCoeff() << ", "
                   << f.eigenvalues.maxCoeff() << "]\n";
  target.data() << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_curvature(const CommonArgs& a, const std::string& base_json,
                  const std::vector<std::string>& vecs, bool with_fd) {
  const json cfg = a.config_path.empty() ? json::object() : load_json_file(a.config_path);
  const DomainSpec d = domain_from_args(a, cfg);
  auto vec = [&](int i, const char* name) {
    if (i < static_cast<int>(vecs.size()) && !vecs[i].empty())
      return io::cvector_from_json(parse_inline(vecs[i], name));
    return io::cvector_from_json(cfg.at(name));
  };
  const VectorXcd alpha = vec(0, "alpha"), beta = vec(1, "beta"),
                  gamma = vec(2, "gamma"), delta = vec(3, "delta");
  DomainPoint base = VectorXcd::Zero(d.dim());
  if (!base_json.empty())
    base = io::cvector_from_json(parse_inline(base_json, "--base"));
  else if (cfg.contains("base"))
    base = io::cvector_from_json(cfg.at("base"));
  const CurvatureValue cv = curvature(d, base, alpha, beta, gamma, delta);
  json out;
  out["value"] = io::complex_to_json(cv.value);
  out["closed_form"] = cv.closed_form;
  if (with_fd) {
    const CurvatureValue fd = curvature_fd(d, base, alpha, beta, gamma, delta);
    out["fd_value"] = io::complex_to_json(fd.value);
    out["fd_abs_diff"] = std::abs(cv.value - fd.value);
  }
  OutputTarget target(a.output_path);
  target.summary() << "R = " << cv.value.real()
                   << (std::abs(cv.value.imag()) > 1e-12 ? " (+imag)" : "") << "\n";
  target.data() << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_curve_profile(const CommonArgs& a) {
  if (a.config_path.empty())
    throw std::invalid_argument("curve-profile requires --config");
  const json cfg = load_json_file(a.config_path);
  io::reject_unknown_keys(cfg, {"curve", "samples", "radial"}, "curve-profile");
  const CurveSpec c = io::curve_from_json(cfg.at("curve"));
  std::vector<Complex> samples;
  if (cfg.contains("samples")) {
    for (const auto& s : cfg.at("samples"))
      samples.push_back(io::complex_from_json(s));
  } else if (cfg.contains("radial")) {
    const json& r = cfg.at("radial");
    io::reject_unknown_keys(r, {"b", "radii"}, "curve-profile radial");
    const Complex b = io::complex_from_json(r.at("b"));
    for (const auto& t : r.at("radii")) samples.push_back(t.get<double>() * b);
  } else {
    throw std::invalid_argument("curve-profile: config needs samples or radial");
  }
  std::vector<CurveProfileRow> rows(samples.size());
  parallel_for(static_cast<int>(samples.size()), a.parallel,
               [&](int i) { rows[i] = curve_profile_at(c, samples[i]); });
  OutputTarget target(a.output_path);
  io::CsvWriter csv(target.data());
  csv.header({"w_re", "w_im", "delta", "lambda", "kappa", "sigma2", "rank"});
  for (const auto& r : rows)
    csv.row_mixed({io::fmt17(r.w.real()), io::fmt17(r.w.imag()),
                   io::fmt17(r.delta), io::fmt17(r.lambda), io::fmt17(r.kappa),
                   io::fmt17(r.sigma2), std::to_string(r.rank)});
  target.summary() << "profiled " << rows.size() << " points on "
                   << c.domain.describe() << "\n";
  return kExitOk;
}

int cmd_rescale(const CommonArgs& a, const std::string& csv_path) {
  if (a.config_path.empty()) throw std::invalid_argument("rescale requires --config");
  const json cfg = load_json_file(a.config_path);
  io::reject_unknown_keys(cfg, {"curve", "b", "steps", "grid_radii"}, "rescale");
  const CurveSpec c = io::curve_from_json(cfg.at("curve"));
  Complex b = c.b0;
  if (cfg.contains("b")) b = io::complex_from_json(cfg.at("b"));
  const int steps = cfg.value("steps", 12);
  const auto grid = default_rescale_grid();
  const auto schedule = default_rescale_schedule(b, steps);
  const RescaleReport rep = rescale_sequence(c, b, schedule, grid);

  OutputTarget target(a.output_path);
  target.data() << io::rescale_report_to_json(rep).dump(2) << "\n";
  if (!csv_path.empty()) {
    std::ofstream csvf(csv_path);
    if (!csvf) throw std::invalid_argument("cannot open csv file: " + csv_path);
    io::CsvWriter csv(csvf);
    std::vector<std::string> head = {"k", "wk_re", "wk_im", "sigma2_0"};
    const std::size_t R = rep.steps.front().nf0.values.size();
    for (std::size_t r = 1; r <= R; ++r) head.push_back("nf_" + std::to_string(r));
    head.push_back("cauchy");
    csv.header(head);
    for (const auto& s : rep.steps) {
      std::vector<std::string> cells = {std::to_string(s.k),
                                        io::fmt17(s.wk.real()),
                                        io::fmt17(s.wk.imag()),
                                        io::fmt17(s.sigma2_0)};
      for (double v : s.nf0.values) cells.push_back(io::fmt17(v));
      cells.push_back(io::fmt17(s.cauchy));
      csv.row_mixed(cells);
    }
  }
  const auto& v = rep.verdicts;
  target.summary() << "rescale: m0 = " << rep.m0 << ", sigma2 limit = "
                   << rep.limit_sigma2 << ", converged = " << v.converged
                   << ", nf const = " << v.nf_grid_constant
                   << ", isometry = " << v.isometry_ok << "\n";
  const bool all_ok = v.converged && v.nf_grid_constant &&
                      v.sigma2_grid_constant && v.isometry_ok &&
                      v.sigma2_matches_boundary && v.m0_consistent;
  return all_ok ? kExitOk : kExitVerdictFail;
}

int cmd_kobayashi_check(const CommonArgs& a, int random_count, bool frame) {
  const json cfg = a.config_path.empty() ? json::object() : load_json_file(a.config_path);
  const DomainSpec d = domain_from_args(a, cfg);
  Rng rng(a.seed);
  std::vector<DomainPoint> pts(random_count);
  for (int i = 0; i < random_count; ++i) pts[i] = sample_interior(d, rng, 0.999);
  std::vector<BoundCheck> checks(random_count);
  parallel_for(random_count, a.parallel,
               [&](int i) { checks[i] = boundary_bound_check(d, pts[i]); });
  int violations = 0;
  OutputTarget target(a.output_path);
  io::CsvWriter csv(target.data());
  csv.header({"lhs", "rhs", "ok"});
  for (const auto& c : checks) {
    if (!c.ok) ++violations;
    csv.row_mixed({io::fmt17(c.lhs), io::fmt17(c.rhs), c.ok ? "1" : "0"});
  }
  int frame_violations = 0;
  if (frame) {
    const double C = calibrate_frame_constant(d);
    Rng rng2(a.seed + 1);
    for (int i = 0; i < 32; ++i) {
      const VectorXcd dir = rng2.gaussian_vector(d.dim());
      const double cross = boundary_crossing_scale(d, dir);
      for (double t : {0.5, 0.9, 0.99, 0.999}) {
        const FrameCheck fc = frame_norm_bound_check(d, (t * cross) * dir, C);
        if (!fc.ok) ++frame_violations;
      }
    }
    target.summary() << "frame-norm checks: " << (frame_violations ? "FAIL" : "ok")
                     << " (C = " << C << ")\n";
  }
  target.summary() << "boundary bound: " << (random_count - violations) << "/"
                   << random_count << " ok on " << d.describe() << "\n";
  return (violations == 0 && frame_violations == 0) ? kExitOk : kExitVerdictFail;
}

int cmd_selftest(const CommonArgs& a) {
  int failures = 0;
  auto expect = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << what << "\n";
    if (!ok) ++failures;
  };
  // Characteristic-vector curvature is -2 across the classical types.
  for (const DomainSpec& d :
       {DomainSpec::type_i(2, 2), DomainSpec::type_iii(2), DomainSpec::type_iv(3)}) {
    VectorXcd v = VectorXcd::Zero(d.dim());
    if (d.kind() == Kind::TypeIV) {
      v[0] = 0.5;
      v[1] = Complex(0.0, 0.5);
    } else {
      v[0] = 1.0;
    }
    const double r = curvature_at_origin(d, v, v, v, v).real();
    expect(std::abs(r + 2.0) < 1e-9, d.describe() + " characteristic curvature -2");
  }
  // Boundary bound on random points.
  Rng rng(a.seed ? a.seed : 7);
  bool bound_ok = true;
  const DomainSpec dd = DomainSpec::type_i(2, 2);
  for (int i = 0; i < 200; ++i)
    bound_ok = bound_ok && boundary_bound_check(dd, sample_interior(dd, rng, 0.999)).ok;
  expect(bound_ok, "Kobayashi boundary bound on I(2,2)");
  // Diagonal disk in the bidisk: curvature -1, totally geodesic.
  CurveSpec diag;
  diag.domain = DomainSpec::polydisk(2);
  diag.coeffs = {{0.0, 1.0}, {0.0, 1.0}};
  diag.b0 = 1.0;
  const double kap = gaussian_curvature(diag, 0.3);
  expect(std::abs(kap + 1.0) < 1e-9, "diagonal bidisk curvature -1");
  expect(std::abs(second_fundamental_norm2(diag, 0.3)) < 1e-9,
         "diagonal bidisk totally geodesic");
  std::cout << (failures ? "selftest: FAILURES\n" : "selftest: all ok\n");
  return failures ? kExitVerdictFail : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symdom: geometry of classical bounded symmetric domains"};
  app.require_subcommand(1);

  CommonArgs a;
  std::string vec_json, base_json, csv_path;
  std::vector<std::string> quad(4);
  int random_count = 100;
  bool frame = false, with_fd = false;

  auto* info = app.add_subcommand("domain-info", "dimensions, rank, genus");
  add_common(info, a);

  auto* nf = app.add_subcommand("normal-form", "normal form of a tangent vector");
  add_common(nf, a);
  nf->add_option("--vector", vec_json, "tangent vector [[re,im],...]");
  nf->add_option("--base", base_json, "base point (default origin)");

  auto* he = app.add_subcommand("heta-eigs", "spectrum of the H_eta form");
  add_common(he, a);
  he->add_option("--vector", vec_json, "eta [[re,im],...]");
  he->add_option("--base", base_json, "base point (default origin)");

  auto* cv = app.add_subcommand("curvature", "curvature R_{a bbar c dbar}");
  add_common(cv, a);
  cv->add_option("--base", base_json, "base point (default origin)");
  cv->add_option("--alpha", quad[0], "vector [[re,im],...]");
  cv->add_option("--beta", quad[1], "vector");
  cv->add_option("--gamma", quad[2], "vector");
  cv->add_option("--delta", quad[3], "vector");
  cv->add_flag("--fd", with_fd, "also run the finite-difference path");

  auto* cp = app.add_subcommand("curve-profile", "lambda/kappa/sigma2 along a curve");
  add_common(cp, a);

  auto* rs = app.add_subcommand("rescale", "rescaling sequence report");
  add_common(rs, a);
  rs->add_option("--csv", csv_path, "also write per-step scalars as CSV");

  auto* kc = app.add_subcommand("kobayashi-check", "boundary-distance inequality sweep");
  add_common(kc, a);
  kc->add_option("--random", random_count, "number of random interior points");
  kc->add_flag("--frame", frame, "also verify the frame-norm bound");

  auto* st = app.add_subcommand("selftest", "condensed verification sweep");
  add_common(st, a);

  CLI11_PARSE(app, argc, argv);

  try {
    if (info->parsed()) return cmd_domain_info(a);
    if (nf->parsed()) return cmd_normal_form(a, vec_json, base_json);
    if (he->parsed()) return cmd_heta_eigs(a, vec_json, base_json);
    if (cv->parsed()) return cmd_curvature(a, base_json, quad, with_fd);
    if (cp->parsed()) return cmd_curve_profile(a);
    if (rs->parsed()) return cmd_rescale(a, csv_path);
    if (kc->parsed()) return cmd_kobayashi_check(a, random_count, frame);
    if (st->parsed()) return cmd_selftest(a);
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
