// hexlat: batch front-end for the lattice dispersive-decay laboratory.
// Subcommands: kernel, decay, fit, phase, curves, certify, newton, dnls,
// report. Exit codes: 0 success, 2 validation error, 3 certification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "hexlat/decay_fit.hpp"
#include "hexlat/dnls.hpp"
#include "hexlat/io.hpp"
#include "hexlat/lattice.hpp"
#include "hexlat/newton_poly.hpp"
#include "hexlat/oscillatory.hpp"
#include "hexlat/phase_geometry.hpp"
#include "hexlat/propagator.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace hexlat;

namespace {

struct Globals {
  int threads = 0;  // 0 -> HEXLAT_THREADS or 1
  std::string out_dir = ".";
  std::uint64_t seed = 12345;
};

json meta_json(const Globals& g) {
  return json{{"seed", g.seed},
              {"threads", thread_count()},
              {"rng", "mt19937_64"}};
}

DispersionSymbol symbol_for(const std::string& name) {
  if (name == "hex") return hex_symbol();
  if (name == "z2") return z2_symbol();
  throw CLI::ValidationError("--lattice must be hex or z2");
}

/// "start:stop:logK" -> K log-spaced points; "start:stop:step" -> arithmetic.
std::vector<double> parse_time_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.size() != 3) {
    throw CLI::ValidationError("time grid must be start:stop:logK or "
                               "start:stop:step");
  }
  const double start = std::stod(parts[0]);
  const double stop = std::stod(parts[1]);
  std::vector<double> times;
  if (parts[2].rfind("log", 0) == 0) {
    const int k = std::stoi(parts[2].substr(3));
    if (k < 2 || !(start > 0.0) || !(stop > start)) {
      throw CLI::ValidationError("bad log time grid");
    }
    for (int i = 0; i < k; ++i) {
      times.push_back(start * std::pow(stop / start, double(i) / (k - 1)));
    }
  } else {
    const double step = std::stod(parts[2]);
    if (!(step > 0.0) || !(stop >= start)) {
      throw CLI::ValidationError("bad arithmetic time grid");
    }
    for (double t = start; t <= stop + 1e-9 * step; t += step) {
      times.push_back(t);
    }
  }
  return times;
}

std::ofstream open_out(const Globals& g, const std::string& name) {
  fs::create_directories(g.out_dir);
  std::ofstream out(fs::path(g.out_dir) / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + name);
  return out;
}

TaylorSupport parse_support(const std::string& spec) {
  // "a,b;a,b;..." with optional third field for the coefficient.
  TaylorSupport support;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    std::stringstream fs_(item);
    std::string f;
    std::vector<std::string> fields;
    while (std::getline(fs_, f, ',')) fields.push_back(f);
    if (fields.size() < 2 || fields.size() > 3) {
      throw CLI::ValidationError("support entries are 'a,b[,coeff]'");
    }
    Monomial m;
    m.a = std::stoll(fields[0]);
    m.b = std::stoll(fields[1]);
    m.coeff = fields.size() == 3 ? std::stod(fields[2]) : 1.0;
    support.monomials.push_back(m);
  }
  if (support.monomials.empty()) {
    throw CLI::ValidationError("empty support");
  }
  return support;
}

std::string case_name(CaseLabel c) {
  switch (c) {
    case CaseLabel::Nondegenerate: return "nondegenerate";
    case CaseLabel::A: return "A";
    case CaseLabel::B: return "B";
    case CaseLabel::C: return "C";
    case CaseLabel::D: return "D";
  }
  return "?";
}

std::string form_name(NormalFormKind f) {
  switch (f) {
    case NormalFormKind::Morse: return "Morse";
    case NormalFormKind::Normal1: return "Normal1";
    case NormalFormKind::Normal2: return "Normal2";
  }
  return "?";
}

json report_json(const SingularityReport& r) {
  json j{{"x", {r.point.x.x, r.point.x.y}},
         {"v", {r.point.v.x, r.point.v.y}},
         {"grad_norm", r.point.grad_norm},
         {"discriminant", r.point.discriminant},
         {"case", case_name(r.case_label)},
         {"normal_form", form_name(r.normal_form)},
         {"coeffs",
          {{"a20", r.a20}, {"a12", r.a12}, {"a03", r.a03}, {"a04", r.a04}}},
         {"beta_num", r.beta.numerator()},
         {"beta_den", r.beta.denominator()},
         {"p", r.p}};
  if (r.has_lambda) j["lambda"] = r.lambda;
  if (r.swapped) j["swapped"] = true;
  return j;
}

// ---------------------------------------------------------------------------

int cmd_kernel(const Globals& g, const std::string& lattice, double t, int n,
               const std::string& sites_spec) {
  const DispersionSymbol sym = symbol_for(lattice);
  const int box = n > 0 ? n : min_box_size(t);
  KernelGrid grid = kernel_fft(sym, box, t);
  const KernelGrid::Sup sup = grid.sup_abs();
  double mass2 = 0.0;
  for (long l1 = -box / 2; l1 < box / 2; ++l1) {
    for (long l2 = -box / 2; l2 < box / 2; ++l2) {
      mass2 += std::norm(grid.at(l1, l2));
    }
  }
  json j{{"meta", meta_json(g)},
         {"lattice", lattice},
         {"t", t},
         {"n", box},
         {"sup_abs", sup.value},
         {"argmax", {sup.l1, sup.l2}},
         {"mass", mass2}};
  json sites = json::array();
  std::stringstream ss(sites_spec);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto comma = item.find(',');
    if (comma == std::string::npos) {
      throw CLI::ValidationError("--sites entries are 'l1,l2'");
    }
    const long l1 = std::stol(item.substr(0, comma));
    const long l2 = std::stol(item.substr(comma + 1));
    const cplx v = grid.at(l1, l2);
    sites.push_back({{"l", {l1, l2}}, {"re", v.real()}, {"im", v.imag()}});
  }
  j["sites"] = sites;
  open_out(g, "kernel.json") << j.dump(2) << '\n';
  std::cout << "kernel: t=" << t << " n=" << box << " sup=" << sup.value
            << " mass=" << mass2 << '\n';
  return 0;
}

int cmd_decay(const Globals& g, const std::string& lattice,
              const std::string& tspec, int nv, bool full_box, int budget,
              const std::string& window, const std::string& method) {
  const DispersionSymbol sym = symbol_for(lattice);
  const std::vector<double> times = parse_time_grid(tspec);
  DecayOptions opt;
  opt.fft_budget = budget;
  opt.full_box_sup = full_box;
  DecaySeries series = decay_series(sym, times, velocity_grid(nv), opt);
  {
    std::ostringstream csv;
    series.write_csv(csv);
    auto out = open_out(g, "decay_" + lattice + ".csv");
    out << csv.str();
  }
  double w0 = times.front(), w1 = times.back();
  if (!window.empty()) {
    const auto colon = window.find(':');
    if (colon == std::string::npos) {
      throw CLI::ValidationError("--window is tmin:tmax");
    }
    w0 = std::stod(window.substr(0, colon));
    w1 = std::stod(window.substr(colon + 1));
  }
  const FitMethod fm =
      method == "direct" ? FitMethod::Direct : FitMethod::DyadicEnvelope;
  const PowerLawFit fit = fit_power_law(series, w0, w1, fm);
  std::ostringstream fj;
  fit.write_json(fj);
  json j = json::parse(fj.str());
  j["meta"] = meta_json(g);
  j["lattice"] = lattice;
  open_out(g, "fit_" + lattice + ".json") << j.dump(2) << '\n';
  std::cout << "decay: " << lattice << " slope=" << fit.slope
            << " r2=" << fit.r_squared << '\n';
  return 0;
}

int cmd_fit(const Globals& g, const std::string& in_csv,
            const std::string& window, const std::string& method) {
  std::ifstream in(in_csv);
  if (!in) throw CLI::ValidationError("cannot open " + in_csv);
  DecaySeries series;
  series.lattice = LatticeKind::HexTriangulation;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
      line.pop_back();
    }
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string f;
    std::vector<std::string> fields;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() < 2) throw CLI::ValidationError("bad CSV row: " + line);
    DecaySample s{std::stod(fields[0]), std::stod(fields[1]), 0, 0,
                  DecayBackend::Fft};
    if (fields.size() >= 4) {
      s.argmax_l1 = std::stol(fields[2]);
      s.argmax_l2 = std::stol(fields[3]);
    }
    series.samples.push_back(s);
  }
  double w0 = series.samples.front().t, w1 = series.samples.back().t;
  if (!window.empty()) {
    const auto colon = window.find(':');
    if (colon == std::string::npos) {
      throw CLI::ValidationError("--window is tmin:tmax");
    }
    w0 = std::stod(window.substr(0, colon));
    w1 = std::stod(window.substr(colon + 1));
  }
  const FitMethod fm =
      method == "direct" ? FitMethod::Direct : FitMethod::DyadicEnvelope;
  const PowerLawFit fit = fit_power_law(series, w0, w1, fm);
  std::ostringstream fj;
  fit.write_json(fj);
  json j = json::parse(fj.str());
  j["meta"] = meta_json(g);
  open_out(g, "fit.json") << j.dump(2) << '\n';
  std::cout << "fit: slope=" << fit.slope << " r2=" << fit.r_squared << '\n';
  return 0;
}

int cmd_phase(const Globals& g, const std::string& lattice, double vx,
              double vy, int grid_seeds, int sweep_n) {
  const DispersionSymbol sym = symbol_for(lattice);
  if (sweep_n > 0) {
    const SweepResult sweep =
        sweep_classification(sym, sweep_n, g.seed, grid_seeds);
    json j{{"meta", meta_json(g)},
           {"n_velocities", sweep_n},
           {"n_reports", sweep.entries.size()},
           {"n_unclassified", sweep.n_unclassified},
           {"worst_beta_num", sweep.worst_beta.numerator()},
           {"worst_beta_den", sweep.worst_beta.denominator()},
           {"worst_p", sweep.worst_p}};
    json entries = json::array();
    for (const SweepEntry& e : sweep.entries) {
      if (e.unclassified) {
        entries.push_back({{"v", {e.v.x, e.v.y}},
                           {"unclassified", true},
                           {"error", e.error}});
      } else {
        entries.push_back(report_json(e.report));
      }
    }
    j["reports"] = entries;
    open_out(g, "sweep.json") << j.dump(2) << '\n';
    std::cout << "phase sweep: " << sweep.entries.size() << " reports, "
              << sweep.n_unclassified << " unclassified, worst beta "
              << sweep.worst_beta.numerator() << '/'
              << sweep.worst_beta.denominator() << '\n';
    return sweep.n_unclassified == 0 ? 0 : 3;
  }
  const Vec2 v{vx, vy};
  json reports = json::array();
  int unclassified = 0;
  for (const CriticalPoint& cp : find_critical_points(sym, v, grid_seeds)) {
    try {
      reports.push_back(report_json(classify_singularity(sym, cp.x, v)));
    } catch (const UnclassifiedError& e) {
      reports.push_back({{"x", {cp.x.x, cp.x.y}},
                         {"unclassified", true},
                         {"error", e.what()}});
      ++unclassified;
    }
  }
  json j{{"meta", meta_json(g)}, {"v", {vx, vy}}, {"reports", reports}};
  open_out(g, "phase.json") << j.dump(2) << '\n';
  std::cout << "phase: v=(" << vx << ',' << vy << ") -> " << reports.size()
            << " critical points, " << unclassified << " unclassified\n";
  return unclassified == 0 ? 0 : 3;
}

int cmd_curves(const Globals& g, const std::string& which, int grid_n) {
  const std::vector<std::pair<std::string, CurveLabel>> all = {
      {"sigma0", CurveLabel::Sigma0},
      {"sigma1_2", CurveLabel::Sigma1_2},
      {"sigma2prime", CurveLabel::Sigma2prime}};
  bool any = false;
  for (const auto& [name, label] : all) {
    if (which != "all" && which != name) continue;
    any = true;
    const CurveSet set = trace_curve(label, grid_n);
    std::ostringstream csv;
    set.write_csv(csv);
    auto out = open_out(g, "curve_" + name + ".csv");
    out << csv.str();
    std::cout << "curves: " << name << " -> " << set.points.size()
              << " points\n";
  }
  if (!any) {
    throw CLI::ValidationError(
        "--curve must be sigma0, sigma1_2, sigma2prime, or all");
  }
  return 0;
}

int cmd_certify(const Globals& g, int grid_n, double eps, bool sabotage) {
  CertifyOptions opt;
  opt.sabotage_f2 = sabotage;
  const CertReport rep = certify_appendix(grid_n, eps, opt);
  std::ostringstream js;
  rep.write_json(js);
  json j = json::parse(js.str());
  j["meta"] = meta_json(g);
  open_out(g, "certify.json") << j.dump(2) << '\n';
  std::cout << "certify: grid=" << grid_n << " eps=" << eps
            << " hits=" << rep.hit_count
            << " max_dist_cells=" << rep.max_hit_distance_cells
            << " pass=" << (rep.pass ? "true" : "false") << '\n';
  if (!rep.pass) {
    std::cout << "CERTIFICATION_FAILED" << '\n';
    return 3;
  }
  return 0;
}

int cmd_newton(const Globals& g, const std::string& support_spec) {
  const TaylorSupport support = parse_support(support_spec);
  const NewtonPolyhedron poly = build_polyhedron(support);
  std::ostringstream js;
  poly.write_json(js);
  json j = json::parse(js.str());
  j["meta"] = meta_json(g);
  open_out(g, "newton.json") << j.dump(2) << '\n';
  const auto bound = varchenko_bound(poly);
  std::cout << "newton: d=" << poly.distance.numerator() << '/'
            << poly.distance.denominator() << " bound=("
            << bound.first.numerator() << '/' << bound.first.denominator()
            << ", " << bound.second << ")\n";
  return 0;
}

int cmd_dnls(const Globals& g, const std::string& lattice, double amp,
             double sigma, double T, double dt, int n, int snap_every,
             double picard_T, int picard_iters) {
  const DispersionSymbol sym = symbol_for(lattice);
  const int box = n > 0 ? n : min_box_size(T);
  const WaveField psi = WaveField::delta(box, amp);
  const DnlsTrajectory traj = evolve_dnls(psi, sym, T, dt, sigma, snap_every);
  {
    std::ostringstream csv;
    traj.write_csv(csv);
    auto out = open_out(g, "dnls.csv");
    out << csv.str();
  }
  json j{{"meta", meta_json(g)},
         {"lattice", lattice},
         {"amp", amp},
         {"sigma", sigma},
         {"T", T},
         {"dt", dt},
         {"n", box},
         {"mass_initial", traj.snapshots.front().mass},
         {"mass_final", traj.snapshots.back().mass},
         {"strichartz_l4l6", strichartz_norm(traj.as_pairs(), 4.0, 6.0)}};
  if (picard_T > 0.0) {
    const int pbox = std::max(min_box_size(picard_T), 128);
    const WaveField ppsi = WaveField::delta(pbox, amp);
    const long steps = std::lround(picard_T / 1e-3);
    const DnlsTrajectory fine = evolve_dnls(
        ppsi, sym, picard_T, picard_T / double(steps), sigma, int(steps));
    const WaveField oracle =
        duhamel_picard(ppsi, sym, picard_T, picard_iters, sigma);
    double diff2 = 0.0;
    const cplx* a = fine.snapshots.back().field.data();
    const cplx* b = oracle.data();
    for (std::size_t q = 0; q < oracle.size(); ++q) {
      diff2 += std::norm(a[q] - b[q]);
    }
    j["picard_l2_diff"] = std::sqrt(diff2);
  }
  open_out(g, "dnls.json") << j.dump(2) << '\n';
  std::cout << "dnls: mass drift "
            << std::abs(traj.snapshots.back().mass -
                        traj.snapshots.front().mass)
            << ", final linf " << traj.snapshots.back().linf << '\n';
  return 0;
}

int cmd_report(const Globals& g) {
  json combined{{"meta", meta_json(g)}};
  json files = json::object();
  for (const char* name : {"kernel.json", "fit_hex.json", "fit_z2.json",
                           "fit.json", "phase.json", "sweep.json",
                           "certify.json", "newton.json", "dnls.json"}) {
    const fs::path p = fs::path(g.out_dir) / name;
    if (!fs::exists(p)) continue;
    std::ifstream in(p);
    try {
      files[name] = json::parse(in);
    } catch (const json::parse_error&) {
      files[name] = {{"error", "unparseable"}};
    }
  }
  combined["artifacts"] = files;
  open_out(g, "report.json") << combined.dump(2) << '\n';
  std::cout << "report: " << files.size() << " artifacts collected\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hexlat: discrete Schrodinger dispersive-decay laboratory"};
  app.set_config("--config", "", "declarative key-value config; flags override");
  app.require_subcommand(1);
  app.fallthrough();  // let --out/--threads/--seed appear after the subcommand

  Globals g;
  app.add_option("--threads", g.threads, "worker threads (default HEXLAT_THREADS or 1)");
  app.add_option("--out", g.out_dir, "output directory")->capture_default_str();
  app.add_option("--seed", g.seed, "RNG seed (mt19937_64)")->capture_default_str();

  std::string lattice = "hex";
  double t = 1.0;
  int n = 0;
  std::string sites = "0,0";
  auto* kernel = app.add_subcommand("kernel", "FFT kernel snapshot");
  kernel->add_option("--lattice", lattice, "hex or z2")->capture_default_str();
  kernel->add_option("--t", t, "time")->capture_default_str();
  kernel->add_option("--n", n, "box side (default min_box_size)");
  kernel->add_option("--sites", sites, "sites 'l1,l2;l1,l2'")->capture_default_str();

  std::string tspec = "20:200:log16";
  int nv = 41;
  bool full_box = false;
  int budget = 4096;
  std::string window, method = "dyadic_envelope";
  auto* decay = app.add_subcommand("decay", "decay series + power-law fit");
  decay->add_option("--lattice", lattice, "hex or z2")->capture_default_str();
  decay->add_option("--t", tspec, "time grid start:stop:logK|start:stop:step")->capture_default_str();
  decay->add_option("--vgrid", nv, "velocity grid side")->capture_default_str();
  decay->add_flag("--full-box-sup", full_box, "sup over the whole box (FFT backend)");
  decay->add_option("--fft-budget", budget, "largest FFT box")->capture_default_str();
  decay->add_option("--window", window, "fit window tmin:tmax (default full)");
  decay->add_option("--method", method, "direct or dyadic_envelope")->capture_default_str();

  std::string in_csv;
  auto* fit = app.add_subcommand("fit", "power-law fit of an existing CSV");
  fit->add_option("--in", in_csv, "decay CSV path")->required();
  fit->add_option("--window", window, "fit window tmin:tmax");
  fit->add_option("--method", method, "direct or dyadic_envelope")->capture_default_str();

  double vx = 0.0, vy = 0.0;
  int grid_seeds = 24, sweep_n = 0;
  auto* phase = app.add_subcommand("phase", "critical points + classification");
  phase->add_option("--lattice", lattice, "hex or z2")->capture_default_str();
  phase->add_option("--vx", vx, "velocity x")->capture_default_str();
  phase->add_option("--vy", vy, "velocity y")->capture_default_str();
  phase->add_option("--grid-seeds", grid_seeds, "Newton seeds per axis")->capture_default_str();
  phase->add_option("--sweep", sweep_n, "classification sweep over N velocities");

  std::string which = "all";
  int curve_grid = 512;
  auto* curves = app.add_subcommand("curves", "Sigma curve extraction");
  curves->add_option("--curve", which, "sigma0|sigma1_2|sigma2prime|all")->capture_default_str();
  curves->add_option("--grid", curve_grid, "marching-squares grid")->capture_default_str();

  int cert_grid = 2048;
  double eps = 1e-3;
  bool sabotage = false;
  auto* certify = app.add_subcommand("certify", "Appendix intersection certification");
  certify->add_option("--grid", cert_grid, "scan resolution")->capture_default_str();
  certify->add_option("--eps", eps, "residual tolerance")->capture_default_str();
  certify->add_flag("--sabotage", sabotage, "negative control (second curve replaced by the first)");

  std::string support_spec = "2,0;1,2;0,4";
  auto* newton = app.add_subcommand("newton", "Newton polyhedron + Varchenko bound");
  newton->add_option("--support", support_spec, "monomials 'a,b[,coeff];...'")->capture_default_str();

  double amp = 0.01, sigma = 2.0, T = 50.0, dt = 0.1;
  int dnls_n = 0, snap_every = 10;
  double picard_T = 0.0;
  int picard_iters = 8;
  auto* dnls = app.add_subcommand("dnls", "nonlinear evolution (Strang splitting)");
  dnls->add_option("--lattice", lattice, "hex or z2")->capture_default_str();
  dnls->add_option("--amp", amp, "delta amplitude")->capture_default_str();
  dnls->add_option("--sigma", sigma, "nonlinearity power sigma")->capture_default_str();
  dnls->add_option("--T", T, "horizon")->capture_default_str();
  dnls->add_option("--dt", dt, "time step")->capture_default_str();
  dnls->add_option("--n", dnls_n, "box side (default min_box_size)");
  dnls->add_option("--snap-every", snap_every, "steps between snapshots")->capture_default_str();
  dnls->add_option("--picard-T", picard_T, "cross-check horizon for the Picard oracle (0 = off)");
  dnls->add_option("--picard-iters", picard_iters, "Picard iterations")->capture_default_str();

  auto* report = app.add_subcommand("report", "collect JSON artifacts in --out");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints usage text
    return 2;
  }
  if (g.threads > 0) set_thread_count(g.threads);

  try {
    if (kernel->parsed()) return cmd_kernel(g, lattice, t, n, sites);
    if (decay->parsed())
      return cmd_decay(g, lattice, tspec, nv, full_box, budget, window, method);
    if (fit->parsed()) return cmd_fit(g, in_csv, window, method);
    if (phase->parsed())
      return cmd_phase(g, lattice, vx, vy, grid_seeds, sweep_n);
    if (curves->parsed()) return cmd_curves(g, which, curve_grid);
    if (certify->parsed()) return cmd_certify(g, cert_grid, eps, sabotage);
    if (newton->parsed()) return cmd_newton(g, support_spec);
    if (dnls->parsed())
      return cmd_dnls(g, lattice, amp, sigma, T, dt, dnls_n, snap_every,
                      picard_T, picard_iters);
    if (report->parsed()) return cmd_report(g);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
