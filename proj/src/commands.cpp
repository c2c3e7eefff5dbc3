#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "cmdnls/diagnostics.hpp"
#include "cmdnls/hardy.hpp"
#include "cmdnls/runner.hpp"

namespace cmdnls {

namespace fs = std::filesystem;

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f) {
  const std::size_t k = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (k <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < k; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

namespace {

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  std::ofstream os(fs::path(cfg.out_dir) / name);
  if (!os) throw std::runtime_error("cannot write " + (fs::path(cfg.out_dir) / name).string());
  os << std::setprecision(17);
  return os;
}

void write_manifest(const RunConfig& cfg, const char* command) {
  auto os = open_out(cfg, "run.json");
  auto j = to_json(cfg);
  j["command"] = command;
  j["seed"] = cfg.seed;
  os << j.dump(2) << '\n';
}

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::runtime_error(std::string("non-finite value in ") + what);
}

std::string zstr(cplx z) {
  std::ostringstream os;
  os << std::setprecision(17) << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << 'i';
  return os.str();
}

DatumResult datum(const RunConfig& cfg, std::ostream& log) {
  auto d = build_datum_checked(cfg.datum, cfg.grid());
  for (const auto& w : d.warnings) log << "warning: " << w << '\n';
  return d;
}

struct SweepPoint {
  double t;
  cplx z;
  double eps;
};

}  // namespace

int cmd_datum_dump(const RunConfig& cfg, std::ostream& log) {
  write_manifest(cfg, "datum-dump");
  const Field u0 = datum(cfg, log).field;
  fs::create_directories(cfg.out_dir);
  write_snapshot((fs::path(cfg.out_dir) / "datum.cmdn").string(), u0, 0.0);
  auto os = open_out(cfg, "datum.csv");
  os << "x,re_u,im_u\n";
  const CVec s = u0.samples();
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (!finite(s[j])) throw std::runtime_error("non-finite datum sample");
    os << u0.grid().x(j) << ',' << s[j].real() << ',' << s[j].imag() << '\n';
  }
  const auto r = invariant_report(u0, 0.0);
  log << std::setprecision(6) << "datum: N=" << cfg.N << " L=" << cfg.L << " i1=" << r.i1 << " i2=" << r.i2
      << " mass_defect=" << r.mass_defect << " leak=" << r.leak << '\n';
  return 0;
}

int cmd_evolve(const RunConfig& cfg, std::ostream& log) {
  write_manifest(cfg, "evolve");
  const Field u0 = datum(cfg, log).field;
  const Trajectory tr = evolve(u0, cfg.solver);
  const fs::path snapdir = fs::path(cfg.out_dir) / "snapshots";
  fs::create_directories(snapdir);
  auto diag = open_out(cfg, "diagnostics.csv");
  auto inv = open_out(cfg, "invariants.csv");
  diag << "t,rhs_norm,leak,i1,i2,mass_defect\n";
  write_report_header(inv);
  std::vector<InvariantReport> reports(tr.snapshots.size());
  std::vector<double> rhs_norms(tr.snapshots.size());
  parallel_for(tr.snapshots.size(), cfg.threads, [&](std::size_t i) {
    reports[i] = invariant_report(tr.snapshots[i].field, tr.snapshots[i].t);
    rhs_norms[i] = l2_norm(rhs(tr.snapshots[i].field, cfg.solver.dealias));
  });
  for (std::size_t i = 0; i < tr.snapshots.size(); ++i) {
    const auto& s = tr.snapshots[i];
    const auto& r = reports[i];
    for (double v : {r.i1, r.i2, r.mass_defect, r.x2_norm, r.leak, r.lb_slack, rhs_norms[i]})
      require_finite(v, "diagnostics");
    std::ostringstream name;
    name << "snap_" << std::setw(6) << std::setfill('0') << i << ".cmdn";
    write_snapshot((snapdir / name.str()).string(), s.field, s.t);
    diag << s.t << ',' << rhs_norms[i] << ',' << r.leak << ',' << r.i1 << ',' << r.i2 << ',' << r.mass_defect
         << '\n';
    write_report_row(inv, r);
  }
  const auto& a = reports.front();
  const auto& b = reports.back();
  log << std::setprecision(6) << "evolve: " << tr.steps.size() << " steps, " << tr.snapshots.size()
      << " snapshots; I1 drift " << std::abs(b.i1 - a.i1) / std::max(a.i1, 1e-300) << ", I2 drift "
      << std::abs(b.i2 - a.i2) / std::max(a.i2, 1e-300) << '\n';
  return 0;
}

int cmd_formula(const RunConfig& cfg, std::ostream& log) {
  write_manifest(cfg, "formula");
  const Field u0 = datum(cfg, log).field;
  std::vector<SweepPoint> pts;
  for (double t : cfg.sweep.t)
    for (cplx z : cfg.sweep.z) pts.push_back({t, z, 1.0});
  std::vector<FormulaValue> vals(pts.size());
  parallel_for(pts.size(), cfg.threads, [&](std::size_t i) {
    const FormulaWorkspace ws(u0, pts[i].t, cfg.formula);
    vals[i] = explicit_eval(ws, UpperHalfPoint(pts[i].z, cfg.formula.z_min));
  });
  auto os = open_out(cfg, "sweep.csv");
  os << "t,re_z,im_z,eps,re_u,im_u,solver_iters,residual\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!finite(vals[i].u)) throw std::runtime_error("non-finite formula value");
    os << pts[i].t << ',' << pts[i].z.real() << ',' << pts[i].z.imag() << ',' << pts[i].eps << ','
       << vals[i].u.real() << ',' << vals[i].u.imag() << ',' << vals[i].iterations << ',' << vals[i].residual
       << '\n';
  }
  log << "formula: " << pts.size() << " points written\n";
  return 0;
}

int cmd_compare(const RunConfig& cfg, std::ostream& log) {
  write_manifest(cfg, "compare");
  const Field u0 = datum(cfg, log).field;
  SolverConfig sc = cfg.solver;
  double tmax = 0.0;
  for (double t : cfg.sweep.t) tmax = std::max(tmax, t);
  sc.t_final = tmax;
  sc.snapshot_times = cfg.sweep.t;
  sc.snapshot_stride = std::max(sc.snapshot_stride, 1);
  const Trajectory tr = evolve(u0, sc);

  std::vector<SweepPoint> pts;
  for (double t : cfg.sweep.t)
    for (cplx z : cfg.sweep.z) pts.push_back({t, z, 1.0});
  std::vector<cplx> f(pts.size()), s(pts.size());
  parallel_for(pts.size(), cfg.threads, [&](std::size_t i) {
    const UpperHalfPoint z(pts[i].z, cfg.formula.z_min);
    const FormulaWorkspace ws(u0, pts[i].t, cfg.formula);
    f[i] = explicit_eval(ws, z).u;
    s[i] = poisson_eval(tr.at(pts[i].t), z);
  });
  auto os = open_out(cfg, "compare.csv");
  os << "t,re_z,im_z,re_formula,im_formula,re_solver,im_solver,abs_err\n";
  double worst = -1.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!finite(f[i]) || !finite(s[i])) throw std::runtime_error("non-finite value in comparison");
    const double e = std::abs(f[i] - s[i]);
    if (e > worst) {
      worst = e;
      arg = i;
    }
    os << pts[i].t << ',' << pts[i].z.real() << ',' << pts[i].z.imag() << ',' << f[i].real() << ','
       << f[i].imag() << ',' << s[i].real() << ',' << s[i].imag() << ',' << e << '\n';
  }
  if (pts.empty()) worst = 0.0;
  auto sum = open_out(cfg, "summary.csv");
  sum << "max_abs_err,argmax_t,argmax_z\n";
  sum << worst << ',' << (pts.empty() ? 0.0 : pts[arg].t) << ',' << (pts.empty() ? "none" : zstr(pts[arg].z))
      << '\n';
  log << std::setprecision(6) << "compare: max_abs_err " << worst << " (gate " << cfg.compare_gate << ")\n";
  return worst <= cfg.compare_gate ? 0 : 3;
}

int cmd_zd(const RunConfig& cfg, std::ostream& log) {
  write_manifest(cfg, "zd");
  const Field u0 = datum(cfg, log).field;
  std::vector<SweepPoint> pts;
  for (double t : cfg.sweep.t)
    for (cplx z : cfg.sweep.z)
      for (double e : cfg.sweep.eps) pts.push_back({t, z, e});
  std::vector<SweepPoint> lims;
  for (double t : cfg.sweep.t)
    for (cplx z : cfg.sweep.z) lims.push_back({t, z, 0.0});

  std::vector<FormulaValue> vals(pts.size());
  std::vector<LimitValue> lv(lims.size());
  parallel_for(pts.size() + lims.size(), cfg.threads, [&](std::size_t i) {
    if (i < pts.size()) {
      const FormulaWorkspace ws(u0, pts[i].t, cfg.formula, pts[i].eps);
      vals[i] = zd_eps_eval(ws, UpperHalfPoint(pts[i].z, cfg.formula.z_min));
    } else {
      const auto& p = lims[i - pts.size()];
      lv[i - pts.size()] = zd_limit_eval(u0, p.t, UpperHalfPoint(p.z, cfg.formula.z_min), cfg.formula);
    }
  });

  auto sw = open_out(cfg, "sweep.csv");
  sw << "t,re_z,im_z,eps,re_u,im_u,solver_iters,residual\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!finite(vals[i].u)) throw std::runtime_error("non-finite formula value");
    sw << pts[i].t << ',' << pts[i].z.real() << ',' << pts[i].z.imag() << ',' << pts[i].eps << ','
       << vals[i].u.real() << ',' << vals[i].u.imag() << ',' << vals[i].iterations << ',' << vals[i].residual
       << '\n';
  }

  auto cv = open_out(cfg, "zd_convergence.csv");
  cv << "t,re_z,im_z,eps,abs_diff_to_limit,rate\n";
  auto lm = open_out(cfg, "zd_limit.csv");
  lm << "t,re_z,im_z,re_limit,im_limit,re_limit_iplus,im_limit_iplus,re_extrapolated,im_extrapolated,"
        "extrapolation_err\n";
  const std::size_t ne = cfg.sweep.eps.size();
  for (std::size_t l = 0; l < lims.size(); ++l) {
    const cplx lim = lv[l].resolvent_route;
    if (!finite(lim) || !finite(lv[l].iplus_route)) throw std::runtime_error("non-finite limit value");
    double prev = 0.0;
    for (std::size_t e = 0; e < ne; ++e) {
      const std::size_t i = l * ne + e;
      const double d = std::abs(vals[i].u - lim);
      double rate = 0.0;
      if (e > 0 && prev > 0.0 && d > 0.0)
        rate = std::log(prev / d) / std::log(cfg.sweep.eps[e - 1] / cfg.sweep.eps[e]);
      cv << lims[l].t << ',' << lims[l].z.real() << ',' << lims[l].z.imag() << ',' << cfg.sweep.eps[e] << ','
         << d << ',' << rate << '\n';
      prev = d;
    }
    // Linear extrapolation eps -> 0 through the two smallest eps values.
    cplx ex = ne ? vals[l * ne + ne - 1].u : lim;
    if (ne >= 2) {
      const double e1 = cfg.sweep.eps[ne - 2], e2 = cfg.sweep.eps[ne - 1];
      const cplx v1 = vals[l * ne + ne - 2].u, v2 = vals[l * ne + ne - 1].u;
      ex = (e1 * v2 - e2 * v1) / (e1 - e2);
    }
    lm << lims[l].t << ',' << lims[l].z.real() << ',' << lims[l].z.imag() << ',' << lim.real() << ','
       << lim.imag() << ',' << lv[l].iplus_route.real() << ',' << lv[l].iplus_route.imag() << ',' << ex.real()
       << ',' << ex.imag() << ',' << std::abs(ex - lim) << '\n';
  }
  log << "zd: " << pts.size() << " eps points, " << lims.size() << " limits\n";
  return 0;
}

}  // namespace cmdnls
