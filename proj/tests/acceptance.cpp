// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "fixtures.hpp"

#include <carbon/analytic.hpp>
#include <carbon/fd_engine.hpp>
#include <carbon/mc_engine.hpp>
#include <carbon/option_pricing.hpp>
#include <carbon/truncation.hpp>

#include <Eigen/LU>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

using namespace carbon;
using namespace carbon::testing;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s  criterion %d: %s | %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const HopfColeParams<double> kHopfCole{2.0, 4.0, 0.02, 100.0};

// Max-norm distance to the closed form on [0.1, 1.6] x [-10, 10] in (tau, x).
double hopf_cole_error(const PriceSurface& s) {
  const GridSpec& g = s.grid();
  double err = 0.0;
  for (int n = 0; n <= g.time_points; ++n) {
    const double tau = g.tau(n);
    if (tau < 0.1 - 1e-12 || tau > 1.6 + 1e-12) continue;
    for (int i = 0; i < g.space_points; ++i)
      if (std::abs(g.x(i)) <= 10.0 + 1e-12)
        err = std::max(err, std::abs(s.node(n, i) - hopf_cole_alpha(kHopfCole, g.horizon - tau, g.x(i))));
  }
  return err;
}

std::size_t clamped_total = 0;

// Stored values; the solver would have thrown on any excursion beyond rounding.
bool surface_in_range(const PriceSurface& s) {
  clamped_total += s.clamped_values;
  return check_max_principle(s);
}

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = diffusion_model();
  const double err = hopf_cole_error(solve_surface(p, grid_for(p, 20.0, 0.02, 100)));
  const double secs = seconds_since(t0);
  report(1, "Hopf-Cole oracle equivalence", err <= 1e-2 * p.penalty && secs <= 60.0,
         fmt("max error %.4f", err) + fmt(" (tol %.2f)", 1e-2 * p.penalty) + fmt(", %.2f s", secs));
}

void criterion_2() {
  const auto p = diffusion_model();
  const Inversion inv = invert_alpha(solve_surface(p, grid_for(p, 20.0, 0.02, 100)), 0.0, 25.0);
  report(2, "at-the-money inversion", std::abs(inv.x + 2.434) <= 0.05, fmt("x = %.5f (target -2.434 +- 0.05)", inv.x));
}

void criterion_3() {
  const auto p = diffusion_model();
  GridSpec g = GridSpec::from_steps(20.0, 0.02, 2.0, 0.025);
  const PriceSurface alpha = solve_surface(p, g);
  const double K = 25.0, a = 25.0;

  bool monotone = true;
  double prev = -INFINITY, pde_first = NAN, pde_last = NAN;
  for (int k = 0; k <= 8; ++k) {
    const double tau = 0.25 * k;
    const double v = price_call(alpha, solve_call_surface(alpha, {K, tau, 0.0}, p), 0.0, a);
    monotone = monotone && v >= prev;
    prev = v;
    if (k == 0) pde_first = v;
    pde_last = v;
  }
  const McEstimate mc0 = price_call_mc(alpha, p, {K, 0.0, 0.0}, a, 10000, 0.02, 20100);
  const McEstimate mcT = price_call_mc(alpha, p, {K, 2.0, 0.0}, a, 10000, 0.02, 20100);
  const double tol = std::max(0.2, mcT.half_width_95);
  const bool ok = pde_first == 0.0 && mc0.mean == 0.0 && std::abs(pde_last - 18.75) <= tol &&
                  std::abs(mcT.mean - 18.75) <= tol && monotone;
  report(3, "call-price endpoints", ok,
         fmt("PDE %.4f -> ", pde_first) + fmt("%.4f; ", pde_last) + fmt("MC %.4f -> ", mc0.mean) +
             fmt("%.4f", mcT.mean) + fmt(" +- %.4f; ", mcT.half_width_95) + fmt("tol %.4f; ", tol) +
             (monotone ? "sweep monotone" : "sweep NOT monotone"));
}

void criterion_4() {
  const auto base = jump_model();
  bool ok = surface_in_range(solve_surface(base, grid_for(base, 30.0, 0.02, 50)));
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> us(0.5, 2.0), uc(0.0, 1.0), um(-1.0, 1.0), usd(0.3, 2.0);
  const double lambdas[] = {0.0, 0.5, 1.0};
  int accepted = 0, tried = 0;
  while (accepted < 20 && tried < 200) {
    ++tried;
    ModelParams p = jump_model();
    p.penalty = tried % 2 ? 1.0 : 100.0;
    p.horizon = 0.5 + uc(rng);
    p.diffusion = Diffusion::constant(us(rng));
    p.abatement = AbatementFunction::linear(uc(rng));
    const double lambda = lambdas[tried % 3];
    if (lambda == 0.0) {
      p.jumps.reset();
    } else {
      p.jumps->intensity = lambda;
      p.jumps->distribution = JumpDistribution::normal(um(rng), usd(rng));
    }
    const GridSpec g = grid_for(p, 10.0, tried % 2 ? 0.05 : 0.02, 25);
    if (!validate(p, g).ok()) continue;
    ok = surface_in_range(solve_surface(p, g)) && ok;
    ++accepted;
  }
  report(4, "discrete maximum principle", ok && accepted == 20,
         "jump example + " + std::to_string(accepted) + " randomized sets (" + std::to_string(tried) +
             " drawn), every value in [0, pi]; " + std::to_string(clamped_total) +
             " rounding-level values (<= 1e-12 pi) clamped");
}

void criterion_5() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = jump_model();
  const GridSpec g20 = grid_for(p, 20.0, 0.02, 50), g30 = grid_for(p, 30.0, 0.02, 50);
  const PriceSurface s20 = solve_surface(p, g20), s30 = solve_surface(p, g30);
  const int shift = (g30.space_points - g20.space_points) / 2;
  double sum = 0.0;
  for (int n = 0; n <= 50; ++n)
    for (int i = 0; i < g20.space_points; ++i) {
      if (std::abs(g20.x(i)) > 11.0 + 1e-12) continue;
      sum += std::abs(s20.node(n, i) - s30.node(n, i + shift));
    }
  const double secs = seconds_since(t0);
  report(5, "truncation-error reproduction", sum <= 1e-6 && secs <= 300.0,
         fmt("L1 node sum %.3e", sum) + fmt(" (cell-weighted %.3e)", sum * g20.dx() * g20.dt()) +
             fmt(", %.2f s", secs));
}

void criterion_6() {
  TruncationInputs in;
  in.growth_a = 1.0;
  in.intensity = 1.0;
  in.jump_second_moment = 1.0;
  in.max_reduction = 1.0;
  in.horizon = 1.0;
  const double l = truncation_radius(in);
  const auto p = jump_model();
  const PriceSurface alpha = solve_surface(p, grid_for(p, 30.0, 0.02, 50));
  const std::size_t n = 10000;
  const std::size_t exits = count_domain_exits(alpha, p, 0.0, 0.0, 1.0, l, n, 0.02, 606);
  const double frac = static_cast<double>(exits) / n;
  const double bound = 0.05 + 3.0 * std::sqrt(0.05 * 0.95 / n);
  const bool ok = std::abs(l - std::sqrt(80.0)) <= 1e-6 && l >= 5.0 && l <= 15.0 && frac <= bound;
  report(6, "truncation radius", ok, fmt("l = %.9f", l) + fmt(", exit fraction %.4f", frac) + fmt(" <= %.4f", bound));
}

void criterion_7() {
  struct Point {
    double t, x, tau;
  };
  bool ok = true;
  std::string detail;
  auto check = [&](const char* label, const ModelParams& p, const PriceSurface& alpha, const Point (&pts)[5]) {
    double worst = 0.0;
    for (const auto& q : pts) {
      const McEstimate e = mc_martingale_check(alpha, p, q.t, q.x, q.tau, 10000, 0.02, 707);
      const double ref = alpha.at(q.t, q.x);
      ok = martingale_consistent(e, ref, p.penalty) && ok;
      worst = std::max(worst, std::abs(e.mean - ref) / (e.half_width_95 + 1e-2 * p.penalty));
    }
    detail += std::string(label) + fmt(" worst |err|/tol %.3f; ", worst);
  };
  const auto pd = diffusion_model();
  const Point dpts[5] = {{0.0, -2.434, 2.0}, {0.5, 0.0, 1.5}, {1.0, 1.5, 2.0}, {0.2, -4.0, 1.0}, {1.5, 0.5, 1.9}};
  check("diffusion", pd, solve_surface(pd, grid_for(pd, 20.0, 0.02, 100)), dpts);
  const auto pj = jump_model();
  const Point jpts[5] = {{0.0, 0.0, 1.0}, {0.2, 0.5, 0.8}, {0.5, -1.0, 1.0}, {0.3, 1.0, 0.9}, {0.6, 0.3, 1.0}};
  check("jump", pj, solve_surface(pj, grid_for(pj, 30.0, 0.02, 50)), jpts);
  report(7, "martingale property", ok, detail);
}

void criterion_8() {
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> u(-1.0, 1.0), extra(0.05, 2.0);
  std::uniform_int_distribution<int> size(1, 200);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int n = size(rng);
    TridiagonalSystem<double> s(n);
    for (int i = 0; i < n; ++i) {
      s.lower(i) = i > 0 ? u(rng) : 0.0;
      s.upper(i) = i + 1 < n ? u(rng) : 0.0;
      s.diag(i) = (u(rng) < 0 ? -1.0 : 1.0) * (std::abs(s.lower(i)) + std::abs(s.upper(i)) + extra(rng));
      s.rhs(i) = 10.0 * u(rng);
    }
    const Eigen::VectorXd dense = s.dense().partialPivLu().solve(s.rhs);
    worst = std::max(worst, (thomas_solve(s) - dense).lpNorm<Eigen::Infinity>());
  }

  bool identity = true, dominant = true;
  std::size_t rows = 0;
  auto scan = [&](const ModelParams& p, const GridSpec& g) {
    const PriceSurface s = solve_surface(p, g);
    const StepAssembler asmb(p, g);
    const double lambda = p.intensity();
    for (int n = 0; n < g.time_points; ++n) {
      const Eigen::VectorXd row = s.level(n).transpose();
      const AssembledStep st = asmb.assemble(n, row, row, p.penalty);
      for (int i = 0; i < g.space_points; ++i, ++rows) {
        const double ulp = std::nextafter(st.G(i), INFINITY) - st.G(i);
        identity = identity && std::abs(st.G(i) - st.F(i) - st.H(i) - lambda) <= 4 * ulp;
      }
      dominant = dominant && st.system.dominance_margin() > 0.0;
    }
  };
  const auto pd = diffusion_model();
  scan(pd, grid_for(pd, 20.0, 0.02, 100));
  const auto pj = jump_model();
  scan(pj, grid_for(pj, 30.0, 0.02, 50));

  report(8, "linear-algebra oracle", worst <= 1e-12 && identity && dominant,
         fmt("Thomas vs dense LU %.2e", worst) + "; " + std::to_string(rows) + " assembled rows, G = F + H + lambda " +
             (identity ? "within 4 ulp" : "VIOLATED") + ", dominance " + (dominant ? "holds" : "VIOLATED"));
}

void criterion_9() {
  const auto p = diffusion_model();
  double prev = INFINITY;
  bool ok = true;
  std::string detail;
  for (double h : {0.04, 0.02, 0.01}) {
    const double err = hopf_cole_error(solve_surface(p, grid_for(p, 20.0, h, static_cast<int>(std::lround(2.0 / h)))));
    ok = ok && err < prev;
    prev = err;
    detail += fmt("h=%.2f: ", h) + fmt("%.4f  ", err);
  }
  report(9, "grid refinement", ok, detail);
}

}  // namespace

int main() {
  void (*criteria[])() = {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                          criterion_6, criterion_7, criterion_8, criterion_9};
  int id = 1;
  for (auto c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      report(id, "exception", false, e.what());
    }
    ++id;
  }
  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
