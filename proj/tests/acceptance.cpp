// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Run via ctest (-R acceptance) or directly; expects the CLI binary path in
// BEREZIN_CLI_PATH (injected by the build).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "berezin/harness.hpp"
#include "berezin/rng.hpp"
#include "berezin/serialize.hpp"

#ifdef __unix__
#include <sys/wait.h>
#endif

using namespace berezin;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t criterion_seed_3 = 30003;
constexpr std::uint64_t criterion_seed_4 = 40004;
constexpr std::uint64_t criterion_seed_6 = 60006;
constexpr std::uint64_t criterion_seed_7 = 70007;

int g_failures = 0;

void criterion(int num, bool ok, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %d: %s — %s\n", ok ? "PASS" : "FAIL", num, what.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// 1. Example 3.6 reproduction at dim 64, grid 64x128, within 10 seconds.
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const SpaceSpec space = make_space(SpaceKind::Hardy, 64);
  const GridEval ev(space, make_grid(64, 128, 0.995));
  const BerezinEstimates est = berezin_estimates(example36_operator(space), ev, false);
  const double elapsed = seconds_since(t0);
  const double ber_err = std::abs(est.ber_grid - 0.25);
  const double norm_err = std::abs(est.bernorm_grid * est.bernorm_grid - 0.25);
  criterion(1, ber_err <= 1e-3 && norm_err <= 1e-3 && elapsed <= 10.0,
            "example36 reproduction: ber = bernorm^2 = 1/4",
            fmt("|ber-1/4| = %.2e, |bernorm^2-1/4| = %.2e, %.1f s", ber_err, norm_err,
                elapsed));
}

// 2. Closed-form symbol and kernel action at dim 128 inside |lambda| <= 0.9.
void criterion_2() {
  const SpaceSpec space = make_space(SpaceKind::Hardy, 128);
  const GridEval ev(space, make_grid(64, 128, 0.995));
  const OperatorMatrix a = example36_operator(space);
  double dev_sym = 0.0, dev_act = 0.0;
  for (const PointEval& pe : symbol_field(a, ev)) {
    const double r = std::abs(pe.lambda);
    if (r > 0.9) continue;
    const double closed = r * r * (1.0 - r * r);
    dev_sym = std::max(dev_sym, std::abs(pe.symbol - Complex(closed, 0.0)));
    dev_act = std::max(dev_act,
                       std::abs(pe.kernel_action_norm - r * std::sqrt(1.0 - r * r)));
  }
  criterion(2, dev_sym <= 1e-6 && dev_act <= 1e-6,
            "symbol field matches |z|^2(1-|z|^2) at dim 128",
            fmt("max symbol dev %.2e, max action dev %.2e", dev_sym, dev_act));
}

// 3. Two-path defect identity at every node, 100 seeded operators, dim 32.
void criterion_3() {
  const SpaceSpec space = make_space(SpaceKind::Hardy, 32);
  const GridEval ev(space, make_grid(64, 128, 0.995));
  double worst = 0.0;
  Rng seeds(criterion_seed_3);
  for (int t = 0; t < 100; ++t) {
    const OperatorMatrix a =
        random_operator(space, seeds.next_u64(), 0.2 + 0.02 * t);
    const Eigen::MatrixXcd ak = a.entries * ev.kernel_columns();
    const Eigen::RowVectorXcd syms =
        ev.kernel_columns().conjugate().cwiseProduct(ak).colwise().sum();
    for (int idx = 0; idx < ak.cols(); ++idx) {
      const double n2 = ak.col(idx).squaredNorm();
      const double direct = n2 - std::norm(syms(idx));
      const double residual =
          (ak.col(idx) - syms(idx) * ev.kernel_columns().col(idx)).squaredNorm();
      worst = std::max(worst, std::abs(direct - residual) / (1.0 + n2));
    }
  }
  criterion(3, worst <= 1e-10, "defect identity two-path agreement (dim 32, 100 ops)",
            fmt("worst relative disagreement %.2e", worst));
}

// 4. Order chain with slack >= -1e-9 for 200 seeded operators, dim 32.
void criterion_4() {
  const SpaceSpec space = make_space(SpaceKind::Hardy, 32);
  const GridEval ev(space, make_grid(64, 128, 0.995));
  Rng seeds(criterion_seed_4);
  double min_slack = std::numeric_limits<double>::infinity();
  int failures = 0;
  for (int t = 0; t < 200; ++t) {
    const OperatorMatrix a =
        random_operator(space, seeds.next_u64(), 0.25 + 0.01 * t);
    const InequalityReport rep = check_basic_chain(a, ev, 1e-9);
    min_slack = std::min(min_slack, rep.slack);
    if (!rep.pass) ++failures;
  }
  criterion(4, failures == 0, "order chain ber <= bernorm <= ||A||, ber <= w (200 ops)",
            fmt("failures %.0f, min slack %.2e", static_cast<double>(failures), min_slack));
}

// 5. Full inequality campaigns at defaults: 100 trials per checker, zero
//    non-vacuous failures, >= 50% non-vacuous, five-minute budget.
void criterion_5() {
  const auto t0 = std::chrono::steady_clock::now();
  const SpaceSpec space = make_space(SpaceKind::Hardy, 64);
  const GridEval ev(space, make_grid(64, 128, 0.995));
  CampaignOptions opts;
  opts.trials = 100;
  opts.seed = 42;
  bool ok = true;
  std::string worst;
  for (const std::string& id : known_check_ids()) {
    const CampaignResult res = run_campaign(id, ev, opts);
    const bool enough_real = 2 * res.stats.vacuous <= res.stats.trials;
    if (res.stats.failures > 0 || !enough_real) {
      ok = false;
      worst += " " + id;
    }
  }
  const double elapsed = seconds_since(t0);
  if (elapsed > 300.0) ok = false;
  criterion(5, ok, "campaigns: 23 checkers x 100 trials, zero non-vacuous failures",
            worst.empty() ? fmt("%.0f s (budget 300 s)", elapsed)
                          : "offending checkers:" + worst);
}

// 6. Numerical-radius oracles and the sandwich bound.
void criterion_6() {
  bool ok = true;
  std::string detail;

  const SpaceSpec dim2 = make_space(SpaceKind::Hardy, 2);
  Eigen::MatrixXcd jm(2, 2);
  jm << 0.0, 1.0, 0.0, 0.0;
  const double w_jordan = numerical_radius(from_entries(dim2, jm));
  if (std::abs(w_jordan - 0.5) > 1e-6) {
    ok = false;
    detail += fmt(" jordan w = %.9f;", w_jordan);
  }

  const SpaceSpec space = make_space(SpaceKind::Hardy, 16);
  Rng rng(criterion_seed_6);
  double worst_diag = 0.0;
  for (int t = 0; t < 50; ++t) {
    std::vector<Complex> d;
    double expected = 0.0;
    for (int i = 0; i < space.dim; ++i) {
      d.push_back(rng.cgaussian());
      expected = std::max(expected, std::abs(d.back()));
    }
    worst_diag = std::max(worst_diag,
                          std::abs(numerical_radius(diagonal(space, d)) - expected));
  }
  if (worst_diag > 1e-8) {
    ok = false;
    detail += fmt(" diag dev %.2e;", worst_diag);
  }

  int sandwich_failures = 0;
  for (int t = 0; t < 200; ++t) {
    const OperatorMatrix a =
        random_operator(space, rng.next_u64(), rng.uniform(0.2, 3.0));
    const double w = numerical_radius(a);
    const double n = operator_norm(a);
    if (!(w <= n + 1e-8 && n <= 2.0 * w + 1e-8)) ++sandwich_failures;
  }
  if (sandwich_failures > 0) {
    ok = false;
    detail += fmt(" sandwich failures %.0f;", static_cast<double>(sandwich_failures));
  }
  criterion(6, ok, "numerical-radius oracles (Jordan cell, diagonals, sandwich)",
            ok ? fmt("max diagonal deviation %.2e", worst_diag) : detail);
}

// 7. Finite-model injectivity: sampling rank N^2 for N = 2..8.
void criterion_7() {
  Rng rng(criterion_seed_7);
  bool ok = true;
  std::string detail;
  for (int n = 2; n <= 8; ++n) {
    const SpaceSpec space = make_space(SpaceKind::Hardy, n);
    std::vector<Complex> pts;
    for (int i = 0; i < 4 * n * n; ++i)
      pts.push_back(rng.phase() * rng.uniform(0.0, 0.95));
    const int rank = symbol_injectivity_rank(space, pts);
    if (rank != n * n) {
      ok = false;
      detail += fmt(" N=%.0f rank %.0f;", static_cast<double>(n), static_cast<double>(rank));
    }
  }
  criterion(7, ok, "symbol injectivity rank = N^2 for N in 2..8",
            ok ? "all ranks full" : detail);
}

// 8. Radial defect profile against the independent closed form.
void criterion_8() {
  const SpaceSpec space = make_space(SpaceKind::Hardy, 512);
  const OperatorMatrix a = example36_operator(space);
  const double radii[] = {0.5, 0.9, 0.99};
  const auto profile = radial_defect_profile(a, 0.0, radii);
  bool ok = true;
  std::string detail;
  for (const RadialDefectSample& s : profile) {
    const double sym = s.r * s.r * (1.0 - s.r * s.r);  // direct evaluation
    const double expected = sym - sym * sym;
    if (std::abs(s.defect - expected) > 1e-5) ok = false;
    detail += fmt(" r=%.2f dev %.2e;", s.r, std::abs(s.defect - expected));
  }
  if (std::abs(profile[0].defect - 0.15234375) > 1e-5) ok = false;  // 0.1875 - 0.03515625
  criterion(8, ok, "Englis defect diagnostic matches the closed form", detail);
}

// 9. Byte-identical artifacts for identical configs (timing excluded).
void criterion_9() {
#ifndef __unix__
  criterion(9, false, "determinism", "requires a POSIX shell");
#else
  const fs::path base = fs::temp_directory_path() / "berezin_acceptance_det";
  fs::remove_all(base);
  fs::create_directories(base);
  const std::string args =
      " run --dim 16 --grid 16x32 --trials 5 --suite prop_2_1,thm_3_1,eq_2_35,cor_3_1"
      " --seed 7 --out ";
  bool ok = true;
  std::string detail = "summary + all report files identical";
  for (const char* sub : {"one", "two"}) {
    const std::string cmd = std::string(BEREZIN_CLI_PATH) + args +
                            (base / sub).string() + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    if (rc == -1 || WEXITSTATUS(rc) != 0) {
      ok = false;
      detail = "CLI run failed";
    }
  }
  if (ok) {
    if (slurp(base / "one" / "summary.json") != slurp(base / "two" / "summary.json")) {
      ok = false;
      detail = "summary.json differs";
    }
    for (const auto& entry : fs::directory_iterator(base / "one" / "reports")) {
      const fs::path other = base / "two" / "reports" / entry.path().filename();
      if (slurp(entry.path()) != slurp(other)) {
        ok = false;
        detail = "report " + entry.path().filename().string() + " differs";
      }
    }
  }
  criterion(9, ok, "determinism: identical config, byte-identical artifacts", detail);
#endif
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::printf("%d of 9 criteria failed\n", g_failures);
  return g_failures;
}
