// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Tolerances are fixed here.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qcorr/density_matrix.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/model.hpp"
#include "qcorr/sweep.hpp"
#include "../test_support.hpp"

#ifndef QCORR_CLI_PATH
#error "QCORR_CLI_PATH must point at the qcorr executable"
#endif

using namespace qcorr;
using namespace qcorr::testing;

namespace {

constexpr int kDraws = 200;
constexpr std::uint64_t kSeed = 42;

constexpr int kBruteResolution = 10000;
constexpr double kBruteTol = 1e-4;
constexpr double kClosedTol = 1e-10;
constexpr double kOffDiagTol = 1e-12;
constexpr double kAnchorTol = 1e-12;
constexpr double kPlateauTol = 1e-6;
constexpr double kHighTempMax = 1e-2;
constexpr double kSaturationMin = 0.99;
constexpr double kSandwichTol = 1e-10;
constexpr double kOrderingTol = 1e-10;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-12;
constexpr double kCommutatorTol = 1e-10;
constexpr double kSpectrumTol = 1e-10;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

struct DrawData {
  ModelParams params;
  DensityMatrix rho;
  RealSymmetric3 w;
  RealSymmetric3 m;
  double lqfi = 0.0;
  double lqu = 0.0;
  XStateElements closed;
};

std::vector<DrawData> evaluate_draws() {
  std::vector<DrawData> out;
  for (const ModelParams& p : random_draws(kDraws, kSeed)) {
    DensityMatrix rho = thermal_state(p);
    const MeasureResult q = lqfi(rho);
    const MeasureResult u = lqu(rho);
    out.push_back({p, rho, *q.matrix, *u.matrix, q.value, u.value, closed_form_elements(p)});
  }
  return out;
}

double off_diagonal(const RealSymmetric3& a) {
  return std::max({std::abs(a(0, 1)), std::abs(a(0, 2)), std::abs(a(1, 2))});
}

Outcome oracle_equivalence(const std::vector<DrawData>& draws) {
  double worst_q = 0.0, worst_u = 0.0;
  for (const DrawData& d : draws) {
    worst_q = std::max(worst_q, std::abs(d.lqfi - brute_force_min(d.rho, Measure::fisher, kBruteResolution).value));
    worst_u = std::max(worst_u, std::abs(d.lqu - brute_force_min(d.rho, Measure::skew, kBruteResolution).value));
  }
  return {worst_q <= kBruteTol && worst_u <= kBruteTol,
          fmt("worst |lqfi-brute|=%.2e, |lqu-brute|=%.2e", worst_q, worst_u) + fmt(" tol=%.0e", kBruteTol)};
}

// Literal reading: closed forms equal the diagonal of W and M in the
// computational basis, off-diagonals vanish.
Outcome closed_form_literal(const std::vector<DrawData>& draws) {
  double worst_diag = 0.0, worst_off = 0.0;
  for (const DrawData& d : draws) {
    const auto cw = closed_form_w_diag(d.closed);
    const auto cm = closed_form_m_diag(d.closed);
    for (int i = 0; i < 3; ++i) {
      worst_diag = std::max({worst_diag, std::abs(d.w(i, i) - cw[i]), std::abs(d.m(i, i) - cm[i])});
    }
    worst_off = std::max({worst_off, off_diagonal(d.w), off_diagonal(d.m)});
  }
  return {worst_diag <= kClosedTol && worst_off <= kOffDiagTol,
          fmt("worst diag dev=%.2e (tol 1e-10), worst off-diag=%.2e (tol 1e-12)", worst_diag, worst_off)};
}

// Frame-invariant reading: closed forms are the eigenvalues of W and M, the
// z axis decouples, and after the local z rotation that makes v real and
// positive both matrices are diagonal with exactly the closed-form entries.
Outcome closed_form_invariant(const std::vector<DrawData>& draws) {
  double worst_eig = 0.0, worst_block = 0.0, worst_frame = 0.0;
  for (const DrawData& d : draws) {
    auto cw = closed_form_w_diag(d.closed);
    auto cm = closed_form_m_diag(d.closed);
    const auto w_can = lqfi_matrix(conjugate(d.rho, canonical_x_frame(d.closed.v)));
    const auto m_can = lqu_matrix(conjugate(d.rho, canonical_x_frame(d.closed.v)));
    for (int i = 0; i < 3; ++i) {
      worst_frame = std::max({worst_frame, std::abs(w_can(i, i) - cw[i]), std::abs(m_can(i, i) - cm[i])});
    }
    worst_block = std::max({worst_block, off_diagonal(w_can), off_diagonal(m_can), std::abs(d.w(0, 2)),
                            std::abs(d.w(1, 2)), std::abs(d.m(0, 2)), std::abs(d.m(1, 2))});
    std::sort(cw.begin(), cw.end());
    std::sort(cm.begin(), cm.end());
    const auto ew = jacobi3(d.w.entries()).values;
    const auto em = jacobi3(d.m.entries()).values;
    for (int i = 0; i < 3; ++i) {
      worst_eig = std::max({worst_eig, std::abs(ew[i] - cw[i]), std::abs(em[i] - cm[i])});
    }
  }
  const double worst_closed = std::max(worst_eig, worst_frame);
  return {worst_closed <= kClosedTol && worst_block <= kOffDiagTol,
          fmt("worst eigenvalue/frame dev=%.2e (tol 1e-10), worst off-diag=%.2e (tol 1e-12)", worst_closed,
              worst_block)};
}

Outcome anchors() {
  double worst = 0.0;
  const auto check = [&](const DensityMatrix& rho, double expected) {
    worst = std::max({worst, std::abs(lqfi(rho).value - expected), std::abs(lqu(rho).value - expected)});
  };
  check(DensityMatrix::maximally_mixed(), 0.0);
  for (int k = 0; k < 4; ++k) check(bell_state(k), 1.0);
  check(product_00(), 0.0);
  return {worst <= kAnchorTol, fmt("worst dev=%.2e tol=%.0e", worst, kAnchorTol)};
}

Outcome plateau() {
  const double cold = lqfi(thermal_state(fig1_params(0.2, 0.02))).value;
  double worst_rise = 0.0;
  double prev = lqfi(thermal_state(fig1_params(0.2, 0.5))).value;
  for (int k = 2; k <= 10; ++k) {
    const double cur = lqfi(thermal_state(fig1_params(0.2, 0.5 * k))).value;
    worst_rise = std::max(worst_rise, cur - prev);
    prev = cur;
  }
  return {cold >= 1.0 - kPlateauTol && worst_rise <= 0.0,
          fmt("lqfi(T=0.02)=%.12f, largest rise on T=0.5..5: %.2e", cold, worst_rise)};
}

Outcome high_temperature() {
  const DensityMatrix rho = thermal_state(fig1_params(0.2, 50.0));
  const double q = lqfi(rho).value;
  const double u = lqu(rho).value;
  return {q <= kHighTempMax && u <= kHighTempMax, fmt("lqfi(T=50)=%.3e, lqu(T=50)=%.3e", q, u)};
}

Outcome dm_saturation() {
  double worst_drop_q = 0.0, worst_drop_u = 0.0;
  double prev_q = 0.0, prev_u = 0.0;
  double last_q = 0.0, last_u = 0.0;
  constexpr int kPoints = 50;
  for (int i = 0; i < kPoints; ++i) {
    const double dz = 20.0 * i / (kPoints - 1);
    const DensityMatrix rho = thermal_state(ModelParams{.jx = -1.0, .jy = -1.0, .jz = 0.2, .dz = dz, .temp = 1.0});
    last_q = lqfi(rho).value;
    last_u = lqu(rho).value;
    if (i > 0) {
      worst_drop_q = std::max(worst_drop_q, prev_q - last_q);
      worst_drop_u = std::max(worst_drop_u, prev_u - last_u);
    }
    prev_q = last_q;
    prev_u = last_u;
  }
  const bool ok = last_q > kSaturationMin && last_u > kSaturationMin && worst_drop_q <= 0.0 && worst_drop_u <= 0.0;
  return {ok, fmt("lqfi(Dz=20)=%.9f, lqu(Dz=20)=%.9f", last_q, last_u) +
                  fmt(", largest drop lqfi=%.2e lqu=%.2e", worst_drop_q, worst_drop_u)};
}

Outcome sandwich(const std::vector<DrawData>& draws) {
  double worst_lower = -1.0, worst_upper = -1.0, worst_order = -1.0;
  for (const DrawData& d : draws) {
    worst_lower = std::max(worst_lower, d.lqu - d.lqfi);
    worst_upper = std::max(worst_upper, d.lqfi - 2.0 * d.lqu);
    std::array<std::array<double, 3>, 3> diff{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) diff[i][j] = d.m(i, j) - d.w(i, j);
    worst_order = std::max(worst_order, -jacobi3(diff).values[0]);
  }
  const bool ok = worst_lower <= 0.0 && worst_upper <= kSandwichTol && worst_order <= kOrderingTol;
  return {ok, fmt("max(lqu-lqfi)=%.2e, max(lqfi-2lqu)=%.2e", worst_lower, worst_upper) +
                  fmt(", max(-min eig(M-W))=%.2e", worst_order)};
}

Outcome thermal_integrity(const std::vector<DrawData>& draws) {
  double trace = 0.0, psd = 0.0, comm = 0.0, spec = 0.0;
  for (const DrawData& d : draws) {
    const ComplexMatrix r = d.rho.matrix().matrix();
    const ComplexMatrix h = hamiltonian(d.params).matrix();
    trace = std::max(trace, std::abs(r.trace().real() - 1.0));
    const auto eig = eigh(d.rho.matrix()).values;
    psd = std::max(psd, -eig[0]);
    comm = std::max(comm, (r * h - h * r).max_abs());
    std::array<double, 4> expected{d.closed.r + d.closed.s, d.closed.r - d.closed.s,
                                   d.closed.u + std::abs(d.closed.v), d.closed.u - std::abs(d.closed.v)};
    std::sort(expected.begin(), expected.end());
    for (int k = 0; k < 4; ++k) spec = std::max(spec, std::abs(eig[k] - expected[k]));
  }
  const bool ok = trace <= kTraceTol && psd <= kPsdTol && comm <= kCommutatorTol && spec <= kSpectrumTol;
  return {ok, fmt("trace dev=%.2e, min eig=%.2e", trace, -psd) + fmt(", ||[rho,H]||=%.2e, spectrum dev=%.2e", comm, spec)};
}

std::string run_cli(const std::string& args, int& status) {
  const std::string cmd = std::string("\"") + QCORR_CLI_PATH + "\" " + args;
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

Outcome csv_reproducibility() {
  int s1 = 0, s2 = 0, s3 = 0;
  const std::string a = run_cli("figure fig1", s1);
  const std::string b = run_cli("figure fig1", s2);
  const std::string c = run_cli("figure fig1 --serial", s3);
  const bool ok = s1 == 0 && s2 == 0 && s3 == 0 && !a.empty() && a == b && a == c;
  std::ostringstream detail;
  detail << a.size() << " bytes; repeat " << (a == b ? "identical" : "differs") << ", serial "
         << (a == c ? "identical" : "differs");
  return {ok, detail.str()};
}

}  // namespace

int main() {
  const std::vector<DrawData> draws = evaluate_draws();

  struct Criterion {
    const char* id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"1", "oracle equivalence", [&] { return oracle_equivalence(draws); }},
      {"2", "closed-form equivalence (computational-basis diagonal)", [&] { return closed_form_literal(draws); }},
      {"2b", "closed-form equivalence (eigenvalues, canonical frame)", [&] { return closed_form_invariant(draws); }},
      {"3", "exact anchor states", anchors},
      {"4", "low-temperature plateau", plateau},
      {"5", "high-temperature decay", high_temperature},
      {"6", "DM saturation", dm_saturation},
      {"7", "sandwich and ordering", [&] { return sandwich(draws); }},
      {"8", "thermal-state integrity", [&] { return thermal_integrity(draws); }},
      {"9", "CSV reproducibility", csv_reproducibility},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("%s criterion %-3s %s: %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
