#include "qcorr/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "parallel.hpp"
#include "qcorr/error.hpp"
#include "qcorr/measures.hpp"

namespace qcorr {

std::string_view to_string(Field f) {
  switch (f) {
    case Field::jx: return "jx";
    case Field::jy: return "jy";
    case Field::jz: return "jz";
    case Field::dz: return "dz";
    case Field::temp: return "temp";
  }
  return "?";
}

Field parse_field(std::string_view name) {
  for (Field f : {Field::jx, Field::jy, Field::jz, Field::dz, Field::temp})
    if (to_string(f) == name) return f;
  throw InvalidArgument("unknown parameter field '" + std::string(name) +
                        "' (expected jx, jy, jz, dz or temp)");
}

double get(const ModelParams& p, Field f) {
  switch (f) {
    case Field::jx: return p.jx;
    case Field::jy: return p.jy;
    case Field::jz: return p.jz;
    case Field::dz: return p.dz;
    case Field::temp: return p.temp;
  }
  return 0.0;
}

void set(ModelParams& p, Field f, double value) {
  switch (f) {
    case Field::jx: p.jx = value; break;
    case Field::jy: p.jy = value; break;
    case Field::jz: p.jz = value; break;
    case Field::dz: p.dz = value; break;
    case Field::temp: p.temp = value; break;
  }
}

// ---------------------------------------------------------------------------

void SweepSpec::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop)) {
    throw InvalidArgument("sweep range must satisfy start < stop");
  }
  if (points < 2) throw InvalidArgument("sweep needs at least 2 points");
  if (swept == Field::temp && !(start > 0.0)) {
    throw InvalidArgument("temperature sweep must start above 0");
  }
  if (curves) {
    if (curves->field == swept) throw InvalidArgument("curve field must differ from the swept field");
    if (curves->values.empty()) throw InvalidArgument("curve family has no values");
    for (double v : curves->values) {
      if (!std::isfinite(v)) throw InvalidArgument("curve values must be finite");
      if (curves->field == Field::temp && !(v > 0.0)) {
        throw InvalidArgument("curve temperatures must be > 0");
      }
    }
  }
}

double SweepSpec::grid_value(int i) const {
  if (i == points - 1) return stop;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
}

SweepRow eval_point(const ModelParams& p) {
  p.validate();
  const DensityMatrix rho = thermal_state(p);
  const XStateElements elements = closed_form_elements(p);
  const auto w = closed_form_w_diag(elements);
  const auto m = closed_form_m_diag(elements);

  SweepRow row;
  row.params = p;
  row.lqfi = lqfi(rho).value;
  row.lqu = lqu(rho).value;
  row.w11 = w[0];
  row.w22 = w[1];
  row.w33 = w[2];
  row.m11 = m[0];
  row.m22 = m[1];
  row.m33 = m[2];
  return row;
}

namespace {

std::string describe(const ModelParams& p) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "jx=%.12g jy=%.12g jz=%.12g dz=%.12g temp=%.12g", p.jx, p.jy,
                p.jz, p.dz, p.temp);
  return buf;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, Execution mode) {
  spec.validate();
  const std::vector<double> curve_values =
      spec.curves ? spec.curves->values : std::vector<double>{get(spec.fixed, spec.swept)};

  std::vector<ModelParams> grid;
  grid.reserve(curve_values.size() * static_cast<std::size_t>(spec.points));
  for (double cv : curve_values) {
    for (int i = 0; i < spec.points; ++i) {
      ModelParams p = spec.fixed;
      if (spec.curves) set(p, spec.curves->field, cv);
      set(p, spec.swept, spec.grid_value(i));
      grid.push_back(p);
    }
  }

  std::vector<SweepRow> rows(grid.size());
  detail::parallel_for(grid.size(), mode == Execution::parallel, [&](std::size_t i) {
    try {
      rows[i] = eval_point(grid[i]);
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("at grid point " + describe(grid[i]) + ": " + e.what());
    } catch (const NumericalError& e) {
      throw NumericalError("at grid point " + describe(grid[i]) + ": " + e.what());
    }
  });
  return rows;
}

// ---------------------------------------------------------------------------
// Figure presets. Fixed couplings follow the published captions; the curve
// families are not given there, so the values below are defaults of this
// tool and can be overridden from the command line.

namespace {

const std::vector<double> kJzFamily{-1.0, -0.5, 0.2, 0.5, 1.0};
const std::vector<double> kTempFamily{0.5, 1.0, 2.0};

constexpr int kPresetPoints = 200;

SweepSpec temperature_sweep() {
  SweepSpec s;
  s.fixed = ModelParams{.jx = -1.0, .jy = -0.5, .jz = 0.0, .dz = 1.0, .temp = 1.0};
  s.swept = Field::temp;
  s.start = 0.05;
  s.stop = 5.0;
  s.points = kPresetPoints;
  s.curves = CurveFamily{Field::jz, kJzFamily};
  return s;
}

SweepSpec coupling_sweep(char panel) {
  SweepSpec s;
  s.points = kPresetPoints;
  s.start = -3.0;
  s.stop = 3.0;
  s.curves = CurveFamily{Field::temp, kTempFamily};
  switch (panel) {
    case 'a':
      s.fixed = ModelParams{.jx = 0.0, .jy = -0.5, .jz = -1.0, .dz = 1.0, .temp = 1.0};
      s.swept = Field::jx;
      break;
    case 'b':
      s.fixed = ModelParams{.jx = -1.0, .jy = 0.0, .jz = 0.2, .dz = 1.0, .temp = 1.0};
      s.swept = Field::jy;
      break;
    case 'c':
      s.fixed = ModelParams{.jx = -1.0, .jy = -0.5, .jz = 0.0, .dz = 1.0, .temp = 1.0};
      s.swept = Field::jz;
      break;
    case 'd':
      s.fixed = ModelParams{.jx = -1.0, .jy = -1.0, .jz = 0.2, .dz = 0.0, .temp = 1.0};
      s.swept = Field::dz;
      s.start = 0.0;
      break;
  }
  return s;
}

const std::map<std::string, FigurePreset, std::less<>>& preset_registry() {
  static const std::map<std::string, FigurePreset, std::less<>> registry = [] {
    const std::string family_note =
        "curve-family values are tool defaults, not published data; override with --curve";
    std::map<std::string, FigurePreset, std::less<>> r;
    r["fig1"] = {"fig1", temperature_sweep(), "lqfi", "LQFI vs temperature; " + family_note};
    r["fig3"] = {"fig3", temperature_sweep(), "lqu", "LQU vs temperature; " + family_note};
    for (char panel : {'a', 'b', 'c', 'd'}) {
      const std::string suffix(1, panel);
      const SweepSpec spec = coupling_sweep(panel);
      const std::string axis(to_string(spec.swept));
      r["fig2" + suffix] = {"fig2" + suffix, spec, "lqfi", "LQFI vs " + axis + "; " + family_note};
      r["fig4" + suffix] = {"fig4" + suffix, spec, "lqu", "LQU vs " + axis + "; " + family_note};
    }
    return r;
  }();
  return registry;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"fig1",  "fig2a", "fig2b", "fig2c", "fig2d",
                                            "fig3",  "fig4a", "fig4b", "fig4c", "fig4d"};
  return ids;
}

FigurePreset figure_preset(std::string_view id) {
  const auto& registry = preset_registry();
  const auto it = registry.find(id);
  if (it == registry.end()) throw InvalidArgument("unknown figure id '" + std::string(id) + "'");
  return it->second;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

void append_number(std::string& line, double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  line += buf;
}

}  // namespace

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  if (rows.empty()) throw InvalidArgument("no rows to write");
  out << kCsvHeader << '\n';
  std::string line;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    line.clear();
    const double values[] = {r.params.jx, r.params.jy, r.params.jz, r.params.dz, r.params.temp,
                             r.lqfi,      r.lqu,       r.w11,       r.w22,       r.w33,
                             r.m11,       r.m22,       r.m33};
    for (std::size_t k = 0; k < std::size(values); ++k) {
      if (k) line += ',';
      append_number(line, values[k]);
    }
    line += '\n';
    out << line;
    if (!out) throw IoError("failed writing CSV row " + std::to_string(i + 1));
  }
  out.flush();
  if (!out) throw IoError("failed flushing CSV output");
}

// ---------------------------------------------------------------------------
// Self-test

ModelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coupling(-2.0, 2.0);
  std::uniform_real_distribution<double> dm(0.0, 2.0);
  std::uniform_real_distribution<double> temp(0.05, 5.0);
  ModelParams p;
  p.jx = coupling(rng);
  p.jy = coupling(rng);
  p.jz = coupling(rng);
  p.dz = dm(rng);
  p.temp = temp(rng);
  return p;
}

std::vector<ModelParams> random_draws(int draws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ModelParams> out;
  out.reserve(static_cast<std::size_t>(std::max(draws, 0)));
  for (int i = 0; i < draws; ++i) out.push_back(random_params(rng));
  return out;
}

bool SelfTestReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void SelfTestReport::print(std::ostream& out) const {
  out << "selftest draws=" << draws << " seed=" << seed << '\n';
  char buf[256];
  for (const CheckResult& c : checks) {
    std::snprintf(buf, sizeof buf, "%-4s %-28s worst=%.3e tol=%.1e\n", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.worst, c.tolerance);
    out << buf;
  }
  out << (passed() ? "selftest passed" : "selftest FAILED") << '\n';
}

namespace {

struct DrawDeviations {
  double oracle_lqfi = 0.0;
  double oracle_lqu = 0.0;
  double closed_w = 0.0;
  double closed_m = 0.0;
  double block = 0.0;
  double sandwich = 0.0;
  double ordering = 0.0;
};

DrawDeviations check_draw(const ModelParams& p) {
  DrawDeviations d;
  const DensityMatrix rho = thermal_state(p);
  const MeasureResult q = lqfi(rho);
  const MeasureResult u = lqu(rho);
  d.oracle_lqfi = std::abs(q.value - brute_force_min(rho, Measure::fisher, kOracleResolution).value);
  d.oracle_lqu = std::abs(u.value - brute_force_min(rho, Measure::skew, kOracleResolution).value);

  const RealSymmetric3& w = *q.matrix;
  const RealSymmetric3& m = *u.matrix;
  const XStateElements e = closed_form_elements(p);
  auto cw = closed_form_w_diag(e);
  auto cm = closed_form_m_diag(e);
  std::sort(cw.begin(), cw.end());
  std::sort(cm.begin(), cm.end());
  const auto ew = eigvals_sym3(w);
  const auto em = eigvals_sym3(m);
  for (std::size_t k = 0; k < 3; ++k) {
    d.closed_w = std::max(d.closed_w, std::abs(cw[k] - ew[k]));
    d.closed_m = std::max(d.closed_m, std::abs(cm[k] - em[k]));
  }
  d.block = std::max({std::abs(w(0, 2)), std::abs(w(1, 2)), std::abs(m(0, 2)), std::abs(m(1, 2))});

  d.sandwich = std::max(u.value - q.value, q.value - 2.0 * u.value);

  std::array<std::array<double, 3>, 3> diff{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) diff[i][j] = m(i, j) - w(i, j);
  d.ordering = -eigvals_sym3(RealSymmetric3(diff))[0];
  return d;
}

}  // namespace

SelfTestReport self_test(int draws, std::uint64_t seed) {
  if (draws < 1) throw InvalidArgument("selftest needs draws >= 1");
  const std::vector<ModelParams> params = random_draws(draws, seed);
  std::vector<DrawDeviations> results(params.size());
  detail::parallel_for(params.size(), true, [&](std::size_t i) { results[i] = check_draw(params[i]); });

  const auto worst = [&](double DrawDeviations::*field) {
    double w = -std::numeric_limits<double>::infinity();
    for (const auto& r : results) w = std::max(w, r.*field);
    return w;
  };

  SelfTestReport report;
  report.draws = draws;
  report.seed = seed;
  const auto add = [&](std::string name, double value, double tol) {
    report.checks.push_back({std::move(name), value <= tol, value, tol});
  };
  add("oracle-equivalence lqfi", worst(&DrawDeviations::oracle_lqfi), kOracleTolerance);
  add("oracle-equivalence lqu", worst(&DrawDeviations::oracle_lqu), kOracleTolerance);
  add("closed-form W spectrum", worst(&DrawDeviations::closed_w), kClosedFormTolerance);
  add("closed-form M spectrum", worst(&DrawDeviations::closed_m), kClosedFormTolerance);
  add("z-block decoupling", worst(&DrawDeviations::block), kOffDiagonalTolerance);
  add("sandwich lqu<=lqfi<=2lqu", worst(&DrawDeviations::sandwich), kSandwichTolerance);
  add("ordering M-W psd", worst(&DrawDeviations::ordering), kSandwichTolerance);
  return report;
}

}  // namespace qcorr
