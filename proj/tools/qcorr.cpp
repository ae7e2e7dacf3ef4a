// qcorr: local quantum Fisher information and local quantum uncertainty of
// the two-qubit XYZ + DM Heisenberg model at thermal equilibrium.
//
//   qcorr eval --jx -1 --jy -0.5 --jz 0.2 --dz 1 --temp 1
//   qcorr sweep --sweep temp --from 0.1 --to 5 --points 50 --jx -1 --jy -0.5 --dz 1 --curve jz=0.2,1
//   qcorr figure fig1 --out fig1.csv
//   qcorr selftest --draws 200 --seed 42
//
// Exit status: 0 success, 1 invalid arguments, 2 numerical failure,
// 3 self-test failure.

#include <charconv>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <system_error>

#include "CLI11.hpp"
#include "qcorr/error.hpp"
#include "qcorr/sweep.hpp"

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitSelfTest = 3;

struct FixedParams {
  std::optional<double> jx, jy, jz, dz, temp;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--jx", jx, "XX coupling");
    cmd->add_option("--jy", jy, "YY coupling");
    cmd->add_option("--jz", jz, "ZZ coupling");
    cmd->add_option("--dz", dz, "z-axis DM strength");
    cmd->add_option("--temp", temp, "temperature (k_B = 1)");
  }

  void apply(qcorr::ModelParams& p) const {
    if (jx) p.jx = *jx;
    if (jy) p.jy = *jy;
    if (jz) p.jz = *jz;
    if (dz) p.dz = *dz;
    if (temp) p.temp = *temp;
  }
};

double parse_number(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw qcorr::InvalidArgument("'" + text + "' is not a number");
  }
  return value;
}

// "jz=-1,-0.5,0.2"
qcorr::CurveFamily parse_curve(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) {
    throw qcorr::InvalidArgument("--curve expects <field>=v1,v2,..., got '" + text + "'");
  }
  qcorr::CurveFamily family;
  family.field = qcorr::parse_field(text.substr(0, eq));
  std::string rest = text.substr(eq + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    const auto comma = rest.find(',', pos);
    const std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    family.values.push_back(parse_number(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return family;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
      if (!*file_) throw qcorr::IoError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LQFI and LQU of the two-qubit Heisenberg XYZ chain with z-axis DM interaction"};
  app.require_subcommand(1);

  std::string out_path;
  bool serial = false;

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a single parameter point");
  FixedParams eval_params;
  eval_params.add_to(eval_cmd);
  eval_cmd->add_option("--out", out_path, "output CSV path (default stdout)");

  auto* sweep_cmd = app.add_subcommand("sweep", "sweep one parameter, optionally over a curve family");
  FixedParams sweep_params;
  sweep_params.add_to(sweep_cmd);
  std::string sweep_field;
  double sweep_from = 0.0;
  double sweep_to = 0.0;
  int sweep_points = 50;
  std::string sweep_curve;
  sweep_cmd->add_option("--sweep", sweep_field, "swept field: jx, jy, jz, dz or temp")->required();
  sweep_cmd->add_option("--from", sweep_from, "first grid value")->required();
  sweep_cmd->add_option("--to", sweep_to, "last grid value")->required();
  sweep_cmd->add_option("--points", sweep_points, "number of grid points (>= 2)");
  sweep_cmd->add_option("--curve", sweep_curve, "curve family, e.g. jz=-1,0.2,1");
  sweep_cmd->add_option("--out", out_path, "output CSV path (default stdout)");
  sweep_cmd->add_flag("--serial", serial, "evaluate grid points on one thread");

  auto* figure_cmd = app.add_subcommand("figure", "reproduce a figure preset");
  std::string figure_id;
  std::optional<double> figure_from, figure_to;
  std::optional<int> figure_points;
  std::string figure_curve;
  bool list_presets = false;
  figure_cmd->add_option("id", figure_id, "fig1, fig2a..fig2d, fig3, fig4a..fig4d");
  figure_cmd->add_option("--from", figure_from, "override the first grid value");
  figure_cmd->add_option("--to", figure_to, "override the last grid value");
  figure_cmd->add_option("--points", figure_points, "override the number of grid points");
  figure_cmd->add_option("--curve", figure_curve, "override the curve family, e.g. temp=0.5,1");
  figure_cmd->add_option("--out", out_path, "output CSV path (default stdout)");
  figure_cmd->add_flag("--serial", serial, "evaluate grid points on one thread");
  figure_cmd->add_flag("--list", list_presets, "list presets and exit");

  auto* selftest_cmd = app.add_subcommand("selftest", "run the oracle and closed-form checks");
  int draws = 200;
  std::uint64_t seed = 42;
  selftest_cmd->add_option("--draws", draws, "number of random parameter draws");
  selftest_cmd->add_option("--seed", seed, "random seed");
  selftest_cmd->add_option("--out", out_path, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  const auto mode = serial ? qcorr::Execution::serial : qcorr::Execution::parallel;

  try {
    if (eval_cmd->parsed()) {
      qcorr::ModelParams p;
      eval_params.apply(p);
      const auto rows = std::vector<qcorr::SweepRow>{qcorr::eval_point(p)};
      Output out(out_path);
      qcorr::emit_csv(rows, out.stream());
    } else if (sweep_cmd->parsed()) {
      qcorr::SweepSpec spec;
      sweep_params.apply(spec.fixed);
      spec.swept = qcorr::parse_field(sweep_field);
      spec.start = sweep_from;
      spec.stop = sweep_to;
      spec.points = sweep_points;
      if (!sweep_curve.empty()) spec.curves = parse_curve(sweep_curve);
      const auto rows = qcorr::run_sweep(spec, mode);
      Output out(out_path);
      qcorr::emit_csv(rows, out.stream());
    } else if (figure_cmd->parsed()) {
      if (list_presets) {
        for (const auto& id : qcorr::figure_ids()) {
          const auto preset = qcorr::figure_preset(id);
          std::cout << id << "  [" << preset.headline << "]  " << preset.note << '\n';
        }
        return 0;
      }
      if (figure_id.empty()) throw qcorr::InvalidArgument("figure id is required (see --list)");
      auto preset = qcorr::figure_preset(figure_id);
      if (figure_from) preset.spec.start = *figure_from;
      if (figure_to) preset.spec.stop = *figure_to;
      if (figure_points) preset.spec.points = *figure_points;
      if (!figure_curve.empty()) preset.spec.curves = parse_curve(figure_curve);
      const auto rows = qcorr::run_sweep(preset.spec, mode);
      Output out(out_path);
      qcorr::emit_csv(rows, out.stream());
    } else if (selftest_cmd->parsed()) {
      const auto report = qcorr::self_test(draws, seed);
      Output out(out_path);
      report.print(out.stream());
      return report.passed() ? 0 : kExitSelfTest;
    }
  } catch (const qcorr::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const qcorr::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const qcorr::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
