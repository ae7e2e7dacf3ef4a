#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/model.hpp"

namespace qcorr {

enum class Field { jx, jy, jz, dz, temp };

std::string_view to_string(Field f);
/// Throws InvalidArgument for names other than jx, jy, jz, dz, temp.
Field parse_field(std::string_view name);

double get(const ModelParams& p, Field f);
void set(ModelParams& p, Field f, double value);

struct CurveFamily {
  Field field = Field::jz;
  std::vector<double> values;
};

struct SweepSpec {
  /// Values of the swept and curve fields in `fixed` are ignored.
  ModelParams fixed;
  Field swept = Field::temp;
  double start = 0.0;
  double stop = 1.0;
  int points = 2;
  std::optional<CurveFamily> curves;

  void validate() const;
  /// Grid value i of points, with the last point pinned to `stop`.
  double grid_value(int i) const;
};

struct SweepRow {
  ModelParams params;
  double lqfi = 0.0;
  double lqu = 0.0;
  double w11 = 0.0, w22 = 0.0, w33 = 0.0;
  double m11 = 0.0, m22 = 0.0, m33 = 0.0;
};

enum class Execution { serial, parallel };

/// LQFI and LQU from the exact-diagonalization Gibbs state, plus the
/// closed-form W/M values.
SweepRow eval_point(const ModelParams& p);

/// Rows grouped by curve value (in the given order), ascending in the swept
/// field within each group. Output is identical for both execution modes.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, Execution mode = Execution::parallel);

struct FigurePreset {
  std::string id;
  SweepSpec spec;
  /// "lqfi" or "lqu".
  std::string headline;
  std::string note;
};

const std::vector<std::string>& figure_ids();
FigurePreset figure_preset(std::string_view id);

inline constexpr std::string_view kCsvHeader = "jx,jy,jz,dz,temp,lqfi,lqu,w11,w22,w33,m11,m22,m33";

/// Header plus one line per row, 12 significant digits, '\n' endings.
void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out);

// ---------------------------------------------------------------------------
// Self-test

/// Couplings uniform in [-2, 2], dz in [0, 2], temp in [0.05, 5].
ModelParams random_params(std::mt19937_64& rng);
std::vector<ModelParams> random_draws(int draws, std::uint64_t seed);

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;
  double tolerance = 0.0;
};

struct SelfTestReport {
  int draws = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
  void print(std::ostream& out) const;
};

inline constexpr int kOracleResolution = 10000;
inline constexpr double kOracleTolerance = 1e-4;
inline constexpr double kClosedFormTolerance = 1e-10;
inline constexpr double kOffDiagonalTolerance = 1e-12;
inline constexpr double kSandwichTolerance = 1e-10;

/// Oracle equivalence, closed-form equivalence and the LQU <= LQFI <= 2 LQU
/// sandwich over `draws` seeded random parameter sets. Throws
/// InvalidArgument for draws < 1.
SelfTestReport self_test(int draws, std::uint64_t seed);

}  // namespace qcorr
