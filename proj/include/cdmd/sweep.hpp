#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cdmd/denoise.hpp"
#include "cdmd/stats.hpp"

namespace cdmd {

// Config and data errors detected before any computation.  CLI exit code 2.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

enum class SystemKind { LTI1a, LTI1b, LTI3, Vdp };
enum class IndicatorKind { DftDistance, KmdQuality, PrunedSpectrum };
enum class KmdTarget { Sigma, SigmaMinusOne, SigmaPlusOne };
enum class PipelineKind { Raw, MsThenDelay, DelayThenMs };
enum class OutputFormat { Csv, Json, Svg };

struct SystemSpec {
  SystemKind kind = SystemKind::LTI1a;
  std::uint64_t seed = 1;
  int observables = 1;
  bool full_rank_dictionary = false;
  double signal_scale = 1.0;
};

struct NoiseOptions {
  double std_dev = 0.0;
  DenoiseVariant variant = DenoiseVariant::Plain;
  int rank = 7;
  int filter_columns = 14;
  int gap = 1;
};

struct SweepConfig {
  SystemSpec system;
  std::vector<int> theta_values;
  std::vector<int> delay_values;
  int ensemble_size = 10;
  IndicatorKind indicator = IndicatorKind::DftDistance;
  KmdTarget target = KmdTarget::Sigma;
  PipelineKind pipeline = PipelineKind::DelayThenMs;
  double svd_tol = 1e-8;
  double mode_norm_tol = 1e-8;
  NoiseOptions noise;
  int threads = 1;
  std::string output_path;
  OutputFormat format = OutputFormat::Csv;
};

struct SweepCell {
  int theta = 0;
  int delays = 0;
  BoxStats stats;
  bool operator==(const SweepCell& o) const;
};

struct SweepResult {
  std::string indicator;
  std::vector<SweepCell> cells;  // delays outer, theta inner
};

// Throws ConfigError on inconsistent configuration.
void validate(const SweepConfig& cfg);
SweepConfig parse_sweep_config(const std::string& json_text);
SweepConfig load_sweep_config(const std::string& path);
std::string sweep_config_json(const SweepConfig& cfg);

// Per-member indicator values for one ensemble member; index-aligned with cells.
std::vector<double> sweep_member(const SweepConfig& cfg, std::size_t member);
SweepResult run_sweep(const SweepConfig& cfg);

std::string to_csv(const SweepResult& r);
std::string to_json(const SweepResult& r);
std::string to_svg(const SweepResult& r);
SweepResult sweep_from_csv(const std::string& text);
SweepResult sweep_from_json(const std::string& text);
void export_result(const SweepResult& r, OutputFormat f, const std::string& path);

SystemKind parse_system_kind(const std::string& s);
PipelineKind parse_pipeline(const std::string& s);
KmdTarget parse_target(const std::string& s);
OutputFormat parse_format(const std::string& s);
const char* to_string(SystemKind k);
const char* to_string(PipelineKind k);
const char* to_string(KmdTarget k);
const char* to_string(IndicatorKind k);

// Trajectory for one ensemble member with `snapshots` columns (noise not applied).
TimeSeries member_trajectory(const SystemSpec& sys, std::size_t member, Eigen::Index snapshots);
// Reference spectrum of an LTI system spec.
SpectrumSet system_spectrum(const SystemSpec& sys);
SpectrumSet target_set(const SpectrumSet& sigma, KmdTarget t);

}  // namespace cdmd
