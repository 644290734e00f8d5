#include "cdmd/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cdmd/dft.hpp"
#include "cdmd/parallel.hpp"
#include "cdmd/preprocess.hpp"
#include "cdmd/pruning.hpp"

namespace cdmd {

using nlohmann::json;

bool SweepCell::operator==(const SweepCell& o) const {
  return theta == o.theta && delays == o.delays && stats.min == o.stats.min && stats.q1 == o.stats.q1 &&
         stats.median == o.stats.median && stats.q3 == o.stats.q3 && stats.max == o.stats.max &&
         stats.count == o.stats.count;
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

SystemKind parse_system_kind(const std::string& s) {
  const std::string k = lower(s);
  if (k == "lti1a") return SystemKind::LTI1a;
  if (k == "lti1b") return SystemKind::LTI1b;
  if (k == "lti3") return SystemKind::LTI3;
  if (k == "vdp" || k == "vanderpol") return SystemKind::Vdp;
  throw ConfigError("unknown system '" + s + "'");
}

PipelineKind parse_pipeline(const std::string& s) {
  const std::string k = lower(s);
  if (k == "raw") return PipelineKind::Raw;
  if (k == "ms_then_delay") return PipelineKind::MsThenDelay;
  if (k == "delay_then_ms") return PipelineKind::DelayThenMs;
  throw ConfigError("unknown pipeline '" + s + "'");
}

KmdTarget parse_target(const std::string& s) {
  const std::string k = lower(s);
  if (k == "sigma") return KmdTarget::Sigma;
  if (k == "sigma_minus_one") return KmdTarget::SigmaMinusOne;
  if (k == "sigma_plus_one") return KmdTarget::SigmaPlusOne;
  throw ConfigError("unknown KMD-Quality target '" + s + "'");
}

OutputFormat parse_format(const std::string& s) {
  const std::string k = lower(s);
  if (k == "csv") return OutputFormat::Csv;
  if (k == "json") return OutputFormat::Json;
  if (k == "svg") return OutputFormat::Svg;
  throw ConfigError("unknown output format '" + s + "'");
}

namespace {

IndicatorKind parse_indicator(const std::string& s) {
  const std::string k = lower(s);
  if (k == "dft_distance") return IndicatorKind::DftDistance;
  if (k == "kmd_quality") return IndicatorKind::KmdQuality;
  if (k == "pruned_spectrum") return IndicatorKind::PrunedSpectrum;
  throw ConfigError("unknown indicator '" + s + "'");
}

DenoiseVariant parse_variant(const std::string& s) {
  const std::string k = lower(s);
  if (k == "plain" || k == "none") return DenoiseVariant::Plain;
  if (k == "tls") return DenoiseVariant::Tls;
  if (k == "noise_resistant") return DenoiseVariant::NoiseResistant;
  throw ConfigError("unknown denoise variant '" + s + "'");
}

const char* variant_name(DenoiseVariant v) {
  switch (v) {
    case DenoiseVariant::Plain: return "plain";
    case DenoiseVariant::Tls: return "tls";
    case DenoiseVariant::NoiseResistant: return "noise_resistant";
  }
  return "?";
}

const char* format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    case OutputFormat::Svg: return "svg";
  }
  return "?";
}

int filter_span(const SweepConfig& cfg, int d) {
  return cfg.noise.variant == DenoiseVariant::NoiseResistant ? cfg.noise.gap + cfg.noise.filter_columns + d : 0;
}

}  // namespace

const char* to_string(SystemKind k) {
  switch (k) {
    case SystemKind::LTI1a: return "lti1a";
    case SystemKind::LTI1b: return "lti1b";
    case SystemKind::LTI3: return "lti3";
    case SystemKind::Vdp: return "vdp";
  }
  return "?";
}

const char* to_string(PipelineKind k) {
  switch (k) {
    case PipelineKind::Raw: return "raw";
    case PipelineKind::MsThenDelay: return "ms_then_delay";
    case PipelineKind::DelayThenMs: return "delay_then_ms";
  }
  return "?";
}

const char* to_string(KmdTarget k) {
  switch (k) {
    case KmdTarget::Sigma: return "sigma";
    case KmdTarget::SigmaMinusOne: return "sigma_minus_one";
    case KmdTarget::SigmaPlusOne: return "sigma_plus_one";
  }
  return "?";
}

const char* to_string(IndicatorKind k) {
  switch (k) {
    case IndicatorKind::DftDistance: return "dft_distance";
    case IndicatorKind::KmdQuality: return "kmd_quality";
    case IndicatorKind::PrunedSpectrum: return "pruned_spectrum";
  }
  return "?";
}

void validate(const SweepConfig& cfg) {
  if (cfg.theta_values.empty()) throw ConfigError("theta list is empty");
  if (cfg.delay_values.empty()) throw ConfigError("delay list is empty");
  for (int t : cfg.theta_values)
    if (t < 1) throw ConfigError("theta values must be >= 1");
  for (int d : cfg.delay_values)
    if (d < 0) throw ConfigError("delay values must be >= 0");
  if (cfg.ensemble_size < 1) throw ConfigError("ensemble size must be >= 1");
  if (cfg.system.observables < 1) throw ConfigError("observables must be >= 1");
  if (cfg.system.kind == SystemKind::Vdp && cfg.system.observables != 1)
    throw ConfigError("the Van der Pol observable is scalar");
  if (!(cfg.system.signal_scale > 0.0) || !std::isfinite(cfg.system.signal_scale))
    throw ConfigError("signal_scale must be positive");
  if (cfg.system.full_rank_dictionary && cfg.system.kind != SystemKind::Vdp && cfg.system.observables < 7)
    throw ConfigError("full-rank dictionary needs at least 7 observables");
  if (!(cfg.svd_tol > 0.0 && cfg.svd_tol < 1.0)) throw ConfigError("svd tolerance must lie in (0, 1)");
  if (!(cfg.mode_norm_tol >= 0.0 && cfg.mode_norm_tol < 1.0)) throw ConfigError("mode-norm tolerance must lie in [0, 1)");
  if (cfg.indicator == IndicatorKind::KmdQuality && cfg.system.kind == SystemKind::Vdp)
    throw ConfigError("KMD-Quality needs a known spectrum; not available for the Van der Pol system");
  if (cfg.indicator == IndicatorKind::DftDistance && cfg.pipeline != PipelineKind::DelayThenMs)
    throw ConfigError("dft_distance is defined on the delay_then_ms pipeline");
  if (!(cfg.noise.std_dev >= 0.0) || !std::isfinite(cfg.noise.std_dev)) throw ConfigError("noise std must be >= 0");
  if (cfg.noise.variant != DenoiseVariant::Plain) {
    if (cfg.indicator == IndicatorKind::DftDistance) throw ConfigError("denoise variants apply to kmd_quality and pruned_spectrum");
    if (cfg.noise.variant == DenoiseVariant::NoiseResistant && cfg.pipeline != PipelineKind::Raw)
      throw ConfigError("noise_resistant variant requires the raw pipeline");
    if (cfg.noise.variant == DenoiseVariant::Tls && cfg.noise.rank < 1)
      throw ConfigError("tls rank must be >= 1");
    if (cfg.noise.variant == DenoiseVariant::NoiseResistant && (cfg.noise.filter_columns < 2 || cfg.noise.gap < 0))
      throw ConfigError("noise_resistant needs filter_columns >= 2 and gap >= 0");
  }
  if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
  const int m = cfg.system.observables;
  for (int d : cfg.delay_values)
    for (int t : cfg.theta_values) {
      if (cfg.noise.variant == DenoiseVariant::Tls && cfg.noise.rank > std::min(m * (d + 1), t + 1))
        throw ConfigError("tls rank " + std::to_string(cfg.noise.rank) + " exceeds the delayed matrix size at theta=" +
                          std::to_string(t) + ", d=" + std::to_string(d));
    }
}

namespace {

std::vector<int> int_list(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing '") + key + "'");
  const json& v = j.at(key);
  std::vector<int> out;
  if (v.is_array()) {
    for (const auto& x : v) {
      if (!x.is_number_integer()) throw ConfigError(std::string("'") + key + "' must hold integers");
      out.push_back(x.get<int>());
    }
  } else if (v.is_object()) {
    if (!v.contains("from") || !v.contains("to")) throw ConfigError(std::string("'") + key + "' range needs from/to");
    const int a = v.at("from").get<int>(), b = v.at("to").get<int>();
    const int step = v.value("step", 1);
    if (step < 1 || b < a) throw ConfigError(std::string("'") + key + "' range is empty");
    for (int x = a; x <= b; x += step) out.push_back(x);
  } else if (v.is_number_integer()) {
    out.push_back(v.get<int>());
  } else {
    throw ConfigError(std::string("'") + key + "' must be a list, a range, or an integer");
  }
  return out;
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (j.value("schema", std::string()) != "v1") throw ConfigError("config schema must be \"v1\"");
  reject_unknown(j, {"schema", "system", "theta", "delays", "ensemble", "indicator", "pipeline", "tolerances", "noise",
                     "threads", "output"},
                 "config");
  SweepConfig cfg;
  try {
    if (!j.contains("system")) throw ConfigError("missing 'system'");
    const json& s = j.at("system");
    if (s.is_string()) {
      cfg.system.kind = parse_system_kind(s.get<std::string>());
    } else {
      reject_unknown(s, {"preset", "seed", "observables", "full_rank_dictionary", "signal_scale"}, "system");
      cfg.system.kind = parse_system_kind(s.at("preset").get<std::string>());
      cfg.system.seed = s.value("seed", std::uint64_t{1});
      cfg.system.observables = s.value("observables", 1);
      cfg.system.full_rank_dictionary = s.value("full_rank_dictionary", false);
      cfg.system.signal_scale = s.value("signal_scale", 1.0);
    }
    cfg.theta_values = int_list(j, "theta");
    cfg.delay_values = int_list(j, "delays");
    cfg.ensemble_size = j.value("ensemble", 10);
    if (!j.contains("indicator")) throw ConfigError("missing 'indicator'");
    const json& ind = j.at("indicator");
    if (ind.is_string()) {
      cfg.indicator = parse_indicator(ind.get<std::string>());
    } else {
      reject_unknown(ind, {"kind", "target"}, "indicator");
      cfg.indicator = parse_indicator(ind.at("kind").get<std::string>());
      if (ind.contains("target")) cfg.target = parse_target(ind.at("target").get<std::string>());
    }
    if (j.contains("pipeline"))
      cfg.pipeline = parse_pipeline(j.at("pipeline").get<std::string>());
    else
      cfg.pipeline = cfg.indicator == IndicatorKind::DftDistance ? PipelineKind::DelayThenMs : PipelineKind::Raw;
    if (j.contains("tolerances")) {
      const json& t = j.at("tolerances");
      reject_unknown(t, {"svd", "mode_norm"}, "tolerances");
      cfg.svd_tol = t.value("svd", cfg.svd_tol);
      cfg.mode_norm_tol = t.value("mode_norm", cfg.mode_norm_tol);
    }
    if (j.contains("noise")) {
      const json& n = j.at("noise");
      reject_unknown(n, {"std", "variant", "rank", "filter_columns", "gap"}, "noise");
      cfg.noise.std_dev = n.value("std", 0.0);
      cfg.noise.variant = parse_variant(n.value("variant", std::string("plain")));
      cfg.noise.rank = n.value("rank", 7);
      cfg.noise.filter_columns = n.value("filter_columns", 14);
      cfg.noise.gap = n.value("gap", 1);
    }
    cfg.threads = j.value("threads", 1);
    if (j.contains("output")) {
      const json& o = j.at("output");
      reject_unknown(o, {"path", "format"}, "output");
      cfg.output_path = o.value("path", std::string());
      cfg.format = parse_format(o.value("format", std::string("csv")));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field has the wrong type: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_sweep_config(ss.str());
}

std::string sweep_config_json(const SweepConfig& cfg) {
  json j;
  j["schema"] = "v1";
  j["system"] = {{"preset", to_string(cfg.system.kind)},
                 {"seed", cfg.system.seed},
                 {"observables", cfg.system.observables},
                 {"full_rank_dictionary", cfg.system.full_rank_dictionary},
                 {"signal_scale", cfg.system.signal_scale}};
  j["theta"] = cfg.theta_values;
  j["delays"] = cfg.delay_values;
  j["ensemble"] = cfg.ensemble_size;
  j["indicator"] = {{"kind", to_string(cfg.indicator)}, {"target", to_string(cfg.target)}};
  j["pipeline"] = to_string(cfg.pipeline);
  j["tolerances"] = {{"svd", cfg.svd_tol}, {"mode_norm", cfg.mode_norm_tol}};
  j["noise"] = {{"std", cfg.noise.std_dev},
                {"variant", variant_name(cfg.noise.variant)},
                {"rank", cfg.noise.rank},
                {"filter_columns", cfg.noise.filter_columns},
                {"gap", cfg.noise.gap}};
  j["threads"] = cfg.threads;
  j["output"] = {{"path", cfg.output_path}, {"format", format_name(cfg.format)}};
  return j.dump(2);
}

SpectrumSet system_spectrum(const SystemSpec& sys) {
  switch (sys.kind) {
    case SystemKind::LTI1a: return SpectrumSet(lti_spectrum(LtiPreset::LTI1a, sys.seed), 0.0);
    case SystemKind::LTI1b: return SpectrumSet(lti_spectrum(LtiPreset::LTI1b, sys.seed), 0.0);
    case SystemKind::LTI3: return SpectrumSet(lti_spectrum(LtiPreset::LTI3, sys.seed), 0.0);
    case SystemKind::Vdp: break;
  }
  throw ConfigError("the Van der Pol system has no finite reference spectrum");
}

SpectrumSet target_set(const SpectrumSet& sigma, KmdTarget t) {
  switch (t) {
    case KmdTarget::Sigma: return sigma;
    case KmdTarget::SigmaMinusOne: return sigma.without(1.0, 1e-9);
    case KmdTarget::SigmaPlusOne: return sigma.contains(1.0, 1e-9) ? sigma : sigma.with(1.0);
  }
  return sigma;
}

TimeSeries member_trajectory(const SystemSpec& sys, std::size_t member, Eigen::Index snapshots) {
  const std::uint64_t s = member_seed(sys.seed, member);
  if (sys.kind == SystemKind::Vdp) {
    Rng rng(s);
    VdpConfig cfg;
    cfg.initial = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    cfg.num_samples = static_cast<int>(snapshots);
    const CMatrix dict = random_vdp_dictionary(rng);
    return vdp_trajectory(cfg, dict);
  }
  LtiSystem lti = make_lti(system_spectrum(sys).values(), sys.observables, sys.full_rank_dictionary, s);
  lti.initial_state *= sys.signal_scale;
  return lti_trajectory(lti, snapshots);
}

std::vector<double> sweep_member(const SweepConfig& cfg, std::size_t member) {
  const int tmax = *std::max_element(cfg.theta_values.begin(), cfg.theta_values.end());
  const int dmax = *std::max_element(cfg.delay_values.begin(), cfg.delay_values.end());
  const Eigen::Index length = tmax + dmax + 1 + filter_span(cfg, dmax);
  TimeSeries z = member_trajectory(cfg.system, member, length);
  if (cfg.noise.std_dev > 0.0)
    z = add_noise(z, {cfg.noise.std_dev, splitmix64(member_seed(cfg.system.seed, member) ^ 0x6e6f697365ULL)});
  const SvdThreshold tol(cfg.svd_tol);
  std::optional<SpectrumSet> target;
  if (cfg.indicator == IndicatorKind::KmdQuality) target = target_set(system_spectrum(cfg.system), cfg.target);

  std::vector<double> out;
  for (int d : cfg.delay_values)
    for (int theta : cfg.theta_values) {
      const Eigen::Index train = theta + d + 1;
      const TimeSeries cell = z.head(train);
      if (cfg.indicator == IndicatorKind::DftDistance) {
        out.push_back(fit_mean_subtracted(cell, d, tol).second.distance);
        continue;
      }
      TimeSeries used = cfg.pipeline == PipelineKind::Raw           ? delay_embed(cell, d)
                        : cfg.pipeline == PipelineKind::MsThenDelay ? ms_then_delay(cell, d)
                                                                    : delay_then_ms(cell, d);
      if (cfg.noise.variant == DenoiseVariant::Tls) {
        used = tls_data(used, cfg.noise.rank);
      } else if (cfg.noise.variant == DenoiseVariant::NoiseResistant) {
        NoiseWindows w = split_windows(z, train, train + cfg.noise.gap, cfg.noise.filter_columns + d);
        used = noise_resistant_data(w.train, w.filter, d);
      }
      const DmdModel model = fit_companion(used, tol);
      if (cfg.indicator == IndicatorKind::KmdQuality)
        out.push_back(kmd_quality(used, *target, model.c_star).quality);
      else
        out.push_back(static_cast<double>(sigma_nontriv(model, used, cfg.mode_norm_tol).kept.size()));
    }
  return out;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  std::vector<std::vector<double>> per_member(cfg.ensemble_size);
  parallel_for(static_cast<std::size_t>(cfg.ensemble_size), cfg.threads,
               [&](std::size_t i) { per_member[i] = sweep_member(cfg, i); });
  SweepResult res;
  res.indicator = to_string(cfg.indicator);
  if (cfg.indicator == IndicatorKind::KmdQuality) res.indicator += std::string(":") + to_string(cfg.target);
  std::size_t k = 0;
  for (int d : cfg.delay_values)
    for (int theta : cfg.theta_values) {
      std::vector<double> v;
      for (const auto& m : per_member) v.push_back(m[k]);
      res.cells.push_back({theta, d, box_stats(std::move(v))});
      ++k;
    }
  return res;
}

std::string to_csv(const SweepResult& r) {
  std::string out = "theta,delays,min,q1,median,q3,max,count\n";
  for (const auto& c : r.cells) {
    out += std::to_string(c.theta) + ',' + std::to_string(c.delays) + ',' + format_double(c.stats.min) + ',' +
           format_double(c.stats.q1) + ',' + format_double(c.stats.median) + ',' + format_double(c.stats.q3) + ',' +
           format_double(c.stats.max) + ',' + std::to_string(c.stats.count) + '\n';
  }
  return out;
}

std::string to_json(const SweepResult& r) {
  json j;
  j["schema"] = "v1";
  j["indicator"] = r.indicator;
  j["cells"] = json::array();
  for (const auto& c : r.cells)
    j["cells"].push_back({{"theta", c.theta},
                          {"delays", c.delays},
                          {"min", c.stats.min},
                          {"q1", c.stats.q1},
                          {"median", c.stats.median},
                          {"q3", c.stats.q3},
                          {"max", c.stats.max},
                          {"count", c.stats.count}});
  return j.dump(2) + "\n";
}

SweepResult sweep_from_json(const std::string& text) {
  SweepResult r;
  try {
    const json j = json::parse(text);
    r.indicator = j.value("indicator", std::string());
    for (const auto& c : j.at("cells")) {
      SweepCell cell;
      cell.theta = c.at("theta").get<int>();
      cell.delays = c.at("delays").get<int>();
      cell.stats.min = c.at("min").get<double>();
      cell.stats.q1 = c.at("q1").get<double>();
      cell.stats.median = c.at("median").get<double>();
      cell.stats.q3 = c.at("q3").get<double>();
      cell.stats.max = c.at("max").get<double>();
      cell.stats.count = c.at("count").get<std::size_t>();
      r.cells.push_back(cell);
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("sweep json: ") + e.what());
  }
  return r;
}

SweepResult sweep_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line.rfind("theta,delays,min,q1,median,q3,max,count", 0) != 0)
    throw InvalidArgument("sweep csv: missing header");
  SweepResult r;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string f[8];
    for (auto& s : f)
      if (!std::getline(ls, s, ',')) throw InvalidArgument("sweep csv: short row");
    SweepCell c;
    try {
      c.theta = std::stoi(f[0]);
      c.delays = std::stoi(f[1]);
      c.stats.min = std::stod(f[2]);
      c.stats.q1 = std::stod(f[3]);
      c.stats.median = std::stod(f[4]);
      c.stats.q3 = std::stod(f[5]);
      c.stats.max = std::stod(f[6]);
      c.stats.count = std::stoul(f[7]);
    } catch (const std::exception&) {
      throw InvalidArgument("sweep csv: non-numeric field in '" + line + "'");
    }
    r.cells.push_back(c);
  }
  return r;
}

std::string to_svg(const SweepResult& r) {
  if (r.cells.empty()) throw InvalidArgument("svg: empty result");
  std::set<int> thetas, delays;
  double lo = r.cells.front().stats.min, hi = r.cells.front().stats.max;
  for (const auto& c : r.cells) {
    thetas.insert(c.theta);
    delays.insert(c.delays);
    lo = std::min(lo, c.stats.min);
    hi = std::max(hi, c.stats.max);
  }
  const bool logy = r.indicator == "dft_distance";
  auto ty = [&](double v) { return logy ? std::log10(std::max(v, 1e-16)) : v; };
  double ylo = ty(lo), yhi = ty(hi);
  if (yhi - ylo < 1e-12) {
    ylo -= 0.5;
    yhi += 0.5;
  }
  const double W = 960, H = 480, L = 70, R = 20, T = 30, B = 50;
  const double slot = (W - L - R) / static_cast<double>(thetas.size());
  const double bw = slot * 0.8 / static_cast<double>(delays.size());
  auto px = [&](int theta, int d) {
    const auto ti = std::distance(thetas.begin(), thetas.find(theta));
    const auto di = std::distance(delays.begin(), delays.find(d));
    return L + slot * (static_cast<double>(ti) + 0.1) + bw * static_cast<double>(di);
  };
  auto py = [&](double v) { return T + (H - T - B) * (1.0 - (ty(v) - ylo) / (yhi - ylo)); };
  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  std::ostringstream os;
  os.precision(6);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << ' ' << H << "\">\n"
     << "  <title>" << r.indicator << "</title>\n"
     << "  <rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
     << "  <line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n"
     << "  <line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n"
     << "  <text x=\"" << L / 4 << "\" y=\"" << T - 10 << "\" font-size=\"12\">" << (logy ? "log10 " : "")
     << r.indicator << "</text>\n";
  for (int t : thetas)
    os << "  <text x=\"" << px(t, *delays.begin()) << "\" y=\"" << H - B + 18 << "\" font-size=\"10\">" << t
       << "</text>\n";
  os << "  <text x=\"" << (W / 2) << "\" y=\"" << H - 10 << "\" font-size=\"12\">theta</text>\n";
  std::size_t ci = 0;
  for (int d : delays) {
    const char* col = palette[ci++ % 10];
    os << "  <g class=\"delay\" data-delays=\"" << d << "\" stroke=\"" << col << "\" fill=\"" << col
       << "\" fill-opacity=\"0.35\">\n";
    for (const auto& c : r.cells) {
      if (c.delays != d) continue;
      const double x = px(c.theta, d), xm = x + bw / 2;
      os << "    <line x1=\"" << xm << "\" y1=\"" << py(c.stats.min) << "\" x2=\"" << xm << "\" y2=\""
         << py(c.stats.max) << "\"/>\n"
         << "    <rect x=\"" << x << "\" y=\"" << py(c.stats.q3) << "\" width=\"" << bw * 0.9 << "\" height=\""
         << std::max(0.5, py(c.stats.q1) - py(c.stats.q3)) << "\"/>\n"
         << "    <line x1=\"" << x << "\" y1=\"" << py(c.stats.median) << "\" x2=\"" << x + bw * 0.9 << "\" y2=\""
         << py(c.stats.median) << "\" stroke-width=\"2\"/>\n";
    }
    os << "  </g>\n";
  }
  ci = 0;
  double ly = T;
  for (int d : delays) {
    os << "  <text x=\"" << W - R - 80 << "\" y=\"" << ly + 12 << "\" font-size=\"11\" fill=\"" << palette[ci++ % 10]
       << "\">d = " << d << "</text>\n";
    ly += 14;
  }
  os << "</svg>\n";
  return os.str();
}

void export_result(const SweepResult& r, OutputFormat f, const std::string& path) {
  if (r.cells.empty()) throw InvalidArgument("export: empty result");
  const std::string body = f == OutputFormat::Csv ? to_csv(r) : f == OutputFormat::Json ? to_json(r) : to_svg(r);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("export: cannot write '" + path + "'");
  out << body;
  if (!out) throw InvalidArgument("export: write failed for '" + path + "'");
}

}  // namespace cdmd
