#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "cdmd/dft.hpp"
#include "cdmd/preprocess.hpp"
#include "cdmd/pruning.hpp"
#include "cdmd/sweep.hpp"

using namespace cdmd;
using nlohmann::json;

namespace {

struct Source {
  std::string system = "lti1a";
  std::uint64_t seed = 1;
  int observables = 1;
  bool full_rank = false;
  double scale = 1.0;
  double noise_std = 0.0;
  std::string input;
};

struct Fit {
  int theta = 10;
  int delays = 6;
  std::string pipeline;  // empty: per-command default
  double tol = 1e-8;
  double mode_norm_tol = kModeNormThreshold;
};

void add_source(CLI::App* app, Source& s) {
  app->add_option("--system", s.system, "lti1a | lti1b | lti3 | vdp")->capture_default_str();
  app->add_option("--seed", s.seed, "Master seed")->capture_default_str();
  app->add_option("--observables", s.observables, "Observables per snapshot (LTI)")->capture_default_str();
  app->add_flag("--full-rank", s.full_rank, "Draw a full-column-rank dictionary");
  app->add_option("--scale", s.scale, "Initial state scale (LTI)")->capture_default_str();
  app->add_option("--noise-std", s.noise_std, "Additive noise standard deviation")->capture_default_str();
  app->add_option("--input", s.input, "Trajectory CSV (overrides --system)");
}

void add_fit(CLI::App* app, Fit& f) {
  app->add_option("--theta", f.theta, "Companion order")->capture_default_str();
  app->add_option("--delays", f.delays, "Time delays d")->capture_default_str();
  app->add_option("--pipeline", f.pipeline, "raw | ms_then_delay | delay_then_ms");
  app->add_option("--tol", f.tol, "Relative SVD threshold")->capture_default_str();
}

SystemSpec system_spec(const Source& s) {
  SystemSpec sys;
  sys.kind = parse_system_kind(s.system);
  sys.seed = s.seed;
  sys.observables = s.observables;
  sys.full_rank_dictionary = s.full_rank;
  sys.signal_scale = s.scale;
  return sys;
}

TimeSeries trajectory(const Source& s, Eigen::Index length) {
  TimeSeries z = [&] {
    if (!s.input.empty()) {
      TimeSeries in = ingest_csv(s.input);
      if (in.snapshots() < length)
        throw ConfigError("input has " + std::to_string(in.snapshots()) + " snapshots, need " + std::to_string(length));
      return in.head(length);
    }
    return member_trajectory(system_spec(s), 0, length);
  }();
  if (s.noise_std > 0.0)
    z = add_noise(z, {s.noise_std, splitmix64(member_seed(s.seed, 0) ^ 0x6e6f697365ULL)});
  return z;
}

TimeSeries prepare(const TimeSeries& z, int d, PipelineKind p) {
  switch (p) {
    case PipelineKind::Raw: return delay_embed(z, d);
    case PipelineKind::MsThenDelay: return ms_then_delay(z, d);
    case PipelineKind::DelayThenMs: return delay_then_ms(z, d);
  }
  return z;
}

PipelineDescriptor descriptor(const std::string& label, int d, PipelineKind p, int theta) {
  PipelineDescriptor desc;
  desc.source_label = label;
  desc.theta = theta;
  if (p == PipelineKind::MsThenDelay) desc.steps.push_back(PipelineStep::mean_subtract());
  desc.steps.push_back(PipelineStep::delay(d));
  if (p == PipelineKind::DelayThenMs) desc.steps.push_back(PipelineStep::mean_subtract());
  return desc;
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

json cjson(const CVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(cjson(v(i)));
  return a;
}

json rjson(const RVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json box_json(const BoxStats& b) {
  return {{"min", b.min}, {"q1", b.q1}, {"median", b.median}, {"q3", b.q3}, {"max", b.max}, {"count", b.count}};
}

std::vector<int> int_list(const std::string& text) {
  std::vector<int> out;
  try {
    if (auto colon = text.find(':'); colon != std::string::npos) {
      const int a = std::stoi(text.substr(0, colon));
      const int b = std::stoi(text.substr(colon + 1));
      for (int x = a; x <= b; ++x) out.push_back(x);
    } else {
      std::stringstream ss(text);
      for (std::string item; std::getline(ss, item, ',');) out.push_back(std::stoi(item));
    }
  } catch (const std::logic_error&) {
    throw ConfigError("bad integer list '" + text + "'");
  }
  if (out.empty()) throw ConfigError("empty integer list '" + text + "'");
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write '" + path + "'");
  f << text;
}

void emit(const json& j, const std::string& path) { emit(j.dump(2) + "\n", path); }

std::string label(const Source& s) { return s.input.empty() ? s.system : s.input; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Companion-matrix DMD diagnostics"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out;
  app.add_option("--out", out, "Output file (default stdout)");

  Source src;
  Fit fit;

  auto* simulate = app.add_subcommand("simulate", "Emit a trajectory CSV");
  add_source(simulate, src);
  int snapshots = 36;
  std::string layout = "cell";
  simulate->add_option("--snapshots", snapshots, "Number of snapshots")->capture_default_str();
  simulate->add_option("--format", layout, "cell | paired")->capture_default_str();

  auto* fit_cmd = app.add_subcommand("fit", "Fit one companion DMD model");
  add_source(fit_cmd, src);
  add_fit(fit_cmd, fit);
  bool reconstruct_flag = false;
  fit_cmd->add_flag("--reconstruct", reconstruct_flag, "Report the modal reconstruction error");

  auto* dft_cmd = app.add_subcommand("dft-distance", "Relative distance of c_ms to the DFT vector");
  add_source(dft_cmd, src);
  add_fit(dft_cmd, fit);

  auto* prune_cmd = app.add_subcommand("prune", "Mode-norm spectral pruning");
  add_source(prune_cmd, src);
  add_fit(prune_cmd, fit);
  prune_cmd->add_option("--mode-norm-tol", fit.mode_norm_tol, "Relative mode-norm threshold")->capture_default_str();

  auto* kmd_cmd = app.add_subcommand("kmd-quality", "KMD-Quality against the system spectrum");
  add_source(kmd_cmd, src);
  add_fit(kmd_cmd, fit);
  std::string target = "sigma";
  kmd_cmd->add_option("--target", target, "sigma | sigma_minus_one | sigma_plus_one")->capture_default_str();

  auto* sweep_cmd = app.add_subcommand("sweep", "Ensemble sweep over (theta, d)");
  std::string config_path, theta_list = "2:12", delay_list = "0,3,6,13", indicator = "dft_distance";
  std::string sweep_pipeline, format = "csv";
  int ensemble = 10, threads = 1;
  add_source(sweep_cmd, src);
  sweep_cmd->add_option("--config", config_path, "JSON config (schema v1)");
  sweep_cmd->add_option("--theta", theta_list, "List '2,3,4' or range '2:12'")->capture_default_str();
  sweep_cmd->add_option("--delays", delay_list, "List or range of delays")->capture_default_str();
  sweep_cmd->add_option("--ensemble", ensemble, "Ensemble size")->capture_default_str();
  sweep_cmd->add_option("--indicator", indicator, "dft_distance | kmd_quality | pruned_spectrum")
      ->capture_default_str();
  sweep_cmd->add_option("--target", target, "KMD-Quality target")->capture_default_str();
  sweep_cmd->add_option("--pipeline", sweep_pipeline, "Pipeline (default depends on indicator)");
  sweep_cmd->add_option("--tol", fit.tol, "Relative SVD threshold")->capture_default_str();
  int tls_rank = 7;
  sweep_cmd->add_option("--rank", tls_rank, "TLS rank (with --denoise tls)")->capture_default_str();
  sweep_cmd->add_option("--threads", threads, "Worker threads")->capture_default_str();
  sweep_cmd->add_option("--format", format, "csv | json | svg")->capture_default_str();
  std::string variant = "plain";
  sweep_cmd->add_option("--denoise", variant, "plain | tls")->capture_default_str();

  auto* denoise_cmd = app.add_subcommand("denoise", "Noise study: plain vs TLS vs noise-resistant");
  NoiseStudyConfig ns;
  std::string ns_system = "lti1a";
  denoise_cmd->add_option("--system", ns_system, "lti1a | lti1b | lti3")->capture_default_str();
  denoise_cmd->add_option("--seed", ns.seed)->capture_default_str();
  denoise_cmd->add_option("--observables", ns.m)->capture_default_str();
  denoise_cmd->add_option("--ensemble", ns.ensemble)->capture_default_str();
  denoise_cmd->add_option("--noise-std", ns.noise_std)->capture_default_str();
  denoise_cmd->add_option("--scale", ns.signal_scale, "Initial state scale")->capture_default_str();
  denoise_cmd->add_option("--delays", ns.delays)->capture_default_str();
  denoise_cmd->add_option("--theta", ns.theta)->capture_default_str();
  denoise_cmd->add_option("--rank", ns.rank)->capture_default_str();
  denoise_cmd->add_option("--filter-columns", ns.filter_columns)->capture_default_str();
  denoise_cmd->add_option("--threads", threads)->capture_default_str();

  auto* suff_cmd = app.add_subcommand("sufficiency", "Lower bound on the spectrum size from the DFT jump");
  add_source(suff_cmd, src);
  int rmax = 10;
  std::string suff_theta;
  suff_cmd->add_option("--rmax", rmax, "Assumed upper bound on the spectrum size")->capture_default_str();
  suff_cmd->add_option("--theta", suff_theta, "Theta list or range (default 2:rmax+4)");
  suff_cmd->add_option("--ensemble", ensemble, "Trajectories (ignored with --input)")->capture_default_str();
  suff_cmd->add_option("--tol", fit.tol, "Relative SVD threshold")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const SvdThreshold tol(fit.tol);
    if (fit.pipeline.empty()) fit.pipeline = dft_cmd->parsed() ? "delay_then_ms" : "raw";
    const PipelineKind pipeline = parse_pipeline(fit.pipeline);
    const Eigen::Index cell_length = fit.theta + fit.delays + 1;
    if (fit.theta < 1 || fit.delays < 0) throw ConfigError("theta must be >= 1 and delays >= 0");

    if (simulate->parsed()) {
      if (snapshots < 2) throw ConfigError("--snapshots must be >= 2");
      if (layout != "cell" && layout != "paired") throw ConfigError("unknown layout '" + layout + "'");
      emit(format_csv(trajectory(src, snapshots), layout == "paired" ? CsvLayout::Paired : CsvLayout::Cell), out);
    } else if (fit_cmd->parsed()) {
      const TimeSeries used = prepare(trajectory(src, cell_length), fit.delays, pipeline);
      const DmdModel m = fit_companion(used, descriptor(label(src), fit.delays, pipeline, fit.theta), tol);
      json j{{"pipeline", m.pipeline.describe()},
             {"theta", fit.theta},
             {"delays", fit.delays},
             {"c_star", cjson(m.c_star)},
             {"eigenvalues", cjson(m.eigenvalues)},
             {"residual_norm", m.residual.norm()},
             {"degenerate", m.degenerate},
             {"mode_norms", rjson(unit_mode_norms(m, used.x()))}};
      if (reconstruct_flag) j["reconstruction_error"] = (reconstruct(m, used.x()) - used.x()).norm();
      emit(j, out);
    } else if (dft_cmd->parsed()) {
      if (pipeline != PipelineKind::DelayThenMs) throw ConfigError("dft-distance requires delay_then_ms");
      const auto [model, r] = fit_mean_subtracted(trajectory(src, cell_length), fit.delays, tol);
      emit(json{{"theta", r.theta},
                {"delays", r.d},
                {"distance", r.distance},
                {"equivalent", r.equivalent},
                {"decision_tol", r.decision_tol},
                {"c_ms", cjson(r.c_ms)},
                {"eigenvalues", cjson(model.eigenvalues)}},
           out);
    } else if (prune_cmd->parsed()) {
      const TimeSeries used = prepare(trajectory(src, cell_length), fit.delays, pipeline);
      const DmdModel m = fit_companion(used, tol);
      const PrunedSpectrum p = sigma_nontriv(m, used, fit.mode_norm_tol);
      emit(json{{"theta", fit.theta},
                {"delays", fit.delays},
                {"kept", cjson(p.kept.values())},
                {"discarded", cjson(p.discarded.values())},
                {"eigenvalues", cjson(m.eigenvalues)},
                {"mode_norms", rjson(p.mode_norms)},
                {"norm_threshold", p.norm_threshold}},
           out);
    } else if (kmd_cmd->parsed()) {
      if (!src.input.empty()) throw ConfigError("kmd-quality needs a generated LTI system, not --input");
      const SystemSpec sys = system_spec(src);
      if (sys.kind == SystemKind::Vdp) throw ConfigError("kmd-quality is undefined for vdp");
      const SpectrumSet b = target_set(system_spectrum(sys), parse_target(target));
      const TimeSeries used = prepare(trajectory(src, cell_length), fit.delays, pipeline);
      const DmdModel m = fit_companion(used, tol);
      const KmdQualityReport q = kmd_quality(used, b, m.c_star);
      emit(json{{"theta", fit.theta},
                {"delays", fit.delays},
                {"target", cjson(b.values())},
                {"rho_subset", q.rho_subset},
                {"delta_trivial", q.delta_trivial},
                {"quality", q.quality}},
           out);
    } else if (sweep_cmd->parsed()) {
      SweepConfig cfg;
      if (!config_path.empty()) {
        cfg = load_sweep_config(config_path);
        if (sweep_cmd->count("--threads")) cfg.threads = threads;
        if (sweep_cmd->count("--format")) cfg.format = parse_format(format);
      } else {
        cfg.system = system_spec(src);
        cfg.theta_values = int_list(theta_list);
        cfg.delay_values = int_list(delay_list);
        cfg.ensemble_size = ensemble;
        json ind{{"kind", indicator}, {"target", target}};
        json tmp{{"schema", "v1"}, {"system", "lti1a"}, {"theta", 2}, {"delays", 0}, {"indicator", ind}};
        if (!sweep_pipeline.empty()) tmp["pipeline"] = sweep_pipeline;
        const SweepConfig parsed = parse_sweep_config(tmp.dump());
        cfg.indicator = parsed.indicator;
        cfg.target = parsed.target;
        cfg.pipeline = parsed.pipeline;
        cfg.svd_tol = fit.tol;
        cfg.noise.std_dev = src.noise_std;
        if (variant == "tls") cfg.noise.variant = DenoiseVariant::Tls;
        else if (variant != "plain") throw ConfigError("unknown --denoise '" + variant + "'");
        cfg.noise.rank = tls_rank;
        cfg.threads = threads;
        cfg.format = parse_format(format);
      }
      if (!out.empty()) cfg.output_path = out;
      const SweepResult r = run_sweep(cfg);
      if (cfg.output_path.empty())
        emit(cfg.format == OutputFormat::Csv ? to_csv(r) : cfg.format == OutputFormat::Json ? to_json(r) : to_svg(r), "");
      else
        export_result(r, cfg.format, cfg.output_path);
    } else if (denoise_cmd->parsed()) {
      ns.preset = parse_lti_preset(ns_system);
      if (ns.preset == LtiPreset::Custom) throw ConfigError("denoise needs a preset system");
      const NoiseStudyResult r = noise_study(ns, threads);
      emit(json{{"system", ns_system},
                {"noise_std", ns.noise_std},
                {"theta", ns.theta},
                {"delays", ns.delays},
                {"rank", ns.rank},
                {"plain", box_json(box_stats(r.plain))},
                {"tls", box_json(box_stats(r.tls))},
                {"noise_resistant", box_json(box_stats(r.noise_resistant))}},
           out);
    } else if (suff_cmd->parsed()) {
      const std::vector<int> thetas = int_list(suff_theta.empty() ? "2:" + std::to_string(rmax + 4) : suff_theta);
      const int tmax = *std::max_element(thetas.begin(), thetas.end());
      const Eigen::Index length = tmax + rmax;
      std::vector<TimeSeries> members;
      if (!src.input.empty()) {
        members.push_back(trajectory(src, length));
      } else {
        if (ensemble < 1) throw ConfigError("--ensemble must be >= 1");
        const SystemSpec sys = system_spec(src);
        for (int i = 0; i < ensemble; ++i) members.push_back(member_trajectory(sys, i, length));
      }
      const SufficiencyReport r = sufficiency_scan(members, rmax, thetas, tol);
      json d = json::object();
      for (const auto& [theta, b] : r.distances) d[std::to_string(theta)] = box_json(b);
      emit(json{{"r_max_assumed", r.r_max_assumed},
                {"delays", r.delays},
                {"distances", d},
                {"jump_location", r.jump_location ? json(*r.jump_location) : json(nullptr)},
                {"lower_bound_on_r", r.lower_bound_on_r ? json(*r.lower_bound_on_r) : json(nullptr)}},
           out);
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
