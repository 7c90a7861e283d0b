// Copyright 2026 The debias Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>

#include "CLI11.hpp"
#include "debias/analysis.hpp"
#include "debias/io.hpp"
#include "debias/pipeline.hpp"
#include "debias/solver.hpp"
#include "json.hpp"

namespace debias::cli {

namespace {

using Json = nlohmann::ordered_json;

// Bad flag values, missing inputs, inconsistent options.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

struct CommonFlags {
  std::string preset;
  std::string config_file;
  std::vector<std::string> sets;
  std::string output_dir;
  std::string input;
  std::string truth;
  double alpha = 0.0;
  double gamma = 0.0;
  double noise_std = 0.0;
  std::uint64_t seed = 0;
  int max_iter = 0;
  std::string step_rule;
  std::string regularizer;
  std::string method;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* gamma_opt = nullptr;
  CLI::Option* noise_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* max_iter_opt = nullptr;
};

void add_common(CLI::App* app, CommonFlags& c, bool io = true) {
  app->add_option("--preset", c.preset, "Parameter preset: table1, deconv, default");
  app->add_option("--config", c.config_file, "key=value configuration file");
  app->add_option("--set", c.sets, "Override one configuration key (key=value)");
  app->add_option("--output-dir", c.output_dir,
                  "Output directory (default: $DEBIAS_OUTPUT_DIR or .)");
  if (io) {
    app->add_option("--input", c.input, "Data f as PGM or CSV (default: noisy phantom)");
    app->add_option("--truth", c.truth, "Ground truth as PGM or CSV, for PSNR");
  }
  c.alpha_opt = app->add_option("--alpha", c.alpha, "Regularization weight");
  c.gamma_opt = app->add_option("--gamma", c.gamma, "Soft-constraint weight of step 2");
  c.noise_opt = app->add_option("--noise-std", c.noise_std, "Noise standard deviation");
  c.seed_opt = app->add_option("--seed", c.seed, "Noise seed");
  c.max_iter_opt = app->add_option("--max-iter", c.max_iter, "Iteration cap per solve");
  app->add_option("--step-rule", c.step_rule, "paper_fixed or norm_adaptive");
  app->add_option("--regularizer", c.regularizer, "aniso or iso");
  app->add_option("--method", c.method, "bregman, icb or both");
}

ExperimentConfig build_config(const CommonFlags& c,
                              const std::string& default_preset) {
  try {
    ExperimentConfig cfg =
        ExperimentConfig::preset(c.preset.empty() ? default_preset : c.preset);
    if (!c.config_file.empty())
      cfg = parse_config(read_file(c.config_file), cfg);
    for (const std::string& kv : c.sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw UsageError("--set expects key=value, got '" + kv + "'");
      set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (c.alpha_opt->count() > 0) cfg.pd.alpha = c.alpha;
    if (c.gamma_opt->count() > 0) cfg.pd.gamma = c.gamma;
    if (c.noise_opt->count() > 0) {
      if (!(c.noise_std >= 0.0)) throw UsageError("--noise-std must be >= 0");
      cfg.noise_std = c.noise_std;
    }
    if (c.seed_opt->count() > 0) cfg.noise_seed = Seed{c.seed};
    if (c.max_iter_opt->count() > 0) cfg.pd.max_iter = c.max_iter;
    if (!c.step_rule.empty()) cfg.pd.step_rule = parse_step_rule(c.step_rule);
    if (!c.regularizer.empty())
      cfg.pd.regularizer = parse_regularizer(c.regularizer);
    if (!c.method.empty()) cfg.method = parse_debias_method(c.method);
    if (!c.output_dir.empty()) {
      cfg.output_dir = c.output_dir;
    } else if (cfg.output_dir == ".") {
      cfg.output_dir = default_output_dir();
    }
    cfg.pd.validate();
    return cfg;
  } catch (const ContractViolation& e) {
    throw UsageError(e.what());
  } catch (const FormatError& e) {
    throw UsageError(e.what());
  }
}

GridSignal load_signal(const std::string& path) {
  const std::string ext = std::filesystem::path(path).extension().string();
  if (ext == ".pgm") return load_pgm(path);
  if (ext == ".csv") return load_signal_csv(path);
  throw UsageError("unsupported file type '" + path + "' (expected .pgm or .csv)");
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.output_dir);
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

// 2-D signals as PGM, 1-D as CSV. Returns the written path.
std::string write_signal(const ExperimentConfig& cfg, const std::string& stem,
                         const GridSignal& s) {
  if (!s.shape().is_1d()) {
    const std::string p = out_path(cfg, stem + ".pgm");
    save_pgm(s, p);
    return p;
  }
  const std::string p = out_path(cfg, stem + ".csv");
  save_signal_csv(s, p);
  return p;
}

struct Problem {
  LinearMap a;
  LinearMap gamma;
  GridSignal f;
  std::optional<GridSignal> truth;
  std::optional<GridSignal> f_clean;  // A u* for generated data
};

LinearMap forward_map(const ExperimentConfig& cfg, Shape shape) {
  if (cfg.forward == ForwardKind::kIdentity) return LinearMap::identity(shape);
  if (!shape.is_1d())
    throw UsageError("convolution1d forward operator needs 1-D data, got " +
                     to_string(shape));
  try {
    return LinearMap::convolution1d(shape, parse_kernel(cfg.kernel));
  } catch (const ContractViolation& e) {
    throw UsageError(e.what());
  }
}

LinearMap penalty_map(const ExperimentConfig& cfg, Shape shape) {
  return cfg.penalty == PenaltyKind::kGradient2d ? LinearMap::gradient2d(shape)
                                                 : LinearMap::identity(shape);
}

Problem make_problem(const ExperimentConfig& cfg, const CommonFlags& flags) {
  if (!flags.input.empty()) {
    GridSignal f = load_signal(flags.input);
    std::optional<GridSignal> truth;
    if (!flags.truth.empty()) {
      truth = load_signal(flags.truth);
      if (truth->shape() != f.shape())
        throw UsageError("--truth shape " + to_string(truth->shape()) +
                         " differs from --input shape " + to_string(f.shape()));
    }
    return {forward_map(cfg, f.shape()), penalty_map(cfg, f.shape()), f,
            truth, std::nullopt};
  }
  GridSignal truth = flags.truth.empty() ? make_phantom(cfg.phantom)
                                         : load_signal(flags.truth);
  LinearMap a = forward_map(cfg, truth.shape());
  const VectorField af = a.apply(truth);
  GridSignal clean(truth.shape(),
                   std::vector<double>(af.values().begin(), af.values().end()));
  GridSignal f = add_gaussian_noise(clean, cfg.noise_std, cfg.noise_seed);
  return {a, penalty_map(cfg, truth.shape()), f, truth, clean};
}

Json report_json(const SolveReport& r) {
  Json j;
  j["iterations"] = r.iterations;
  j["gap"] = num(r.final_gap);
  j["termination"] = to_string(r.termination);
  return j;
}

double psnr_value(const GridSignal& u, const std::optional<GridSignal>& t) {
  return t ? psnr(u, *t).db : std::nan("");
}

bool diverged(const SolveReport& r) {
  return r.termination == Termination::kDiverged;
}

// ---- subcommands ----------------------------------------------------------

int cmd_denoise(const ExperimentConfig& cfg, const CommonFlags& flags,
                const std::string& name, std::ostream& out) {
  const Problem pb = make_problem(cfg, flags);
  const StepOneResult r = solve_step1(pb.a, pb.gamma, pb.f, cfg.pd);
  Json j;
  j["command"] = name;
  j["alpha"] = cfg.pd.alpha;
  j["step1"] = report_json(r.report);
  j["psnr"] = {{"f", num(psnr_value(pb.f, pb.truth))},
               {"u_alpha", num(psnr_value(r.u, pb.truth))}};
  j["outputs"] = {write_signal(cfg, "u_alpha", r.u)};
  out << j.dump() << "\n";
  return diverged(r.report) ? kExitFailure : kExitOk;
}

int cmd_debias(const ExperimentConfig& cfg, const CommonFlags& flags,
               std::ostream& out) {
  const Problem pb = make_problem(cfg, flags);
  const DebiasResult r = run_two_step(pb.a, pb.gamma, pb.f, cfg.pd, cfg.method);

  Json j;
  j["command"] = "debias";
  j["method"] = to_string(cfg.method);
  j["alpha"] = cfg.pd.alpha;
  j["gamma"] = cfg.pd.gamma;
  j["step1"] = report_json(r.step1);
  Json psnrs = {{"f", num(psnr_value(pb.f, pb.truth))},
                {"u_alpha", num(psnr_value(r.u_alpha, pb.truth))}};
  std::vector<std::string> files = {write_signal(cfg, "u_alpha", r.u_alpha)};

  std::string csv =
      "stage,iterations,final_gap,residual2,residual3,termination,psnr,"
      "manifold_distance\n";
  const auto row = [&csv, &pb](const std::string& stage, const SolveReport& s,
                               const GridSignal& u, double dist) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%d,%.17g,%.17g,%.17g,%s,%.17g,%.17g\n",
                  stage.c_str(), s.iterations, s.final_gap, s.residual2,
                  s.residual3, to_string(s.termination).c_str(),
                  psnr_value(u, pb.truth), dist);
    csv += buf;
  };
  row("step1", r.step1, r.u_alpha, 0.0);
  bool failed = diverged(r.step1);
  if (r.u_hat_b) {
    j["bregman"] = report_json(*r.step2_b);
    j["bregman"]["manifold_distance"] =
        num(r.manifold_b ? r.manifold_b->distance : std::nan(""));
    psnrs["u_hat_b"] = num(psnr_value(*r.u_hat_b, pb.truth));
    files.push_back(write_signal(cfg, "u_hat_b", *r.u_hat_b));
    row("bregman", *r.step2_b, *r.u_hat_b,
        r.manifold_b ? r.manifold_b->distance : std::nan(""));
    failed = failed || diverged(*r.step2_b);
  }
  if (r.u_hat_ic) {
    j["icb"] = report_json(*r.step2_ic);
    j["icb"]["manifold_distance"] =
        num(r.manifold_ic ? r.manifold_ic->distance : std::nan(""));
    psnrs["u_hat_ic"] = num(psnr_value(*r.u_hat_ic, pb.truth));
    files.push_back(write_signal(cfg, "u_hat_ic", *r.u_hat_ic));
    row("icb", *r.step2_ic, *r.u_hat_ic,
        r.manifold_ic ? r.manifold_ic->distance : std::nan(""));
    failed = failed || diverged(*r.step2_ic);
  }
  const std::string report = out_path(cfg, "report.csv");
  write_file(report, csv);
  files.push_back(report);
  j["psnr"] = psnrs;
  j["outputs"] = files;
  out << j.dump() << "\n";
  return failed ? kExitFailure : kExitOk;
}

int cmd_bregman(const ExperimentConfig& cfg, const CommonFlags& flags,
                int steps, bool discrepancy, std::ostream& out) {
  const Problem pb = make_problem(cfg, flags);
  std::optional<double> level;
  if (discrepancy) level = cfg.noise_std;
  const BregmanTrace tr = run_bregman_iterations(
      pb.a, pb.gamma, pb.f, cfg.pd.alpha, steps, level, cfg.pd);
  std::string csv = "k,residual,psnr,iterations,termination\n";
  for (std::size_t k = 0; k < tr.iterates.size(); ++k) {
    const BregmanIterate& it = tr.iterates[k];
    char buf[200];
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%d,%s\n", k + 1,
                  it.residual, psnr_value(it.u, pb.truth),
                  it.report.iterations,
                  to_string(it.report.termination).c_str());
    csv += buf;
  }
  const std::string trace_path = out_path(cfg, "bregman.csv");
  write_file(trace_path, csv);
  const GridSignal& last = tr.iterates.back().u;
  Json j;
  j["command"] = "bregman-iter";
  j["alpha"] = cfg.pd.alpha;
  j["steps"] = tr.iterates.size();
  j["stopped_on_discrepancy"] = tr.stopped_on_discrepancy;
  j["failures"] = tr.failures;
  j["residual"] = num(tr.iterates.back().residual);
  j["psnr"] = {{"f", num(psnr_value(pb.f, pb.truth))},
               {"u_bregman", num(psnr_value(last, pb.truth))}};
  j["outputs"] = {write_signal(cfg, "u_bregman", last), trace_path};
  out << j.dump() << "\n";
  bool failed = false;
  for (const auto& it : tr.iterates) failed = failed || diverged(it.report);
  return failed ? kExitFailure : kExitOk;
}

int cmd_sweep(const ExperimentConfig& cfg, const CommonFlags& flags,
              std::size_t mc, std::ostream& out) {
  std::vector<double> alphas;
  try {
    alphas = parse_alpha_range(cfg.alphas);
  } catch (const ContractViolation& e) {
    throw UsageError(e.what());
  }
  const Problem pb = make_problem(cfg, flags);
  std::optional<SweepMonteCarlo> mcs;
  if (mc > 0) {
    if (!pb.truth || !pb.f_clean)
      throw UsageError("--mc needs generated data (no --input)");
    mcs = SweepMonteCarlo{*pb.truth, *pb.f_clean, cfg.noise_std, mc,
                          cfg.mc_seed, cfg.threads};
  }
  const SweepCurve curve = sweep_regularization(
      SweepProblem{pb.a, pb.gamma, pb.f, pb.truth}, alphas, cfg.pd, cfg.method,
      mcs);
  const std::string path = out_path(cfg, "sweep.csv");
  save_sweep_csv(curve, path);
  std::size_t incomplete = 0;
  for (const auto& r : curve.rows) incomplete += r.complete ? 0 : 1;
  Json j;
  j["command"] = "sweep";
  j["rows"] = curve.rows.size();
  j["incomplete"] = incomplete;
  j["monte_carlo"] = mc;
  j["outputs"] = {path};
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_bias_mc(const ExperimentConfig& cfg, const CommonFlags& flags,
                std::ostream& out) {
  if (!flags.input.empty())
    throw UsageError("bias-mc draws its own noisy data; use --truth, not --input");
  const Problem pb = make_problem(cfg, flags);
  const PdConfig pd = cfg.pd;
  const Estimator first = [&](const GridSignal& f) {
    return solve_step1(pb.a, pb.gamma, f, pd).u;
  };
  const auto debiased = [&](DebiasMethod m) -> Estimator {
    return [&pb, pd, m](const GridSignal& f) {
      DebiasResult d = run_two_step(pb.a, pb.gamma, f, pd, m);
      return m == DebiasMethod::kIcb ? *d.u_hat_ic : *d.u_hat_b;
    };
  };
  MonteCarloOptions mo;
  mo.realizations = cfg.mc_realizations;
  mo.base_seed = cfg.mc_seed;
  mo.threads = cfg.threads;
  if (mo.realizations < 2) throw UsageError("need at least 2 realizations");

  Json j;
  j["command"] = "bias-mc";
  j["alpha"] = pd.alpha;
  j["realizations"] = mo.realizations;
  std::vector<std::string> files;
  const auto record = [&](const std::string& key, const BiasReport& b) {
    j[key] = {{"statistical_bias_rms", num(b.statistical_bias_rms)},
              {"std_dev_rms", num(b.std_dev_rms)},
              {"deterministic_bias_rms", num(b.deterministic_bias_rms)},
              {"failures", b.failures}};
    if (b.method_bias_rms) {
      j[key]["model_bias_rms"] = num(*b.model_bias_rms);
      j[key]["method_bias_rms"] = num(*b.method_bias_rms);
    }
    const std::string p = out_path(cfg, "bias_" + key + ".csv");
    save_bias_csv(b, p);
    files.push_back(p);
  };
  record("u_alpha", monte_carlo_bias_variance(first, *pb.truth, *pb.f_clean,
                                              cfg.noise_std, mo));
  mo.first_step = &first;
  if (cfg.method != DebiasMethod::kIcb)
    record("u_hat_b",
           monte_carlo_bias_variance(debiased(DebiasMethod::kBregman),
                                     *pb.truth, *pb.f_clean, cfg.noise_std, mo));
  if (cfg.method != DebiasMethod::kBregman)
    record("u_hat_ic",
           monte_carlo_bias_variance(debiased(DebiasMethod::kIcb), *pb.truth,
                                     *pb.f_clean, cfg.noise_std, mo));
  j["outputs"] = files;
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_phantom(const ExperimentConfig& cfg, const std::string& output,
                bool noisy, std::ostream& out) {
  const GridSignal p = make_phantom(cfg.phantom);
  std::vector<std::string> files;
  const auto save_as = [](const GridSignal& s, const std::filesystem::path& path) {
    if (path.extension() == ".pgm") {
      save_pgm(s, path.string());
    } else if (path.extension() == ".csv") {
      save_signal_csv(s, path.string());
    } else {
      throw UsageError("--output must end in .pgm or .csv");
    }
  };
  if (!output.empty()) {
    const std::filesystem::path path(output);
    save_as(p, path);
    files.push_back(output);
    if (noisy) {
      // Noisy copy next to the output: clean.pgm -> clean_noisy.pgm.
      std::filesystem::path n = path;
      n.replace_filename(path.stem().string() + "_noisy" + path.extension().string());
      save_as(add_gaussian_noise(p, cfg.noise_std, cfg.noise_seed), n);
      files.push_back(n.string());
    }
  } else {
    files.push_back(write_signal(cfg, "phantom", p));
    if (noisy)
      files.push_back(write_signal(
          cfg, "phantom_noisy",
          add_gaussian_noise(p, cfg.noise_std, cfg.noise_seed)));
  }
  Json j;
  j["command"] = "phantom";
  j["kind"] = to_string(cfg.phantom.kind);
  j["shape"] = {p.rows(), p.cols()};
  j["outputs"] = files;
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_selftest(std::ostream& out, std::ostream& err) {
  const std::vector<SelftestCase> cases = run_selftest();
  std::size_t failed = 0;
  for (const SelftestCase& c : cases) {
    err << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) err << "  (" << c.detail << ")";
    err << "\n";
    failed += c.passed ? 0 : 1;
  }
  Json j;
  j["command"] = "selftest";
  j["passed"] = cases.size() - failed;
  j["failed"] = failed;
  out << j.dump() << "\n";
  return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
  CLI::App app{"Two-step bias reduction for l1-type variational regularization"};
  app.name(args.empty() ? "debias" : args[0]);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  // One set per subcommand: CLI11 binds options to these addresses.
  CommonFlags fl_denoise, fl_deconv, fl_debias, fl_bregman, fl_sweep, fl_mc,
      fl_phantom;

  CLI::App* denoise = app.add_subcommand("denoise", "Step 1 only (TV denoising by default)");
  add_common(denoise, fl_denoise);

  CLI::App* deconvolve = app.add_subcommand(
      "deconvolve", "Step 1 only on 1-D deconvolution (deconv preset)");
  add_common(deconvolve, fl_deconv);

  CLI::App* debias_cmd = app.add_subcommand(
      "debias", "Step 1 and the requested second step(s); writes report.csv");
  add_common(debias_cmd, fl_debias);

  CLI::App* bregman = app.add_subcommand("bregman-iter", "Bregman iterations baseline");
  add_common(bregman, fl_bregman);
  int steps = kDefaultBregmanSteps;
  CLI::Option* steps_opt = bregman->add_option("--steps", steps, "Maximum iterations K");
  bool no_discrepancy = false;
  bregman->add_flag("--no-discrepancy", no_discrepancy,
                    "Run all K steps instead of stopping at sqrt(n) * noise std");

  CLI::App* sweep = app.add_subcommand("sweep", "Sweep alpha; writes sweep.csv");
  add_common(sweep, fl_sweep);
  std::string alphas;
  sweep->add_option("--alphas", alphas, "start:stop:count (linear, inclusive)");
  std::size_t mc = 0;
  sweep->add_option("--mc", mc, "Monte-Carlo realizations per alpha (0 = off)");

  CLI::App* bias_mc = app.add_subcommand(
      "bias-mc", "Monte-Carlo bias and variance (deconv preset by default)");
  add_common(bias_mc, fl_mc);
  std::size_t realizations = 0;
  CLI::Option* real_opt =
      bias_mc->add_option("--realizations", realizations, "Number of noisy draws");
  unsigned threads = 1;
  CLI::Option* threads_opt = bias_mc->add_option("--threads", threads, "Worker threads");

  CLI::App* phantom = app.add_subcommand("phantom", "Write a synthetic phantom");
  add_common(phantom, fl_phantom, false);
  std::string kind;
  phantom->add_option("--kind", kind, "pw_const_1d, spikes_1d or cartoon_2d");
  std::size_t size = 0;
  phantom->add_option("--size", size, "Samples (1-D) or side length (2-D)");
  std::size_t spikes = 0;
  CLI::Option* spikes_opt = phantom->add_option("--spikes", spikes, "Spike count");
  std::uint64_t phantom_seed = 0;
  CLI::Option* pseed_opt =
      phantom->add_option("--phantom-seed", phantom_seed, "Spike layout seed");
  std::string output;
  phantom->add_option("--output", output, "Output file (.pgm or .csv)");
  bool noisy = false;
  phantom->add_flag("--noisy", noisy, "Also write a noisy copy");

  CLI::App* selftest = app.add_subcommand("selftest", "Run the built-in oracle checks");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }

  try {
    if (selftest->parsed()) return cmd_selftest(out, err);
    if (denoise->parsed())
      return cmd_denoise(build_config(fl_denoise, "table1"), fl_denoise,
                         "denoise", out);
    if (deconvolve->parsed())
      return cmd_denoise(build_config(fl_deconv, "deconv"), fl_deconv,
                         "deconvolve", out);
    if (debias_cmd->parsed())
      return cmd_debias(build_config(fl_debias, "table1"), fl_debias, out);
    if (bregman->parsed()) {
      ExperimentConfig cfg = build_config(fl_bregman, "table1");
      const int k = steps_opt->count() > 0 ? steps : cfg.bregman_steps;
      if (k < 1) throw UsageError("--steps must be >= 1");
      return cmd_bregman(cfg, fl_bregman, k, !no_discrepancy, out);
    }
    if (sweep->parsed()) {
      ExperimentConfig cfg = build_config(fl_sweep, "table1");
      if (!alphas.empty()) {
        try {
          set_config_value(cfg, "alphas", alphas);
        } catch (const ContractViolation& e) {
          throw UsageError(e.what());
        }
      }
      return cmd_sweep(cfg, fl_sweep, mc, out);
    }
    if (bias_mc->parsed()) {
      ExperimentConfig cfg = build_config(fl_mc, "deconv");
      if (real_opt->count() > 0) cfg.mc_realizations = realizations;
      if (threads_opt->count() > 0) cfg.threads = threads;
      return cmd_bias_mc(cfg, fl_mc, out);
    }
    if (phantom->parsed()) {
      ExperimentConfig cfg = build_config(fl_phantom, "table1");
      try {
        if (!kind.empty()) cfg.phantom.kind = parse_phantom_kind(kind);
      } catch (const ContractViolation& e) {
        throw UsageError(e.what());
      }
      if (size > 0) cfg.phantom.size = size;
      if (spikes_opt->count() > 0) cfg.phantom.spikes = spikes;
      if (pseed_opt->count() > 0) cfg.phantom.seed = Seed{phantom_seed};
      return cmd_phantom(cfg, output, noisy, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n"
        << "run with --help for usage\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace debias::cli
