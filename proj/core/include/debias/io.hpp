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

#ifndef DEBIAS_IO_HPP_
#define DEBIAS_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "debias/analysis.hpp"
#include "debias/core.hpp"
#include "debias/pipeline.hpp"
#include "debias/solver.hpp"

// Synthetic phantoms, PGM and CSV files, and flat key=value experiment
// configuration.
namespace debias {

// Malformed file contents. `location` is a byte offset (PGM) or a 1-based
// line number (CSV, config), as named in the message.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& message, std::size_t location)
      : std::runtime_error(message), location_(location) {}
  std::size_t location() const { return location_; }

 private:
  std::size_t location_;
};

// ---- phantoms -------------------------------------------------------------

enum class PhantomKind { kPwConst1d, kSpikes1d, kCartoon2d };

std::string to_string(PhantomKind kind);
PhantomKind parse_phantom_kind(const std::string& text);

struct Phantom {
  PhantomKind kind = PhantomKind::kPwConst1d;
  // Sample count for 1-D kinds, side length for cartoon_2d.
  std::size_t size = 256;
  std::size_t spikes = 5;  // spikes_1d only
  double amplitude = 1.0;  // scales every value
  Seed seed{0};            // spike positions and signs
  friend bool operator==(const Phantom&, const Phantom&) = default;
};

// pw_const_1d: five equal-length segments with values 0, 0.3, 0.8, 0.5, 1.0
//   (four jumps for size >= 5).
// spikes_1d: one spike per cell of width size / spikes, jittered within the
//   cell, magnitudes in [0.5, 1] and random signs, all drawn from the seed.
// cartoon_2d: size x size spotted pattern; 5 x 5 jittered octagonal spots of
//   value 0.9 or 0.55 on a 0.2 background. Does not use the seed.
GridSignal make_phantom(const Phantom& spec);

// ---- PGM ------------------------------------------------------------------

// P2 or P5, maxval <= 65535 (16-bit P5 samples are big-endian). Values are
// scaled to [0, 1] by maxval.
GridSignal parse_pgm(std::string_view bytes);
GridSignal load_pgm(const std::string& path);

// Binary P5 at maxval 255: values are clamped to [0, 1], scaled by 255 and
// rounded half to even.
std::string format_pgm(const GridSignal& signal);
void save_pgm(const GridSignal& signal, const std::string& path);

// ---- CSV ------------------------------------------------------------------

// "index,value" for 1-D signals, "row,col,value" for 2-D; doubles printed
// with 17 significant digits.
std::string format_signal_csv(const GridSignal& signal);
GridSignal parse_signal_csv(std::string_view text);
void save_signal_csv(const GridSignal& signal, const std::string& path);
GridSignal load_signal_csv(const std::string& path);

// Header: alpha,tv_u,residual_u,psnr_u,psnr_ub,psnr_uic,tv_ub,residual_ub,
// tv_uic,residual_uic,bias_u,bias_ub,std_u,std_ub,complete,error
extern const char* const kSweepCsvHeader;
std::string format_sweep_csv(const SweepCurve& curve);
SweepCurve parse_sweep_csv(std::string_view text);
void save_sweep_csv(const SweepCurve& curve, const std::string& path);
SweepCurve load_sweep_csv(const std::string& path);

// Per entry: index,mean,statistical_bias,variance,deterministic_bias,
// model_bias,method_bias (the last two empty when absent). Write only.
std::string format_bias_csv(const BiasReport& report);
void save_bias_csv(const BiasReport& report, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

// ---- experiment configuration ---------------------------------------------

enum class ForwardKind { kIdentity, kConvolution1d };
enum class PenaltyKind { kIdentity, kGradient2d };

std::string to_string(ForwardKind k);
std::string to_string(PenaltyKind k);

struct ExperimentConfig {
  ForwardKind forward = ForwardKind::kIdentity;
  PenaltyKind penalty = PenaltyKind::kGradient2d;
  std::string kernel = "gaussian:9:2";
  Phantom phantom{PhantomKind::kCartoon2d, 64, 5, 1.0, Seed{0}};
  PdConfig pd;
  DebiasMethod method = DebiasMethod::kBoth;
  double noise_std = 0.22360679774997896;  // sqrt(0.05)
  Seed noise_seed{1};
  std::string alphas = "0.05:0.6:12";
  std::size_t mc_realizations = 100;
  Seed mc_seed{1000};
  unsigned threads = 1;
  int bregman_steps = kDefaultBregmanSteps;
  std::string output_dir = ".";

  // Cartoon denoising with the fixed-step parameters: alpha 0.3, gamma 1000,
  // sigma = tau = 1/sqrt(8), eps1 1e-5, eps2 = eps3 = 1e-6.
  static ExperimentConfig table1();
  // 1-D spike deconvolution: Gaussian(9, 2) blur, noise std 0.05.
  static ExperimentConfig deconvolution();
  static ExperimentConfig preset(const std::string& name);

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;
};

// Lossless: parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& cfg);
// Keys absent from `text` keep their values from `base`.
ExperimentConfig parse_config(std::string_view text,
                              const ExperimentConfig& base = {});
// Assigns one key; throws ContractViolation on unknown keys or bad values.
void set_config_value(ExperimentConfig& cfg, const std::string& key,
                      const std::string& value);

inline constexpr const char* kOutputDirEnv = "DEBIAS_OUTPUT_DIR";
// $DEBIAS_OUTPUT_DIR when set and nonempty, "." otherwise.
std::string default_output_dir();

}  // namespace debias

#endif  // DEBIAS_IO_HPP_
