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

#include "debias/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace debias {

// ---- phantoms -------------------------------------------------------------

std::string to_string(PhantomKind kind) {
  switch (kind) {
    case PhantomKind::kPwConst1d:
      return "pw_const_1d";
    case PhantomKind::kSpikes1d:
      return "spikes_1d";
    case PhantomKind::kCartoon2d:
      return "cartoon_2d";
  }
  return "unknown";
}

PhantomKind parse_phantom_kind(const std::string& text) {
  if (text == "pw_const_1d") return PhantomKind::kPwConst1d;
  if (text == "spikes_1d") return PhantomKind::kSpikes1d;
  if (text == "cartoon_2d") return PhantomKind::kCartoon2d;
  throw ContractViolation("unknown phantom '" + text +
                          "' (expected pw_const_1d, spikes_1d or cartoon_2d)");
}

namespace {

GridSignal pw_const(std::size_t n) {
  static constexpr double kLevels[5] = {0.0, 0.3, 0.8, 0.5, 1.0};
  GridSignal out(Shape{n, 1});
  for (std::size_t i = 0; i < n; ++i) out[i] = kLevels[(i * 5) / n];
  return out;
}

GridSignal spikes(std::size_t n, std::size_t k, Seed seed) {
  require(k <= n, "make_phantom: more spikes than samples");
  std::mt19937_64 rng(seed.value);
  GridSignal out(Shape{n, 1});
  if (k == 0) return out;
  // One spike per cell of width n / k, jittered inside the middle half of
  // its cell so neighbours stay at least n / (2k) apart.
  const double cell = static_cast<double>(n) / static_cast<double>(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double jitter =
        (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5) * 0.5 * cell;
    const double at = (static_cast<double>(i) + 0.5) * cell + jitter;
    const auto idx = std::min(n - 1, static_cast<std::size_t>(at));
    const double mag =
        0.5 + 0.5 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    out[idx] = (rng() & 1u) != 0 ? mag : -mag;
  }
  return out;
}

GridSignal cartoon(std::size_t n) {
  constexpr int kGrid = 5;
  const double scale = static_cast<double>(n) / 64.0;
  const double spacing = static_cast<double>(n) / kGrid;
  GridSignal out = GridSignal::constant(Shape{n, n}, 0.2);
  for (int gi = 0; gi < kGrid; ++gi) {
    for (int gj = 0; gj < kGrid; ++gj) {
      const double cy = spacing * (gi + 0.5) +
                        ((gi * 7 + gj * 3) % 5 - 2) * 0.8 * scale;
      const double cx = spacing * (gj + 0.5) +
                        ((gi * 5 + gj * 11) % 5 - 2) * 0.8 * scale;
      const double h = (4.0 + (gi + 2 * gj) % 3) * scale;
      const double value = (gi + gj) % 3 == 0 ? 0.55 : 0.9;
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          const double dy = std::abs(static_cast<double>(r) - cy);
          const double dx = std::abs(static_cast<double>(c) - cx);
          if (dy + 0.6 * dx < h && dx + 0.5 * dy < 1.1 * h)
            out.at(r, c) = value;
        }
      }
    }
  }
  return out;
}

}  // namespace

GridSignal make_phantom(const Phantom& spec) {
  require(spec.size >= 4, "make_phantom: size must be >= 4");
  require(std::isfinite(spec.amplitude), "make_phantom: amplitude not finite");
  GridSignal out(Shape{1, 1});
  switch (spec.kind) {
    case PhantomKind::kPwConst1d:
      out = pw_const(spec.size);
      break;
    case PhantomKind::kSpikes1d:
      out = spikes(spec.size, spec.spikes, spec.seed);
      break;
    case PhantomKind::kCartoon2d:
      out = cartoon(spec.size);
      break;
  }
  if (spec.amplitude != 1.0) out *= spec.amplitude;
  return out;
}

// ---- files ----------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

// ---- PGM ------------------------------------------------------------------

namespace {

class PgmReader {
 public:
  explicit PgmReader(std::string_view b) : b_(b) {}

  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw FormatError("pgm: " + what + " at byte " + std::to_string(at), at);
  }

  void skip_space_and_comments() {
    while (pos_ < b_.size()) {
      const char c = b_[pos_];
      if (c == '#') {
        while (pos_ < b_.size() && b_[pos_] != '\n') ++pos_;
      } else if (is_space(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  unsigned long header_number(const char* what) {
    skip_space_and_comments();
    return number(what);
  }

  unsigned long number(const char* what) {
    if (pos_ >= b_.size()) fail(std::string("truncated, expected ") + what, pos_);
    const std::size_t start = pos_;
    unsigned long v = 0;
    while (pos_ < b_.size() && b_[pos_] >= '0' && b_[pos_] <= '9') {
      v = v * 10 + static_cast<unsigned long>(b_[pos_] - '0');
      if (v > 100'000'000ul) fail(std::string(what) + " too large", start);
      ++pos_;
    }
    if (pos_ == start) fail(std::string("expected ") + what, start);
    if (pos_ < b_.size() && !is_space(b_[pos_]) && b_[pos_] != '#')
      fail(std::string("malformed ") + what, pos_);
    return v;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  std::size_t size() const { return b_.size(); }
  unsigned char byte(std::size_t i) const {
    return static_cast<unsigned char>(b_[i]);
  }

 private:
  static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f';
  }
  std::string_view b_;
  std::size_t pos_ = 0;
};

}  // namespace

GridSignal parse_pgm(std::string_view bytes) {
  PgmReader rd(bytes);
  if (bytes.size() < 2) rd.fail("truncated magic", 0);
  if (bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
    rd.fail("unsupported magic '" + std::string(bytes.substr(0, 2)) + "'", 0);
  const bool binary = bytes[1] == '5';
  rd.advance(2);
  const std::size_t width_at = rd.pos();
  const unsigned long width = rd.header_number("width");
  const unsigned long height = rd.header_number("height");
  if (width == 0 || height == 0) rd.fail("zero image dimension", width_at);
  const std::size_t maxval_at = rd.pos();
  const unsigned long maxval = rd.header_number("maxval");
  if (maxval == 0 || maxval > 65535) rd.fail("maxval out of range", maxval_at);

  const std::size_t count = static_cast<std::size_t>(width) * height;
  std::vector<double> values(count);
  const double scale = 1.0 / static_cast<double>(maxval);
  if (binary) {
    if (rd.pos() >= rd.size()) rd.fail("truncated header", rd.pos());
    rd.advance(1);  // single whitespace before the raster
    const std::size_t bps = maxval > 255 ? 2 : 1;
    const std::size_t start = rd.pos();
    if (rd.size() - start < count * bps)
      rd.fail("truncated payload (expected " + std::to_string(count * bps) +
                  " bytes)",
              rd.size());
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t at = start + i * bps;
      unsigned long v = rd.byte(at);
      if (bps == 2) v = (v << 8) | rd.byte(at + 1);
      if (v > maxval) rd.fail("sample exceeds maxval", at);
      values[i] = static_cast<double>(v) * scale;
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      rd.skip_space_and_comments();
      const std::size_t at = rd.pos();
      if (at >= rd.size())
        rd.fail("truncated payload (read " + std::to_string(i) + " of " +
                    std::to_string(count) + " samples)",
                at);
      const unsigned long v = rd.number("sample");
      if (v > maxval) rd.fail("sample exceeds maxval", at);
      values[i] = static_cast<double>(v) * scale;
    }
  }
  return GridSignal(Shape{height, width}, std::move(values));
}

GridSignal load_pgm(const std::string& path) { return parse_pgm(read_file(path)); }

std::string format_pgm(const GridSignal& signal) {
  std::string out = "P5\n" + std::to_string(signal.cols()) + " " +
                    std::to_string(signal.rows()) + "\n255\n";
  out.reserve(out.size() + signal.size());
  for (double v : signal.values()) {
    const double q = std::nearbyint(std::clamp(v, 0.0, 1.0) * 255.0);
    out.push_back(static_cast<char>(static_cast<unsigned char>(q)));
  }
  return out;
}

void save_pgm(const GridSignal& signal, const std::string& path) {
  write_file(path, format_pgm(signal));
}

// ---- CSV ------------------------------------------------------------------

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void csv_fail(const std::string& what, std::size_t line) {
  throw FormatError("csv: " + what + " on line " + std::to_string(line), line);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t p = s.find(sep, start);
    if (p == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, p - start));
    start = p + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Nonempty lines with their 1-based numbers.
std::vector<std::pair<std::size_t, std::string_view>> lines_of(
    std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t n = 0;
  for (std::string_view line : split(text, '\n')) {
    ++n;
    line = trim(line);
    if (!line.empty()) out.emplace_back(n, line);
  }
  return out;
}

double to_double(std::string_view s, std::size_t line) {
  s = trim(s);
  if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    csv_fail("bad number '" + std::string(s) + "'", line);
  return v;
}

std::size_t to_index(std::string_view s, std::size_t line) {
  s = trim(s);
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    csv_fail("bad index '" + std::string(s) + "'", line);
  return v;
}

}  // namespace

std::string format_signal_csv(const GridSignal& signal) {
  std::string out;
  if (signal.shape().is_1d()) {
    out = "index,value\n";
    for (std::size_t i = 0; i < signal.size(); ++i)
      out += std::to_string(i) + "," + fmt(signal[i]) + "\n";
  } else {
    out = "row,col,value\n";
    for (std::size_t r = 0; r < signal.rows(); ++r)
      for (std::size_t c = 0; c < signal.cols(); ++c)
        out += std::to_string(r) + "," + std::to_string(c) + "," +
               fmt(signal.at(r, c)) + "\n";
  }
  return out;
}

GridSignal parse_signal_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) csv_fail("empty file", 1);
  const std::string_view header = lines[0].second;
  const bool one_d = header == "index,value";
  if (!one_d && header != "row,col,value")
    csv_fail("unexpected header '" + std::string(header) + "'", lines[0].first);
  if (lines.size() == 1) csv_fail("no data rows", lines[0].first);

  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto [ln, line] = lines[k];
    const auto f = split(line, ',');
    if (f.size() != (one_d ? 2u : 3u)) csv_fail("wrong field count", ln);
    const double v = to_double(f.back(), ln);
    if (!std::isfinite(v)) csv_fail("non-finite value", ln);
    if (one_d) {
      if (to_index(f[0], ln) != values.size()) csv_fail("index out of order", ln);
    } else {
      const std::size_t r = to_index(f[0], ln);
      const std::size_t c = to_index(f[1], ln);
      if (r == 0 && c == cols && rows == 0) {
        ++cols;  // still reading the first row
      } else {
        if (rows == 0) rows = 1;
        if (c == 0 && r == rows) ++rows;
        if (cols == 0 || r != rows - 1 || values.size() != r * cols + c)
          csv_fail("cell (" + std::to_string(r) + "," + std::to_string(c) +
                       ") out of row-major order",
                   ln);
      }
    }
    values.push_back(v);
  }
  if (one_d) {
    const Shape shape{values.size(), 1};
    return GridSignal(shape, std::move(values));
  }
  if (rows == 0) rows = 1;
  if (values.size() != rows * cols)
    csv_fail("incomplete last row", lines.back().first);
  return GridSignal(Shape{rows, cols}, std::move(values));
}

void save_signal_csv(const GridSignal& signal, const std::string& path) {
  write_file(path, format_signal_csv(signal));
}

GridSignal load_signal_csv(const std::string& path) {
  return parse_signal_csv(read_file(path));
}

const char* const kSweepCsvHeader =
    "alpha,tv_u,residual_u,psnr_u,psnr_ub,psnr_uic,tv_ub,residual_ub,tv_uic,"
    "residual_uic,bias_u,bias_ub,std_u,std_ub,complete,error";

std::string format_sweep_csv(const SweepCurve& curve) {
  std::string out = std::string(kSweepCsvHeader) + "\n";
  for (const SweepRow& r : curve.rows) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    for (double v : {r.alpha, r.tv_u, r.residual_u, r.psnr_u, r.psnr_ub,
                     r.psnr_uic, r.tv_ub, r.residual_ub, r.tv_uic,
                     r.residual_uic, r.bias_u, r.bias_ub, r.std_u, r.std_ub})
      out += fmt(v) + ",";
    out += (r.complete ? "1," : "0,") + err + "\n";
  }
  return out;
}

SweepCurve parse_sweep_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) csv_fail("empty file", 1);
  if (lines[0].second != kSweepCsvHeader)
    csv_fail("unexpected sweep header", lines[0].first);
  SweepCurve curve;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto [ln, line] = lines[k];
    const auto f = split(line, ',');
    if (f.size() != 16) csv_fail("wrong field count", ln);
    SweepRow r;
    double* dst[] = {&r.alpha,  &r.tv_u,        &r.residual_u, &r.psnr_u,
                     &r.psnr_ub, &r.psnr_uic,   &r.tv_ub,      &r.residual_ub,
                     &r.tv_uic,  &r.residual_uic, &r.bias_u,   &r.bias_ub,
                     &r.std_u,   &r.std_ub};
    for (std::size_t i = 0; i < 14; ++i) *dst[i] = to_double(f[i], ln);
    const std::string_view c = trim(f[14]);
    if (c != "0" && c != "1") csv_fail("complete must be 0 or 1", ln);
    r.complete = c == "1";
    r.error = std::string(f[15]);
    curve.rows.push_back(std::move(r));
  }
  return curve;
}

void save_sweep_csv(const SweepCurve& curve, const std::string& path) {
  write_file(path, format_sweep_csv(curve));
}

SweepCurve load_sweep_csv(const std::string& path) {
  return parse_sweep_csv(read_file(path));
}

std::string format_bias_csv(const BiasReport& rep) {
  std::string out =
      "index,mean,statistical_bias,variance,deterministic_bias,model_bias,"
      "method_bias\n";
  for (std::size_t i = 0; i < rep.mean_estimate.size(); ++i) {
    out += std::to_string(i) + "," + fmt(rep.mean_estimate[i]) + "," +
           fmt(rep.statistical_bias[i]) + "," + fmt(rep.variance[i]) + "," +
           fmt(rep.deterministic_bias[i]) + ",";
    if (rep.model_bias) out += fmt((*rep.model_bias)[i]);
    out += ",";
    if (rep.method_bias) out += fmt((*rep.method_bias)[i]);
    out += "\n";
  }
  return out;
}

void save_bias_csv(const BiasReport& report, const std::string& path) {
  write_file(path, format_bias_csv(report));
}

// ---- experiment configuration ---------------------------------------------

std::string to_string(ForwardKind k) {
  return k == ForwardKind::kIdentity ? "identity" : "convolution1d";
}

std::string to_string(PenaltyKind k) {
  return k == PenaltyKind::kIdentity ? "identity" : "gradient2d";
}

ExperimentConfig ExperimentConfig::table1() {
  ExperimentConfig c;
  c.forward = ForwardKind::kIdentity;
  c.penalty = PenaltyKind::kGradient2d;
  c.phantom = Phantom{PhantomKind::kCartoon2d, 64, 5, 1.0, Seed{0}};
  c.pd = PdConfig::table1();
  c.noise_std = std::sqrt(0.05);
  return c;
}

ExperimentConfig ExperimentConfig::deconvolution() {
  ExperimentConfig c;
  c.forward = ForwardKind::kConvolution1d;
  c.penalty = PenaltyKind::kIdentity;
  c.kernel = "gaussian:9:2";
  c.phantom = Phantom{PhantomKind::kSpikes1d, 128, 5, 1.0, Seed{3}};
  c.pd = PdConfig{};
  c.pd.alpha = 0.02;
  c.noise_std = 0.05;
  c.alphas = "0.005:0.1:8";
  c.mc_realizations = 200;
  return c;
}

ExperimentConfig ExperimentConfig::preset(const std::string& name) {
  if (name == "table1") return table1();
  if (name == "deconv" || name == "deconvolution") return deconvolution();
  if (name == "default") return ExperimentConfig{};
  throw ContractViolation("unknown preset '" + name +
                          "' (expected table1, deconv or default)");
}

namespace {

double parse_real(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  require(res.ec == std::errc() && res.ptr == v.data() + v.size() &&
              std::isfinite(out),
          "config: " + key + " expects a real number, got '" + v + "'");
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  require(res.ec == std::errc() && res.ptr == v.data() + v.size(),
          "config: " + key + " expects a nonnegative integer, got '" + v + "'");
  return out;
}

int parse_int(const std::string& key, const std::string& v) {
  const std::uint64_t u = parse_u64(key, v);
  require(u <= static_cast<std::uint64_t>(std::numeric_limits<int>::max()),
          "config: " + key + " is too large");
  return static_cast<int>(u);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ContractViolation("config: " + key + " expects true or false, got '" +
                          v + "'");
}

}  // namespace

void set_config_value(ExperimentConfig& c, const std::string& key,
                      const std::string& value) {
  PdConfig& pd = c.pd;
  if (key == "forward") {
    if (value == "identity") {
      c.forward = ForwardKind::kIdentity;
    } else if (value == "convolution1d") {
      c.forward = ForwardKind::kConvolution1d;
    } else {
      throw ContractViolation("config: forward must be identity or "
                              "convolution1d, got '" + value + "'");
    }
  } else if (key == "penalty") {
    if (value == "identity") {
      c.penalty = PenaltyKind::kIdentity;
    } else if (value == "gradient2d") {
      c.penalty = PenaltyKind::kGradient2d;
    } else {
      throw ContractViolation("config: penalty must be identity or "
                              "gradient2d, got '" + value + "'");
    }
  } else if (key == "kernel") {
    parse_kernel(value);
    c.kernel = value;
  } else if (key == "phantom.kind") {
    c.phantom.kind = parse_phantom_kind(value);
  } else if (key == "phantom.size") {
    c.phantom.size = parse_u64(key, value);
  } else if (key == "phantom.spikes") {
    c.phantom.spikes = parse_u64(key, value);
  } else if (key == "phantom.amplitude") {
    c.phantom.amplitude = parse_real(key, value);
  } else if (key == "phantom.seed") {
    c.phantom.seed = Seed{parse_u64(key, value)};
  } else if (key == "alpha") {
    pd.alpha = parse_real(key, value);
  } else if (key == "gamma") {
    pd.gamma = parse_real(key, value);
  } else if (key == "sigma") {
    pd.sigma = parse_real(key, value);
  } else if (key == "tau") {
    pd.tau = parse_real(key, value);
  } else if (key == "eps1") {
    pd.eps1 = parse_real(key, value);
  } else if (key == "eps2") {
    pd.eps2 = parse_real(key, value);
  } else if (key == "eps3") {
    pd.eps3 = parse_real(key, value);
  } else if (key == "max_iter") {
    pd.max_iter = parse_int(key, value);
  } else if (key == "check_every") {
    pd.check_every = parse_int(key, value);
  } else if (key == "step_rule") {
    pd.step_rule = parse_step_rule(value);
  } else if (key == "regularizer") {
    pd.regularizer = parse_regularizer(value);
  } else if (key == "literal_pseudocode") {
    pd.literal_pseudocode = parse_bool(key, value);
  } else if (key == "divergence_limit") {
    pd.divergence_limit = parse_real(key, value);
  } else if (key == "norm_iters") {
    pd.norm_iters = parse_int(key, value);
  } else if (key == "norm_seed") {
    pd.norm_seed = Seed{parse_u64(key, value)};
  } else if (key == "step_ratio") {
    pd.step_ratio = parse_real(key, value);
  } else if (key == "debias_step_ratio") {
    pd.debias_step_ratio = parse_real(key, value);
  } else if (key == "method") {
    c.method = parse_debias_method(value);
  } else if (key == "noise_std") {
    c.noise_std = parse_real(key, value);
    require(c.noise_std >= 0.0, "config: noise_std must be >= 0");
  } else if (key == "noise_seed") {
    c.noise_seed = Seed{parse_u64(key, value)};
  } else if (key == "alphas") {
    parse_alpha_range(value);
    c.alphas = value;
  } else if (key == "mc_realizations") {
    c.mc_realizations = parse_u64(key, value);
  } else if (key == "mc_seed") {
    c.mc_seed = Seed{parse_u64(key, value)};
  } else if (key == "threads") {
    c.threads = static_cast<unsigned>(parse_int(key, value));
  } else if (key == "bregman_steps") {
    c.bregman_steps = parse_int(key, value);
  } else if (key == "output_dir") {
    c.output_dir = value;
  } else {
    throw ContractViolation("config: unknown key '" + key + "'");
  }
}

std::string serialize_config(const ExperimentConfig& c) {
  const PdConfig& pd = c.pd;
  std::string out = "# debias experiment configuration\n";
  const auto put = [&out](const std::string& k, const std::string& v) {
    out += k + "=" + v + "\n";
  };
  put("forward", to_string(c.forward));
  put("penalty", to_string(c.penalty));
  put("kernel", c.kernel);
  put("phantom.kind", to_string(c.phantom.kind));
  put("phantom.size", std::to_string(c.phantom.size));
  put("phantom.spikes", std::to_string(c.phantom.spikes));
  put("phantom.amplitude", fmt(c.phantom.amplitude));
  put("phantom.seed", std::to_string(c.phantom.seed.value));
  put("alpha", fmt(pd.alpha));
  put("gamma", fmt(pd.gamma));
  put("sigma", fmt(pd.sigma));
  put("tau", fmt(pd.tau));
  put("eps1", fmt(pd.eps1));
  put("eps2", fmt(pd.eps2));
  put("eps3", fmt(pd.eps3));
  put("max_iter", std::to_string(pd.max_iter));
  put("check_every", std::to_string(pd.check_every));
  put("step_rule", to_string(pd.step_rule));
  put("regularizer", to_string(pd.regularizer));
  put("literal_pseudocode", pd.literal_pseudocode ? "true" : "false");
  put("divergence_limit", fmt(pd.divergence_limit));
  put("norm_iters", std::to_string(pd.norm_iters));
  put("norm_seed", std::to_string(pd.norm_seed.value));
  put("step_ratio", fmt(pd.step_ratio));
  put("debias_step_ratio", fmt(pd.debias_step_ratio));
  put("method", to_string(c.method));
  put("noise_std", fmt(c.noise_std));
  put("noise_seed", std::to_string(c.noise_seed.value));
  put("alphas", c.alphas);
  put("mc_realizations", std::to_string(c.mc_realizations));
  put("mc_seed", std::to_string(c.mc_seed.value));
  put("threads", std::to_string(c.threads));
  put("bregman_steps", std::to_string(c.bregman_steps));
  put("output_dir", c.output_dir);
  return out;
}

ExperimentConfig parse_config(std::string_view text,
                              const ExperimentConfig& base) {
  ExperimentConfig c = base;
  std::size_t n = 0;
  for (std::string_view line : split(text, '\n')) {
    ++n;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw FormatError("config: expected key=value on line " +
                            std::to_string(n),
                        n);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    try {
      set_config_value(c, key, value);
    } catch (const ContractViolation& e) {
      throw FormatError(std::string(e.what()) + " (line " + std::to_string(n) +
                            ")",
                        n);
    }
  }
  return c;
}

std::string default_output_dir() {
  const char* env = std::getenv(kOutputDirEnv);
  if (env != nullptr && *env != '\0') return env;
  return ".";
}

}  // namespace debias
