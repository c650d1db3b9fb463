// Copyright (c) 2026 The AccentKit Authors
//
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

#include "accentkit/dsp.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <mutex>

namespace accentkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// FFT (FFTW, ESTIMATE plans; guarded by a mutex because the functions here
// advertise thread safety and the FFTW planner has none).

class Fft {
 public:
  static Fft& instance() {
    static Fft fft;
    return fft;
  }

  void forward(const double* frame, std::complex<double>* out) {
    std::lock_guard<std::mutex> lock(mu_);
    std::memcpy(rbuf_, frame, dsp::kNfft * sizeof(double));
    fftw_execute(r2c_);
    for (std::size_t k = 0; k < dsp::kNumBins; ++k) {
      out[k] = {cbuf_[k][0], cbuf_[k][1]};
    }
  }

  void inverse(const std::complex<double>* in, double* frame) {
    std::lock_guard<std::mutex> lock(mu_);
    for (std::size_t k = 0; k < dsp::kNumBins; ++k) {
      cbuf_[k][0] = in[k].real();
      cbuf_[k][1] = in[k].imag();
    }
    fftw_execute(c2r_);
    const double inv_n = 1.0 / static_cast<double>(dsp::kNfft);
    for (std::size_t i = 0; i < dsp::kNfft; ++i) frame[i] = rbuf_[i] * inv_n;
  }

 private:
  Fft() {
    rbuf_ = fftw_alloc_real(dsp::kNfft);
    cbuf_ = fftw_alloc_complex(dsp::kNumBins);
    r2c_ = fftw_plan_dft_r2c_1d(static_cast<int>(dsp::kNfft), rbuf_, cbuf_,
                                FFTW_ESTIMATE);
    c2r_ = fftw_plan_dft_c2r_1d(static_cast<int>(dsp::kNfft), cbuf_, rbuf_,
                                FFTW_ESTIMATE);
  }

  std::mutex mu_;
  double* rbuf_;
  fftw_complex* cbuf_;
  fftw_plan r2c_;
  fftw_plan c2r_;
};

const std::vector<double>& hann_window() {
  static const std::vector<double> win = [] {
    std::vector<double> w(dsp::kWinLength);
    for (std::size_t i = 0; i < dsp::kWinLength; ++i) {
      w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) /
                                  static_cast<double>(dsp::kWinLength));
    }
    return w;
  }();
  return win;
}

// Reflect (no edge duplication): ... x2 x1 | x0 x1 x2 ... xN-1 | xN-2 ...
std::size_t reflect_index(std::ptrdiff_t p, std::size_t n) {
  if (n == 1) return 0;
  const std::ptrdiff_t period = 2 * (static_cast<std::ptrdiff_t>(n) - 1);
  std::ptrdiff_t q = p % period;
  if (q < 0) q += period;
  if (q >= static_cast<std::ptrdiff_t>(n)) q = period - q;
  return static_cast<std::size_t>(q);
}

// Magnitude + optional complex spectra of center-padded frames.
void stft_centered(const std::vector<double>& x, std::size_t frames,
                   Mat* magnitude, std::vector<std::complex<double>>* spectra) {
  const auto& win = hann_window();
  const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(dsp::kWinLength) / 2;
  std::vector<double> buf(dsp::kNfft, 0.0);
  std::vector<std::complex<double>> spec(dsp::kNumBins);
  for (std::size_t t = 0; t < frames; ++t) {
    const std::ptrdiff_t start =
        static_cast<std::ptrdiff_t>(t * dsp::kHopLength) - half;
    for (std::size_t i = 0; i < dsp::kWinLength; ++i) {
      buf[i] = win[i] * x[reflect_index(start + static_cast<std::ptrdiff_t>(i),
                                        x.size())];
    }
    std::fill(buf.begin() + dsp::kWinLength, buf.end(), 0.0);
    Fft::instance().forward(buf.data(), spec.data());
    if (magnitude) {
      for (std::size_t k = 0; k < dsp::kNumBins; ++k) {
        magnitude->at(t, k) = std::abs(spec[k]);
      }
    }
    if (spectra) {
      std::copy(spec.begin(), spec.end(), spectra->begin() + t * dsp::kNumBins);
    }
  }
}

double htk_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double htk_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

struct Filterbank {
  Mat weights;                  // 80×513
  std::vector<double> centers;  // Hz
};

const Filterbank& filterbank() {
  static const Filterbank fb = [] {
    Filterbank f;
    f.weights = Mat(dsp::kNumMels, dsp::kNumBins);
    const double mel_max = htk_mel(dsp::kFmax);
    std::vector<double> edges(dsp::kNumMels + 2);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      edges[i] = htk_hz(mel_max * static_cast<double>(i) /
                        static_cast<double>(dsp::kNumMels + 1));
    }
    for (std::size_t b = 0; b < dsp::kNumMels; ++b) {
      const double lo = edges[b], mid = edges[b + 1], hi = edges[b + 2];
      f.centers.push_back(mid);
      for (std::size_t k = 0; k < dsp::kNumBins; ++k) {
        const double hz = static_cast<double>(k) * dsp::kSampleRate /
                          static_cast<double>(dsp::kNfft);
        double w = 0.0;
        if (hz >= lo && hz <= mid && mid > lo) {
          w = (hz - lo) / (mid - lo);
        } else if (hz > mid && hz <= hi && hi > mid) {
          w = (hi - hz) / (hi - mid);
        }
        f.weights.at(b, k) = w;
      }
    }
    return f;
  }();
  return fb;
}

// Cholesky solve for the SPD mel-to-linear normal equations.
struct MelInverter {
  Mat chol;  // lower triangular factor of FB*FB^T + λI

  MelInverter() {
    const Mat& fb = filterbank().weights;
    const std::size_t m = dsp::kNumMels;
    Mat g(m, m);
    kernels::active().gemm_nt(m, m, dsp::kNumBins, fb.ptr(), fb.ptr(), g.ptr());
    for (std::size_t i = 0; i < m; ++i) g.at(i, i) += 1e-8;
    chol = Mat(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        double s = g.at(i, j);
        for (std::size_t k = 0; k < j; ++k) s -= chol.at(i, k) * chol.at(j, k);
        if (i == j) {
          AK_REQUIRE(s > 0.0, "mel filterbank normal equations not SPD");
          chol.at(i, j) = std::sqrt(s);
        } else {
          chol.at(i, j) = s / chol.at(j, j);
        }
      }
    }
  }

  // linear = FB^T (FB FB^T + λI)^{-1} mel, clamped to ≥ 0.
  void frame_to_linear(const double* mel_amp, double* linear) const {
    const std::size_t m = dsp::kNumMels;
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
      double s = mel_amp[i];
      for (std::size_t k = 0; k < i; ++k) s -= chol.at(i, k) * y[k];
      y[i] = s / chol.at(i, i);
    }
    for (std::size_t ii = m; ii-- > 0;) {
      double s = y[ii];
      for (std::size_t k = ii + 1; k < m; ++k) s -= chol.at(k, ii) * y[k];
      y[ii] = s / chol.at(ii, ii);
    }
    const Mat& fb = filterbank().weights;
    for (std::size_t k = 0; k < dsp::kNumBins; ++k) linear[k] = 0.0;
    for (std::size_t b = 0; b < m; ++b) {
      kernels::active().axpy(y[b], fb.row_ptr(b), linear, dsp::kNumBins);
    }
    for (std::size_t k = 0; k < dsp::kNumBins; ++k) {
      if (linear[k] < 0.0) linear[k] = 0.0;
    }
  }
};

const MelInverter& mel_inverter() {
  static const MelInverter inv;
  return inv;
}

template <typename T>
void write_le(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_le(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// WAV I/O

Waveform read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open wav file: " + path.string());

  char tag[4];
  in.read(tag, 4);
  if (!in || std::memcmp(tag, "RIFF", 4) != 0) {
    throw DataError("not a RIFF file: " + path.string());
  }
  read_le<std::uint32_t>(in);
  in.read(tag, 4);
  if (!in || std::memcmp(tag, "WAVE", 4) != 0) {
    throw DataError("not a WAVE file: " + path.string());
  }

  std::uint16_t channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  while (in.read(tag, 4)) {
    std::uint32_t size = read_le<std::uint32_t>(in);
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      std::uint16_t format = read_le<std::uint16_t>(in);
      channels = read_le<std::uint16_t>(in);
      rate = read_le<std::uint32_t>(in);
      read_le<std::uint32_t>(in);  // byte rate
      read_le<std::uint16_t>(in);  // block align
      bits = read_le<std::uint16_t>(in);
      if (size > 16) in.seekg(size - 16, std::ios::cur);
      if (format != 1) throw DataError("wav is not PCM: " + path.string());
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      if (!have_fmt) throw DataError("wav data before fmt: " + path.string());
      if (channels != 1) throw DataError("wav is not mono: " + path.string());
      if (bits != 16) throw DataError("wav is not 16-bit: " + path.string());
      std::size_t n = size / 2;
      Waveform w;
      w.sample_rate = static_cast<int>(rate);
      w.samples.resize(n);
      std::vector<std::int16_t> raw(n);
      in.read(reinterpret_cast<char*>(raw.data()),
              static_cast<std::streamsize>(size));
      if (!in) throw DataError("truncated wav data: " + path.string());
      for (std::size_t i = 0; i < n; ++i) {
        w.samples[i] = static_cast<double>(raw[i]) / 32768.0;
      }
      return w;
    } else {
      in.seekg(size + (size & 1), std::ios::cur);
    }
  }
  throw DataError("wav has no data chunk: " + path.string());
}

void write_wav(const std::filesystem::path& path, const Waveform& w) {
  AK_REQUIRE(w.sample_rate > 0, "write_wav: bad sample rate");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write wav file: " + path.string());
  const std::uint32_t data_size =
      static_cast<std::uint32_t>(w.samples.size() * 2);
  out.write("RIFF", 4);
  write_le<std::uint32_t>(out, 36 + data_size);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  write_le<std::uint32_t>(out, 16);
  write_le<std::uint16_t>(out, 1);  // PCM
  write_le<std::uint16_t>(out, 1);  // mono
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(w.sample_rate));
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(w.sample_rate * 2));
  write_le<std::uint16_t>(out, 2);
  write_le<std::uint16_t>(out, 16);
  out.write("data", 4);
  write_le<std::uint32_t>(out, data_size);
  for (double s : w.samples) {
    long q = std::lrint(std::min(1.0, std::max(-1.0, s)) * 32768.0);
    q = std::min(32767L, std::max(-32768L, q));
    write_le<std::int16_t>(out, static_cast<std::int16_t>(q));
  }
  if (!out) throw DataError("failed writing wav file: " + path.string());
}

// ---------------------------------------------------------------------------
// Resampling

Waveform resample(const Waveform& w, int target_rate) {
  AK_REQUIRE(target_rate > 0, "resample: target rate must be positive");
  if (w.sample_rate == target_rate) return w;
  AK_REQUIRE(w.sample_rate > 0, "resample: source rate must be positive");

  const double ratio =
      static_cast<double>(target_rate) / static_cast<double>(w.sample_rate);
  const double cutoff = std::min(1.0, ratio);
  const double base_half_width = 32.0;
  const double half_width = base_half_width / cutoff;

  Waveform out;
  out.sample_rate = target_rate;
  const std::size_t n_in = w.samples.size();
  const std::size_t n_out = static_cast<std::size_t>(
      std::llround(static_cast<double>(n_in) * ratio));
  out.samples.resize(n_out, 0.0);

  for (std::size_t n = 0; n < n_out; ++n) {
    const double s = static_cast<double>(n) / ratio;
    const std::ptrdiff_t k0 =
        static_cast<std::ptrdiff_t>(std::ceil(s - half_width));
    const std::ptrdiff_t k1 =
        static_cast<std::ptrdiff_t>(std::floor(s + half_width));
    double acc = 0.0;
    for (std::ptrdiff_t k = std::max<std::ptrdiff_t>(k0, 0);
         k <= std::min<std::ptrdiff_t>(k1, static_cast<std::ptrdiff_t>(n_in) - 1);
         ++k) {
      const double d = s - static_cast<double>(k);
      const double x = cutoff * d;
      const double sinc =
          x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x);
      const double u = d / half_width;
      const double window = 0.5 + 0.5 * std::cos(kPi * u);
      acc += w.samples[static_cast<std::size_t>(k)] * cutoff * sinc * window;
    }
    out.samples[n] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mel analysis

std::size_t mel_frame_count(std::size_t num_samples) {
  return (num_samples + dsp::kHopLength - 1) / dsp::kHopLength;
}

MelSpectrogram mel_spectrogram(const Waveform& w, double floor) {
  if (w.samples.empty()) throw DataError("mel_spectrogram: empty waveform");
  AK_REQUIRE(w.sample_rate == dsp::kSampleRate,
             "mel_spectrogram: expected 16 kHz input, got " +
                 std::to_string(w.sample_rate));
  AK_REQUIRE(floor > 0.0, "mel_spectrogram: floor must be positive");

  const std::size_t frames = mel_frame_count(w.samples.size());
  Mat magnitude(frames, dsp::kNumBins);
  stft_centered(w.samples, frames, &magnitude, nullptr);

  const Mat& fb = filterbank().weights;
  MelSpectrogram mel;
  mel.values = Mat(frames, dsp::kNumMels);
  // mel = |X| * FB^T
  kernels::active().gemm_nt(frames, dsp::kNumMels, dsp::kNumBins,
                            magnitude.ptr(), fb.ptr(), mel.values.ptr());
  for (double& v : mel.values.data) v = std::log(std::max(v, floor));
  return mel;
}

MelSpectrogram mel_from_values(Mat values) {
  AK_REQUIRE(values.cols == dsp::kNumMels,
             "mel_from_values: expected 80 columns");
  const double lo = std::log(dsp::kAmpFloor);
  for (double& v : values.data) v = std::max(v, lo);
  MelSpectrogram mel;
  mel.values = std::move(values);
  return mel;
}

const Mat& mel_filterbank() { return filterbank().weights; }

const std::vector<double>& mel_center_frequencies() {
  return filterbank().centers;
}

// ---------------------------------------------------------------------------
// Normalization

MelStats compute_stats(const std::vector<const MelSpectrogram*>& mels) {
  AK_REQUIRE(!mels.empty(), "compute_stats: empty collection");
  std::vector<double> sum(dsp::kNumMels, 0.0), sq(dsp::kNumMels, 0.0);
  std::size_t count = 0;
  for (const MelSpectrogram* mel : mels) {
    const Mat& v = mel->values;
    for (std::size_t t = 0; t < v.rows; ++t) {
      for (std::size_t b = 0; b < dsp::kNumMels; ++b) {
        sum[b] += v.at(t, b);
        sq[b] += v.at(t, b) * v.at(t, b);
      }
    }
    count += v.rows;
  }
  AK_REQUIRE(count > 0, "compute_stats: no frames");
  MelStats stats;
  stats.mean.resize(dsp::kNumMels);
  stats.stddev.resize(dsp::kNumMels);
  for (std::size_t b = 0; b < dsp::kNumMels; ++b) {
    stats.mean[b] = sum[b] / static_cast<double>(count);
    double var = sq[b] / static_cast<double>(count) - stats.mean[b] * stats.mean[b];
    stats.stddev[b] = std::max(std::sqrt(std::max(var, 0.0)), 1e-5);
  }
  return stats;
}

MelStats compute_stats(const std::vector<MelSpectrogram>& mels) {
  std::vector<const MelSpectrogram*> ptrs;
  ptrs.reserve(mels.size());
  for (const auto& m : mels) ptrs.push_back(&m);
  return compute_stats(ptrs);
}

Mat normalize_values(const Mat& values, const MelStats& stats) {
  AK_REQUIRE(values.cols == dsp::kNumMels, "normalize: expected 80 columns");
  Mat out(values.rows, values.cols);
  for (std::size_t t = 0; t < values.rows; ++t) {
    for (std::size_t b = 0; b < dsp::kNumMels; ++b) {
      out.at(t, b) = (values.at(t, b) - stats.mean[b]) / stats.stddev[b];
    }
  }
  return out;
}

Mat denormalize_values(const Mat& values, const MelStats& stats) {
  AK_REQUIRE(values.cols == dsp::kNumMels, "denormalize: expected 80 columns");
  Mat out(values.rows, values.cols);
  for (std::size_t t = 0; t < values.rows; ++t) {
    for (std::size_t b = 0; b < dsp::kNumMels; ++b) {
      out.at(t, b) = values.at(t, b) * stats.stddev[b] + stats.mean[b];
    }
  }
  return out;
}

MelSpectrogram normalize(const MelSpectrogram& mel, const MelStats& stats) {
  MelSpectrogram out = mel;
  out.values = normalize_values(mel.values, stats);
  return out;
}

MelSpectrogram denormalize(const MelSpectrogram& mel, const MelStats& stats) {
  MelSpectrogram out = mel;
  out.values = denormalize_values(mel.values, stats);
  return out;
}

// ---------------------------------------------------------------------------
// Griffin-Lim
//
// Operates on the padded domain (frame t starts at t*hop, window support
// only), where the windowed-OLA inverse is the exact least-squares inverse
// of the framing operator; the spectral convergence error is then
// non-increasing across iterations. The final signal trims the half-window
// lead-in back to T*hop samples.

namespace {

void gl_frames_to_signal(const std::vector<std::complex<double>>& spectra,
                         std::size_t frames, std::vector<double>& x) {
  const auto& win = hann_window();
  const std::size_t len = (frames - 1) * dsp::kHopLength + dsp::kWinLength;
  x.assign(len, 0.0);
  std::vector<double> denom(len, 0.0);
  std::vector<double> frame(dsp::kNfft);
  for (std::size_t t = 0; t < frames; ++t) {
    Fft::instance().inverse(spectra.data() + t * dsp::kNumBins, frame.data());
    const std::size_t off = t * dsp::kHopLength;
    for (std::size_t i = 0; i < dsp::kWinLength; ++i) {
      x[off + i] += win[i] * frame[i];
      denom[off + i] += win[i] * win[i];
    }
  }
  for (std::size_t i = 0; i < len; ++i) {
    x[i] /= std::max(denom[i], 1e-10);
  }
}

void gl_signal_to_spectra(const std::vector<double>& x, std::size_t frames,
                          std::vector<std::complex<double>>& spectra) {
  const auto& win = hann_window();
  std::vector<double> buf(dsp::kNfft, 0.0);
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t off = t * dsp::kHopLength;
    for (std::size_t i = 0; i < dsp::kWinLength; ++i) {
      buf[i] = win[i] * x[off + i];
    }
    std::fill(buf.begin() + dsp::kWinLength, buf.end(), 0.0);
    Fft::instance().forward(buf.data(), spectra.data() + t * dsp::kNumBins);
  }
}

}  // namespace

Waveform griffin_lim(const MelSpectrogram& mel, int iterations,
                     std::vector<double>* convergence) {
  AK_REQUIRE(iterations >= 1, "griffin_lim: iterations must be >= 1");
  AK_REQUIRE(mel.values.cols == dsp::kNumMels, "griffin_lim: expected 80 bins");
  const std::size_t frames = mel.frames();
  AK_REQUIRE(frames >= 1, "griffin_lim: empty mel");
  if (convergence) convergence->clear();

  // Target linear magnitudes via the filterbank pseudo-inverse.
  Mat target(frames, dsp::kNumBins);
  {
    std::vector<double> amp(dsp::kNumMels);
    for (std::size_t t = 0; t < frames; ++t) {
      for (std::size_t b = 0; b < dsp::kNumMels; ++b) {
        amp[b] = std::exp(mel.values.at(t, b));
      }
      mel_inverter().frame_to_linear(amp.data(), target.row_ptr(t));
    }
  }
  double target_norm = 0.0;
  for (double v : target.data) target_norm += v * v;
  target_norm = std::sqrt(target_norm);

  // Zero-phase init.
  std::vector<std::complex<double>> spectra(frames * dsp::kNumBins);
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t k = 0; k < dsp::kNumBins; ++k) {
      spectra[t * dsp::kNumBins + k] = {target.at(t, k), 0.0};
    }
  }

  std::vector<double> x;
  std::vector<std::complex<double>> estimate(frames * dsp::kNumBins);
  for (int iter = 0; iter < iterations; ++iter) {
    gl_frames_to_signal(spectra, frames, x);
    gl_signal_to_spectra(x, frames, estimate);
    double err = 0.0;
    for (std::size_t i = 0; i < estimate.size(); ++i) {
      const double d = std::abs(estimate[i]) - target.data[i];
      err += d * d;
    }
    if (convergence) {
      convergence->push_back(std::sqrt(err) / std::max(target_norm, 1e-300));
    }
    for (std::size_t i = 0; i < estimate.size(); ++i) {
      const double mag = std::abs(estimate[i]);
      const std::complex<double> phase =
          mag > 0.0 ? estimate[i] / mag : std::complex<double>(1.0, 0.0);
      spectra[i] = target.data[i] * phase;
    }
  }
  gl_frames_to_signal(spectra, frames, x);

  Waveform out;
  out.sample_rate = dsp::kSampleRate;
  const std::size_t lead = dsp::kWinLength / 2;
  const std::size_t want = frames * dsp::kHopLength;
  out.samples.assign(want, 0.0);
  for (std::size_t i = 0; i < want && lead + i < x.size(); ++i) {
    out.samples[i] = x[lead + i];
  }
  double peak = 0.0;
  for (double v : out.samples) peak = std::max(peak, std::abs(v));
  if (peak > 1.0) {
    kernels::active().scale(0.99 / peak, out.samples.data(), out.samples.size());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mel dump format

namespace {
constexpr std::uint32_t kMelMagic = 0x444C454Du;  // "MELD"
constexpr std::uint32_t kMelVersion = 1;
}  // namespace

void write_mel(const std::filesystem::path& path, const MelSpectrogram& mel) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write mel file: " + path.string());
  write_le<std::uint32_t>(out, kMelMagic);
  write_le<std::uint32_t>(out, kMelVersion);
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(mel.frames()));
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(mel.values.cols));
  for (double v : mel.values.data) {
    write_le<float>(out, static_cast<float>(v));
  }
  if (!out) throw DataError("failed writing mel file: " + path.string());
}

MelSpectrogram read_mel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open mel file: " + path.string());
  const std::uint32_t magic = read_le<std::uint32_t>(in);
  const std::uint32_t version = read_le<std::uint32_t>(in);
  const std::uint32_t frames = read_le<std::uint32_t>(in);
  const std::uint32_t bins = read_le<std::uint32_t>(in);
  if (!in || magic != kMelMagic) {
    throw DataError("bad mel file magic: " + path.string());
  }
  if (version != kMelVersion) {
    throw DataError("unsupported mel file version: " + path.string());
  }
  if (bins != dsp::kNumMels) {
    throw DataError("mel file does not have 80 bins: " + path.string());
  }
  MelSpectrogram mel;
  mel.values = Mat(frames, bins);
  for (double& v : mel.values.data) {
    float f = read_le<float>(in);
    v = static_cast<double>(f);
  }
  if (!in) throw DataError("truncated mel file: " + path.string());
  return mel;
}

}  // namespace accentkit
