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

#include <cmath>
#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "accentkit/dsp.hpp"
#include "accentkit/rng.hpp"

using namespace accentkit;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.14159265358979323846;

Waveform sine(double hz, double seconds, int rate, double amp = 0.5) {
  Waveform w;
  w.sample_rate = rate;
  std::size_t n = static_cast<std::size_t>(seconds * rate);
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    w.samples[i] = amp * std::sin(2.0 * kPi * hz * i / rate);
  }
  return w;
}

// Independent narrowband power probe (Goertzel), used as the spectral-peak
// oracle so tests do not rely on the library's own FFT path.
double goertzel_power(const Waveform& w, double hz) {
  const double k = 2.0 * kPi * hz / w.sample_rate;
  const double coeff = 2.0 * std::cos(k);
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (double x : w.samples) {
    s0 = x + coeff * s1 - s2;
    s2 = s1;
    s1 = s0;
  }
  return s1 * s1 + s2 * s2 - coeff * s1 * s2;
}

double peak_frequency(const Waveform& w, double lo, double hi, double step) {
  double best_f = lo, best_p = -1.0;
  for (double f = lo; f <= hi; f += step) {
    double p = goertzel_power(w, f);
    if (p > best_p) {
      best_p = p;
      best_f = f;
    }
  }
  return best_f;
}

double pearson(const Mat& a, const Mat& b) {
  REQUIRE(a.same_shape(b));
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a.data[i];
    mb += b.data[i];
  }
  ma /= a.size();
  mb /= b.size();
  double num = 0, da = 0, db = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a.data[i] - ma) * (b.data[i] - mb);
    da += (a.data[i] - ma) * (a.data[i] - ma);
    db += (b.data[i] - mb) * (b.data[i] - mb);
  }
  return num / std::sqrt(da * db);
}

fs::path temp_dir() {
  fs::path p = fs::temp_directory_path() / "accentkit_dsp_test";
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("frame count law: T = ceil(N / 200)") {
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    std::size_t n = 1 + rng.index(40000);
    Waveform w;
    w.samples.assign(n, 0.1);
    CHECK(mel_frame_count(n) == (n + 199) / 200);
    CHECK(mel_spectrogram(w).frames() == (n + 199) / 200);
  }
  Waveform one_sec = sine(440.0, 1.0, 16000);
  CHECK(mel_spectrogram(one_sec).frames() == 80);
}

TEST_CASE("resample: identity is bit-exact, lengths and peaks are right") {
  Waveform w = sine(440.0, 1.0, 16000);
  Waveform same = resample(w, 16000);
  CHECK(same.samples == w.samples);

  Waveform w48 = sine(440.0, 1.0, 48000);
  Waveform down = resample(w48, 16000);
  CHECK(std::abs(static_cast<long>(down.samples.size()) - 16000L) <= 1);

  double peak = peak_frequency(down, 400.0, 480.0, 1.0);
  CHECK(std::abs(peak - 440.0) <= 2.0);

  CHECK_THROWS(resample(w, 0));
}

TEST_CASE("all-zero waveform gives an all-floor mel") {
  Waveform w;
  w.samples.assign(3000, 0.0);
  MelSpectrogram mel = mel_spectrogram(w);
  for (double v : mel.values.data) {
    CHECK(v == doctest::Approx(std::log(1e-5)));
  }
}

TEST_CASE("empty waveform is rejected") {
  Waveform w;
  CHECK_THROWS_AS(mel_spectrogram(w), DataError);
}

TEST_CASE("440 Hz sine: constant argmax mel bin matching the filterbank") {
  Waveform w = sine(440.0, 1.0, 16000);
  MelSpectrogram mel = mel_spectrogram(w);

  // Oracle: recompute the HTK triangle weights at 440 Hz and take the
  // strongest filter.
  auto htk = [](double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); };
  auto inv = [](double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); };
  const double mel_max = htk(8000.0);
  std::size_t expected = 0;
  double best = -1.0;
  for (std::size_t b = 0; b < 80; ++b) {
    double lo = inv(mel_max * b / 81.0);
    double mid = inv(mel_max * (b + 1) / 81.0);
    double hi = inv(mel_max * (b + 2) / 81.0);
    double wgt = 0.0;
    if (440.0 >= lo && 440.0 <= mid) wgt = (440.0 - lo) / (mid - lo);
    if (440.0 > mid && 440.0 <= hi) wgt = (hi - 440.0) / (hi - mid);
    if (wgt > best) {
      best = wgt;
      expected = b;
    }
  }

  for (std::size_t t = 2; t + 2 < mel.frames(); ++t) {
    std::size_t argmax = 0;
    for (std::size_t b = 1; b < 80; ++b) {
      if (mel.values.at(t, b) > mel.values.at(t, argmax)) argmax = b;
    }
    CHECK(argmax == expected);
  }
}

TEST_CASE("hop shift moves interior frames by one index") {
  Waveform w = sine(523.25, 1.0, 16000, 0.4);
  Waveform shifted;
  shifted.sample_rate = 16000;
  shifted.samples.assign(200, 0.0);
  shifted.samples.insert(shifted.samples.end(), w.samples.begin(), w.samples.end());

  MelSpectrogram a = mel_spectrogram(w);
  MelSpectrogram b = mel_spectrogram(shifted);
  REQUIRE(b.frames() == a.frames() + 1);
  for (std::size_t t = 2; t + 2 < a.frames(); ++t) {
    for (std::size_t bin = 0; bin < 80; ++bin) {
      CHECK(std::abs(a.values.at(t, bin) - b.values.at(t + 1, bin)) < 1e-5);
    }
  }
}

TEST_CASE("normalization statistics and round trip") {
  Rng rng(9);
  std::vector<MelSpectrogram> mels;
  for (int i = 0; i < 2; ++i) {
    MelSpectrogram mel;
    mel.values = Mat(5, 80);
    for (double& v : mel.values.data) v = rng.uniform(-8.0, 2.0);
    mels.push_back(mel);
  }

  MelStats stats = compute_stats(mels);
  // Hand-computed per-bin mean over the two fixtures.
  for (std::size_t b = 0; b < 80; ++b) {
    double s = 0.0;
    for (const auto& m : mels)
      for (std::size_t t = 0; t < 5; ++t) s += m.values.at(t, b);
    CHECK(stats.mean[b] == doctest::Approx(s / 10.0));
  }

  MelSpectrogram norm = normalize(mels[0], stats);
  MelSpectrogram back = denormalize(norm, stats);
  CHECK(max_abs_diff(back.values, mels[0].values) < 1e-6);

  // Whole-corpus normalization is zero-mean unit-variance per bin.
  std::vector<MelSpectrogram> normed{normalize(mels[0], stats),
                                     normalize(mels[1], stats)};
  MelStats again = compute_stats(normed);
  for (std::size_t b = 0; b < 80; ++b) {
    CHECK(std::abs(again.mean[b]) < 1e-9);
    CHECK(again.stddev[b] == doctest::Approx(1.0).epsilon(1e-6));
  }

  // Degenerate constant corpus: std floored, no blow-up.
  MelSpectrogram flat;
  flat.values = Mat(4, 80);
  flat.values.fill(-3.0);
  MelStats flat_stats = compute_stats(std::vector<MelSpectrogram>{flat});
  for (std::size_t b = 0; b < 80; ++b) CHECK(flat_stats.stddev[b] == 1e-5);
  MelSpectrogram fn = normalize(flat, flat_stats);
  CHECK(fn.values.all_finite());

  CHECK_THROWS(compute_stats(std::vector<MelSpectrogram>{}));
}

TEST_CASE("griffin-lim: silence stays silent") {
  MelSpectrogram mel;
  mel.values = Mat(20, 80);
  mel.values.fill(std::log(1e-5));
  Waveform w = griffin_lim(mel, 5);
  double rms = 0.0;
  for (double v : w.samples) rms += v * v;
  rms = std::sqrt(rms / w.samples.size());
  CHECK(rms < 1e-3);
}

TEST_CASE("griffin-lim: 440 Hz round trip correlates and converges") {
  Waveform w = sine(440.0, 0.5, 16000);
  MelSpectrogram mel = mel_spectrogram(w);

  std::vector<double> errs;
  Waveform rec = griffin_lim(mel, 60, &errs);
  CHECK(rec.sample_rate == 16000);
  CHECK(rec.samples.size() == mel.frames() * 200);

  REQUIRE(errs.size() == 60);
  for (std::size_t i = 1; i < errs.size(); ++i) {
    CHECK(errs[i] <= errs[i - 1] + 1e-10);
  }

  MelSpectrogram round = mel_spectrogram(rec);
  REQUIRE(round.frames() == mel.frames());
  CHECK(pearson(round.values, mel.values) >= 0.9);

  // Determinism.
  Waveform rec2 = griffin_lim(mel, 60);
  CHECK(rec2.samples == rec.samples);
}

TEST_CASE("wav round trip within 16-bit quantization") {
  fs::path dir = temp_dir();
  Waveform w = sine(300.0, 0.1, 16000, 0.8);
  write_wav(dir / "t.wav", w);
  Waveform r = read_wav(dir / "t.wav");
  CHECK(r.sample_rate == 16000);
  REQUIRE(r.samples.size() == w.samples.size());
  for (std::size_t i = 0; i < w.samples.size(); ++i) {
    CHECK(std::abs(r.samples[i] - w.samples[i]) < 1.0 / 32000.0);
  }
  CHECK_THROWS_AS(read_wav(dir / "missing.wav"), DataError);
}

TEST_CASE("mel dump round trip and corruption checks") {
  fs::path dir = temp_dir();
  Rng rng(30);
  MelSpectrogram mel;
  mel.values = Mat(7, 80);
  for (double& v : mel.values.data) v = rng.uniform(-11.0, 2.0);

  write_mel(dir / "a.mel", mel);
  MelSpectrogram r = read_mel(dir / "a.mel");
  REQUIRE(r.frames() == 7);
  // float32 storage: round trip within 1e-6 relative.
  for (std::size_t i = 0; i < mel.values.size(); ++i) {
    CHECK(std::abs(r.values.data[i] - mel.values.data[i]) <
          1e-6 * std::max(1.0, std::abs(mel.values.data[i])));
  }

  std::ofstream bad(dir / "bad.mel", std::ios::binary);
  bad.write("NOPE", 4);
  bad.close();
  CHECK_THROWS_AS(read_mel(dir / "bad.mel"), DataError);
}
