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

#ifndef ACCENTKIT_DSP_HPP_
#define ACCENTKIT_DSP_HPP_

#include <filesystem>
#include <vector>

#include "accentkit/mat.hpp"

namespace accentkit {

// Mono audio, samples in [-1, 1].
struct Waveform {
  std::vector<double> samples;
  int sample_rate = 16000;
};

namespace dsp {

// Analysis settings: 16 kHz audio, 50 ms window, 12.5 ms hop, 80 mel bins
// spanning 0-8 kHz, natural-log amplitude floored at 1e-5.
constexpr int kSampleRate = 16000;
constexpr std::size_t kWinLength = 800;
constexpr std::size_t kHopLength = 200;
constexpr std::size_t kNfft = 1024;
constexpr std::size_t kNumBins = kNfft / 2 + 1;
constexpr std::size_t kNumMels = 80;
constexpr double kFmax = 8000.0;
constexpr double kAmpFloor = 1e-5;
constexpr int kGriffinLimIters = 60;

}  // namespace dsp

// T×80 log-amplitude mel matrix.
struct MelSpectrogram {
  Mat values;  // frames × mel bins
  double frame_shift = 0.0125;
  double window = 0.050;
  int sample_rate = dsp::kSampleRate;

  std::size_t frames() const { return values.rows; }
};

// Per-bin normalization statistics. Stds are floored at 1e-5.
struct MelStats {
  std::vector<double> mean;  // 80
  std::vector<double> stddev;
};

// --- Waveform I/O (16-bit PCM mono WAV) -----------------------------------

Waveform read_wav(const std::filesystem::path& path);
void write_wav(const std::filesystem::path& path, const Waveform& w);

// --- Resampling -------------------------------------------------------------

// Windowed-sinc resampling. Identity (bit-exact copy) when rates match;
// output length is round(n * target / source).
Waveform resample(const Waveform& w, int target_rate);

// --- Mel analysis ------------------------------------------------------------

// Center-padded framing: exactly ceil(num_samples / 200) frames.
std::size_t mel_frame_count(std::size_t num_samples);

// Requires w.sample_rate == 16000 and a non-empty waveform.
MelSpectrogram mel_spectrogram(const Waveform& w, double floor = dsp::kAmpFloor);

// Wraps a raw matrix (e.g. network output) as a MelSpectrogram, clamping
// values up to the log floor so the type invariant holds.
MelSpectrogram mel_from_values(Mat values);

// The 80×513 triangular filterbank (HTK mel scale, unit peak).
const Mat& mel_filterbank();
// Center frequency of each mel filter, in Hz.
const std::vector<double>& mel_center_frequencies();

// --- Normalization ------------------------------------------------------------

MelStats compute_stats(const std::vector<const MelSpectrogram*>& mels);
MelStats compute_stats(const std::vector<MelSpectrogram>& mels);
MelSpectrogram normalize(const MelSpectrogram& mel, const MelStats& stats);
MelSpectrogram denormalize(const MelSpectrogram& mel, const MelStats& stats);
Mat normalize_values(const Mat& values, const MelStats& stats);
Mat denormalize_values(const Mat& values, const MelStats& stats);

// --- Griffin-Lim --------------------------------------------------------------

// Iterative phase reconstruction from a log-mel spectrogram (zero-phase
// init, deterministic). `convergence` (optional) receives the spectral
// convergence error after each iteration; the sequence is non-increasing.
Waveform griffin_lim(const MelSpectrogram& mel, int iterations = dsp::kGriffinLimIters,
                     std::vector<double>* convergence = nullptr);

// --- Mel dump format -----------------------------------------------------------

// Binary layout: u32 magic "MELD", u32 version (1), u32 frames, u32 bins,
// then row-major float32 values. Little endian.
void write_mel(const std::filesystem::path& path, const MelSpectrogram& mel);
MelSpectrogram read_mel(const std::filesystem::path& path);

}  // namespace accentkit

#endif  // ACCENTKIT_DSP_HPP_
