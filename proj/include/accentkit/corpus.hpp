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

#ifndef ACCENTKIT_CORPUS_HPP_
#define ACCENTKIT_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "accentkit/dsp.hpp"
#include "accentkit/text.hpp"

namespace accentkit {

struct UtteranceRecord {
  std::string id;
  std::string audio;  // path as written in the manifest
  std::string speaker;
  std::string accent;
  std::vector<std::string> transcript;

  bool operator==(const UtteranceRecord&) const = default;
};

struct CorpusManifest {
  std::vector<UtteranceRecord> records;
  std::set<std::string> accent_set;
  std::string inventory_name;
  // Directory the manifest was loaded from; relative audio paths resolve
  // against it. Not serialized.
  std::filesystem::path base_dir;

  std::filesystem::path resolve_audio(const UtteranceRecord& rec) const {
    std::filesystem::path p(rec.audio);
    return p.is_absolute() ? p : base_dir / p;
  }

  bool operator==(const CorpusManifest& o) const {
    return records == o.records && accent_set == o.accent_set &&
           inventory_name == o.inventory_name;
  }
};

// Manifest file: UTF-8, first line a JSON header declaring accent_set and
// inventory_name, then one JSON record per line with keys id, audio,
// speaker, accent, phonemes.
CorpusManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const CorpusManifest& manifest,
                   const std::filesystem::path& path);

// Per-speaker held-out split: exactly eval_count records per speaker go to
// eval, chosen by a per-speaker seeded shuffle over id-sorted records, so
// the result does not depend on manifest ordering. Record order of the
// input is preserved in both outputs.
std::pair<CorpusManifest, CorpusManifest> split_corpus(
    const CorpusManifest& manifest, std::size_t eval_count_per_speaker,
    std::uint64_t seed);

// ---------------------------------------------------------------------------
// Toy corpus: phonemes rendered as two-sinusoid mixtures, accents as
// per-phoneme formant-shift ratios, speakers as global pitch scales.

struct ToySpeaker {
  std::string id;
  double pitch_scale = 1.0;
};

using FormantShift = std::pair<double, double>;  // per-component ratios

struct ToyCorpusSpec {
  std::size_t num_phonemes = 10;
  std::size_t min_utterance_length = 4;
  std::size_t max_utterance_length = 10;
  std::size_t num_utterances_per_split = 60;
  // The last speaker is the conversion-source voice; all earlier speakers
  // provide the target-accent training data.
  std::vector<ToySpeaker> speakers = {
      {"tgt_a", 0.97}, {"tgt_b", 1.03}, {"src_a", 1.0}};
  // Must contain "target"; every other accent is a source accent.
  std::map<std::string, std::vector<FormantShift>> accent_shifts;
  int sample_rate = 16000;
  std::uint64_t seed = 1234;

  // Fills accent_shifts with identity "target" ratios and a "source" accent
  // that moves most phonemes (several onto a neighbouring phoneme's recipe).
  static ToyCorpusSpec defaults();

  void validate() const;
};

struct ToyCorpus {
  CorpusManifest train_tts;      // target accent, TTS speakers
  CorpusManifest train_encoder;  // source accents, source speaker
  CorpusManifest eval_source;    // held-out source-accent inputs
  CorpusManifest eval_target;    // parallel target-accent renderings, same ids
  PhonemeInventory inventory;
  std::filesystem::path inventory_path;
};

// Writes WAVs, the four role manifests (train_tts.jsonl, train_encoder.jsonl,
// eval_source.jsonl, eval_target.jsonl) and the inventory file under out_dir.
// Fully deterministic under spec.seed.
ToyCorpus generate_toy_corpus(const ToyCorpusSpec& spec,
                              const std::filesystem::path& out_dir);

// Base two-formant recipe for phoneme k (geometric grid, so adjacent
// phonemes differ by a fixed ratio).
std::pair<double, double> toy_phoneme_formants(std::size_t phoneme_index);

// One 120 ms segment at the given component frequencies, with 10 ms linear
// fades.
Waveform render_toy_segment(double f1_hz, double f2_hz, int sample_rate);

// Concatenated segments for a transcript under an accent's shifts and a
// speaker's pitch scale.
Waveform render_toy_utterance(const std::vector<std::size_t>& phonemes,
                              const std::vector<FormantShift>& shifts,
                              double pitch_scale, int sample_rate);

}  // namespace accentkit

#endif  // ACCENTKIT_CORPUS_HPP_
