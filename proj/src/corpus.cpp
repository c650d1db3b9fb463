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

#include "accentkit/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "accentkit/rng.hpp"

namespace accentkit {

using nlohmann::json;

namespace {

json parse_line(const std::string& line, const std::filesystem::path& path,
                std::size_t line_no) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw DataError("manifest " + path.string() + " line " +
                    std::to_string(line_no) + ": " + e.what());
  }
}

std::string require_string(const json& j, const char* key,
                           const std::filesystem::path& path,
                           std::size_t line_no) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw DataError("manifest " + path.string() + " line " +
                    std::to_string(line_no) + ": missing string field \"" +
                    key + "\"");
  }
  return j[key].get<std::string>();
}

}  // namespace

CorpusManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest: " + path.string());

  CorpusManifest m;
  m.base_dir = path.has_parent_path() ? path.parent_path()
                                      : std::filesystem::path(".");

  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::set<std::string> seen_ids;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    json j = parse_line(line, path, line_no);

    if (!have_header) {
      if (!j.contains("accent_set") || !j["accent_set"].is_array()) {
        throw DataError("manifest " + path.string() +
                        " line 1: header must declare accent_set");
      }
      for (const auto& a : j["accent_set"]) {
        if (!a.is_string()) {
          throw DataError("manifest " + path.string() +
                          " line 1: accent_set entries must be strings");
        }
        m.accent_set.insert(a.get<std::string>());
      }
      m.inventory_name = require_string(j, "inventory_name", path, line_no);
      have_header = true;
      continue;
    }

    UtteranceRecord rec;
    rec.id = require_string(j, "id", path, line_no);
    rec.audio = require_string(j, "audio", path, line_no);
    rec.speaker = require_string(j, "speaker", path, line_no);
    rec.accent = require_string(j, "accent", path, line_no);
    if (!j.contains("phonemes") || !j["phonemes"].is_array()) {
      throw DataError("manifest " + path.string() + " line " +
                      std::to_string(line_no) + ": missing phonemes array");
    }
    for (const auto& p : j["phonemes"]) {
      if (!p.is_string()) {
        throw DataError("manifest " + path.string() + " line " +
                        std::to_string(line_no) +
                        ": phonemes entries must be strings");
      }
      rec.transcript.push_back(p.get<std::string>());
    }

    if (rec.id.empty()) {
      throw DataError("manifest " + path.string() + " line " +
                      std::to_string(line_no) + ": empty utterance id");
    }
    if (rec.transcript.empty()) {
      throw DataError("manifest " + path.string() + " line " +
                      std::to_string(line_no) + ": empty transcript for \"" +
                      rec.id + "\"");
    }
    if (!seen_ids.insert(rec.id).second) {
      throw DataError("manifest " + path.string() + " line " +
                      std::to_string(line_no) + ": duplicate utterance id \"" +
                      rec.id + "\"");
    }
    if (m.accent_set.count(rec.accent) == 0) {
      throw DataError("manifest " + path.string() + " line " +
                      std::to_string(line_no) + ": accent \"" + rec.accent +
                      "\" not in declared accent_set");
    }
    m.records.push_back(std::move(rec));
  }

  if (!have_header) {
    throw DataError("manifest " + path.string() + ": missing header line");
  }
  return m;
}

void save_manifest(const CorpusManifest& manifest,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write manifest: " + path.string());
  json header;
  header["accent_set"] = manifest.accent_set;
  header["inventory_name"] = manifest.inventory_name;
  out << header.dump() << "\n";
  for (const auto& rec : manifest.records) {
    json j;
    j["id"] = rec.id;
    j["audio"] = rec.audio;
    j["speaker"] = rec.speaker;
    j["accent"] = rec.accent;
    j["phonemes"] = rec.transcript;
    out << j.dump() << "\n";
  }
  if (!out) throw DataError("failed writing manifest: " + path.string());
}

std::pair<CorpusManifest, CorpusManifest> split_corpus(
    const CorpusManifest& manifest, std::size_t eval_count_per_speaker,
    std::uint64_t seed) {
  // Speakers in first-appearance order, records id-sorted per speaker so the
  // selection is independent of manifest ordering.
  std::vector<std::string> speakers;
  std::map<std::string, std::vector<std::size_t>> by_speaker;
  for (std::size_t i = 0; i < manifest.records.size(); ++i) {
    const auto& rec = manifest.records[i];
    if (by_speaker.find(rec.speaker) == by_speaker.end()) {
      speakers.push_back(rec.speaker);
    }
    by_speaker[rec.speaker].push_back(i);
  }

  std::vector<bool> in_eval(manifest.records.size(), false);
  for (const auto& speaker : speakers) {
    auto& idxs = by_speaker[speaker];
    if (idxs.size() <= eval_count_per_speaker) {
      throw DataError("split_corpus: speaker \"" + speaker + "\" has only " +
                      std::to_string(idxs.size()) +
                      " utterances, need more than " +
                      std::to_string(eval_count_per_speaker));
    }
    std::sort(idxs.begin(), idxs.end(), [&](std::size_t a, std::size_t b) {
      return manifest.records[a].id < manifest.records[b].id;
    });
    Rng rng(seed ^ hash_str(speaker));
    rng.shuffle(idxs);
    for (std::size_t k = 0; k < eval_count_per_speaker; ++k) {
      in_eval[idxs[k]] = true;
    }
  }

  CorpusManifest train, eval;
  train.accent_set = eval.accent_set = manifest.accent_set;
  train.inventory_name = eval.inventory_name = manifest.inventory_name;
  train.base_dir = eval.base_dir = manifest.base_dir;
  for (std::size_t i = 0; i < manifest.records.size(); ++i) {
    (in_eval[i] ? eval : train).records.push_back(manifest.records[i]);
  }
  return {std::move(train), std::move(eval)};
}

// ---------------------------------------------------------------------------
// Toy corpus

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSegmentSeconds = 0.120;
constexpr double kFadeSeconds = 0.010;
constexpr double kBaseF1 = 300.0;
constexpr double kGridRatio = 1.25;
constexpr double kF2Factor = 2.2;

}  // namespace

std::pair<double, double> toy_phoneme_formants(std::size_t phoneme_index) {
  double f1 = kBaseF1 * std::pow(kGridRatio, static_cast<double>(phoneme_index));
  return {f1, kF2Factor * f1};
}

Waveform render_toy_segment(double f1_hz, double f2_hz, int sample_rate) {
  Waveform w;
  w.sample_rate = sample_rate;
  const std::size_t n =
      static_cast<std::size_t>(std::lround(kSegmentSeconds * sample_rate));
  const std::size_t fade =
      static_cast<std::size_t>(std::lround(kFadeSeconds * sample_rate));
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / sample_rate;
    double v = 0.45 * std::sin(2.0 * kPi * f1_hz * t) +
               0.35 * std::sin(2.0 * kPi * f2_hz * t);
    double gain = 1.0;
    if (i < fade) gain = static_cast<double>(i) / static_cast<double>(fade);
    const std::size_t from_end = n - 1 - i;
    if (from_end < fade) {
      gain = std::min(gain, static_cast<double>(from_end) / static_cast<double>(fade));
    }
    w.samples[i] = v * gain;
  }
  return w;
}

Waveform render_toy_utterance(const std::vector<std::size_t>& phonemes,
                              const std::vector<FormantShift>& shifts,
                              double pitch_scale, int sample_rate) {
  Waveform out;
  out.sample_rate = sample_rate;
  for (std::size_t p : phonemes) {
    AK_REQUIRE(p < shifts.size(), "render_toy_utterance: phoneme index out of range");
    auto [f1, f2] = toy_phoneme_formants(p);
    Waveform seg = render_toy_segment(f1 * shifts[p].first * pitch_scale,
                                      f2 * shifts[p].second * pitch_scale,
                                      sample_rate);
    out.samples.insert(out.samples.end(), seg.samples.begin(), seg.samples.end());
  }
  return out;
}

ToyCorpusSpec ToyCorpusSpec::defaults() {
  ToyCorpusSpec spec;
  std::vector<FormantShift> target(spec.num_phonemes, {1.0, 1.0});
  std::vector<FormantShift> source(spec.num_phonemes, {1.0, 1.0});
  for (std::size_t p = 0; p < spec.num_phonemes; ++p) {
    if (p + 1 == spec.num_phonemes) {
      source[p] = {1.18, 1.15};  // off the grid entirely
    } else if (p % 2 == 0) {
      source[p] = {kGridRatio, kGridRatio};  // lands on phoneme p+1's recipe
    } else if (p == 5) {
      source[p] = {1.0, 1.0};  // one phoneme the accents agree on
    } else {
      source[p] = {1.12, 1.10};
    }
  }
  spec.accent_shifts["target"] = std::move(target);
  spec.accent_shifts["source"] = std::move(source);
  return spec;
}

void ToyCorpusSpec::validate() const {
  AK_REQUIRE(num_phonemes >= 2, "toy spec: need at least 2 phonemes");
  AK_REQUIRE(min_utterance_length >= 1, "toy spec: min utterance length >= 1");
  AK_REQUIRE(min_utterance_length <= max_utterance_length,
             "toy spec: min utterance length > max");
  AK_REQUIRE(num_utterances_per_split >= 1, "toy spec: need utterances");
  AK_REQUIRE(sample_rate > 0, "toy spec: sample rate must be positive");
  AK_REQUIRE(speakers.size() >= 2,
             "toy spec: need at least one TTS speaker and one source speaker");
  std::set<std::string> speaker_ids;
  for (const auto& s : speakers) {
    AK_REQUIRE(!s.id.empty(), "toy spec: empty speaker id");
    AK_REQUIRE(s.pitch_scale > 0.0, "toy spec: pitch_scale must be positive");
    AK_REQUIRE(speaker_ids.insert(s.id).second,
               "toy spec: duplicate speaker id " + s.id);
  }
  AK_REQUIRE(accent_shifts.count("target") == 1,
             "toy spec: accent_shifts must contain \"target\"");
  AK_REQUIRE(accent_shifts.size() >= 2,
             "toy spec: need at least one source accent");
  for (const auto& [accent, shifts] : accent_shifts) {
    AK_REQUIRE(shifts.size() == num_phonemes,
               "toy spec: accent \"" + accent + "\" must shift every phoneme");
    for (const auto& [r1, r2] : shifts) {
      AK_REQUIRE(r1 > 0.0 && r2 > 0.0,
                 "toy spec: formant-shift ratios must be positive");
    }
  }
}

namespace {

std::string zero_pad(std::size_t v, int width = 4) {
  std::string s = std::to_string(v);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

std::vector<std::vector<std::size_t>> sample_transcripts(
    const ToyCorpusSpec& spec, const std::string& split) {
  Rng rng(spec.seed ^ hash_str(split));
  std::vector<std::vector<std::size_t>> out(spec.num_utterances_per_split);
  for (auto& transcript : out) {
    std::size_t len =
        spec.min_utterance_length +
        rng.index(spec.max_utterance_length - spec.min_utterance_length + 1);
    transcript.resize(len);
    for (auto& p : transcript) p = rng.index(spec.num_phonemes);
  }
  return out;
}

}  // namespace

ToyCorpus generate_toy_corpus(const ToyCorpusSpec& spec,
                              const std::filesystem::path& out_dir) {
  spec.validate();
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir / "wav", ec);
  if (ec) throw DataError("cannot create output directory: " + ec.message());

  ToyCorpus corpus;

  std::vector<std::string> symbols;
  for (std::size_t p = 0; p < spec.num_phonemes; ++p) {
    symbols.push_back("p" + std::to_string(p));
  }
  const std::string inv_name = "toy" + std::to_string(spec.num_phonemes);
  corpus.inventory = PhonemeInventory(inv_name, symbols);
  corpus.inventory_path = out_dir / (inv_name + ".txt");
  save_inventory(corpus.inventory, corpus.inventory_path);

  std::set<std::string> accents;
  for (const auto& [accent, _] : spec.accent_shifts) accents.insert(accent);
  for (CorpusManifest* m : {&corpus.train_tts, &corpus.train_encoder,
                            &corpus.eval_source, &corpus.eval_target}) {
    m->accent_set = accents;
    m->inventory_name = inv_name;
    m->base_dir = out_dir;
  }

  const auto train_transcripts = sample_transcripts(spec, "train");
  const auto eval_transcripts = sample_transcripts(spec, "eval");
  const ToySpeaker& source_speaker = spec.speakers.back();

  auto emit = [&](CorpusManifest& manifest, const std::string& rec_id,
                  const std::vector<std::size_t>& transcript,
                  const ToySpeaker& speaker, const std::string& accent) {
    const std::string file = rec_id + "-" + accent + ".wav";
    Waveform w = render_toy_utterance(transcript, spec.accent_shifts.at(accent),
                                      speaker.pitch_scale, spec.sample_rate);
    write_wav(out_dir / "wav" / file, w);
    UtteranceRecord rec;
    rec.id = rec_id;
    rec.audio = "wav/" + file;
    rec.speaker = speaker.id;
    rec.accent = accent;
    for (std::size_t p : transcript) rec.transcript.push_back(symbols[p]);
    manifest.records.push_back(std::move(rec));
  };

  // Target-accent training data from every TTS speaker.
  for (std::size_t u = 0; u < train_transcripts.size(); ++u) {
    for (std::size_t s = 0; s + 1 < spec.speakers.size(); ++s) {
      emit(corpus.train_tts,
           "train-" + zero_pad(u) + "-" + spec.speakers[s].id,
           train_transcripts[u], spec.speakers[s], "target");
    }
  }

  // Source-accent training and held-out data from the source speaker, with a
  // parallel target-accent rendering for every held-out utterance.
  for (const auto& [accent, _] : spec.accent_shifts) {
    if (accent == "target") continue;
    for (std::size_t u = 0; u < train_transcripts.size(); ++u) {
      emit(corpus.train_encoder,
           "train-" + zero_pad(u) + "-" + source_speaker.id + "-" + accent,
           train_transcripts[u], source_speaker, accent);
    }
    for (std::size_t u = 0; u < eval_transcripts.size(); ++u) {
      const std::string pair_id = "eval-" + zero_pad(u) + "-" + accent;
      emit(corpus.eval_source, pair_id, eval_transcripts[u], source_speaker,
           accent);
      emit(corpus.eval_target, pair_id, eval_transcripts[u], source_speaker,
           "target");
    }
  }

  save_manifest(corpus.train_tts, out_dir / "train_tts.jsonl");
  save_manifest(corpus.train_encoder, out_dir / "train_encoder.jsonl");
  save_manifest(corpus.eval_source, out_dir / "eval_source.jsonl");
  save_manifest(corpus.eval_target, out_dir / "eval_target.jsonl");
  return corpus;
}

}  // namespace accentkit
