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

#ifndef ACCENTKIT_TEXT_HPP_
#define ACCENTKIT_TEXT_HPP_

#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "accentkit/common.hpp"

namespace accentkit {

// Token ids: PAD=0, SOS=1, EOS=2, then inventory symbols in declared order.
// A PhonemeSequence excludes specials unless explicitly framed.
using PhonemeSequence = std::vector<int>;

constexpr int kPadId = 0;
constexpr int kSosId = 1;
constexpr int kEosId = 2;
constexpr int kNumSpecialIds = 3;

class PhonemeInventory {
 public:
  PhonemeInventory() = default;
  PhonemeInventory(std::string name, std::vector<std::string> symbols);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& symbols() const { return symbols_; }

  std::size_t size() const { return symbols_.size(); }
  // Full id space including PAD/SOS/EOS.
  std::size_t num_ids() const { return symbols_.size() + kNumSpecialIds; }
  // Classifier output space: EOS plus the symbols (PAD/SOS are never
  // prediction targets).
  std::size_t num_classes() const { return symbols_.size() + 1; }

  bool contains(const std::string& symbol) const {
    return index_.count(symbol) != 0;
  }
  int id_of(const std::string& symbol) const;
  const std::string& symbol_of(int id) const;

  bool operator==(const PhonemeInventory& o) const {
    return name_ == o.name_ && symbols_ == o.symbols_;
  }

 private:
  std::string name_;
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> index_;
};

// One symbol per line, order-significant. The inventory name is the file stem.
PhonemeInventory load_inventory(const std::filesystem::path& path);
void save_inventory(const PhonemeInventory& inv, const std::filesystem::path& path);

// Symbol list -> id sequence (no specials). Unknown symbols report the
// symbol and its position.
PhonemeSequence encode_transcript(const std::vector<std::string>& symbols,
                                  const PhonemeInventory& inv);
std::vector<std::string> decode_ids(const PhonemeSequence& ids,
                                    const PhonemeInventory& inv);

// [SOS, ...seq..., EOS]
PhonemeSequence frame_for_decoding(const PhonemeSequence& seq);
// Inverse of frame_for_decoding (drops leading SOS / trailing EOS / PAD).
PhonemeSequence strip_specials(const PhonemeSequence& seq);

// Mapping between token ids and classifier classes: EOS -> 0, symbol ids ->
// 1..V. PAD/SOS have no class.
int id_to_class(int id);
int class_to_id(int cls);

}  // namespace accentkit

#endif  // ACCENTKIT_TEXT_HPP_
