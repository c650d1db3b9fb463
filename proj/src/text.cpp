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

#include "accentkit/text.hpp"

#include <fstream>

namespace accentkit {

namespace {
const char* kSpecialNames[] = {"<pad>", "<sos>", "<eos>"};
}

PhonemeInventory::PhonemeInventory(std::string name,
                                   std::vector<std::string> symbols)
    : name_(std::move(name)), symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const std::string& s = symbols_[i];
    AK_REQUIRE(!s.empty(), "inventory: empty symbol at position " + std::to_string(i));
    for (const char* special : kSpecialNames) {
      if (s == special) {
        throw DataError("inventory: symbol collides with special token: " + s);
      }
    }
    auto [it, inserted] = index_.emplace(s, static_cast<int>(i) + kNumSpecialIds);
    if (!inserted) throw DataError("inventory: duplicate symbol: " + s);
  }
}

int PhonemeInventory::id_of(const std::string& symbol) const {
  auto it = index_.find(symbol);
  AK_REQUIRE(it != index_.end(), "inventory: unknown symbol: " + symbol);
  return it->second;
}

const std::string& PhonemeInventory::symbol_of(int id) const {
  AK_REQUIRE(id >= kNumSpecialIds &&
                 static_cast<std::size_t>(id) < num_ids(),
             "inventory: id " + std::to_string(id) + " is not a symbol id");
  return symbols_[static_cast<std::size_t>(id - kNumSpecialIds)];
}

PhonemeInventory load_inventory(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open inventory file: " + path.string());
  std::vector<std::string> symbols;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    symbols.push_back(line);
  }
  return PhonemeInventory(path.stem().string(), std::move(symbols));
}

void save_inventory(const PhonemeInventory& inv,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write inventory file: " + path.string());
  for (const auto& s : inv.symbols()) out << s << "\n";
}

PhonemeSequence encode_transcript(const std::vector<std::string>& symbols,
                                  const PhonemeInventory& inv) {
  PhonemeSequence ids;
  ids.reserve(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (!inv.contains(symbols[i])) {
      throw DataError("unknown phoneme symbol \"" + symbols[i] +
                      "\" at position " + std::to_string(i));
    }
    ids.push_back(inv.id_of(symbols[i]));
  }
  return ids;
}

std::vector<std::string> decode_ids(const PhonemeSequence& ids,
                                    const PhonemeInventory& inv) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(inv.symbol_of(id));
  return out;
}

PhonemeSequence frame_for_decoding(const PhonemeSequence& seq) {
  PhonemeSequence out;
  out.reserve(seq.size() + 2);
  out.push_back(kSosId);
  out.insert(out.end(), seq.begin(), seq.end());
  out.push_back(kEosId);
  return out;
}

PhonemeSequence strip_specials(const PhonemeSequence& seq) {
  PhonemeSequence out;
  out.reserve(seq.size());
  for (int id : seq) {
    if (id == kPadId || id == kSosId || id == kEosId) continue;
    out.push_back(id);
  }
  return out;
}

int id_to_class(int id) {
  AK_REQUIRE(id >= kEosId, "id_to_class: PAD/SOS have no class");
  return id - kEosId;
}

int class_to_id(int cls) {
  AK_REQUIRE(cls >= 0, "class_to_id: negative class");
  return cls + kEosId;
}

}  // namespace accentkit
