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

#include <filesystem>

#include <doctest.h>

#include "accentkit/rng.hpp"
#include "accentkit/text.hpp"

using namespace accentkit;

TEST_CASE("encode_transcript basics") {
  PhonemeInventory inv("two", {"p1", "p2"});

  CHECK(encode_transcript({}, inv).empty());

  PhonemeSequence ids = encode_transcript({"p1", "p2", "p1"}, inv);
  CHECK(ids == PhonemeSequence{3, 4, 3});

  try {
    encode_transcript({"p1", "zz"}, inv);
    FAIL("expected error");
  } catch (const DataError& e) {
    std::string msg = e.what();
    CHECK(msg.find("zz") != std::string::npos);
    CHECK(msg.find("1") != std::string::npos);
  }
}

TEST_CASE("encode/decode round trip over random transcripts") {
  std::vector<std::string> symbols;
  for (int i = 0; i < 12; ++i) symbols.push_back("s" + std::to_string(i));
  PhonemeInventory inv("rand", symbols);
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::string> transcript;
    for (int i = 0; i < 50; ++i) transcript.push_back(symbols[rng.index(12)]);
    CHECK(decode_ids(encode_transcript(transcript, inv), inv) == transcript);
  }
}

TEST_CASE("frame_for_decoding and strip_specials") {
  CHECK(frame_for_decoding({}) == PhonemeSequence{kSosId, kEosId});
  CHECK(frame_for_decoding({3, 4}) == PhonemeSequence{1, 3, 4, 2});
  PhonemeSequence seq{3, 5, 4};
  CHECK(strip_specials(frame_for_decoding(seq)) == seq);
}

TEST_CASE("inventory invariants") {
  CHECK_THROWS_AS(PhonemeInventory("bad", {"a", "a"}), DataError);
  CHECK_THROWS_AS(PhonemeInventory("bad", {"<eos>"}), DataError);

  PhonemeInventory inv("ok", {"a", "b", "c"});
  CHECK(inv.num_ids() == 6);
  CHECK(inv.num_classes() == 4);
  CHECK(inv.id_of("a") == 3);
  CHECK(inv.symbol_of(5) == "c");
  CHECK_THROWS(inv.symbol_of(kPadId));
  CHECK_THROWS(inv.id_of("zzz"));
}

TEST_CASE("class mapping covers EOS plus symbols") {
  CHECK(id_to_class(kEosId) == 0);
  CHECK(id_to_class(3) == 1);
  CHECK(class_to_id(0) == kEosId);
  CHECK(class_to_id(4) == 6);
  CHECK_THROWS(id_to_class(kPadId));
  CHECK_THROWS(id_to_class(kSosId));
}

TEST_CASE("inventory file round trip") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "accentkit_text_test";
  fs::create_directories(dir);
  PhonemeInventory inv("myinv", {"aa", "bb", "cc"});
  save_inventory(inv, dir / "myinv.txt");
  PhonemeInventory loaded = load_inventory(dir / "myinv.txt");
  CHECK(loaded == inv);
  CHECK_THROWS_AS(load_inventory(dir / "nope.txt"), DataError);
}
