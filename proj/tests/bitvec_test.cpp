// Copyright 2026 The BSQN Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bsqn/bitvec.hpp"

#include <unordered_set>

#include "gtest/gtest.h"

using namespace bsqn;

TEST(bitvec, string_round_trip_leftmost_is_bit_zero) {
    BitVec v = BitVec::from_string("1101");
    ASSERT_EQ(v.size(), 4);
    ASSERT_TRUE(v.get(0));
    ASSERT_TRUE(v.get(1));
    ASSERT_FALSE(v.get(2));
    ASSERT_TRUE(v.get(3));
    ASSERT_EQ(v.str(), "1101");
    ASSERT_EQ(v.to_uint64(), 0b1011u);
    ASSERT_THROW(BitVec::from_string("10x"), std::invalid_argument);
}

TEST(bitvec, from_uint64_masks_padding) {
    BitVec v = BitVec::from_uint64(3, 0xFF);
    ASSERT_EQ(v.to_uint64(), 7u);
    ASSERT_EQ(v.popcount(), 3);
    ASSERT_EQ(v, BitVec::ones(3));
}

TEST(bitvec, multiword_operations) {
    BitVec a(130), b(130);
    a.set(0, true);
    a.set(64, true);
    a.set(129, true);
    b.set(64, true);
    b.set(100, true);
    ASSERT_EQ(a.popcount(), 3);
    ASSERT_EQ((a ^ b).popcount(), 3);
    ASSERT_EQ((a & b).popcount(), 1);
    ASSERT_TRUE(dot(a, b));
    b.set(129, true);
    ASSERT_FALSE(dot(a, b));
    ASSERT_EQ(BitVec::ones(130).popcount(), 130);
    ASSERT_TRUE(BitVec(130).none());
    ASSERT_TRUE(a.any());
    ASSERT_THROW(a.to_uint64(), std::out_of_range);
}

TEST(bitvec, size_mismatch_rejected) {
    BitVec a(3), b(4);
    ASSERT_THROW(a ^= b, std::invalid_argument);
    ASSERT_THROW(dot(a, b), std::invalid_argument);
}

TEST(bitvec, hex_matches_integer_value) {
    BitVec v = BitVec::from_string("10000000");
    ASSERT_EQ(v.hex(), "01");
    BitVec w = BitVec::from_string("00001111");
    ASSERT_EQ(w.hex(), "f0");
    BitVec odd = BitVec::from_uint64(5, 0x13);
    ASSERT_EQ(odd.hex(), "13");
    for (size_t n : {1, 4, 5, 63, 64, 65, 200}) {
        BitVec r(n);
        for (size_t k = 0; k < n; k += 3) {
            r.set(k, true);
        }
        ASSERT_EQ(BitVec::from_hex(n, r.hex()), r) << n;
    }
    ASSERT_THROW(BitVec::from_hex(3, "f"), std::invalid_argument);
    ASSERT_THROW(BitVec::from_hex(8, "g0"), std::invalid_argument);
}

TEST(bitvec, hash_and_order_consistent) {
    std::unordered_set<BitVec, BitVecHash> seen;
    for (uint64_t k = 0; k < 64; k++) {
        seen.insert(BitVec::from_uint64(6, k));
    }
    ASSERT_EQ(seen.size(), 64);
    ASSERT_TRUE(BitVec::from_uint64(6, 1) < BitVec::from_uint64(6, 2));
    ASSERT_FALSE(BitVec::from_uint64(6, 2) < BitVec::from_uint64(6, 2));
}
