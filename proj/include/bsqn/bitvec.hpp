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

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bsqn {

/// Fixed-length bit vector packed 64 bits per word.
///
/// Bit j lives in word j / 64 at position j % 64. Printed strings put bit 0
/// leftmost, so "100" is the vector with only bit 0 set (integer value 1).
/// Padding bits in the last word are always zero; every mutating operation
/// preserves that, which lets equality and hashing work on whole words.
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(size_t num_bits) : num_bits_(num_bits), words_(word_count(num_bits), 0) {
    }

    static size_t word_count(size_t num_bits) {
        return (num_bits + 63) / 64;
    }

    /// Vector of `num_bits` bits whose low bits come from `value`.
    static BitVec from_uint64(size_t num_bits, uint64_t value) {
        BitVec result(num_bits);
        if (num_bits == 0) {
            return result;
        }
        result.words_[0] = value;
        result.clear_padding();
        return result;
    }

    /// Parses a string of '0'/'1' characters, leftmost character is bit 0.
    static BitVec from_string(std::string_view text) {
        BitVec result(text.size());
        for (size_t k = 0; k < text.size(); k++) {
            if (text[k] == '1') {
                result.set(k, true);
            } else if (text[k] != '0') {
                throw std::invalid_argument("bit string contains a character other than 0/1: " + std::string(text));
            }
        }
        return result;
    }

    static BitVec ones(size_t num_bits) {
        BitVec result(num_bits);
        for (auto &w : result.words_) {
            w = ~uint64_t{0};
        }
        result.clear_padding();
        return result;
    }

    size_t size() const {
        return num_bits_;
    }
    size_t num_words() const {
        return words_.size();
    }
    const uint64_t *words() const {
        return words_.data();
    }
    uint64_t *words() {
        return words_.data();
    }

    bool get(size_t k) const {
        return (words_[k >> 6] >> (k & 63)) & 1;
    }
    void set(size_t k, bool value) {
        uint64_t mask = uint64_t{1} << (k & 63);
        if (value) {
            words_[k >> 6] |= mask;
        } else {
            words_[k >> 6] &= ~mask;
        }
    }
    void flip(size_t k) {
        words_[k >> 6] ^= uint64_t{1} << (k & 63);
    }
    void clear() {
        for (auto &w : words_) {
            w = 0;
        }
    }

    /// Integer value of the bit vector; only defined for size() <= 64.
    uint64_t to_uint64() const {
        if (num_bits_ > 64) {
            throw std::out_of_range("BitVec::to_uint64 needs at most 64 bits");
        }
        return words_.empty() ? 0 : words_[0];
    }

    size_t popcount() const {
        size_t total = 0;
        for (auto w : words_) {
            total += std::popcount(w);
        }
        return total;
    }
    bool any() const {
        for (auto w : words_) {
            if (w) {
                return true;
            }
        }
        return false;
    }
    bool none() const {
        return !any();
    }

    BitVec &operator^=(const BitVec &other) {
        check_same_size(other);
        for (size_t k = 0; k < words_.size(); k++) {
            words_[k] ^= other.words_[k];
        }
        return *this;
    }
    BitVec &operator&=(const BitVec &other) {
        check_same_size(other);
        for (size_t k = 0; k < words_.size(); k++) {
            words_[k] &= other.words_[k];
        }
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec &b) {
        a ^= b;
        return a;
    }
    friend BitVec operator&(BitVec a, const BitVec &b) {
        a &= b;
        return a;
    }
    bool operator==(const BitVec &other) const = default;
    bool operator<(const BitVec &other) const {
        if (num_bits_ != other.num_bits_) {
            return num_bits_ < other.num_bits_;
        }
        for (size_t k = words_.size(); k-- > 0;) {
            if (words_[k] != other.words_[k]) {
                return words_[k] < other.words_[k];
            }
        }
        return false;
    }

    /// Parity of popcount(a AND b): the F_2 inner product.
    friend bool dot(const BitVec &a, const BitVec &b) {
        a.check_same_size(b);
        uint64_t acc = 0;
        for (size_t k = 0; k < a.words_.size(); k++) {
            acc ^= a.words_[k] & b.words_[k];
        }
        return std::popcount(acc) & 1;
    }

    std::string str() const {
        std::string out(num_bits_, '0');
        for (size_t k = 0; k < num_bits_; k++) {
            if (get(k)) {
                out[k] = '1';
            }
        }
        return out;
    }

    /// Lowercase hex of the integer sum_j bit_j 2^j, ceil(n/4) digits, most
    /// significant digit first.
    std::string hex() const {
        static constexpr char kDigits[] = "0123456789abcdef";
        size_t digits = (num_bits_ + 3) / 4;
        std::string out(digits, '0');
        for (size_t d = 0; d < digits; d++) {
            size_t bit = 4 * d;
            uint64_t nibble = (words_[bit >> 6] >> (bit & 63)) & 0xF;
            out[digits - 1 - d] = kDigits[nibble];
        }
        return out;
    }

    static BitVec from_hex(size_t num_bits, std::string_view text) {
        BitVec result(num_bits);
        size_t digits = text.size();
        for (size_t d = 0; d < digits; d++) {
            char c = text[digits - 1 - d];
            uint64_t nibble;
            if (c >= '0' && c <= '9') {
                nibble = c - '0';
            } else if (c >= 'a' && c <= 'f') {
                nibble = c - 'a' + 10;
            } else if (c >= 'A' && c <= 'F') {
                nibble = c - 'A' + 10;
            } else {
                throw std::invalid_argument("invalid hex digit in '" + std::string(text) + "'");
            }
            for (size_t b = 0; b < 4; b++) {
                if ((nibble >> b) & 1) {
                    size_t k = 4 * d + b;
                    if (k >= num_bits) {
                        throw std::invalid_argument("hex value '" + std::string(text) + "' exceeds " +
                                                    std::to_string(num_bits) + " bits");
                    }
                    result.set(k, true);
                }
            }
        }
        return result;
    }

    size_t hash() const {
        uint64_t h = 0x9E3779B97F4A7C15ull ^ num_bits_;
        for (auto w : words_) {
            h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        }
        return static_cast<size_t>(h);
    }

   private:
    void clear_padding() {
        if (num_bits_ & 63) {
            words_.back() &= (uint64_t{1} << (num_bits_ & 63)) - 1;
        }
    }
    void check_same_size(const BitVec &other) const {
        if (num_bits_ != other.num_bits_) {
            throw std::invalid_argument("BitVec size mismatch: " + std::to_string(num_bits_) + " vs " +
                                        std::to_string(other.num_bits_));
        }
    }

    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

struct BitVecHash {
    size_t operator()(const BitVec &v) const {
        return v.hash();
    }
};

}  // namespace bsqn
