// Copyright 2026 The mclab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace mclab {

/// A bit string of at most 64 bits.
///
/// The first bit (position 0) is the most significant bit of value(), so for
/// strings of equal length the integer order of value() is the lexicographic
/// order. Across lengths, comparison is shortlex: shorter strings first.
class BitString {
 public:
  static constexpr unsigned kMaxLen = 64;

  constexpr BitString() = default;
  /// Keeps the low `len` bits of value.
  BitString(std::uint64_t value, unsigned len);

  static BitString parse(std::string_view bits);
  static BitString zeros(unsigned len) { return BitString(0, len); }
  static BitString ones(unsigned len);

  unsigned size() const noexcept { return len_; }
  bool empty() const noexcept { return len_ == 0; }
  std::uint64_t value() const noexcept { return value_; }

  bool operator[](unsigned pos) const noexcept {
    return ((value_ >> (len_ - 1 - pos)) & 1u) != 0;
  }

  BitString prefix(unsigned len) const;
  BitString suffix_from(unsigned pos) const;
  BitString append(bool bit) const;
  BitString concat(const BitString& tail) const;
  BitString complement() const;
  BitString reversed() const;
  unsigned popcount() const noexcept;

  std::string str() const;
  /// "len:hex" with the bits left-aligned into whole nibbles.
  std::string hex() const;
  static BitString parse_hex(std::string_view text);

  friend bool operator==(const BitString&, const BitString&) = default;
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    if (auto c = a.len_ <=> b.len_; c != 0) return c;
    return a.value_ <=> b.value_;
  }

 private:
  std::uint64_t value_ = 0;
  unsigned len_ = 0;
};

struct BitStringHash {
  std::size_t operator()(const BitString& s) const noexcept {
    std::uint64_t h = s.value() * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<std::uint64_t>(s.size()) + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace mclab
