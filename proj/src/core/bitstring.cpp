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

#include "mclab/core/bitstring.hpp"

#include <bit>

#include "mclab/core/error.hpp"

namespace mclab {

namespace {

constexpr std::uint64_t low_mask(unsigned len) {
  return len >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << len) - 1);
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kTooManyQubits: return "TooManyQubits";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kOracleMiss: return "OracleMiss";
    case ErrorCode::kNotTabular: return "NotTabular";
    case ErrorCode::kNoPreimage: return "NoPreimage";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

BitString::BitString(std::uint64_t value, unsigned len) : value_(value & low_mask(len)), len_(len) {
  if (len > kMaxLen) fail(ErrorCode::kConfigInvalid, "bit string longer than 64 bits");
}

BitString BitString::parse(std::string_view bits) {
  if (bits.size() > kMaxLen) fail(ErrorCode::kParse, "bit string longer than 64 bits");
  std::uint64_t v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') fail(ErrorCode::kParse, "invalid bit character in '" + std::string(bits) + "'");
    v = (v << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return BitString(v, static_cast<unsigned>(bits.size()));
}

BitString BitString::ones(unsigned len) { return BitString(low_mask(len), len); }

BitString BitString::prefix(unsigned len) const {
  if (len > len_) fail(ErrorCode::kIndexOutOfRange, "prefix longer than string");
  return BitString(len == 0 ? 0 : value_ >> (len_ - len), len);
}

BitString BitString::suffix_from(unsigned pos) const {
  if (pos > len_) fail(ErrorCode::kIndexOutOfRange, "suffix start past end");
  return BitString(value_, len_ - pos);
}

BitString BitString::append(bool bit) const {
  if (len_ >= kMaxLen) fail(ErrorCode::kBudgetExceeded, "bit string overflow");
  return BitString((value_ << 1) | static_cast<std::uint64_t>(bit), len_ + 1);
}

BitString BitString::concat(const BitString& tail) const {
  if (len_ + tail.len_ > kMaxLen) fail(ErrorCode::kBudgetExceeded, "bit string overflow");
  if (tail.len_ == 0) return *this;
  std::uint64_t head = tail.len_ >= 64 ? 0 : (value_ << tail.len_);
  return BitString(head | tail.value_, len_ + tail.len_);
}

BitString BitString::complement() const { return BitString(~value_, len_); }

BitString BitString::reversed() const {
  std::uint64_t r = 0;
  for (unsigned i = 0; i < len_; ++i) r |= ((value_ >> i) & 1u) << (len_ - 1 - i);
  return BitString(r, len_);
}

unsigned BitString::popcount() const noexcept { return static_cast<unsigned>(std::popcount(value_)); }

std::string BitString::str() const {
  std::string s(len_, '0');
  for (unsigned i = 0; i < len_; ++i) s[i] = (*this)[i] ? '1' : '0';
  return s;
}

std::string BitString::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out = std::to_string(len_) + ":";
  unsigned nibbles = (len_ + 3) / 4;
  std::uint64_t aligned = len_ == 0 ? 0 : value_ << (nibbles * 4 - len_);
  for (unsigned k = nibbles; k-- > 0;) out.push_back(kDigits[(aligned >> (4 * k)) & 0xF]);
  return out;
}

BitString BitString::parse_hex(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) fail(ErrorCode::kParse, "hex bit string needs 'len:hex'");
  unsigned len = static_cast<unsigned>(std::stoul(std::string(text.substr(0, colon))));
  std::string_view digits = text.substr(colon + 1);
  if (digits.size() != (len + 3) / 4) fail(ErrorCode::kParse, "hex digit count does not match length");
  std::uint64_t v = 0;
  for (char c : digits) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else fail(ErrorCode::kParse, "invalid hex digit");
    v = (v << 4) | static_cast<std::uint64_t>(d);
  }
  unsigned pad = static_cast<unsigned>(digits.size()) * 4 - len;
  if ((v & low_mask(pad)) != 0) fail(ErrorCode::kParse, "nonzero padding bits in hex bit string");
  return BitString(v >> pad, len);
}

}  // namespace mclab
