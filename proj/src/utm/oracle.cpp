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

#include "mclab/utm/oracle.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include "mclab/core/error.hpp"

namespace mclab {

std::uint64_t program_count(unsigned max_len) { return (std::uint64_t{2} << max_len) - 2; }

std::optional<unsigned> KolmogorovOracle::lookup(const BitString& x) const {
  auto it = table_.find(x);
  if (it == table_.end()) return std::nullopt;
  return it->second.k;
}

const OracleEntry* KolmogorovOracle::entry(const BitString& x) const {
  auto it = table_.find(x);
  return it == table_.end() ? nullptr : &it->second;
}

std::vector<std::pair<BitString, OracleEntry>> KolmogorovOracle::sorted_entries() const {
  std::vector<std::pair<BitString, OracleEntry>> out(table_.begin(), table_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool operator==(const KolmogorovOracle& a, const KolmogorovOracle& b) {
  if (a.cfg_.step_cap != b.cfg_.step_cap || a.cfg_.max_program_len != b.cfg_.max_program_len ||
      a.cfg_.max_output_len != b.cfg_.max_output_len || a.used_registry_ != b.used_registry_ ||
      a.table_.size() != b.table_.size())
    return false;
  for (const auto& [x, e] : a.table_) {
    auto* o = b.entry(x);
    if (o == nullptr || o->k != e.k || o->witness != e.witness) return false;
  }
  return true;
}

namespace {

struct Outcome {
  bool halted = false;
  BitString output;
};

void run_range(const UtmConfig& cfg, unsigned len, std::uint64_t lo, std::uint64_t hi, Outcome* out) {
  for (std::uint64_t v = lo; v < hi; ++v) {
    RunResult r = run_program(Program{BitString(v, len)}, cfg);
    out[v - lo] = {r.halted(), r.output};
  }
}

}  // namespace

KolmogorovOracle build_oracle(const UtmConfig& cfg, const OracleBuildOptions& opts) {
  cfg.validate();
  const std::uint64_t work = program_count(cfg.max_program_len);
  if (work > opts.max_executions)
    fail(ErrorCode::kBudgetExceeded, std::to_string(work) + " program executions exceed ceiling " +
                                         std::to_string(opts.max_executions));
  KolmogorovOracle o;
  o.cfg_ = cfg;
  o.used_registry_ = cfg.registry != nullptr;
  unsigned threads = opts.threads != 0 ? opts.threads : std::max(1u, std::thread::hardware_concurrency());

  constexpr std::uint64_t kChunk = std::uint64_t{1} << 15;
  std::vector<Outcome> buf;
  for (unsigned len = 1; len <= cfg.max_program_len; ++len) {
    const std::uint64_t total = std::uint64_t{1} << len;
    for (std::uint64_t base = 0; base < total; base += kChunk) {
      const std::uint64_t count = std::min(kChunk, total - base);
      buf.assign(count, Outcome{});
      const unsigned t = static_cast<unsigned>(std::min<std::uint64_t>(threads, (count + 1023) / 1024));
      if (t <= 1) {
        run_range(cfg, len, base, base + count, buf.data());
      } else {
        std::vector<std::thread> pool;
        const std::uint64_t per = (count + t - 1) / t;
        for (unsigned w = 0; w < t; ++w) {
          const std::uint64_t lo = base + w * per, hi = std::min(base + count, lo + per);
          if (lo < hi) pool.emplace_back(run_range, std::cref(cfg), len, lo, hi, buf.data() + (lo - base));
        }
        for (auto& th : pool) th.join();
      }
      // Serial merge in program order: the first hit is the shortest, then
      // lexicographically smallest, witness.
      for (std::uint64_t k = 0; k < count; ++k) {
        if (!buf[k].halted) continue;
        o.table_.try_emplace(buf[k].output, OracleEntry{len, BitString(base + k, len)});
      }
      o.executions_ += count;
    }
  }
  return o;
}

std::uint64_t count_low_complexity(const KolmogorovOracle& oracle, unsigned n, unsigned s) {
  if (s > oracle.max_program_len()) fail(ErrorCode::kConfigInvalid, "threshold above L_max");
  std::uint64_t c = 0;
  for (const auto& [x, e] : oracle.sorted_entries())
    if (x.size() == n && e.k <= s) ++c;
  return c;
}

std::uint64_t count_low_complexity_all(const KolmogorovOracle& oracle, unsigned s) {
  if (s > oracle.max_program_len()) fail(ErrorCode::kConfigInvalid, "threshold above L_max");
  std::uint64_t c = 0;
  for (const auto& [x, e] : oracle.sorted_entries()) c += e.k <= s;
  return c;
}

// ---- KTO1 ----------------------------------------------------------------
//
// "KTO1" u8 version(1) u64 step_cap u8 max_program_len u8 max_output_len
// u8 used_registry u64 executions u64 record_count, then per record (shortlex
// by x): u8 |x|, ceil(|x|/8) bytes, u8 K, u8 |w|, ceil(|w|/8) bytes.
// Integers little-endian; bits packed MSB first, left-aligned.

namespace {

constexpr char kMagic[4] = {'K', 'T', 'O', '1'};
constexpr std::uint8_t kVersion = 1;

void put_u64(std::string& s, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_bits(std::string& s, const BitString& b) {
  s.push_back(static_cast<char>(b.size()));
  const unsigned bytes = (b.size() + 7) / 8;
  const std::uint64_t aligned = b.size() == 0 ? 0 : b.value() << (64 - b.size());
  for (unsigned i = 0; i < bytes; ++i) s.push_back(static_cast<char>((aligned >> (56 - 8 * i)) & 0xFF));
}

class ByteReader {
 public:
  explicit ByteReader(const std::string& s) : s_(s) {}
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(s_[pos_++]);
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(s_[pos_++])) << (8 * i);
    return v;
  }
  BitString bits() {
    const unsigned len = u8();
    if (len > BitString::kMaxLen) fail(ErrorCode::kParse, "KTO1 bit string above 64 bits");
    const unsigned bytes = (len + 7) / 8;
    need(bytes);
    std::uint64_t aligned = 0;
    for (unsigned i = 0; i < bytes; ++i)
      aligned |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(s_[pos_++])) << (56 - 8 * i);
    return len == 0 ? BitString() : BitString(aligned >> (64 - len), len);
  }
  bool at_end() const { return pos_ == s_.size(); }

 private:
  void need(std::size_t k) {
    if (pos_ + k > s_.size()) fail(ErrorCode::kParse, "KTO1 file truncated");
  }
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string KolmogorovOracle::serialize() const {
  std::string s(kMagic, 4);
  s.push_back(static_cast<char>(kVersion));
  put_u64(s, cfg_.step_cap);
  s.push_back(static_cast<char>(cfg_.max_program_len));
  s.push_back(static_cast<char>(cfg_.max_output_len));
  s.push_back(static_cast<char>(used_registry_ ? 1 : 0));
  put_u64(s, executions_);
  auto entries = sorted_entries();
  put_u64(s, entries.size());
  for (const auto& [x, e] : entries) {
    put_bits(s, x);
    s.push_back(static_cast<char>(e.k));
    put_bits(s, e.witness);
  }
  return s;
}

KolmogorovOracle KolmogorovOracle::deserialize(const std::string& bytes, const DistributionRegistry* registry) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) fail(ErrorCode::kParse, "not a KTO1 file");
  ByteReader r(bytes);
  for (int i = 0; i < 4; ++i) r.u8();
  if (r.u8() != kVersion) fail(ErrorCode::kSchemaMismatch, "unsupported KTO1 version");
  KolmogorovOracle o;
  o.cfg_.step_cap = r.u64();
  o.cfg_.max_program_len = r.u8();
  o.cfg_.max_output_len = r.u8();
  o.used_registry_ = r.u8() != 0;
  o.cfg_.registry = o.used_registry_ ? registry : nullptr;
  o.executions_ = r.u64();
  const std::uint64_t count = r.u64();
  for (std::uint64_t i = 0; i < count; ++i) {
    BitString x = r.bits();
    const unsigned k = r.u8();
    BitString w = r.bits();
    if (w.size() != k) fail(ErrorCode::kParse, "KTO1 witness length != K");
    o.table_.emplace(x, OracleEntry{k, w});
  }
  if (!r.at_end()) fail(ErrorCode::kParse, "KTO1 trailing bytes");
  o.cfg_.validate();
  return o;
}

void KolmogorovOracle::save(const std::string& path) const {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) fail(ErrorCode::kIo, "cannot write " + tmp);
    const std::string s = serialize();
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
    if (!out) fail(ErrorCode::kIo, "write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) fail(ErrorCode::kIo, "rename to " + path + " failed");
}

KolmogorovOracle KolmogorovOracle::load(const std::string& path, const DistributionRegistry* registry) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return deserialize(ss.str(), registry);
}

std::string KolmogorovOracle::to_csv() const {
  std::string s = "x_hex,k,witness_hex\n";
  for (const auto& [x, e] : sorted_entries()) s += x.hex() + "," + std::to_string(e.k) + "," + e.witness.hex() + "\n";
  return s;
}

}  // namespace mclab
