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

#include "mclab/classical/classical.hpp"

#include <map>

#include "mclab/core/error.hpp"

namespace mclab {

namespace {

constexpr std::uint64_t kTieLabel = 0x696E765F74696573ull;

unsigned ceil_log2(std::uint64_t v) {
  unsigned w = 0;
  while ((std::uint64_t{1} << w) < v) ++w;
  return w;
}

Rational abs_diff(const Rational& a, const Rational& b) { return a >= b ? Rational(a - b) : Rational(b - a); }

// Prefix masses of d at length len, by value.
std::map<std::uint64_t, Rational> prefix_masses(const BitStringDist& d, unsigned len) {
  std::map<std::uint64_t, Rational> out;
  d.for_each_support([&](const BitString& x, const Rational& p) { out[x.prefix(len).value()] += p; });
  return out;
}

Rational sd_of_maps(const std::map<std::uint64_t, Rational>& a, const std::map<std::uint64_t, Rational>& b) {
  Rational sum;
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      sum += ia++->second;
    } else if (ia == a.end() || ib->first < ia->first) {
      sum += ib++->second;
    } else {
      sum += abs_diff(ia->second, ib->second);
      ++ia, ++ib;
    }
  }
  return sum / 2;
}

}  // namespace

FnFamily::FnFamily(SeededSampler sampler) : s_(std::move(sampler)) {
  if (s_.n() < 2) fail(ErrorCode::kConfigInvalid, "f_n needs n >= 2");
  w_ = ceil_log2(s_.n() - 1);
  if (m() > BitString::kMaxLen) fail(ErrorCode::kConfigInvalid, "f_n input above 64 bits");
}

std::uint64_t FnFamily::code_of(unsigned i) const {
  if (i < 1 || i > n() - 1) fail(ErrorCode::kIndexOutOfRange, "index " + std::to_string(i) + " outside [1, n−1]");
  return i - 1;
}

FnFamily::Image FnFamily::eval(const Preimage& pre) const {
  if (pre.seed.size() != t()) fail(ErrorCode::kLengthMismatch, "seed length differs from t");
  Image img;
  if (pre.code >= n() - 1) {
    img.sentinel = true;
    return img;
  }
  img.i = static_cast<unsigned>(pre.code) + 1;
  img.prefix = s_.eval(pre.seed).prefix(img.i);
  return img;
}

FnFamily::Image FnFamily::eval(const BitString& input) const {
  if (input.size() != m()) fail(ErrorCode::kLengthMismatch, "f_n input length differs from m");
  const std::uint64_t code = w_ == 0 ? 0 : input.suffix_from(t()).value();
  return eval(Preimage{input.prefix(t()), code});
}

PosteriorInverter::PosteriorInverter(const FnFamily& family, Rational delta) : f_(family), delta_(std::move(delta)) {
  if (delta_ < 0 || delta_ > 1) fail(ErrorCode::kConfigInvalid, "delta must lie in [0, 1]");
  const unsigned t = f_.t(), n = f_.n();
  if (t > SeededSampler::kMaxEnumeratedSeed) fail(ErrorCode::kBudgetExceeded, "seed enumeration above t = 20");
  cells_.resize(n);
  std::vector<std::uint64_t> ones(n, 0);
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << t); ++r) {
    const BitString x = f_.sampler().eval(BitString(r, t));
    for (unsigned j = 0; j < n; ++j) ones[j] += x[j];
    for (unsigned i = 1; i < n; ++i) {
      Cell& c = cells_[i][x.prefix(i).value()];
      c.seeds.push_back(static_cast<std::uint32_t>(r));
      c.next_ones += x[i];
    }
  }
  for (unsigned j = 0; j < n; ++j) marginal_.push_back(make_rational(static_cast<std::int64_t>(ones[j]), std::uint64_t{1} << t));
}

const PosteriorInverter::Cell* PosteriorInverter::cell(const FnFamily::Image& image) const {
  if (image.sentinel) return nullptr;
  if (image.i < 1 || image.i >= f_.n() || image.prefix.size() != image.i)
    fail(ErrorCode::kLengthMismatch, "image is not in the range of f_n");
  auto it = cells_[image.i].find(image.prefix.value());
  return it == cells_[image.i].end() ? nullptr : &it->second;
}

const std::vector<std::uint32_t>& PosteriorInverter::posterior_seeds(const FnFamily::Image& image) const {
  const Cell* c = cell(image);
  return c ? c->seeds : empty_;
}

std::uint64_t PosteriorInverter::posterior_size(const FnFamily::Image& image) const {
  if (image.sentinel) {
    const std::uint64_t codes = (std::uint64_t{1} << f_.index_bits()) - (f_.n() - 1);
    return codes << f_.t();
  }
  const Cell* c = cell(image);
  return c ? c->seeds.size() : 0;
}

FnFamily::Preimage PosteriorInverter::invert(const FnFamily::Image& image, RandomStream& rng) const {
  const unsigned t = f_.t();
  const std::uint64_t size = posterior_size(image);
  bool uniform = size == 0;
  if (size == 0 && delta_ == 0) fail(ErrorCode::kNoPreimage, "image has no preimage");
  if (!uniform && delta_ > 0) {
    RandomStream ties = rng.substream({kTieLabel, rng.position()});
    uniform = ExactBernoulli(delta_).draw(rng, ties);
  }
  if (uniform) {
    const std::uint64_t v = rng.uniform_below(std::uint64_t{1} << f_.m());
    return {BitString(v >> f_.index_bits(), t), v & ((std::uint64_t{1} << f_.index_bits()) - 1)};
  }
  const std::uint64_t j = rng.uniform_below(size);
  if (image.sentinel) {
    const std::uint64_t first = f_.n() - 1;
    return {BitString(j & ((std::uint64_t{1} << t) - 1), t), first + (j >> t)};
  }
  return {BitString(cell(image)->seeds[j], t), f_.code_of(image.i)};
}

Rational PosteriorInverter::prob(const FnFamily::Image& image, const FnFamily::Preimage& pre) const {
  const Rational uniform = pow2(-static_cast<long>(f_.m()));
  const std::uint64_t size = posterior_size(image);
  if (size == 0) {
    if (delta_ == 0) fail(ErrorCode::kNoPreimage, "image has no preimage");
    return uniform;
  }
  const bool in_posterior = f_.eval(pre) == image;
  const Rational post = in_posterior ? make_rational(1, size) : Rational(0);
  return (1 - delta_) * post + delta_ * uniform;
}

Rational PosteriorInverter::conditional_one(const FnFamily::Image& image) const {
  if (image.sentinel) fail(ErrorCode::kConfigInvalid, "sentinel image has no next bit");
  const Cell* c = cell(image);
  const Rational& m = marginal_[image.i];
  if (c == nullptr) {
    if (delta_ == 0) fail(ErrorCode::kNoPreimage, "prefix " + image.prefix.str() + " has no preimage");
    return m;
  }
  const Rational post = make_rational(static_cast<std::int64_t>(c->next_ones), c->seeds.size());
  return (1 - delta_) * post + delta_ * m;
}

std::unique_ptr<PosteriorInverter> brute_force_inverter(const FnFamily& family) {
  return std::make_unique<PosteriorInverter>(family);
}

std::unique_ptr<PosteriorInverter> planted_error_inverter(const FnFamily& family, const Rational& delta) {
  return std::make_unique<PosteriorInverter>(family, delta);
}

ClassicalExt::ClassicalExt(const FnFamily& family, const Inverter& inverter) : f_(family), inv_(inverter) {
  std::uint64_t ones = 0;
  const unsigned t = f_.t();
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << t); ++r) ones += f_.sampler().eval(BitString(r, t))[0];
  first_bit_ = make_rational(static_cast<std::int64_t>(ones), std::uint64_t{1} << t);
}

bool ClassicalExt::next_bit(unsigned i, const BitString& prefix, RandomStream& rng) const {
  if (i >= n() || prefix.size() != i) fail(ErrorCode::kLengthMismatch, "prefix length must equal i < n");
  if (i == 0) {
    const BitString r(rng.uniform_below(std::uint64_t{1} << f_.t()), f_.t());
    return f_.sampler().eval(r)[0];
  }
  const FnFamily::Preimage pre = inv_.invert({false, i, prefix}, rng);
  return f_.sampler().eval(pre.seed)[i];
}

std::optional<Rational> ClassicalExt::conditional_one(unsigned i, const BitString& prefix) const {
  if (i >= n() || prefix.size() != i) fail(ErrorCode::kLengthMismatch, "prefix length must equal i < n");
  if (i == 0) return first_bit_;
  return inv_.conditional_one({false, i, prefix});
}

bool ClassicalExt::zero_mass_prefix(const BitString& prefix) const {
  if (prefix.empty()) return false;
  return inv_.posterior_seeds({false, prefix.size(), prefix}).empty();
}

SeededSampler dyadic_sampler(const BitStringDist& d, unsigned t) {
  if (!d.exact()) fail(ErrorCode::kConfigInvalid, "dyadic sampler needs an exact table");
  if (t > SeededSampler::kMaxEnumeratedSeed) fail(ErrorCode::kBudgetExceeded, "seed length above 20");
  const Rational scale = pow2(static_cast<long>(t));
  std::vector<BitString> outputs;
  outputs.reserve(std::size_t{1} << t);
  d.for_each_support([&](const BitString& x, const Rational& p) {
    const Rational count = p * scale;
    if (count.get_den() != 1) fail(ErrorCode::kConfigInvalid, "probability of " + x.str() + " is not a multiple of 2^-t");
    outputs.insert(outputs.end(), count.get_num().get_ui(), x);
  });
  return SeededSampler::truth_table(t, d.n(), std::move(outputs));
}

bool conditional_table_matches(const Extrapolator& ext, const ChainFactorization& chain) {
  if (ext.n() != chain.n()) return false;
  for (unsigned i = 0; i < chain.n(); ++i)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << i); ++v) {
      const BitString pre(v, i);
      if (chain.zero_mass(pre)) continue;
      const auto c = ext.conditional_one(i, pre);
      if (!c || *c != chain.conditional_one(i, pre)) return false;
    }
  return true;
}

bool SdChainReport::all_ok() const {
  bool rows_ok = true;
  for (const auto& r : rows) rows_ok = rows_ok && r.averaging_ok && r.planted_ok;
  return t1_within_slack && data_processing && averaging && triangle && rows_ok && (!schema_applies || schema_ok);
}

SdChainReport verify_sd_chain(const FnFamily& family, const Inverter& inverter, unsigned k,
                              const std::optional<BitStringDist>& q) {
  const unsigned n = family.n(), t = family.t();
  const BitStringDist s_dist = family.sampler().seeded_exact_dist();
  const BitStringDist& q_dist = q ? *q : s_dist;
  if (q_dist.n() != n) fail(ErrorCode::kLengthMismatch, "target length differs from n");
  if (!q_dist.exact()) fail(ErrorCode::kConfigInvalid, "SD chain needs an exact target");

  SdChainReport rep;
  rep.n = n;
  rep.k = k;
  rep.delta = inverter.slack();
  const Rational pick = make_rational(1, n - 1);
  ClassicalExt ext(family, inverter);

  // t1: the real side is supported on the posterior of each image, so its
  // excess over the inverter lies there.
  std::map<std::tuple<unsigned, std::uint64_t, int>, Rational> real3, ext3;
  for (unsigned i = 1; i < n; ++i) {
    const auto s_prefix = prefix_masses(s_dist, i);
    for (const auto& [v, mass] : s_prefix) {
      const FnFamily::Image img{false, i, BitString(v, i)};
      const auto& seeds = inverter.posterior_seeds(img);
      const Rational post = make_rational(1, seeds.size());
      const Rational weight = pick * mass;
      Rational excess;
      for (std::uint32_t r : seeds) {
        const Rational rp = inverter.prob(img, {BitString(r, t), family.code_of(i)});
        if (post > rp) excess += post - rp;
      }
      rep.t1 += weight * excess;
      const Rational e1 = inverter.conditional_one(img);
      ext3[{i, v, 1}] += weight * e1;
      ext3[{i, v, 0}] += weight * (1 - e1);
    }
    s_dist.for_each_support([&](const BitString& x, const Rational& p) {
      real3[{i, x.prefix(i).value(), x[i] ? 1 : 0}] += pick * p;
    });
  }
  {
    Rational sum;
    auto add = [&](const auto& a, const auto& b) {
      for (const auto& [key, p] : a) {
        auto it = b.find(key);
        const Rational other = it == b.end() ? Rational(0) : it->second;
        sum += abs_diff(p, other);
      }
    };
    add(real3, ext3);
    for (const auto& [key, p] : ext3)
      if (!real3.count(key)) sum += p;
    rep.t3 = sum / 2;
  }
  // Appending x_{i+1} = S(r)_{i+1} and Ext = S(r′)_{i+1} applies the same
  // function of the seed coordinate to both sides.
  rep.t2 = rep.t1;

  rep.q_to_s = statistical_distance(q_dist, s_dist);
  Rational sum_sd;
  for (unsigned i = 1; i < n; ++i) {
    ChainIndexRow row;
    row.i = i;
    const auto s_pre = prefix_masses(s_dist, i), q_pre = prefix_masses(q_dist, i);
    const auto s_next = prefix_masses(s_dist, i + 1), q_next = prefix_masses(q_dist, i + 1);
    auto ext_side = [&](const std::map<std::uint64_t, Rational>& pre) {
      std::map<std::uint64_t, Rational> out;
      for (const auto& [v, mass] : pre) {
        const Rational e1 = *ext.conditional_one(i, BitString(v, i));
        if (e1 != 0) out[(v << 1) | 1] += mass * e1;
        if (e1 != 1) out[v << 1] += mass * (1 - e1);
      }
      return out;
    };
    const auto ext_s = ext_side(s_pre), ext_q = ext_side(q_pre);
    row.sd_s = sd_of_maps(s_next, ext_s);
    row.q_to_s = sd_of_maps(q_next, s_next);
    row.ext_shift = sd_of_maps(ext_s, ext_q);
    row.sd_q = sd_of_maps(q_next, ext_q);
    row.triangle_residual = row.q_to_s + row.sd_s + row.ext_shift - row.sd_q;
    row.planted_ok = row.sd_s <= (n - 1) * rep.delta;
    sum_sd += row.sd_s;
    rep.rows.push_back(std::move(row));
  }
  rep.t4 = sum_sd * pick;
  for (auto& row : rep.rows) row.averaging_ok = row.sd_s <= (n - 1) * rep.t4;

  rep.t1_within_slack = rep.t1 <= rep.delta;
  rep.data_processing = rep.t3 <= rep.t2 && rep.t2 <= rep.t1;
  rep.averaging = rep.t4 <= rep.t3;
  rep.triangle = true;
  for (const auto& row : rep.rows) rep.triangle = rep.triangle && row.triangle_residual >= 0;
  const Rational nk = Rational(1) / pow(Rational(n), k);
  rep.schema_applies = k >= 1 && rep.t1 <= nk && rep.q_to_s <= nk;
  rep.schema_ok = true;
  const Rational schema = 2 * nk + nk * n;
  for (const auto& row : rep.rows) rep.schema_ok = rep.schema_ok && row.sd_q <= schema;
  return rep;
}

}  // namespace mclab
