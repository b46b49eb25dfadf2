#include "duet/prg.hpp"

namespace duet::prg {

PrgParams default_prg(size_t n) {
  if (n < 4) throw ParamError("prg: n must be >= 4");
  return PrgParams{n, n <= 8 ? Kind::kMicro : Kind::kMacro};
}

std::vector<MicroBitFormula> micro_prg_formula(size_t n) {
  if (n < 4 || n > 8) throw ParamError("micro prg: n must be in [4,8]");
  std::vector<MicroBitFormula> f;
  f.reserve(3 * n);
  // Segment 1: the seed itself (keeps the map injective for every n).
  for (size_t j = 0; j < n; ++j) f.push_back({1u << j, -1, -1});
  // Segment 2: adjacent-pair parities.
  for (size_t j = 0; j < n; ++j)
    f.push_back({(1u << j) | (1u << ((j + 1) % n)), -1, -1});
  // Segment 3: linear part plus one AND of the two following seed bits.
  for (size_t j = 0; j < n; ++j)
    f.push_back({1u << j, static_cast<int>((j + 1) % n), static_cast<int>((j + 2) % n)});
  return f;
}

static Bits micro_expand(size_t n, const Bits& seed) {
  auto formulas = micro_prg_formula(n);
  Bits out(3 * n);
  for (size_t k = 0; k < formulas.size(); ++k) {
    const auto& f = formulas[k];
    uint8_t v = 0;
    for (size_t j = 0; j < n; ++j)
      if (f.lin_mask & (1u << j)) v ^= seed[j];
    if (f.and_a >= 0) v ^= static_cast<uint8_t>(seed[f.and_a] & seed[f.and_b]);
    out[k] = v;
  }
  return out;
}

std::vector<uint32_t> micro_prg_table(size_t n) {
  std::vector<uint32_t> table(size_t{1} << n);
  for (uint32_t s = 0; s < table.size(); ++s) {
    Bits seed = u64_to_bits(s, n);
    table[s] = static_cast<uint32_t>(bits_to_u64(micro_expand(n, seed)));
  }
  return table;
}

// Keyed ARX expander: absorb the seed into a 4-word state, then squeeze
// output blocks through a fixed double-mix per block.
static inline uint64_t mix64(uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

static Bits macro_expand(size_t n, const Bits& seed) {
  Bytes packed = pack_bits(seed);
  uint64_t st[4] = {0x6a09e667f3bcc908ULL ^ n, 0xbb67ae8584caa73bULL, 0x3c6ef372fe94f82bULL,
                    0xa54ff53a5f1d36f1ULL};
  for (size_t i = 0; i < packed.size(); ++i) {
    st[i % 4] ^= static_cast<uint64_t>(packed[i]) << (8 * ((i / 4) % 8));
    if (i % 4 == 3) {
      st[0] = mix64(st[0] + st[3]);
      st[1] = mix64(st[1] ^ st[0]);
      st[2] = mix64(st[2] + st[1]);
      st[3] = mix64(st[3] ^ st[2]);
    }
  }
  for (int r = 0; r < 4; ++r) {
    st[0] = mix64(st[0] + st[3]);
    st[1] = mix64(st[1] ^ st[0]);
    st[2] = mix64(st[2] + st[1]);
    st[3] = mix64(st[3] ^ st[2]);
  }
  Bits out(3 * n);
  uint64_t block = 0;
  uint64_t ctr = 0;
  int have = 0;
  for (size_t i = 0; i < out.size(); ++i) {
    if (have == 0) {
      block = mix64(st[ctr % 4] + 0x9e3779b97f4a7c15ULL * (ctr + 1));
      ++ctr;
      have = 64;
    }
    out[i] = block & 1u;
    block >>= 1;
    --have;
  }
  return out;
}

Bits prg_expand(const PrgParams& params, const Bits& seed) {
  if (seed.size() != params.n) throw ParamError("prg_expand: seed length mismatch");
  if (params.n < 4) throw ParamError("prg_expand: n must be >= 4");
  if (params.kind == Kind::kMicro) return micro_expand(params.n, seed);
  return macro_expand(params.n, seed);
}

}  // namespace duet::prg
