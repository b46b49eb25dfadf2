#pragma once

#include <optional>
#include <vector>

#include "duet/bits.hpp"

namespace duet::prg {

enum class Kind { kMicro, kMacro };

struct PrgParams {
  size_t n = 0;
  Kind kind = Kind::kMicro;
};

// Default family selection: the micro generator covers seeds up to 8 bits
// (its output is also expressible as a small gate formula, which the NP
// reduction relies on); everything larger uses the keyed ARX expander.
PrgParams default_prg(size_t n);

// Length-tripling expansion: n seed bits -> 3n output bits.
Bits prg_expand(const PrgParams& params, const Bits& seed);

// One output bit of the micro generator: XOR over the seed bits selected by
// lin_mask, optionally XORed with (seed[and_a] AND seed[and_b]).
struct MicroBitFormula {
  uint32_t lin_mask = 0;
  int and_a = -1;
  int and_b = -1;
};
std::vector<MicroBitFormula> micro_prg_formula(size_t n);

// Full output table of the micro generator, indexed by seed value (LSB-first).
// 3n <= 24 bits fit a uint32_t. Used by hot commitment loops.
std::vector<uint32_t> micro_prg_table(size_t n);

}  // namespace duet::prg
