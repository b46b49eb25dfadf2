#pragma once

#include <optional>
#include <vector>

#include "duet/bits.hpp"
#include "duet/prg.hpp"

namespace duet::commit {

// Naor-style bitwise commitment. One 3n-bit receiver-coin block and one
// n-bit seed per message bit; commit(b) = PG(seed) XOR (b ? coins : 0).
struct CommitmentTriple {
  Bits receiver_coins;           // 3n bits per message bit, concatenated
  Bits commitment;               // same layout
  Bits message;
  std::vector<Bits> seeds;       // one n-bit seed per message bit
};

Bits commit_bit(const prg::PrgParams& params, const Bits& receiver_coins, uint8_t bit,
                const Bits& seed);

CommitmentTriple commit_message(const prg::PrgParams& params, const Bits& receiver_coins,
                                const Bits& message, const std::vector<Bits>& seeds);

// Convenience: draw seeds from the given tape.
CommitmentTriple commit_message(const prg::PrgParams& params, const Bits& receiver_coins,
                                const Bits& message, Rng& rng);

// Accepts iff every block recomputes from (message bit, seed, coins).
std::optional<Bits> open_commitment(const prg::PrgParams& params, const CommitmentTriple& triple);

// Exhaustive binding census at micro scale: the number of receiver-coin
// blocks R for which two seeds can open the same block both ways, i.e.
// R in { PG(s) ^ PG(s') }. Returns (count, 2^{3n}).
std::pair<uint64_t, uint64_t> binding_census(size_t n);

}  // namespace duet::commit
