#include "duet/commit.hpp"

#include <set>

namespace duet::commit {

Bits commit_bit(const prg::PrgParams& params, const Bits& receiver_coins, uint8_t bit,
                const Bits& seed) {
  if (receiver_coins.size() != 3 * params.n) throw ParamError("commit_bit: coin length");
  Bits out = prg::prg_expand(params, seed);
  if (bit) out = bits_xor(out, receiver_coins);
  return out;
}

CommitmentTriple commit_message(const prg::PrgParams& params, const Bits& receiver_coins,
                                const Bits& message, const std::vector<Bits>& seeds) {
  size_t block = 3 * params.n;
  if (receiver_coins.size() != block * message.size())
    throw ParamError("commit_message: coin length");
  if (seeds.size() != message.size()) throw ParamError("commit_message: one seed per bit");
  CommitmentTriple t;
  t.receiver_coins = receiver_coins;
  t.message = message;
  t.seeds = seeds;
  t.commitment.reserve(receiver_coins.size());
  for (size_t i = 0; i < message.size(); ++i) {
    Bits coins(receiver_coins.begin() + static_cast<long>(i * block),
               receiver_coins.begin() + static_cast<long>((i + 1) * block));
    Bits c = commit_bit(params, coins, message[i], seeds[i]);
    t.commitment.insert(t.commitment.end(), c.begin(), c.end());
  }
  return t;
}

CommitmentTriple commit_message(const prg::PrgParams& params, const Bits& receiver_coins,
                                const Bits& message, Rng& rng) {
  std::vector<Bits> seeds;
  seeds.reserve(message.size());
  for (size_t i = 0; i < message.size(); ++i) seeds.push_back(rng.bits(params.n));
  return commit_message(params, receiver_coins, message, seeds);
}

std::optional<Bits> open_commitment(const prg::PrgParams& params, const CommitmentTriple& t) {
  size_t block = 3 * params.n;
  if (t.seeds.size() != t.message.size()) return std::nullopt;
  if (t.receiver_coins.size() != block * t.message.size()) return std::nullopt;
  if (t.commitment.size() != t.receiver_coins.size()) return std::nullopt;
  for (size_t i = 0; i < t.message.size(); ++i) {
    if (t.seeds[i].size() != params.n) return std::nullopt;
    Bits coins(t.receiver_coins.begin() + static_cast<long>(i * block),
               t.receiver_coins.begin() + static_cast<long>((i + 1) * block));
    Bits expect = commit_bit(params, coins, t.message[i], t.seeds[i]);
    for (size_t j = 0; j < block; ++j)
      if (expect[j] != t.commitment[i * block + j]) return std::nullopt;
  }
  return t.message;
}

std::pair<uint64_t, uint64_t> binding_census(size_t n) {
  auto table = prg::micro_prg_table(n);
  std::set<uint32_t> equivocable;
  for (size_t a = 0; a < table.size(); ++a)
    for (size_t b = 0; b < table.size(); ++b) equivocable.insert(table[a] ^ table[b]);
  return {equivocable.size(), uint64_t{1} << (3 * n)};
}

}  // namespace duet::commit
