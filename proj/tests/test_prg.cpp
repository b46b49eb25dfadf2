#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "duet/prg.hpp"

using namespace duet;

TEST_CASE("expansion is length-tripling and deterministic") {
  for (size_t n : {4u, 6u, 8u}) {
    auto p = prg::default_prg(n);
    Rng rng(11 + n);
    Bits seed = rng.bits(n);
    Bits out1 = prg::prg_expand(p, seed);
    Bits out2 = prg::prg_expand(p, seed);
    CHECK(out1.size() == 3 * n);
    CHECK(out1 == out2);
  }
  auto macro = prg::default_prg(64);
  CHECK(macro.kind == prg::Kind::kMacro);
  Rng rng(7);
  Bits seed = rng.bits(64);
  CHECK(prg::prg_expand(macro, seed).size() == 192);
}

TEST_CASE("n=8 output length is 24") {
  auto p = prg::default_prg(8);
  Rng rng(3);
  CHECK(prg::prg_expand(p, rng.bits(8)).size() == 24);
}

TEST_CASE("micro generator is injective at n=4") {
  auto table = prg::micro_prg_table(4);
  std::set<uint32_t> outs(table.begin(), table.end());
  CHECK(outs.size() == 16);
}

TEST_CASE("micro table matches bitwise evaluation") {
  for (size_t n : {4u, 5u, 8u}) {
    auto p = prg::default_prg(n);
    auto table = prg::micro_prg_table(n);
    for (uint64_t s = 0; s < (uint64_t{1} << n); s += (n == 8 ? 7 : 1)) {
      Bits seed = u64_to_bits(s, n);
      CHECK(table[s] == bits_to_u64(prg::prg_expand(p, seed)));
    }
  }
}

TEST_CASE("formula evaluation agrees with expansion") {
  auto formulas = prg::micro_prg_formula(4);
  auto p = prg::default_prg(4);
  for (uint64_t s = 0; s < 16; ++s) {
    Bits seed = u64_to_bits(s, 4);
    Bits out = prg::prg_expand(p, seed);
    for (size_t k = 0; k < formulas.size(); ++k) {
      uint8_t v = 0;
      for (size_t j = 0; j < 4; ++j)
        if (formulas[k].lin_mask & (1u << j)) v ^= seed[j];
      if (formulas[k].and_a >= 0) v ^= seed[formulas[k].and_a] & seed[formulas[k].and_b];
      CHECK(v == out[k]);
    }
  }
}

TEST_CASE("wrong seed length is rejected") {
  auto p = prg::default_prg(4);
  Bits seed(5, 0);
  CHECK_THROWS_AS(prg::prg_expand(p, seed), ParamError);
}

TEST_CASE("macro expander has no obvious per-bit bias") {
  auto p = prg::default_prg(64);
  Rng rng(99);
  size_t trials = 2000;
  std::vector<size_t> ones(192, 0);
  for (size_t t = 0; t < trials; ++t) {
    Bits out = prg::prg_expand(p, rng.bits(64));
    for (size_t i = 0; i < out.size(); ++i) ones[i] += out[i];
  }
  for (size_t i = 0; i < ones.size(); ++i) {
    double freq = static_cast<double>(ones[i]) / trials;
    CHECK(freq > 0.4);
    CHECK(freq < 0.6);
  }
}
