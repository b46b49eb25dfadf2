#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace duet {

// Bit strings are stored one bit per byte (values 0/1). Wire formats pack
// them 8 per byte, LSB first, with explicit lengths carried alongside.
using Bits = std::vector<uint8_t>;
using Bytes = std::vector<uint8_t>;

struct ParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnsupportedScaleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CompositionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Bits bits_xor(const Bits& a, const Bits& b);
Bytes pack_bits(const Bits& bits);               // LSB-first, zero padded
Bits unpack_bits(const Bytes& bytes, size_t nbits);
std::string to_hex(const Bytes& bytes);
Bytes from_hex(const std::string& hex);
uint64_t bits_to_u64(const Bits& bits);          // LSB-first, size <= 64
Bits u64_to_bits(uint64_t v, size_t nbits);

// Little-endian length-prefixed byte framing used throughout wire payloads.
void put_u32(Bytes& out, uint32_t v);
uint32_t get_u32(const Bytes& in, size_t& pos);
void put_blob(Bytes& out, const Bytes& blob);
Bytes get_blob(const Bytes& in, size_t& pos);
void put_bits_blob(Bytes& out, const Bits& bits);  // bit count + packed bits
Bits get_bits_blob(const Bytes& in, size_t& pos);

// xoshiro256** seeded via splitmix64. Deterministic everywhere; the whole
// harness depends on seed-reproducible tapes.
class Rng {
 public:
  explicit Rng(uint64_t seed);
  uint64_t next_u64();
  uint8_t bit() { return static_cast<uint8_t>(next_u64() >> 63); }
  Bits bits(size_t n);
  Bytes bytes(size_t n);
  // Unbiased integer in [0, bound).
  uint64_t below(uint64_t bound);
  Rng fork();  // child stream, decorrelated from the parent

 private:
  uint64_t s_[4];
};

}  // namespace duet
