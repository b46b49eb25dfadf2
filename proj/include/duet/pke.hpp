#pragma once

#include <cstdint>
#include <vector>

#include "duet/bits.hpp"

namespace duet::pke {

// Regev-style LWE scheme with a deliberately small parameter set. Keys are
// serialized as unreduced 16-bit representatives so that the wire format is
// a bijection on byte strings: a uniformly random byte string parses through
// the same deserializer as a generated key. Insecure; for protocol plumbing
// and format-level density tests only.
struct LweParams {
  size_t dim = 16;    // secret dimension
  size_t rows = 64;   // LWE samples in the public key
  uint32_t q = 3329;  // prime modulus
};

struct LweKeyPair {
  Bytes public_key;             // (rows x dim) A then rows-long b, u16 LE each
  std::vector<uint16_t> secret; // dim entries, reduced mod q
};

size_t lwe_pk_byte_len(const LweParams& p);
size_t lwe_rand_len(const LweParams& p, size_t message_bits);  // subset-selection bits
size_t lwe_ct_byte_len(const LweParams& p, size_t message_bits);

LweKeyPair lwe_keygen(const LweParams& p, Rng& rng);
Bytes lwe_fake_pk(const LweParams& p, const Bytes& coins);

struct LweCiphertext {
  Bytes body;        // per-bit (u[dim], v) records, u16 LE reduced mod q
  size_t bits = 0;
  Bits randomness;   // retained by the encryptor, not part of the wire form
};

LweCiphertext lwe_encrypt(const LweParams& p, const Bytes& pk, const Bits& message,
                          const Bits& randomness);
// Never fails; under a mismatched key the result simply carries no guarantee.
Bits lwe_decrypt(const LweParams& p, const std::vector<uint16_t>& secret, const Bytes& body,
                 size_t message_bits);

// GF(2) scheme used wherever an encryption check must live inside an NP
// statement: public key is exactly n bits (row a of length n-1 plus b = <a,s>),
// one randomness bit per plaintext bit, ciphertext n bits per plaintext bit.
// Every n-bit string is a valid public key, so coin-flipping outcomes can be
// read directly as keys.
struct Gf2Params {
  size_t n = 4;  // public key bit length; secret has n-1 bits
};

struct Gf2KeyPair {
  Bits public_key;  // a (n-1 bits) then b (1 bit)
  Bits secret;      // n-1 bits
};

size_t gf2_rand_len(const Gf2Params& p, size_t message_bits);
size_t gf2_ct_len(const Gf2Params& p, size_t message_bits);

Gf2KeyPair gf2_keygen(const Gf2Params& p, Rng& rng);
Bits gf2_fake_pk(const Gf2Params& p, const Bits& coins);

struct Gf2Ciphertext {
  Bits body;         // per plaintext bit: u (n-1 bits) then v (1 bit)
  size_t bits = 0;
  Bits randomness;
};

Gf2Ciphertext gf2_encrypt(const Gf2Params& p, const Bits& pk, const Bits& message,
                          const Bits& randomness);
Bits gf2_decrypt(const Gf2Params& p, const Bits& secret, const Bits& body, size_t message_bits);

}  // namespace duet::pke
