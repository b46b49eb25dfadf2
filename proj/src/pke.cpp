#include "duet/pke.hpp"

namespace duet::pke {

size_t lwe_pk_byte_len(const LweParams& p) { return 2 * (p.rows * p.dim + p.rows); }
size_t lwe_rand_len(const LweParams& p, size_t message_bits) { return p.rows * message_bits; }
size_t lwe_ct_byte_len(const LweParams& p, size_t message_bits) {
  return 2 * (p.dim + 1) * message_bits;
}

static uint16_t read_u16(const Bytes& b, size_t idx) {
  return static_cast<uint16_t>(b[2 * idx] | (b[2 * idx + 1] << 8));
}

static void write_u16(Bytes& b, uint16_t v) {
  b.push_back(static_cast<uint8_t>(v));
  b.push_back(static_cast<uint8_t>(v >> 8));
}

// Lift a residue to a uniformly chosen 16-bit representative.
static uint16_t lift(uint32_t residue, uint32_t q, Rng& rng) {
  uint32_t count = (0x10000u - residue + q - 1) / q;
  return static_cast<uint16_t>(residue + q * rng.below(count));
}

LweKeyPair lwe_keygen(const LweParams& p, Rng& rng) {
  if (p.q < 8 || p.dim == 0 || p.rows == 0) throw ParamError("lwe_keygen: bad params");
  // Error magnitude 1 per row; rows must stay below q/4 for exact decryption.
  if (p.rows >= p.q / 4) throw ParamError("lwe_keygen: rows too large for modulus");
  LweKeyPair kp;
  kp.secret.resize(p.dim);
  bool nonzero = false;
  while (!nonzero) {
    for (auto& s : kp.secret) {
      s = static_cast<uint16_t>(rng.below(p.q));
      nonzero |= s != 0;
    }
  }
  kp.public_key.reserve(lwe_pk_byte_len(p));
  std::vector<uint16_t> a_row(p.dim);
  std::vector<uint32_t> b_res(p.rows);
  for (size_t i = 0; i < p.rows; ++i) {
    uint64_t dot = 0;
    for (size_t j = 0; j < p.dim; ++j) {
      uint16_t rep = static_cast<uint16_t>(rng.next_u64());
      a_row[j] = rep;
      write_u16(kp.public_key, rep);
      dot += static_cast<uint64_t>(rep % p.q) * kp.secret[j];
    }
    uint32_t e = static_cast<uint32_t>(rng.below(3));  // {0,1,2} ~ {0,1,-1}
    uint32_t err = e == 2 ? p.q - 1 : e;
    b_res[i] = static_cast<uint32_t>((dot + err) % p.q);
  }
  for (size_t i = 0; i < p.rows; ++i) write_u16(kp.public_key, lift(b_res[i], p.q, rng));
  return kp;
}

Bytes lwe_fake_pk(const LweParams& p, const Bytes& coins) {
  if (coins.size() != lwe_pk_byte_len(p)) throw ParamError("lwe_fake_pk: coin length");
  return coins;
}

LweCiphertext lwe_encrypt(const LweParams& p, const Bytes& pk, const Bits& message,
                          const Bits& randomness) {
  if (pk.size() != lwe_pk_byte_len(p)) throw ParamError("lwe_encrypt: bad public key length");
  if (message.empty()) throw ParamError("lwe_encrypt: empty message");
  if (randomness.size() != lwe_rand_len(p, message.size()))
    throw ParamError("lwe_encrypt: randomness length");
  LweCiphertext ct;
  ct.bits = message.size();
  ct.randomness = randomness;
  ct.body.reserve(lwe_ct_byte_len(p, message.size()));
  size_t b_off = p.rows * p.dim;
  for (size_t t = 0; t < message.size(); ++t) {
    std::vector<uint32_t> u(p.dim, 0);
    uint32_t v = message[t] ? p.q / 2 : 0;
    for (size_t i = 0; i < p.rows; ++i) {
      if (!randomness[t * p.rows + i]) continue;
      for (size_t j = 0; j < p.dim; ++j)
        u[j] = (u[j] + read_u16(pk, i * p.dim + j) % p.q) % p.q;
      v = (v + read_u16(pk, b_off + i) % p.q) % p.q;
    }
    for (size_t j = 0; j < p.dim; ++j) write_u16(ct.body, static_cast<uint16_t>(u[j]));
    write_u16(ct.body, static_cast<uint16_t>(v));
  }
  return ct;
}

Bits lwe_decrypt(const LweParams& p, const std::vector<uint16_t>& secret, const Bytes& body,
                 size_t message_bits) {
  if (body.size() < lwe_ct_byte_len(p, message_bits)) throw ParamError("lwe_decrypt: short body");
  Bits out(message_bits);
  for (size_t t = 0; t < message_bits; ++t) {
    size_t base = t * (p.dim + 1);
    uint64_t dot = 0;
    for (size_t j = 0; j < p.dim && j < secret.size(); ++j)
      dot += static_cast<uint64_t>(read_u16(body, base + j) % p.q) * (secret[j] % p.q);
    uint32_t v = read_u16(body, base + p.dim) % p.q;
    uint32_t w = static_cast<uint32_t>((v + p.q * p.dim - dot % p.q) % p.q);
    out[t] = (w > p.q / 4 && w < 3 * p.q / 4) ? 1 : 0;
  }
  return out;
}

size_t gf2_rand_len(const Gf2Params&, size_t message_bits) { return message_bits; }
size_t gf2_ct_len(const Gf2Params& p, size_t message_bits) { return p.n * message_bits; }

Gf2KeyPair gf2_keygen(const Gf2Params& p, Rng& rng) {
  if (p.n < 2) throw ParamError("gf2_keygen: n must be >= 2");
  Gf2KeyPair kp;
  kp.secret = rng.bits(p.n - 1);
  Bits a = rng.bits(p.n - 1);
  uint8_t b = 0;
  for (size_t j = 0; j < p.n - 1; ++j) b ^= a[j] & kp.secret[j];
  kp.public_key = a;
  kp.public_key.push_back(b);
  return kp;
}

Bits gf2_fake_pk(const Gf2Params& p, const Bits& coins) {
  if (coins.size() != p.n) throw ParamError("gf2_fake_pk: coin length");
  return coins;
}

Gf2Ciphertext gf2_encrypt(const Gf2Params& p, const Bits& pk, const Bits& message,
                          const Bits& randomness) {
  if (pk.size() != p.n) throw ParamError("gf2_encrypt: bad public key length");
  if (message.empty()) throw ParamError("gf2_encrypt: empty message");
  if (randomness.size() != message.size()) throw ParamError("gf2_encrypt: randomness length");
  Gf2Ciphertext ct;
  ct.bits = message.size();
  ct.randomness = randomness;
  ct.body.reserve(p.n * message.size());
  for (size_t t = 0; t < message.size(); ++t) {
    uint8_t r = randomness[t];
    for (size_t j = 0; j < p.n - 1; ++j) ct.body.push_back(r & pk[j]);   // u
    ct.body.push_back(static_cast<uint8_t>((r & pk[p.n - 1]) ^ message[t]));  // v
  }
  return ct;
}

Bits gf2_decrypt(const Gf2Params& p, const Bits& secret, const Bits& body, size_t message_bits) {
  if (body.size() < p.n * message_bits) throw ParamError("gf2_decrypt: short body");
  Bits out(message_bits);
  for (size_t t = 0; t < message_bits; ++t) {
    size_t base = t * p.n;
    uint8_t w = body[base + p.n - 1];
    for (size_t j = 0; j < p.n - 1 && j < secret.size(); ++j) w ^= body[base + j] & secret[j];
    out[t] = w;
  }
  return out;
}

}  // namespace duet::pke
