#include "duet/bits.hpp"

namespace duet {

Bits bits_xor(const Bits& a, const Bits& b) {
  if (a.size() != b.size()) throw ParamError("bits_xor: length mismatch");
  Bits out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

Bytes pack_bits(const Bits& bits) {
  Bytes out((bits.size() + 7) / 8, 0);
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out[i / 8] |= static_cast<uint8_t>(1u << (i % 8));
  return out;
}

Bits unpack_bits(const Bytes& bytes, size_t nbits) {
  if (bytes.size() * 8 < nbits) throw ParamError("unpack_bits: short buffer");
  Bits out(nbits);
  for (size_t i = 0; i < nbits; ++i) out[i] = (bytes[i / 8] >> (i % 8)) & 1u;
  return out;
}

std::string to_hex(const Bytes& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xf]);
  }
  return s;
}

static int hex_val(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw ParamError("from_hex: bad digit");
}

Bytes from_hex(const std::string& hex) {
  if (hex.size() % 2) throw ParamError("from_hex: odd length");
  Bytes out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<uint8_t>(hex_val(hex[2 * i]) << 4 | hex_val(hex[2 * i + 1]));
  return out;
}

uint64_t bits_to_u64(const Bits& bits) {
  if (bits.size() > 64) throw ParamError("bits_to_u64: too long");
  uint64_t v = 0;
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) v |= (uint64_t{1} << i);
  return v;
}

Bits u64_to_bits(uint64_t v, size_t nbits) {
  Bits out(nbits);
  for (size_t i = 0; i < nbits; ++i) out[i] = (v >> i) & 1u;
  return out;
}

void put_u32(Bytes& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 24));
}

uint32_t get_u32(const Bytes& in, size_t& pos) {
  if (pos + 4 > in.size()) throw ParamError("get_u32: truncated");
  uint32_t v = static_cast<uint32_t>(in[pos]) | static_cast<uint32_t>(in[pos + 1]) << 8 |
               static_cast<uint32_t>(in[pos + 2]) << 16 | static_cast<uint32_t>(in[pos + 3]) << 24;
  pos += 4;
  return v;
}

void put_blob(Bytes& out, const Bytes& blob) {
  put_u32(out, static_cast<uint32_t>(blob.size()));
  out.insert(out.end(), blob.begin(), blob.end());
}

Bytes get_blob(const Bytes& in, size_t& pos) {
  uint32_t len = get_u32(in, pos);
  if (pos + len > in.size()) throw ParamError("get_blob: truncated");
  Bytes out(in.begin() + static_cast<long>(pos), in.begin() + static_cast<long>(pos + len));
  pos += len;
  return out;
}

void put_bits_blob(Bytes& out, const Bits& bits) {
  put_u32(out, static_cast<uint32_t>(bits.size()));
  put_blob(out, pack_bits(bits));
}

Bits get_bits_blob(const Bytes& in, size_t& pos) {
  uint32_t n = get_u32(in, pos);
  return unpack_bits(get_blob(in, pos), n);
}

static uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(uint64_t seed) {
  uint64_t x = seed;
  for (auto& s : s_) s = splitmix64(x);
}

static inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

uint64_t Rng::next_u64() {
  uint64_t result = rotl(s_[1] * 5, 7) * 9;
  uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

Bits Rng::bits(size_t n) {
  Bits out(n);
  uint64_t buf = 0;
  int have = 0;
  for (size_t i = 0; i < n; ++i) {
    if (have == 0) {
      buf = next_u64();
      have = 64;
    }
    out[i] = buf & 1u;
    buf >>= 1;
    --have;
  }
  return out;
}

Bytes Rng::bytes(size_t n) {
  Bytes out(n);
  uint64_t buf = 0;
  int have = 0;
  for (size_t i = 0; i < n; ++i) {
    if (have == 0) {
      buf = next_u64();
      have = 8;
    }
    out[i] = static_cast<uint8_t>(buf);
    buf >>= 8;
    --have;
  }
  return out;
}

uint64_t Rng::below(uint64_t bound) {
  if (bound == 0) throw ParamError("Rng::below: zero bound");
  uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % bound;
}

Rng Rng::fork() { return Rng(next_u64() ^ 0xa5a5a5a5deadbeefULL); }

}  // namespace duet
