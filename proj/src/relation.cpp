#include "duet/relation.hpp"

#include "duet/commit.hpp"

namespace duet::np {

StatementKind statement_kind(const RelationStatement& s) {
  return static_cast<StatementKind>(s.v.index() + 1);
}

static size_t l1k_msg_len(const L1KStatement& s) {
  if (s.n == 0 || s.commitment.size() % (3 * s.n)) throw ParamError("l1k: commitment length");
  return s.commitment.size() / (3 * s.n);
}

size_t witness_bit_len(const RelationStatement& s) {
  return std::visit(
      [](const auto& st) -> size_t {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, L1Statement>) {
          return st.message_a.size() * st.n;
        } else if constexpr (std::is_same_v<T, L1KStatement>) {
          size_t len = l1k_msg_len(st);
          return len + len * st.n;
        } else if constexpr (std::is_same_v<T, L2Statement>) {
          return st.witness_len + pke::gf2_rand_len(st.enc, st.witness_len);
        } else if constexpr (std::is_same_v<T, RStatement>) {
          return 1 + st.witness_len + pke::gf2_rand_len(st.enc, st.witness_len) + st.prg_n;
        } else {
          return cycle_index_bits(st.graph.vertices) * static_cast<size_t>(st.graph.vertices);
        }
      },
      s.v);
}

static bool check_commitment(size_t n, const Bits& coins, const Bits& commitment, const Bits& msg,
                             const Bits& seeds_flat) {
  if (seeds_flat.size() != msg.size() * n) return false;
  std::vector<Bits> seeds;
  for (size_t i = 0; i < msg.size(); ++i)
    seeds.emplace_back(seeds_flat.begin() + static_cast<long>(i * n),
                       seeds_flat.begin() + static_cast<long>((i + 1) * n));
  commit::CommitmentTriple t{coins, commitment, msg, seeds};
  auto prg = prg::default_prg(n);
  return commit::open_commitment(prg, t).has_value();
}

bool check_relation(const RelationStatement& s, const Bits& witness) {
  if (witness.size() != witness_bit_len(s)) return false;
  if (auto* l1 = std::get_if<L1Statement>(&s.v)) {
    return check_commitment(l1->n, l1->receiver_coins, l1->commitment, l1->message_a, witness);
  }
  if (auto* l1k = std::get_if<L1KStatement>(&s.v)) {
    size_t len = l1k_msg_len(*l1k);
    Bits a(witness.begin(), witness.begin() + static_cast<long>(len));
    Bits seeds(witness.begin() + static_cast<long>(len), witness.end());
    return check_commitment(l1k->n, l1k->receiver_coins, l1k->commitment, a, seeds);
  }
  if (auto* l2 = std::get_if<L2Statement>(&s.v)) {
    if (l2->witness_len == 0) return false;
    Bits w(witness.begin(), witness.begin() + static_cast<long>(l2->witness_len));
    Bits r(witness.begin() + static_cast<long>(l2->witness_len), witness.end());
    auto ct = pke::gf2_encrypt(l2->enc, l2->public_key, w, r);
    if (ct.body != l2->ciphertext) return false;
    return check_relation(*l2->inner, w);
  }
  if (auto* rs = std::get_if<RStatement>(&s.v)) {
    size_t rlen = pke::gf2_rand_len(rs->enc, rs->witness_len);
    uint8_t tag = witness[0];
    Bits w(witness.begin() + 1, witness.begin() + 1 + static_cast<long>(rs->witness_len));
    Bits r(witness.begin() + 1 + static_cast<long>(rs->witness_len),
           witness.begin() + 1 + static_cast<long>(rs->witness_len + rlen));
    Bits w_hat(witness.end() - static_cast<long>(rs->prg_n), witness.end());
    if (tag == 0) {
      if (rs->witness_len == 0) return false;
      auto ct = pke::gf2_encrypt(rs->enc, rs->public_key, w, r);
      if (ct.body != rs->ciphertext) return false;
      return check_relation(*rs->inner, w);
    }
    auto prg = prg::default_prg(rs->prg_n);
    return prg::prg_expand(prg, w_hat) == rs->x2;
  }
  const auto& hc = std::get<HcStatement>(s.v);
  auto cycle = decode_cycle(hc.graph, witness);
  return cycle && check_cycle(hc.graph, *cycle);
}

// ---- circuit compilation -------------------------------------------------
//
// Wires are built through a constant-folding layer so that instance bits
// (which are constants here) do not inflate the circuit.

namespace {

constexpr int kC0 = -1;
constexpr int kC1 = -2;

struct Fold {
  CircuitBuilder b;
  explicit Fold(int inputs) : b(inputs) {}
  static int cbit(uint8_t v) { return v ? kC1 : kC0; }
  static bool is_const(int w) { return w < 0; }
  int not1(int x) {
    if (x == kC0) return kC1;
    if (x == kC1) return kC0;
    return b.gnot(x);
  }
  int xor2(int x, int y) {
    if (x == kC0) return y;
    if (y == kC0) return x;
    if (x == kC1) return not1(y);
    if (y == kC1) return not1(x);
    if (x == y) return kC0;
    return b.gxor(x, y);
  }
  int and2(int x, int y) {
    if (x == kC0 || y == kC0) return kC0;
    if (x == kC1) return y;
    if (y == kC1) return x;
    if (x == y) return x;
    return b.gand(x, y);
  }
  int or2(int x, int y) {
    if (x == kC1 || y == kC1) return kC1;
    if (x == kC0) return y;
    if (y == kC0) return x;
    if (x == y) return x;
    return b.gor(x, y);
  }
  int eq(int x, int y) { return not1(xor2(x, y)); }
  int and_all(const std::vector<int>& ws) {
    int acc = kC1;
    for (int w : ws) acc = and2(acc, w);
    return acc;
  }
  int or_all(const std::vector<int>& ws) {
    int acc = kC0;
    for (int w : ws) acc = or2(acc, w);
    return acc;
  }
  BooleanCircuit finish(int out) {
    if (is_const(out)) out = b.const_bit(out == kC1 ? 1 : 0);
    return b.finish(out);
  }
};

// Commitment verification over the micro PRG formulas. `a_wires[i]` may be a
// constant (L1) or a witness wire (L1K); `seed_wires` is flat, n per bit.
int compile_commitment(Fold& f, size_t n, const Bits& coins, const Bits& commitment,
                       const std::vector<int>& a_wires, const std::vector<int>& seed_wires) {
  auto formulas = prg::micro_prg_formula(n);
  std::vector<int> flags;
  for (size_t i = 0; i < a_wires.size(); ++i) {
    for (size_t k = 0; k < 3 * n; ++k) {
      const auto& fm = formulas[k];
      int acc = kC0;
      for (size_t j = 0; j < n; ++j)
        if (fm.lin_mask & (1u << j)) acc = f.xor2(acc, seed_wires[i * n + j]);
      if (fm.and_a >= 0)
        acc = f.xor2(acc, f.and2(seed_wires[i * n + fm.and_a], seed_wires[i * n + fm.and_b]));
      if (coins[i * 3 * n + k]) acc = f.xor2(acc, a_wires[i]);
      flags.push_back(f.eq(acc, Fold::cbit(commitment[i * 3 * n + k])));
    }
  }
  return f.and_all(flags);
}

// Per plaintext bit: u_j = r & pk[j], v = (r & pk[n-1]) ^ w.
int compile_gf2_encrypt(Fold& f, const pke::Gf2Params& p, const Bits& pk, const Bits& ciphertext,
                        const std::vector<int>& w_wires, const std::vector<int>& r_wires) {
  std::vector<int> flags;
  for (size_t t = 0; t < w_wires.size(); ++t) {
    for (size_t j = 0; j + 1 < p.n; ++j) {
      int u = f.and2(r_wires[t], Fold::cbit(pk[j]));
      flags.push_back(f.eq(u, Fold::cbit(ciphertext[t * p.n + j])));
    }
    int v = f.xor2(f.and2(r_wires[t], Fold::cbit(pk[p.n - 1])), w_wires[t]);
    flags.push_back(f.eq(v, Fold::cbit(ciphertext[t * p.n + p.n - 1])));
  }
  return f.and_all(flags);
}

int compile_index_lt(Fold& f, const std::vector<int>& bits, uint64_t bound) {
  // true iff the (LSB-first) index is strictly below bound
  int lt = kC0;
  for (size_t j = 0; j < bits.size(); ++j) {
    int bj = bits[j];
    if ((bound >> j) & 1)
      lt = f.or2(f.not1(bj), lt);  // bound bit 1: smaller here, or decided below
    else
      lt = f.and2(f.not1(bj), lt);
  }
  return lt;
}

int compile_hc_check(Fold& f, const HamiltonicityInstance& g, const std::vector<int>& w_wires) {
  size_t b = cycle_index_bits(g.vertices);
  size_t v = static_cast<size_t>(g.vertices);
  std::vector<std::vector<int>> idx(v);
  for (size_t p = 0; p < v; ++p)
    for (size_t j = 0; j < b; ++j) idx[p].push_back(w_wires[p * b + j]);
  std::vector<int> flags;
  if ((size_t{1} << b) != v)
    for (size_t p = 0; p < v; ++p) flags.push_back(compile_index_lt(f, idx[p], v));
  for (size_t p = 0; p < v; ++p)
    for (size_t q = p + 1; q < v; ++q) {
      int differs = kC0;
      for (size_t j = 0; j < b; ++j) differs = f.or2(differs, f.xor2(idx[p][j], idx[q][j]));
      flags.push_back(differs);
    }
  for (size_t p = 0; p < v; ++p) {
    const auto& from = idx[p];
    const auto& to = idx[(p + 1) % v];
    std::vector<int> any_edge;
    for (auto [eu, ev] : g.edges) {
      std::vector<int> match;
      for (size_t j = 0; j < b; ++j) {
        match.push_back(f.eq(from[j], Fold::cbit((eu >> j) & 1)));
        match.push_back(f.eq(to[j], Fold::cbit((ev >> j) & 1)));
      }
      any_edge.push_back(f.and_all(match));
    }
    flags.push_back(f.or_all(any_edge));
  }
  return f.and_all(flags);
}

int compile_statement(Fold& f, const RelationStatement& s, const std::vector<int>& wit);

int compile_prg_preimage(Fold& f, size_t n, const Bits& x2, const std::vector<int>& seed) {
  auto formulas = prg::micro_prg_formula(n);
  std::vector<int> flags;
  for (size_t k = 0; k < 3 * n; ++k) {
    const auto& fm = formulas[k];
    int acc = kC0;
    for (size_t j = 0; j < n; ++j)
      if (fm.lin_mask & (1u << j)) acc = f.xor2(acc, seed[j]);
    if (fm.and_a >= 0) acc = f.xor2(acc, f.and2(seed[fm.and_a], seed[fm.and_b]));
    flags.push_back(f.eq(acc, Fold::cbit(x2[k])));
  }
  return f.and_all(flags);
}

int compile_statement(Fold& f, const RelationStatement& s, const std::vector<int>& wit) {
  if (auto* l1 = std::get_if<L1Statement>(&s.v)) {
    if (l1->n > 8) throw UnsupportedScaleError("relation_to_circuit: commitment n > 8");
    std::vector<int> a_wires;
    for (uint8_t bit : l1->message_a) a_wires.push_back(Fold::cbit(bit));
    return compile_commitment(f, l1->n, l1->receiver_coins, l1->commitment, a_wires, wit);
  }
  if (auto* l1k = std::get_if<L1KStatement>(&s.v)) {
    if (l1k->n > 8) throw UnsupportedScaleError("relation_to_circuit: commitment n > 8");
    size_t len = l1k_msg_len(*l1k);
    std::vector<int> a_wires(wit.begin(), wit.begin() + static_cast<long>(len));
    std::vector<int> seeds(wit.begin() + static_cast<long>(len), wit.end());
    return compile_commitment(f, l1k->n, l1k->receiver_coins, l1k->commitment, a_wires, seeds);
  }
  if (auto* l2 = std::get_if<L2Statement>(&s.v)) {
    if (l2->enc.n > 8) throw UnsupportedScaleError("relation_to_circuit: enc n > 8");
    if (l2->witness_len == 0) throw ParamError("relation_to_circuit: empty L2 witness");
    std::vector<int> w(wit.begin(), wit.begin() + static_cast<long>(l2->witness_len));
    std::vector<int> r(wit.begin() + static_cast<long>(l2->witness_len), wit.end());
    int enc_ok = compile_gf2_encrypt(f, l2->enc, l2->public_key, l2->ciphertext, w, r);
    int inner_ok = compile_statement(f, *l2->inner, w);
    return f.and2(enc_ok, inner_ok);
  }
  if (auto* rs = std::get_if<RStatement>(&s.v)) {
    if (rs->enc.n > 8 || rs->prg_n > 8)
      throw UnsupportedScaleError("relation_to_circuit: params too large");
    size_t rlen = pke::gf2_rand_len(rs->enc, rs->witness_len);
    int tag = wit[0];
    std::vector<int> w(wit.begin() + 1, wit.begin() + 1 + static_cast<long>(rs->witness_len));
    std::vector<int> r(wit.begin() + 1 + static_cast<long>(rs->witness_len),
                       wit.begin() + 1 + static_cast<long>(rs->witness_len + rlen));
    std::vector<int> w_hat(wit.end() - static_cast<long>(rs->prg_n), wit.end());
    int real_branch = kC0;
    if (rs->witness_len > 0) {
      int enc_ok = compile_gf2_encrypt(f, rs->enc, rs->public_key, rs->ciphertext, w, r);
      int inner_ok = compile_statement(f, *rs->inner, w);
      real_branch = f.and2(enc_ok, inner_ok);
    }
    int prg_branch = compile_prg_preimage(f, rs->prg_n, rs->x2, w_hat);
    return f.or2(f.and2(f.not1(tag), real_branch), f.and2(tag, prg_branch));
  }
  const auto& hc = std::get<HcStatement>(s.v);
  if (hc.graph.vertices > 8) throw UnsupportedScaleError("relation_to_circuit: graph too large");
  return compile_hc_check(f, hc.graph, wit);
}

}  // namespace

BooleanCircuit relation_to_circuit(const RelationStatement& s) {
  size_t wlen = witness_bit_len(s);
  if (wlen == 0) throw ParamError("relation_to_circuit: empty witness space");
  Fold f(static_cast<int>(wlen));
  std::vector<int> wit(wlen);
  for (size_t i = 0; i < wlen; ++i) wit[i] = static_cast<int>(i);
  return f.finish(compile_statement(f, s, wit));
}

// ---- serialization -------------------------------------------------------

static void put_bits(Bytes& out, const Bits& bits) {
  put_u32(out, static_cast<uint32_t>(bits.size()));
  put_blob(out, pack_bits(bits));
}

static Bits get_bits(const Bytes& in, size_t& pos) {
  uint32_t n = get_u32(in, pos);
  return unpack_bits(get_blob(in, pos), n);
}

static void ser(Bytes& out, const RelationStatement& s) {
  out.push_back(static_cast<uint8_t>(statement_kind(s)));
  if (auto* l1 = std::get_if<L1Statement>(&s.v)) {
    put_u32(out, static_cast<uint32_t>(l1->n));
    put_bits(out, l1->receiver_coins);
    put_bits(out, l1->commitment);
    put_bits(out, l1->message_a);
  } else if (auto* l1k = std::get_if<L1KStatement>(&s.v)) {
    put_u32(out, static_cast<uint32_t>(l1k->n));
    put_bits(out, l1k->receiver_coins);
    put_bits(out, l1k->commitment);
  } else if (auto* l2 = std::get_if<L2Statement>(&s.v)) {
    put_u32(out, static_cast<uint32_t>(l2->enc.n));
    put_bits(out, l2->public_key);
    put_bits(out, l2->ciphertext);
    put_u32(out, static_cast<uint32_t>(l2->witness_len));
    ser(out, *l2->inner);
  } else if (auto* rs = std::get_if<RStatement>(&s.v)) {
    put_u32(out, static_cast<uint32_t>(rs->enc.n));
    put_u32(out, static_cast<uint32_t>(rs->prg_n));
    put_bits(out, rs->x2);
    put_bits(out, rs->public_key);
    put_bits(out, rs->ciphertext);
    put_u32(out, static_cast<uint32_t>(rs->witness_len));
    ser(out, *rs->inner);
  } else {
    const auto& hc = std::get<HcStatement>(s.v);
    put_u32(out, static_cast<uint32_t>(hc.graph.vertices));
    put_u32(out, static_cast<uint32_t>(hc.graph.edges.size()));
    for (auto [u, v] : hc.graph.edges) {
      put_u32(out, static_cast<uint32_t>(u));
      put_u32(out, static_cast<uint32_t>(v));
    }
  }
}

Bytes serialize_statement(const RelationStatement& s) {
  Bytes out;
  ser(out, s);
  return out;
}

static RelationStatement deser(const Bytes& in, size_t& pos) {
  if (pos >= in.size()) throw ParamError("statement: truncated");
  auto kind = static_cast<StatementKind>(in[pos++]);
  RelationStatement s;
  switch (kind) {
    case StatementKind::kL1: {
      L1Statement l1;
      l1.n = get_u32(in, pos);
      l1.receiver_coins = get_bits(in, pos);
      l1.commitment = get_bits(in, pos);
      l1.message_a = get_bits(in, pos);
      s.v = std::move(l1);
      break;
    }
    case StatementKind::kL1K: {
      L1KStatement l1k;
      l1k.n = get_u32(in, pos);
      l1k.receiver_coins = get_bits(in, pos);
      l1k.commitment = get_bits(in, pos);
      s.v = std::move(l1k);
      break;
    }
    case StatementKind::kL2: {
      L2Statement l2;
      l2.enc.n = get_u32(in, pos);
      l2.public_key = get_bits(in, pos);
      l2.ciphertext = get_bits(in, pos);
      l2.witness_len = get_u32(in, pos);
      l2.inner = std::make_shared<RelationStatement>(deser(in, pos));
      s.v = std::move(l2);
      break;
    }
    case StatementKind::kR: {
      RStatement rs;
      rs.enc.n = get_u32(in, pos);
      rs.prg_n = get_u32(in, pos);
      rs.x2 = get_bits(in, pos);
      rs.public_key = get_bits(in, pos);
      rs.ciphertext = get_bits(in, pos);
      rs.witness_len = get_u32(in, pos);
      rs.inner = std::make_shared<RelationStatement>(deser(in, pos));
      s.v = std::move(rs);
      break;
    }
    case StatementKind::kHC: {
      HcStatement hc;
      hc.graph.vertices = static_cast<int>(get_u32(in, pos));
      uint32_t ne = get_u32(in, pos);
      for (uint32_t i = 0; i < ne; ++i) {
        int u = static_cast<int>(get_u32(in, pos));
        int v = static_cast<int>(get_u32(in, pos));
        hc.graph.edges.emplace_back(u, v);
      }
      validate_instance(hc.graph);
      s.v = std::move(hc);
      break;
    }
    default:
      throw ParamError("statement: unknown kind");
  }
  return s;
}

RelationStatement deserialize_statement(const Bytes& b) {
  size_t pos = 0;
  auto s = deser(b, pos);
  if (pos != b.size()) throw ParamError("statement: trailing bytes");
  return s;
}

bool statements_equal(const RelationStatement& a, const RelationStatement& b) {
  return serialize_statement(a) == serialize_statement(b);
}

}  // namespace duet::np
