#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "duet/circuit.hpp"
#include "duet/hamilton.hpp"
#include "duet/pke.hpp"
#include "duet/prg.hpp"

namespace duet::np {

struct RelationStatement;
using StatementPtr = std::shared_ptr<RelationStatement>;

// c opens to the public message a: witness is the seed list.
struct L1Statement {
  size_t n = 0;  // commitment security parameter
  Bits receiver_coins;
  Bits commitment;
  Bits message_a;
};

// Knowledge of an opening of c: witness is (a, seeds).
struct L1KStatement {
  size_t n = 0;
  Bits receiver_coins;
  Bits commitment;
};

// e encrypts (under pk) a witness of the inner statement: witness is (w, r).
struct L2Statement {
  pke::Gf2Params enc;
  Bits public_key;
  StatementPtr inner;
  Bits ciphertext;
  size_t witness_len = 0;  // |w|, carried explicitly
};

// Either (w, r) as in L2, or a PRG preimage of x2: witness is
// tag || w || r || w_hat, fixed width, with the unused branch ignored.
struct RStatement {
  pke::Gf2Params enc;
  size_t prg_n = 0;
  StatementPtr inner;  // x1
  Bits x2;             // 3*prg_n bits
  Bits public_key;     // s1
  Bits ciphertext;
  size_t witness_len = 0;
};

struct HcStatement {
  HamiltonicityInstance graph;
};

struct RelationStatement {
  std::variant<L1Statement, L1KStatement, L2Statement, RStatement, HcStatement> v;
};

enum class StatementKind : uint8_t { kL1 = 1, kL1K, kL2, kR, kHC };
StatementKind statement_kind(const RelationStatement& s);

size_t witness_bit_len(const RelationStatement& s);

// The NP verification predicate. Malformed witness encodings yield false.
bool check_relation(const RelationStatement& s, const Bits& witness);

// Compiles the predicate into a boolean circuit over the witness bits;
// agrees with check_relation on every input. Only defined at micro scale.
BooleanCircuit relation_to_circuit(const RelationStatement& s);

Bytes serialize_statement(const RelationStatement& s);
RelationStatement deserialize_statement(const Bytes& b);
bool statements_equal(const RelationStatement& a, const RelationStatement& b);

}  // namespace duet::np
