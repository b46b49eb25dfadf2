#pragma once

#include <vector>

#include "duet/bits.hpp"

namespace duet::np {

enum class GateOp : uint8_t { kAnd, kOr, kNot, kXor };

struct Gate {
  GateOp op;
  int a = 0;
  int b = 0;  // ignored for kNot
};

// Wire ids: inputs are 0..inputs-1, gate i drives wire inputs+i. Gates may
// only read lower-numbered wires, so the circuit is acyclic by construction.
struct BooleanCircuit {
  int inputs = 0;
  std::vector<Gate> gates;
  int output = 0;
};

void validate_circuit(const BooleanCircuit& c);
Bits eval_wires(const BooleanCircuit& c, const Bits& input);
uint8_t eval_circuit(const BooleanCircuit& c, const Bits& input);

// Incremental construction helper; returns wire ids.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(int inputs) { c_.inputs = inputs; }
  int input(int i) const { return i; }
  int gate(GateOp op, int a, int b = 0);
  int gnot(int a) { return gate(GateOp::kNot, a); }
  int gand(int a, int b) { return gate(GateOp::kAnd, a, b); }
  int gor(int a, int b) { return gate(GateOp::kOr, a, b); }
  int gxor(int a, int b) { return gate(GateOp::kXor, a, b); }
  int const_bit(uint8_t v);               // built from input 0 when needed
  int xor_many(const std::vector<int>& ws);
  int and_many(const std::vector<int>& ws);
  int or_many(const std::vector<int>& ws);
  int eq_const(int w, uint8_t v) { return v ? w : gnot(w); }
  BooleanCircuit finish(int output_wire);

 private:
  BooleanCircuit c_;
  int const0_ = -1;
  int const1_ = -1;
};

}  // namespace duet::np
