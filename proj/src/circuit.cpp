#include "duet/circuit.hpp"

namespace duet::np {

void validate_circuit(const BooleanCircuit& c) {
  if (c.inputs <= 0) throw ParamError("circuit: needs at least one input");
  int wires = c.inputs;
  for (const auto& g : c.gates) {
    if (g.a < 0 || g.a >= wires) throw ParamError("circuit: bad wire id");
    if (g.op != GateOp::kNot && (g.b < 0 || g.b >= wires)) throw ParamError("circuit: bad wire id");
    ++wires;
  }
  if (c.output < 0 || c.output >= wires) throw ParamError("circuit: bad output wire");
}

Bits eval_wires(const BooleanCircuit& c, const Bits& input) {
  if (static_cast<int>(input.size()) != c.inputs) throw ParamError("eval: input length");
  Bits w(input);
  w.resize(static_cast<size_t>(c.inputs) + c.gates.size());
  for (size_t i = 0; i < c.gates.size(); ++i) {
    const auto& g = c.gates[i];
    uint8_t a = w[g.a];
    uint8_t v = 0;
    switch (g.op) {
      case GateOp::kAnd: v = a & w[g.b]; break;
      case GateOp::kOr: v = a | w[g.b]; break;
      case GateOp::kXor: v = a ^ w[g.b]; break;
      case GateOp::kNot: v = a ^ 1u; break;
    }
    w[c.inputs + i] = v;
  }
  return w;
}

uint8_t eval_circuit(const BooleanCircuit& c, const Bits& input) {
  return eval_wires(c, input)[c.output];
}

int CircuitBuilder::gate(GateOp op, int a, int b) {
  c_.gates.push_back({op, a, b});
  return c_.inputs + static_cast<int>(c_.gates.size()) - 1;
}

int CircuitBuilder::const_bit(uint8_t v) {
  if (const0_ < 0) {
    const0_ = gxor(0, 0);
    const1_ = gnot(const0_);
  }
  return v ? const1_ : const0_;
}

int CircuitBuilder::xor_many(const std::vector<int>& ws) {
  if (ws.empty()) return const_bit(0);
  int acc = ws[0];
  for (size_t i = 1; i < ws.size(); ++i) acc = gxor(acc, ws[i]);
  return acc;
}

int CircuitBuilder::and_many(const std::vector<int>& ws) {
  if (ws.empty()) return const_bit(1);
  int acc = ws[0];
  for (size_t i = 1; i < ws.size(); ++i) acc = gand(acc, ws[i]);
  return acc;
}

int CircuitBuilder::or_many(const std::vector<int>& ws) {
  if (ws.empty()) return const_bit(0);
  int acc = ws[0];
  for (size_t i = 1; i < ws.size(); ++i) acc = gor(acc, ws[i]);
  return acc;
}

BooleanCircuit CircuitBuilder::finish(int output_wire) {
  c_.output = output_wire;
  validate_circuit(c_);
  return c_;
}

}  // namespace duet::np
