#include "duet/reduce.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace duet::np {

namespace {

// Literal union-find over 2*(nvars+1) slots; var 0 is the constant TRUE.
// Complemented literals are kept consistent by pairing every union.
struct LitUf {
  std::vector<int> parent;
  int inputs;
  bool contradiction = false;

  LitUf(int nvars, int inputs_) : parent(2 * (nvars + 1)), inputs(inputs_) {
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  }
  static int enc(int lit) { return lit > 0 ? 2 * lit : 2 * (-lit) + 1; }
  static int neg(int e) { return e ^ 1; }
  int find(int e) {
    while (parent[e] != e) {
      parent[e] = parent[parent[e]];
      e = parent[e];
    }
    return e;
  }
  // Rank: constants strongest, then circuit inputs, then aux by id.
  int strength(int e) const {
    int v = e / 2;
    if (v == 0) return 3;
    if (v <= inputs) return 2;
    return 1;
  }
  bool prefer(int a, int b) {  // should a be the root over b?
    if (strength(a) != strength(b)) return strength(a) > strength(b);
    return a / 2 < b / 2;
  }
  bool merge(int e1, int e2) {
    int r1 = find(e1), r2 = find(e2);
    if (r1 == r2) return false;
    if (r1 == find(neg(e2))) {
      contradiction = true;
      return false;
    }
    if (!prefer(r1, r2)) std::swap(r1, r2);
    parent[r2] = r1;
    int n1 = find(neg(r1)), n2 = find(neg(r2));
    if (n2 != n1) parent[n2] = n1;
    return true;
  }
  // Map a literal to its representative literal; 0 means TRUE, INT_MIN-ish
  // handled by caller via enc form.
  int rep(int lit) { return find(enc(lit)); }
  static int dec(int e) { return (e % 2) ? -(e / 2) : e / 2; }
};

constexpr int kTrue = 0;  // enc of the positive literal of constant var 0

std::vector<std::vector<int>> tseitin(const BooleanCircuit& c) {
  std::vector<std::vector<int>> cl;
  auto var = [&](int wire) { return wire + 1; };
  for (size_t i = 0; i < c.gates.size(); ++i) {
    const auto& gt = c.gates[i];
    int g = var(c.inputs + static_cast<int>(i));
    int a = var(gt.a);
    int b = var(gt.b);
    switch (gt.op) {
      case GateOp::kAnd:
        cl.push_back({-g, a});
        cl.push_back({-g, b});
        cl.push_back({g, -a, -b});
        break;
      case GateOp::kOr:
        cl.push_back({g, -a});
        cl.push_back({g, -b});
        cl.push_back({-g, a, b});
        break;
      case GateOp::kXor:
        cl.push_back({-g, a, b});
        cl.push_back({-g, -a, -b});
        cl.push_back({g, -a, b});
        cl.push_back({g, a, -b});
        break;
      case GateOp::kNot:
        cl.push_back({g, a});
        cl.push_back({-g, -a});
        break;
    }
  }
  cl.push_back({var(c.output)});
  return cl;
}

}  // namespace

HcReduction circuit_to_hc(const BooleanCircuit& c, size_t gate_bound) {
  validate_circuit(c);
  if (c.gates.size() > gate_bound)
    throw UnsupportedScaleError("circuit_to_hc: gate bound exceeded");
  HcReduction red;
  red.circuit = c;
  red.nvars = c.inputs + static_cast<int>(c.gates.size());

  LitUf uf(red.nvars, c.inputs);
  auto work = tseitin(c);

  // Fixpoint: rewrite through representatives, consume units, detect binary
  // equivalences and implications.
  bool changed = true;
  std::vector<std::vector<int>> kept;
  while (changed && !uf.contradiction) {
    changed = false;
    kept.clear();
    std::set<std::vector<int>> seen;
    for (auto& clause : work) {
      std::vector<int> lits;
      bool satisfied = false;
      for (int lit : clause) {
        int e = uf.rep(lit);
        if (e == kTrue) {
          satisfied = true;
          break;
        }
        if (e == LitUf::neg(kTrue)) continue;  // false literal drops out
        int mapped = LitUf::dec(e);
        bool dup = false;
        for (int l2 : lits) {
          if (l2 == mapped) dup = true;
          if (l2 == -mapped) satisfied = true;  // tautology
        }
        if (satisfied) break;
        if (!dup) lits.push_back(mapped);
      }
      if (satisfied) continue;
      if (lits.empty()) {
        uf.contradiction = true;
        break;
      }
      if (lits.size() == 1) {
        changed |= uf.merge(LitUf::enc(lits[0]), kTrue);
        continue;
      }
      std::sort(lits.begin(), lits.end(),
                [](int a, int b) { return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b; });
      if (seen.insert(lits).second) kept.push_back(std::move(lits));
    }
    if (uf.contradiction) break;

    // Binary-clause algebra on the rewritten set.
    std::map<std::pair<int, int>, uint8_t> combos;  // varpair -> sign mask
    for (const auto& clause : kept) {
      if (clause.size() != 2) continue;
      int v1 = std::abs(clause[0]), v2 = std::abs(clause[1]);
      uint8_t bit = static_cast<uint8_t>(1u << ((clause[0] > 0 ? 0 : 1) + (clause[1] > 0 ? 0 : 2)));
      combos[{v1, v2}] |= bit;
    }
    for (auto& [pair, mask] : combos) {
      auto [v1, v2] = pair;
      // masks: 1=(a v b), 2=(-a v b), 4=(a v -b), 8=(-a v -b)
      if ((mask & 1) && (mask & 8)) changed |= uf.merge(LitUf::enc(v1), LitUf::enc(-v2));
      if ((mask & 2) && (mask & 4)) changed |= uf.merge(LitUf::enc(v1), LitUf::enc(v2));
      if ((mask & 1) && (mask & 4)) changed |= uf.merge(LitUf::enc(v1), kTrue);
      if ((mask & 2) && (mask & 8)) changed |= uf.merge(LitUf::enc(-v1), kTrue);
      if ((mask & 1) && (mask & 2)) changed |= uf.merge(LitUf::enc(v2), kTrue);
      if ((mask & 4) && (mask & 8)) changed |= uf.merge(LitUf::enc(-v2), kTrue);
    }
    work = kept;
  }

  if (uf.contradiction) {
    red.unsat = true;
    red.graph.vertices = 2;
    red.graph.edges = {{0, 1}};
    return red;
  }
  red.clauses = work;

  // Inputs stay observable: forced inputs get their unit clause back, and
  // inputs substituted away get equivalence clauses to their representative.
  for (int v = 1; v <= c.inputs; ++v) {
    int e = uf.rep(v);
    if (e == kTrue) {
      red.clauses.push_back({v});
    } else if (e == LitUf::neg(kTrue)) {
      red.clauses.push_back({-v});
    } else {
      int lit = LitUf::dec(e);
      if (std::abs(lit) != v) {
        red.clauses.push_back({-v, lit});
        red.clauses.push_back({v, -lit});
      }
    }
  }

  // Row layout: every circuit input, then every other variable that appears.
  std::set<int> active;
  for (int v = 1; v <= c.inputs; ++v) active.insert(v);
  for (const auto& clause : red.clauses)
    for (int lit : clause) active.insert(std::abs(lit));
  red.var_row.assign(red.nvars + 1, -1);
  for (int v : active) {
    red.var_row[v] = static_cast<int>(red.row_var.size());
    red.row_var.push_back(v);
  }
  int rows = static_cast<int>(red.row_var.size());
  red.junction_count = rows;

  // Slot bookkeeping per clause occurrence.
  std::vector<int> slots(rows, 0);
  red.clause_occs.resize(red.clauses.size());
  for (size_t ci = 0; ci < red.clauses.size(); ++ci) {
    for (int lit : red.clauses[ci]) {
      int row = red.var_row[std::abs(lit)];
      red.clause_occs[ci].push_back({row, ++slots[row], lit > 0});
    }
  }

  int next = rows;  // junctions occupy 0..rows-1
  red.row_start.resize(rows);
  red.row_len.resize(rows);
  for (int i = 0; i < rows; ++i) {
    red.row_len[i] = slots[i] > 0 ? 3 * slots[i] + 1 : 2;
    red.row_start[i] = next;
    next += red.row_len[i];
  }
  red.clause_node.resize(red.clauses.size());
  for (size_t ci = 0; ci < red.clauses.size(); ++ci) red.clause_node[ci] = next++;

  auto& g = red.graph;
  g.vertices = next;
  for (int i = 0; i < rows; ++i) {
    int first = red.row_start[i];
    int last = first + red.row_len[i] - 1;
    int next_junction = (i + 1) % rows;
    g.edges.emplace_back(i, first);
    g.edges.emplace_back(i, last);
    g.edges.emplace_back(first, next_junction);
    g.edges.emplace_back(last, next_junction);
    for (int j = first; j < last; ++j) {
      g.edges.emplace_back(j, j + 1);
      g.edges.emplace_back(j + 1, j);
    }
  }
  for (size_t ci = 0; ci < red.clauses.size(); ++ci) {
    for (const auto& occ : red.clause_occs[ci]) {
      int a = red.row_start[occ.row] + 3 * occ.slot - 2;
      int b = a + 1;
      if (occ.positive) {
        g.edges.emplace_back(a, red.clause_node[ci]);
        g.edges.emplace_back(red.clause_node[ci], b);
      } else {
        g.edges.emplace_back(b, red.clause_node[ci]);
        g.edges.emplace_back(red.clause_node[ci], a);
      }
    }
  }
  return red;
}

CycleWitness HcReduction::assignment_to_cycle(const Bits& inputs) const {
  if (unsat) throw ParamError("assignment_to_cycle: unsatisfiable circuit");
  Bits wires = eval_wires(circuit, inputs);
  if (!wires[circuit.output]) throw ParamError("assignment_to_cycle: assignment rejected");
  auto value = [&](int var) -> uint8_t { return wires[var - 1]; };

  // Park each clause at its first satisfied occurrence.
  std::map<std::pair<int, int>, int> detour;  // (row, slot) -> clause idx
  for (size_t ci = 0; ci < clauses.size(); ++ci) {
    const Occurrence* chosen = nullptr;
    for (const auto& occ : clause_occs[ci]) {
      uint8_t v = value(row_var[occ.row]);
      if ((occ.positive && v) || (!occ.positive && !v)) {
        if (!chosen || occ.row < chosen->row ||
            (occ.row == chosen->row && occ.slot < chosen->slot))
          chosen = &occ;
      }
    }
    if (!chosen) throw ParamError("assignment_to_cycle: unsatisfied clause");
    detour[{chosen->row, chosen->slot}] = static_cast<int>(ci);
  }

  CycleWitness w;
  int rows = junction_count;
  for (int i = 0; i < rows; ++i) {
    w.order.push_back(i);
    int first = row_start[i];
    int len = row_len[i];
    bool truthy = value(row_var[i]) != 0;
    for (int step = 0; step < len; ++step) {
      int offset = truthy ? step : len - 1 - step;
      int node = first + offset;
      w.order.push_back(node);
      // A slot pair is (3t-2, 3t-1); the detour leaves from the node that the
      // traversal direction reaches first.
      if (offset >= 1 && (offset % 3 == 1 || offset % 3 == 2)) {
        int slot = (offset + 2) / 3;
        bool at_entry = truthy ? (offset % 3 == 1) : (offset % 3 == 2);
        auto it = detour.find({i, slot});
        if (at_entry && it != detour.end()) w.order.push_back(clause_node[it->second]);
      }
    }
  }
  return w;
}

std::optional<Bits> HcReduction::cycle_to_assignment(const CycleWitness& w) const {
  if (unsat) return std::nullopt;
  if (!check_cycle(graph, w)) return std::nullopt;
  int rows = junction_count;
  // Rotate so the walk starts at junction 0.
  size_t start = 0;
  while (start < w.order.size() && w.order[start] != 0) ++start;
  if (start == w.order.size()) return std::nullopt;
  auto at = [&](size_t k) { return w.order[(start + k) % w.order.size()]; };

  std::vector<uint8_t> value(row_var.size(), 0);
  int clause_base = clause_node.empty() ? graph.vertices : clause_node.front();
  size_t pos = 0;
  for (int i = 0; i < rows; ++i) {
    if (at(pos) != i) return std::nullopt;
    ++pos;
    int first = row_start[i];
    int last = first + row_len[i] - 1;
    int entry = at(pos);
    if (entry == first)
      value[i] = 1;
    else if (entry == last)
      value[i] = 0;
    else
      return std::nullopt;
    int next_junction = (i + 1) % rows;
    while (at(pos) != next_junction) {
      int node = at(pos);
      bool in_row = node >= first && node <= last;
      if (!in_row && node < clause_base) return std::nullopt;
      ++pos;
      if (pos > w.order.size()) return std::nullopt;
    }
  }

  Bits inputs(circuit.inputs);
  for (int v = 1; v <= circuit.inputs; ++v) inputs[v - 1] = value[var_row[v]];
  if (!eval_circuit(circuit, inputs)) return std::nullopt;
  return inputs;
}

std::optional<Bits> find_satisfying_bruteforce(const BooleanCircuit& c) {
  if (c.inputs > 24) throw ParamError("bruteforce: too many inputs");
  for (uint64_t m = 0; m < (uint64_t{1} << c.inputs); ++m) {
    Bits in = u64_to_bits(m, static_cast<size_t>(c.inputs));
    if (eval_circuit(c, in)) return in;
  }
  return std::nullopt;
}

}  // namespace duet::np
