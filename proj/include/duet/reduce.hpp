#pragma once

#include <optional>
#include <vector>

#include "duet/circuit.hpp"
#include "duet/hamilton.hpp"

namespace duet::np {

// Karp chain: circuit-SAT -> 3-SAT (Tseitin, then unit propagation and
// equivalent-literal substitution) -> directed Hamiltonian cycle (variable
// rows with one slot per clause occurrence, one node per clause).
//
// Every circuit input keeps its own row in the graph even when the CNF no
// longer constrains it, so a cycle determines the full input assignment and
// the witness maps are exact inverses on satisfying assignments.
struct HcReduction {
  BooleanCircuit circuit;
  HamiltonicityInstance graph;
  bool unsat = false;  // detected at reduction time; graph is non-Hamiltonian

  // Satisfying circuit input -> Hamiltonian cycle. Throws ParamError if the
  // assignment does not satisfy the circuit.
  CycleWitness assignment_to_cycle(const Bits& inputs) const;

  // Hamiltonian cycle -> circuit input bits; nullopt on malformed cycles.
  std::optional<Bits> cycle_to_assignment(const CycleWitness& w) const;

  // internals (exposed for tests)
  struct Occurrence {
    int row = 0;
    int slot = 0;  // 1-based slot within the row
    bool positive = true;
  };
  std::vector<std::vector<int>> clauses;        // final CNF, literals +-var (1-based)
  std::vector<std::vector<Occurrence>> clause_occs;
  std::vector<int> row_var;    // row index -> CNF var
  std::vector<int> var_row;    // CNF var -> row index or -1
  std::vector<int> row_start;  // first node id of each row
  std::vector<int> row_len;
  std::vector<int> clause_node;
  int junction_count = 0;  // junction i has node id i
  int nvars = 0;
};

HcReduction circuit_to_hc(const BooleanCircuit& c, size_t gate_bound = 200000);

// Exhaustive satisfiability oracle for small circuits (test support).
std::optional<Bits> find_satisfying_bruteforce(const BooleanCircuit& c);

}  // namespace duet::np
