#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "duet/bits.hpp"

namespace duet::np {

struct HamiltonicityInstance {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // directed, no self-loops
};

struct CycleWitness {
  std::vector<int> order;  // visits every vertex once; wrap-around closes
};

void validate_instance(const HamiltonicityInstance& g);

// Dense adjacency, row-major v*v bits.
std::vector<uint8_t> adjacency_matrix(const HamiltonicityInstance& g);

bool check_cycle(const HamiltonicityInstance& g, const CycleWitness& w);

// Exhaustive search oracles; exponential and intended for small graphs.
std::optional<CycleWitness> find_cycle_bruteforce(const HamiltonicityInstance& g);
bool is_hamiltonian_bruteforce(const HamiltonicityInstance& g);

// Plant a random cycle, then add noise edges with the given probability.
HamiltonicityInstance random_hamiltonian_graph(int vertices, double extra_edge_prob, Rng& rng,
                                               CycleWitness* planted = nullptr);

// Encoding of a cycle as fixed-width vertex indices (ceil(log2 v) bits each).
size_t cycle_index_bits(int vertices);
Bits encode_cycle(const HamiltonicityInstance& g, const CycleWitness& w);
std::optional<CycleWitness> decode_cycle(const HamiltonicityInstance& g, const Bits& bits);

}  // namespace duet::np
