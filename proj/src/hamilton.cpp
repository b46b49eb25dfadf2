#include "duet/hamilton.hpp"

#include <algorithm>
#include <numeric>

namespace duet::np {

void validate_instance(const HamiltonicityInstance& g) {
  if (g.vertices <= 0) throw ParamError("graph: vertex count");
  for (auto [u, v] : g.edges) {
    if (u == v) throw ParamError("graph: self-loop");
    if (u < 0 || v < 0 || u >= g.vertices || v >= g.vertices)
      throw ParamError("graph: edge endpoint out of range");
  }
}

std::vector<uint8_t> adjacency_matrix(const HamiltonicityInstance& g) {
  std::vector<uint8_t> adj(static_cast<size_t>(g.vertices) * g.vertices, 0);
  for (auto [u, v] : g.edges) adj[static_cast<size_t>(u) * g.vertices + v] = 1;
  return adj;
}

bool check_cycle(const HamiltonicityInstance& g, const CycleWitness& w) {
  if (static_cast<int>(w.order.size()) != g.vertices) return false;
  std::vector<uint8_t> seen(g.vertices, 0);
  for (int v : w.order) {
    if (v < 0 || v >= g.vertices || seen[v]) return false;
    seen[v] = 1;
  }
  auto adj = adjacency_matrix(g);
  for (size_t i = 0; i < w.order.size(); ++i) {
    int u = w.order[i];
    int v = w.order[(i + 1) % w.order.size()];
    if (!adj[static_cast<size_t>(u) * g.vertices + v]) return false;
  }
  return true;
}

static bool dfs_cycle(const std::vector<uint8_t>& adj, int n, std::vector<int>& path,
                      std::vector<uint8_t>& used) {
  if (static_cast<int>(path.size()) == n)
    return adj[static_cast<size_t>(path.back()) * n + path.front()] != 0;
  for (int v = 0; v < n; ++v) {
    if (used[v] || !adj[static_cast<size_t>(path.back()) * n + v]) continue;
    used[v] = 1;
    path.push_back(v);
    if (dfs_cycle(adj, n, path, used)) return true;
    path.pop_back();
    used[v] = 0;
  }
  return false;
}

std::optional<CycleWitness> find_cycle_bruteforce(const HamiltonicityInstance& g) {
  validate_instance(g);
  if (g.vertices == 1) return std::nullopt;  // no self-loops, so no 1-cycle
  auto adj = adjacency_matrix(g);
  std::vector<int> path{0};
  std::vector<uint8_t> used(g.vertices, 0);
  used[0] = 1;
  if (dfs_cycle(adj, g.vertices, path, used)) return CycleWitness{path};
  return std::nullopt;
}

bool is_hamiltonian_bruteforce(const HamiltonicityInstance& g) {
  return find_cycle_bruteforce(g).has_value();
}

HamiltonicityInstance random_hamiltonian_graph(int vertices, double extra_edge_prob, Rng& rng,
                                               CycleWitness* planted) {
  if (vertices < 2) throw ParamError("random graph: need at least 2 vertices");
  std::vector<int> perm(vertices);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = vertices - 1; i > 0; --i)
    std::swap(perm[i], perm[rng.below(static_cast<uint64_t>(i) + 1)]);
  HamiltonicityInstance g;
  g.vertices = vertices;
  std::vector<uint8_t> adj(static_cast<size_t>(vertices) * vertices, 0);
  for (int i = 0; i < vertices; ++i) {
    int u = perm[i], v = perm[(i + 1) % vertices];
    adj[static_cast<size_t>(u) * vertices + v] = 1;
  }
  uint64_t threshold = static_cast<uint64_t>(extra_edge_prob * 0x100000000ULL);
  for (int u = 0; u < vertices; ++u)
    for (int v = 0; v < vertices; ++v) {
      if (u == v) continue;
      if ((rng.next_u64() & 0xffffffffu) < threshold) adj[static_cast<size_t>(u) * vertices + v] = 1;
    }
  for (int u = 0; u < vertices; ++u)
    for (int v = 0; v < vertices; ++v)
      if (adj[static_cast<size_t>(u) * vertices + v]) g.edges.emplace_back(u, v);
  if (planted) planted->order = perm;
  return g;
}

size_t cycle_index_bits(int vertices) {
  size_t b = 1;
  while ((1 << b) < vertices) ++b;
  return b;
}

Bits encode_cycle(const HamiltonicityInstance& g, const CycleWitness& w) {
  size_t b = cycle_index_bits(g.vertices);
  Bits out;
  out.reserve(b * w.order.size());
  for (int v : w.order) {
    Bits idx = u64_to_bits(static_cast<uint64_t>(v), b);
    out.insert(out.end(), idx.begin(), idx.end());
  }
  return out;
}

std::optional<CycleWitness> decode_cycle(const HamiltonicityInstance& g, const Bits& bits) {
  size_t b = cycle_index_bits(g.vertices);
  if (bits.size() != b * static_cast<size_t>(g.vertices)) return std::nullopt;
  CycleWitness w;
  for (int i = 0; i < g.vertices; ++i) {
    Bits idx(bits.begin() + static_cast<long>(i * b), bits.begin() + static_cast<long>((i + 1) * b));
    uint64_t v = bits_to_u64(idx);
    if (v >= static_cast<uint64_t>(g.vertices)) return std::nullopt;
    w.order.push_back(static_cast<int>(v));
  }
  return w;
}

}  // namespace duet::np
