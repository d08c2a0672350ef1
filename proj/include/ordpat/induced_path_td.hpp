#pragma once

// Exact longest induced path by dynamic programming over a tree decomposition
// obtained from a greedy minimum-degree elimination order. A vertex set S induces
// a path iff G[S] is connected, acyclic and has maximum degree 2; the DP tracks,
// for the bag vertices, membership in S, degree inside G[S] so far, and which
// bag vertices are joined by already-processed parts of G[S].

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "ordpat/induced_path.hpp"
#include "ordpat/ordered_graph.hpp"

namespace ordpat {

struct EliminationTree {
  std::vector<Vertex> order;                 // elimination order
  std::vector<std::vector<Vertex>> later;    // later[v]: neighbours of v in the filled graph eliminated after v (sorted)
  std::vector<Vertex> parent;                // earliest-eliminated vertex of later[v], or 0
  Vertex width = 0;                          // max |later[v]|
};

/// Elimination along a fixed order: each vertex's later neighbours in the filled
/// graph become a clique.
inline EliminationTree eliminate_in_order(const OrderedGraph& g, const std::vector<Vertex>& order) {
  const Vertex n = g.order();
  if (static_cast<Vertex>(order.size()) != n) throw invalid_input("elimination order must list every vertex once");
  EliminationTree et;
  et.order = order;
  std::vector<Vertex> rank(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] < 1 || order[i] > n || rank[order[i]]) throw invalid_input("elimination order must list every vertex once");
    rank[order[i]] = static_cast<Vertex>(i + 1);
  }
  std::vector<std::set<Vertex>> adj(static_cast<std::size_t>(n) + 1);
  for (Vertex v = 1; v <= n; ++v) adj[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
  et.later.assign(static_cast<std::size_t>(n) + 1, {});
  et.parent.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex v : order) {
    std::vector<Vertex> nb;
    for (Vertex u : adj[v])
      if (rank[u] > rank[v]) nb.push_back(u);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        adj[nb[i]].insert(nb[j]);
        adj[nb[j]].insert(nb[i]);
      }
    et.width = std::max(et.width, static_cast<Vertex>(nb.size()));
    Vertex best = 0;
    for (Vertex u : nb)
      if (best == 0 || rank[u] < rank[best]) best = u;
    et.parent[v] = best;
    et.later[v] = std::move(nb);
  }
  return et;
}

/// Greedy minimum-degree elimination with fill-in; ties broken by smallest vertex.
inline EliminationTree min_degree_elimination(const OrderedGraph& g) {
  const Vertex n = g.order();
  std::vector<std::set<Vertex>> adj(static_cast<std::size_t>(n) + 1);
  for (Vertex v = 1; v <= n; ++v) adj[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
  std::set<std::pair<std::size_t, Vertex>> queue;
  for (Vertex v = 1; v <= n; ++v) queue.insert({adj[v].size(), v});
  std::vector<Vertex> order;
  for (Vertex k = 1; k <= n; ++k) {
    const Vertex v = queue.begin()->second;
    queue.erase(queue.begin());
    order.push_back(v);
    std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
    for (Vertex u : nb) {
      queue.erase({adj[u].size(), u});
      adj[u].erase(v);
    }
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        adj[nb[i]].insert(nb[j]);
        adj[nb[j]].insert(nb[i]);
      }
    for (Vertex u : nb) queue.insert({adj[u].size(), u});
    adj[v].clear();
  }
  return eliminate_in_order(g, order);
}

namespace detail {

// A state byte per bag vertex: 0 = not in S, otherwise 1 + 32*deg + component.
// Two trailing bytes: the number of path ends already forgotten (a path has at
// most two), and the "done" flag (a complete path has already been closed off).
struct TdTable {
  struct Entry {
    std::int32_t value;    // forgotten vertices of S
    std::int32_t witness;  // arena node, -1 for none
  };
  std::vector<Vertex> vars;
  std::unordered_map<std::string, Entry> rows;
};

struct TdArena {
  struct Node {
    std::int32_t a, b;
    Vertex v;
  };
  std::vector<Node> nodes;
  std::int32_t leaf(std::int32_t prev, Vertex v) {
    nodes.push_back({prev, -1, v});
    return static_cast<std::int32_t>(nodes.size() - 1);
  }
  std::int32_t join(std::int32_t a, std::int32_t b) {
    if (a < 0) return b;
    if (b < 0) return a;
    nodes.push_back({a, b, 0});
    return static_cast<std::int32_t>(nodes.size() - 1);
  }
  std::vector<Vertex> collect(std::int32_t root) const {
    std::vector<Vertex> out;
    std::vector<std::int32_t> st;
    if (root >= 0) st.push_back(root);
    while (!st.empty()) {
      const auto& nd = nodes[st.back()];
      st.pop_back();
      if (nd.v) out.push_back(nd.v);
      if (nd.a >= 0) st.push_back(nd.a);
      if (nd.b >= 0) st.push_back(nd.b);
    }
    return out;
  }
};

inline bool in_s(char c) { return c != 0; }
inline int deg_of(char c) { return (static_cast<unsigned char>(c) - 1) / 32; }
inline int comp_of(char c) { return (static_cast<unsigned char>(c) - 1) % 32; }
inline char pack(int deg, int comp) { return static_cast<char>(1 + 32 * deg + comp); }

inline void canonicalize(std::string& s) {
  int map[64];
  std::fill(std::begin(map), std::end(map), -1);
  int next = 0;
  for (std::size_t i = 0; i + 2 < s.size(); ++i) {
    if (!in_s(s[i])) continue;
    int& m = map[comp_of(s[i])];
    if (m < 0) m = next++;
    s[i] = pack(deg_of(s[i]), m);
  }
}

inline void put(TdTable& t, std::string key, TdTable::Entry e) {
  canonicalize(key);
  auto [it, fresh] = t.rows.try_emplace(std::move(key), e);
  if (!fresh && it->second.value < e.value) it->second = e;
}

inline TdTable td_unit() {
  TdTable t;
  t.rows.emplace(std::string(2, '\0'), TdTable::Entry{0, -1});
  return t;
}

inline TdTable td_introduce(const TdTable& t, Vertex x) {
  TdTable out;
  out.vars = t.vars;
  const auto at = static_cast<std::size_t>(std::lower_bound(out.vars.begin(), out.vars.end(), x) - out.vars.begin());
  out.vars.insert(out.vars.begin() + static_cast<std::ptrdiff_t>(at), x);
  for (const auto& [key, e] : t.rows) {
    std::string k = key;
    k.insert(k.begin() + static_cast<std::ptrdiff_t>(at), '\0');
    put(out, k, e);
    if (key.back()) continue;
    k[at] = pack(0, 31);
    put(out, k, e);
  }
  return out;
}

inline TdTable td_edge(const TdTable& t, Vertex u, Vertex v) {
  const auto iu = static_cast<std::size_t>(std::lower_bound(t.vars.begin(), t.vars.end(), u) - t.vars.begin());
  const auto iv = static_cast<std::size_t>(std::lower_bound(t.vars.begin(), t.vars.end(), v) - t.vars.begin());
  TdTable out;
  out.vars = t.vars;
  for (const auto& [key, e] : t.rows) {
    if (!in_s(key[iu]) || !in_s(key[iv])) {
      put(out, key, e);
      continue;
    }
    const int du = deg_of(key[iu]), dv = deg_of(key[iv]);
    const int cu = comp_of(key[iu]), cv = comp_of(key[iv]);
    if (du == 2 || dv == 2 || cu == cv) continue;
    std::string k = key;
    for (std::size_t i = 0; i + 2 < k.size(); ++i)
      if (in_s(k[i]) && comp_of(k[i]) == cv) k[i] = pack(deg_of(k[i]), cu);
    k[iu] = pack(du + 1, cu);
    k[iv] = pack(dv + 1, cu);
    put(out, k, e);
  }
  return out;
}

inline TdTable td_forget(const TdTable& t, Vertex x, TdArena& arena) {
  const auto ix = static_cast<std::size_t>(std::lower_bound(t.vars.begin(), t.vars.end(), x) - t.vars.begin());
  TdTable out;
  out.vars = t.vars;
  out.vars.erase(out.vars.begin() + static_cast<std::ptrdiff_t>(ix));
  for (const auto& [key, e] : t.rows) {
    std::string k = key;
    k.erase(k.begin() + static_cast<std::ptrdiff_t>(ix));
    if (!in_s(key[ix])) {
      put(out, k, e);
      continue;
    }
    const int c = comp_of(key[ix]);
    const int ends = k[k.size() - 2] + (2 - std::min(deg_of(key[ix]), 2));
    if (ends > 2) continue;
    k[k.size() - 2] = static_cast<char>(ends);
    bool shared = false, other = false;
    for (std::size_t i = 0; i + 2 < key.size(); ++i) {
      if (i == ix || !in_s(key[i])) continue;
      other = true;
      if (comp_of(key[i]) == c) shared = true;
    }
    if (!shared) {
      if (other) continue;  // would leave a finished component beside an unfinished one
      k.back() = 1;
    }
    put(out, k, {e.value + 1, arena.leaf(e.witness, x)});
  }
  return out;
}

inline TdTable td_join(const TdTable& a, const TdTable& b, TdArena& arena) {
  TdTable out;
  std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(), std::back_inserter(out.vars));
  const std::size_t n = out.vars.size();
  std::vector<int> ia(n, -1), ib(n, -1);
  for (std::size_t i = 0, p = 0, q = 0; i < n; ++i) {
    if (p < a.vars.size() && a.vars[p] == out.vars[i]) ia[i] = static_cast<int>(p++);
    if (q < b.vars.size() && b.vars[q] == out.vars[i]) ib[i] = static_cast<int>(q++);
  }
  // Group b's rows by membership on the shared variables.
  auto signature = [&](const std::string& key, const std::vector<int>& idx) {
    std::string sig;
    for (std::size_t i = 0; i < n; ++i)
      if (ia[i] >= 0 && ib[i] >= 0) sig.push_back(in_s(key[idx[i]]) ? '1' : '0');
    return sig;
  };
  std::unordered_map<std::string, std::vector<const std::pair<const std::string, TdTable::Entry>*>> groups;
  for (const auto& row : b.rows) groups[signature(row.first, ib)].push_back(&row);

  std::vector<int> uf(64);
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  for (const auto& [ka, ea] : a.rows) {
    auto g = groups.find(signature(ka, ia));
    if (g == groups.end()) continue;
    for (const auto* rb : g->second) {
      const std::string& kb = rb->first;
      const auto& eb = rb->second;
      const bool da = ka.back(), db = kb.back();
      if (da && db) continue;
      const int ends = ka[ka.size() - 2] + kb[kb.size() - 2];
      if (ends > 2) continue;
      bool any_a = false, any_b = false;
      for (std::size_t i = 0; i + 2 < ka.size(); ++i) any_a |= in_s(ka[i]);
      for (std::size_t i = 0; i + 2 < kb.size(); ++i) any_b |= in_s(kb[i]);
      if ((da && (any_b || eb.value > 0)) || (db && (any_a || ea.value > 0))) continue;
      std::iota(uf.begin(), uf.end(), 0);
      std::string k(n + 2, '\0');
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        if (ia[i] >= 0 && ib[i] >= 0) {
          const char ca = ka[ia[i]], cb = kb[ib[i]];
          if (!in_s(ca)) continue;
          const int d = deg_of(ca) + deg_of(cb);
          if (d > 2) ok = false;
          const int x = find(comp_of(ca)), y = find(32 + comp_of(cb));
          if (x == y) ok = false;
          uf[x] = y;
        }
      }
      if (!ok) continue;
      std::vector<int> lab(n, -1);
      for (std::size_t i = 0; i < n; ++i) {
        const char ca = ia[i] >= 0 ? ka[ia[i]] : '\0';
        const char cb = ib[i] >= 0 ? kb[ib[i]] : '\0';
        if (in_s(ca)) lab[i] = find(comp_of(ca));
        else if (in_s(cb)) lab[i] = find(32 + comp_of(cb));
      }
      int remap[64];
      std::fill(std::begin(remap), std::end(remap), -1);
      int next = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (lab[i] < 0) continue;
        if (remap[lab[i]] < 0) remap[lab[i]] = next++;
        const char ca = ia[i] >= 0 ? ka[ia[i]] : '\0';
        const char cb = ib[i] >= 0 ? kb[ib[i]] : '\0';
        const int d = (in_s(ca) ? deg_of(ca) : 0) + (in_s(cb) ? deg_of(cb) : 0);
        k[i] = pack(d, remap[lab[i]]);
      }
      k[n] = static_cast<char>(ends);
      k.back() = da || db;
      put(out, std::move(k), {ea.value + eb.value, arena.join(ea.witness, eb.witness)});
    }
  }
  return out;
}

}  // namespace detail

struct TdInducedPathResult {
  Vertex length = 0;
  std::vector<Vertex> witness;  // path order, starting at its smaller endpoint
  Vertex width = 0;             // width of the decomposition used (max bag size - 1)
};

/// Exact longest induced path. Throws precondition_error if the decomposition
/// found has more than `max_width` + 1 vertices in some bag.
inline TdInducedPathResult longest_induced_path_treedec(const OrderedGraph& g, const EliminationTree& et,
                                                       Vertex max_width = 24) {
  TdInducedPathResult res;
  const Vertex n = g.order();
  if (n == 0) return res;
  res.width = et.width;
  if (et.width > max_width)
    throw precondition_error("tree decomposition width " + std::to_string(et.width) + " exceeds limit");

  detail::TdArena arena;
  std::vector<std::vector<Vertex>> children(static_cast<std::size_t>(n) + 1);
  for (Vertex v = 1; v <= n; ++v)
    if (et.parent[v]) children[et.parent[v]].push_back(v);
  std::vector<detail::TdTable> pending(static_cast<std::size_t>(n) + 1);
  std::vector<char> ready(static_cast<std::size_t>(n) + 1, 0);

  std::int32_t best_value = 0, best_witness = -1;
  for (Vertex v : et.order) {
    detail::TdTable t = detail::td_unit();
    for (Vertex c : children[v]) {
      t = detail::td_join(t, pending[c], arena);
      pending[c] = {};
    }
    std::vector<Vertex> bag = et.later[v];
    bag.push_back(v);
    for (Vertex x : bag)
      if (!std::binary_search(t.vars.begin(), t.vars.end(), x)) t = detail::td_introduce(t, x);
    for (Vertex u : et.later[v])
      if (g.adjacent(u, v)) t = detail::td_edge(t, u, v);
    t = detail::td_forget(t, v, arena);
    if (et.parent[v] == 0) {
      for (const auto& [key, e] : t.rows)
        if (e.value > best_value) best_value = e.value, best_witness = e.witness;
    } else {
      pending[v] = std::move(t);
    }
  }

  res.length = best_value;
  std::vector<Vertex> s = arena.collect(best_witness);
  std::sort(s.begin(), s.end());
  if (s.empty()) return res;
  // Walk G[S] from its smaller endpoint.
  auto deg_in = [&](Vertex v) {
    Vertex d = 0;
    for (Vertex u : g.neighbors(v)) d += std::binary_search(s.begin(), s.end(), u);
    return d;
  };
  Vertex start = s.front();
  for (Vertex v : s)
    if (deg_in(v) <= 1) {
      start = v;
      break;
    }
  Vertex prev = 0, cur = start;
  while (cur) {
    res.witness.push_back(cur);
    Vertex next = 0;
    for (Vertex u : g.neighbors(cur))
      if (u != prev && std::binary_search(s.begin(), s.end(), u)) next = u;
    prev = cur;
    cur = next;
    if (static_cast<std::size_t>(res.witness.size()) > s.size()) break;
  }
  if (res.witness.size() != s.size() || !is_induced_path(g, res.witness))
    throw construction_error("tree-decomposition witness is not an induced path");
  return res;
}

inline TdInducedPathResult longest_induced_path_treedec(const OrderedGraph& g, Vertex max_width = 24) {
  return longest_induced_path_treedec(g, min_degree_elimination(g), max_width);
}

}  // namespace ordpat
