#include "symdyn/digraph.hpp"

#include <algorithm>
#include <deque>

#include "symdyn/error.hpp"

namespace symdyn {

TransitionGraph::TransitionGraph(const TransitionMatrix& a) : succ_(a.size()), pred_(a.size()) {
  const int p = static_cast<int>(a.size());
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      if (a(i, j)) {
        succ_[i].push_back(j);
        pred_[j].push_back(i);
      }
    }
  }
}

bool TransitionGraph::has_edge(int u, int v) const {
  return std::binary_search(succ_[u].begin(), succ_[u].end(), v);
}

namespace {

struct Tarjan {
  const TransitionGraph& g;
  std::vector<int> index, low, on_stack, stack;
  int counter = 0;
  std::vector<std::vector<int>> out;

  explicit Tarjan(const TransitionGraph& graph)
      : g(graph), index(graph.size(), -1), low(graph.size(), 0), on_stack(graph.size(), 0) {}

  // Iterative to keep deep chains off the call stack.
  void run(int root) {
    std::vector<std::pair<int, std::size_t>> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      const auto& succ = g.successors(v);
      if (next < succ.size()) {
        const int w = succ[next++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
      const int finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        const int parent = frames.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
};

// Shortest path from src to dst (exclusive of src), empty optional if none.
std::optional<std::vector<int>> bfs_path(const TransitionGraph& g, int src, int dst) {
  std::vector<int> parent(g.size(), -1);
  std::vector<char> seen(g.size(), 0);
  std::deque<int> queue;
  // A path of length >= 1 is required even when src == dst.
  for (int w : g.successors(src)) {
    if (!seen[w]) {
      seen[w] = 1;
      parent[w] = src;
      queue.push_back(w);
    }
  }
  while (!queue.empty() && !seen[dst]) {
    const int u = queue.front();
    queue.pop_front();
    for (int w : g.successors(u)) {
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = u;
        queue.push_back(w);
      }
    }
  }
  if (!seen[dst]) return std::nullopt;
  std::vector<int> path;
  int cur = dst;
  path.push_back(cur);
  cur = parent[cur];
  while (cur != src) {
    path.push_back(cur);
    cur = parent[cur];
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::vector<std::vector<int>> strongly_connected_components(const TransitionGraph& g) {
  Tarjan t(g);
  for (int v = 0; v < g.size(); ++v)
    if (t.index[v] == -1) t.run(v);
  // Tarjan emits sinks first.
  std::reverse(t.out.begin(), t.out.end());
  return t.out;
}

std::optional<std::vector<int>> find_full_cycle(const TransitionGraph& g) {
  if (g.size() == 0) return std::nullopt;
  std::vector<int> walk{0};
  std::vector<char> visited(g.size(), 0);
  visited[0] = 1;
  int cur = 0;
  for (int target = 1; target < g.size(); ++target) {
    if (visited[target]) continue;
    auto leg = bfs_path(g, cur, target);
    if (!leg) return std::nullopt;
    for (int v : *leg) {
      visited[v] = 1;
      walk.push_back(v);
    }
    cur = target;
  }
  auto back = bfs_path(g, cur, 0);
  if (!back) return std::nullopt;
  walk.insert(walk.end(), back->begin(), back->end());
  return walk;
}

bool has_full_cycle(const TransitionGraph& g) { return find_full_cycle(g).has_value(); }

std::vector<BigInt> matrix_power(const TransitionMatrix& a, int n) {
  if (n < 1) throw Error(ErrorCode::BadParams, "path length must be >= 1");
  const std::size_t p = a.size();
  std::vector<BigInt> m(p * p), next(p * p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) m[i * p + j] = a(i, j) ? 1 : 0;
  for (int step = 1; step < n; ++step) {
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        BigInt s = 0;
        for (std::size_t k = 0; k < p; ++k)
          if (a(k, j)) s += m[i * p + k];
        next[i * p + j] = std::move(s);
      }
    }
    m.swap(next);
  }
  return m;
}

BigInt count_paths(const TransitionMatrix& a, int i, int j, int n) {
  const int p = static_cast<int>(a.size());
  if (i < 0 || i >= p || j < 0 || j >= p) {
    throw Error(ErrorCode::SymbolOutOfRange, "vertex index outside 0..p-1");
  }
  return matrix_power(a, n)[static_cast<std::size_t>(i) * p + j];
}

BigInt power_norm(const TransitionMatrix& a, int n) {
  BigInt total = 0;
  for (const auto& v : matrix_power(a, n)) total += v;
  return total;
}

}  // namespace symdyn
