#include "liftshadow/incidence.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>

namespace liftshadow {

IncidenceMultigraph incidence_multigraph(const Structure& s) {
  IncidenceMultigraph g;
  g.elements = s.size();
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    const bool sym = s.signature()[r].symmetric;
    for (auto t : s.tuples(r)) {
      std::vector<Element> tuple(t.begin(), t.end());
      if (sym) {
        std::vector<Element> rev(tuple.rbegin(), tuple.rend());
        if (rev < tuple) continue;
      }
      g.blocks.push_back({r, std::move(tuple)});
    }
  }
  return g;
}

namespace {

struct Edge {
  std::size_t to;
  std::size_t id;
};

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

}  // namespace

std::optional<IncidenceCycle> shortest_cycle(const Structure& s) {
  const auto g = incidence_multigraph(s);
  const std::size_t n = g.elements;
  const std::size_t nodes = n + g.blocks.size();
  std::vector<std::vector<Edge>> adj(nodes);
  std::size_t next_id = 0;
  for (std::size_t b = 0; b < g.blocks.size(); ++b) {
    for (Element e : g.blocks[b].tuple) {
      adj[n + b].push_back({e, next_id});
      adj[e].push_back({n + b, next_id});
      ++next_id;
    }
  }

  std::size_t best_len = kNone;
  std::vector<std::size_t> best_nodes;
  std::vector<std::size_t> dist(nodes), parent(nodes), parent_edge(nodes);
  // Every cycle passes through an element node, so element roots suffice.
  for (std::size_t root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), kNone);
    dist[root] = 0;
    parent[root] = kNone;
    parent_edge[root] = kNone;
    std::queue<std::size_t> q;
    q.push(root);
    while (!q.empty()) {
      const std::size_t x = q.front();
      q.pop();
      if (2 * dist[x] + 1 >= best_len) break;
      for (const auto& [y, id] : adj[x]) {
        if (id == parent_edge[x]) continue;
        if (dist[y] == kNone) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          parent_edge[y] = id;
          q.push(y);
        } else if (dist[y] + dist[x] + 1 < best_len) {
          // Closed walk through the root; strip the shared prefix.
          std::vector<std::size_t> px, py;
          for (std::size_t v = x; v != kNone; v = parent[v]) px.push_back(v);
          for (std::size_t v = y; v != kNone; v = parent[v]) py.push_back(v);
          while (px.size() > 1 && py.size() > 1 && px[px.size() - 2] == py[py.size() - 2]) {
            px.pop_back();
            py.pop_back();
          }
          // px and py now both end at the branching node.
          std::vector<std::size_t> cyc(px.rbegin(), px.rend());
          for (std::size_t i = 0; i + 1 < py.size(); ++i) cyc.push_back(py[i]);
          if (cyc.size() < best_len) {
            best_len = cyc.size();
            best_nodes = std::move(cyc);
          }
        }
      }
    }
  }
  if (best_len == kNone) return std::nullopt;

  // Rotate so the cycle starts at an element node.
  auto start = std::find_if(best_nodes.begin(), best_nodes.end(), [&](std::size_t v) { return v < n; });
  std::rotate(best_nodes.begin(), start, best_nodes.end());
  IncidenceCycle c;
  for (std::size_t v : best_nodes) {
    if (v < n)
      c.elements.push_back(static_cast<Element>(v));
    else
      c.blocks.push_back(g.blocks[v - n]);
  }
  return c;
}

IncidenceSummary incidence_analysis(const Structure& s) {
  IncidenceSummary out;
  if (auto c = shortest_cycle(s)) {
    out.girth = c->length();
    out.is_forest = false;
  }
  out.is_tree = out.is_forest && s.size() > 0 && component_elements(s).size() == 1;
  return out;
}

bool is_incidence_cycle(const Structure& s, const IncidenceCycle& c) {
  const std::size_t m = c.blocks.size();
  if (m == 0 || c.elements.size() != m) return false;
  const auto g = incidence_multigraph(s);
  std::set<Block> known(g.blocks.begin(), g.blocks.end());
  if (std::set<Block>(c.blocks.begin(), c.blocks.end()).size() != m) return false;
  if (std::set<Element>(c.elements.begin(), c.elements.end()).size() != m) return false;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& b = c.blocks[i];
    if (!known.count(b)) return false;
    const Element from = c.elements[i];
    const Element to = c.elements[(i + 1) % m];
    const auto occurrences = [&](Element e) { return std::count(b.tuple.begin(), b.tuple.end(), e); };
    if (from == to) {
      if (occurrences(from) < 2) return false;
    } else if (occurrences(from) < 1 || occurrences(to) < 1) {
      return false;
    }
  }
  return true;
}

}  // namespace liftshadow
