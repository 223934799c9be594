#include "cactus/realize.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

namespace cactus {

RibbonGraph ribbon_graph(GaussDiagram const& d) {
  require_valid(d);
  RibbonGraph g;
  std::map<Endpoint, std::size_t> id;
  for (auto const& [label, order] : d.orders) {
    std::size_t const v = g.vertex_labels.size();
    g.vertex_labels.push_back(label);
    std::size_t const first = g.half_edges.size();
    auto const& seq = order.sequence();
    for (std::size_t i = 0; i < seq.size(); ++i) {
      id.emplace(seq[i], g.half_edges.size());
      g.half_edges.push_back(seq[i]);
      g.vertex_of.push_back(v);
      g.rotation_next.push_back(first + (i + 1) % seq.size());
    }
  }
  g.twin.assign(g.half_edges.size(), 0);
  for (auto const& circle : d.circles) {
    if (circle.empty()) {
      ++g.free_loops;
      continue;
    }
    for (std::size_t i = 0; i < circle.size(); ++i) {
      auto const out = id.at({circle[i], +1});
      auto const in = id.at({circle[(i + 1) % circle.size()], -1});
      g.twin[out] = in;
      g.twin[in] = out;
      ++g.edge_count;
    }
  }
  return g;
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

FaceStructure faces(RibbonGraph const& g) {
  FaceStructure fs;
  fs.vertices = g.vertex_count();
  fs.edges = g.edge_count;
  auto const h_count = g.half_edges.size();
  // Face permutation: leave along the arc at h, arrive at twin(h), then turn
  // to the next half-edge counterclockwise.
  std::vector<bool> seen(h_count, false);
  std::vector<std::size_t> face_of(h_count, 0);
  for (std::size_t start = 0; start < h_count; ++start) {
    if (seen[start]) continue;
    auto& walk = fs.faces.emplace_back();
    for (std::size_t h = start; !seen[h]; h = g.rotation_next[g.twin[h]]) {
      seen[h] = true;
      face_of[h] = fs.faces.size() - 1;
      walk.push_back(h);
    }
  }
  std::vector<std::size_t> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t h = 0; h < h_count; ++h) {
    auto a = find_root(parent, g.vertex_of[h]);
    auto b = find_root(parent, g.vertex_of[g.twin[h]]);
    if (a != b) parent[a] = b;
  }
  std::map<std::size_t, ComponentSummary> by_root;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) ++by_root[find_root(parent, v)].vertices;
  for (std::size_t h = 0; h < h_count; ++h) {
    auto& c = by_root[find_root(parent, g.vertex_of[h])];
    // Each arc has one outgoing (+1) half-edge.
    if (g.half_edges[h].sign > 0) ++c.edges;
  }
  for (auto const& walk : fs.faces) {
    ++by_root[find_root(parent, g.vertex_of[walk.front()])].faces;
  }
  for (auto const& [root, summary] : by_root) fs.components.push_back(summary);
  for (std::size_t i = 0; i < g.free_loops; ++i) {
    fs.components.push_back(ComponentSummary{0, 0, 2, true});
  }
  return fs;
}

bool is_realizable(GaussDiagram const& d) {
  auto const fs = faces(ribbon_graph(d));
  for (auto const& c : fs.components) {
    if (c.euler() != 2) return false;
  }
  return true;
}

bool check_lemma_preservation(GaussDiagram const& d, MoveDescriptor const& m) {
  if (auto const* phi = std::get_if<PhiDescriptor>(&m);
      phi != nullptr && phi->direction == PhiDirection::create) {
    throw std::invalid_argument("creation moves may break realizability; not checked");
  }
  if (std::holds_alternative<RenameDescriptor>(m)) {
    throw std::invalid_argument("only Psi moves and Phi annihilations are checked");
  }
  if (!is_realizable(d)) throw std::invalid_argument("diagram is not realizable");
  return is_realizable(apply_move(d, m));
}

}  // namespace cactus
