#include "support.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "cactus/closure.hpp"
#include "cactus/json_io.hpp"
#include "cactus/realize.hpp"

namespace cactus::testing {

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

template <class T>
T const& pick(Rng& rng, std::vector<T> const& v) {
  return v[uniform(rng, 0, v.size() - 1)];
}

}  // namespace

Generator random_generator(Rng& rng, int n) {
  int p = static_cast<int>(uniform(rng, 1, static_cast<std::size_t>(n - 1)));
  int q = static_cast<int>(uniform(rng, static_cast<std::size_t>(p + 1), static_cast<std::size_t>(n)));
  return Generator(p, q, n);
}

CactusWord random_word(Rng& rng, int min_n, int max_n, std::size_t max_len) {
  int const n = static_cast<int>(uniform(rng, static_cast<std::size_t>(min_n),
                                         static_cast<std::size_t>(max_n)));
  std::vector<Generator> letters;
  auto const len = n < 2 ? 0 : uniform(rng, 0, max_len);
  for (std::size_t i = 0; i < len; ++i) letters.push_back(random_generator(rng, n));
  return CactusWord(n, std::move(letters));
}

std::vector<OrientedCyclicOrder> all_orders(std::vector<PointId> const& branches) {
  std::vector<OrientedCyclicOrder> out;
  if (branches.empty()) return out;
  std::vector<PointId> rest(branches.begin() + 1, branches.end());
  std::sort(rest.begin(), rest.end());
  auto const k = branches.size();
  do {
    for (std::size_t signs = 0; signs < (std::size_t{1} << (k - 1)); ++signs) {
      std::vector<Endpoint> half{{branches[0], -1}};
      for (std::size_t i = 0; i < rest.size(); ++i) {
        half.push_back({rest[i], (signs >> i) & 1 ? +1 : -1});
      }
      auto seq = half;
      for (auto const& e : half) seq.push_back(e.negated());
      out.emplace_back(std::move(seq));
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

namespace {

void circle_shapes(std::size_t remaining, std::size_t largest, std::vector<std::size_t>& cur,
                   std::vector<std::vector<std::size_t>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t s = std::min(remaining, largest); s >= 1; --s) {
    cur.push_back(s);
    circle_shapes(remaining - s, s, cur, out);
    cur.pop_back();
  }
}

// Partitions of {0..m-1} into blocks of size >= 2.
void set_partitions(std::vector<PointId> const& left, std::vector<std::vector<PointId>>& cur,
                    std::vector<std::vector<std::vector<PointId>>>& out) {
  if (left.empty()) {
    out.push_back(cur);
    return;
  }
  PointId const first = left[0];
  std::vector<PointId> others(left.begin() + 1, left.end());
  auto const r = others.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << r); ++mask) {
    std::vector<PointId> block{first};
    std::vector<PointId> rest;
    for (std::size_t i = 0; i < r; ++i) {
      ((mask >> i) & 1 ? block : rest).push_back(others[i]);
    }
    if (rest.size() == 1) continue;
    cur.push_back(block);
    set_partitions(rest, cur, out);
    cur.pop_back();
  }
}

GaussDiagram build(std::vector<std::size_t> const& shape, std::size_t loops,
                   std::vector<std::vector<PointId>> const& blocks,
                   std::vector<OrientedCyclicOrder> const& orders) {
  GaussDiagram d;
  PointId next = 0;
  for (auto s : shape) {
    auto& c = d.circles.emplace_back();
    for (std::size_t i = 0; i < s; ++i) c.push_back(next++);
  }
  for (std::size_t i = 0; i < loops; ++i) d.circles.emplace_back();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (auto p : blocks[b]) d.labels.emplace(p, static_cast<Label>(b));
    d.orders.emplace(static_cast<Label>(b), orders[b]);
  }
  return d;
}

}  // namespace

std::vector<GaussDiagram> enumerate_diagrams(std::size_t max_points, std::size_t max_free_loops,
                                             bool realizable_only, bool deduplicate) {
  std::vector<GaussDiagram> out;
  std::unordered_set<std::string> seen;
  for (std::size_t m = 0; m <= max_points; ++m) {
    std::vector<std::vector<std::size_t>> shapes;
    std::vector<std::size_t> cur;
    circle_shapes(m, m, cur, shapes);
    std::vector<PointId> all(m);
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::vector<std::vector<PointId>>> partitions;
    std::vector<std::vector<PointId>> blocks;
    set_partitions(all, blocks, partitions);
    for (auto const& shape : shapes) {
      for (std::size_t loops = (m == 0 ? 1 : 0); loops <= max_free_loops; ++loops) {
        for (auto const& partition : partitions) {
          std::vector<std::vector<OrientedCyclicOrder>> choices;
          for (auto const& b : partition) choices.push_back(all_orders(b));
          std::vector<std::size_t> pick(partition.size(), 0);
          for (;;) {
            std::vector<OrientedCyclicOrder> orders;
            for (std::size_t i = 0; i < partition.size(); ++i) orders.push_back(choices[i][pick[i]]);
            auto d = build(shape, loops, partition, orders);
            if (!realizable_only || is_realizable(d)) {
              if (!deduplicate || seen.insert(canonical_form(d)).second) out.push_back(std::move(d));
            }
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
            if (i == pick.size()) break;
          }
        }
      }
    }
  }
  return out;
}

namespace {

std::vector<std::vector<PointId>> rotations_sorted(std::vector<std::vector<PointId>> circles) {
  for (auto& c : circles) {
    if (!c.empty()) std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
  }
  std::sort(circles.begin(), circles.end());
  return circles;
}

}  // namespace

bool isomorphic(GaussDiagram const& a, GaussDiagram const& b) {
  if (a.point_count() != b.point_count() || a.circles.size() != b.circles.size() ||
      a.orders.size() != b.orders.size()) {
    return false;
  }
  std::vector<PointId> pa;
  std::vector<PointId> pb;
  for (auto const& [p, l] : a.labels) pa.push_back(p);
  for (auto const& [p, l] : b.labels) pb.push_back(p);
  auto const target = rotations_sorted(b.circles);
  do {
    std::map<PointId, PointId> f;
    for (std::size_t i = 0; i < pa.size(); ++i) f[pa[i]] = pb[i];
    auto circles = a.circles;
    for (auto& c : circles) {
      for (auto& p : c) p = f.at(p);
    }
    if (rotations_sorted(circles) != target) continue;
    std::map<Label, Label> g;
    bool ok = true;
    for (auto const& [p, l] : a.labels) {
      auto [it, fresh] = g.emplace(l, b.labels.at(f.at(p)));
      if (!fresh && it->second != b.labels.at(f.at(p))) ok = false;
    }
    if (!ok || g.size() != b.orders.size()) continue;
    for (auto const& [l, o] : a.orders) {
      std::vector<Endpoint> seq;
      for (auto const& e : o.sequence()) seq.push_back({f.at(e.point), e.sign});
      if (!OrientedCyclicOrder(std::move(seq)).same_cycle(b.orders.at(g.at(l)))) ok = false;
    }
    if (ok) return true;
  } while (std::next_permutation(pb.begin(), pb.end()));
  return false;
}

namespace {

GaussDiagram random_shape(Rng& rng, std::size_t max_points, std::size_t max_block) {
  std::size_t m = uniform(rng, 0, max_points);
  if (m == 1) m = 2;
  std::vector<std::size_t> shape;
  std::size_t left = m;
  while (left > 0) {
    auto s = uniform(rng, 1, left);
    shape.push_back(s);
    left -= s;
  }
  std::size_t loops = (m == 0 || coin(rng, 0.1)) ? 1 : 0;
  std::vector<PointId> pts(m);
  std::iota(pts.begin(), pts.end(), 0);
  std::shuffle(pts.begin(), pts.end(), rng);
  std::vector<std::vector<PointId>> blocks;
  std::size_t at = 0;
  while (at < m) {
    auto const remaining = m - at;
    std::size_t size = remaining;
    if (remaining > 3) {
      size = uniform(rng, 2, std::min(max_block, remaining));
      if (remaining - size == 1) size = remaining - 2 >= 2 ? size - 1 : remaining;
    }
    size = std::min(size, remaining);
    blocks.emplace_back(pts.begin() + static_cast<std::ptrdiff_t>(at),
                        pts.begin() + static_cast<std::ptrdiff_t>(at + size));
    at += size;
  }
  std::vector<OrientedCyclicOrder> orders;
  for (auto& b : blocks) {
    std::sort(b.begin(), b.end());
    std::vector<PointId> rest(b.begin() + 1, b.end());
    std::shuffle(rest.begin(), rest.end(), rng);
    std::vector<Endpoint> half{{b[0], -1}};
    for (auto p : rest) half.push_back({p, coin(rng) ? 1 : -1});
    auto seq = half;
    for (auto const& e : half) seq.push_back(e.negated());
    orders.emplace_back(std::move(seq));
  }
  return build(shape, loops, blocks, orders);
}

}  // namespace

GaussDiagram random_diagram(Rng& rng, std::size_t max_points) {
  return random_shape(rng, max_points, max_points);
}

GaussDiagram random_realizable_diagram(Rng& rng, std::size_t max_points) {
  for (int attempt = 0; attempt < 2000; ++attempt) {
    auto d = random_diagram(rng, max_points);
    if (is_realizable(d)) return d;
  }
  for (;;) {
    auto d = close(random_word(rng, 2, 4, 3));
    if (d.point_count() <= max_points) return d;
  }
}

GaussDiagram random_realizable_doodle(Rng& rng, std::size_t max_points) {
  auto base = [&](std::size_t limit) {
    for (int attempt = 0; attempt < 2000; ++attempt) {
      auto d = random_shape(rng, limit, 2);
      if (is_doodle(d) && is_realizable(d)) return d;
    }
    return figure_eight();
  };
  if (max_points < 6 || coin(rng, 0.4)) return base(max_points);
  // Add a removable pair so that reduction has work to do.
  auto d = base(max_points - 4);
  auto creations = phi_creations(d, 2);
  std::shuffle(creations.begin(), creations.end(), rng);
  for (auto const& c : creations) {
    auto r = apply_phi(d, c);
    if (is_realizable(r)) return r;
  }
  return d;
}

std::vector<PhiDescriptor> phi_creations(GaussDiagram const& d, std::size_t n) {
  std::vector<std::pair<std::size_t, std::optional<PointId>>> gaps;
  for (std::size_t c = 0; c < d.circles.size(); ++c) {
    if (d.circles[c].empty()) gaps.emplace_back(c, std::nullopt);
    for (auto p : d.circles[c]) gaps.emplace_back(c, p);
  }
  std::vector<PhiDescriptor> out;
  if (gaps.empty()) return out;
  PointId const base = d.fresh_point();
  Label const la = d.fresh_label();
  std::vector<PointId> a_points(n);
  std::vector<std::pair<PointId, PointId>> pairing;
  for (std::size_t i = 0; i < n; ++i) {
    a_points[i] = base + static_cast<PointId>(2 * i);
    pairing.emplace_back(a_points[i], a_points[i] + 1);
  }
  auto const orders_a = all_orders(a_points);
  std::map<PointId, PointId> to_b(pairing.begin(), pairing.end());
  std::vector<std::size_t> choice(n, 0);
  std::function<void(std::size_t, std::size_t)> place = [&](std::size_t i, std::size_t from) {
    if (i == n) {
      for (std::size_t flips = 0; flips < (std::size_t{1} << n); ++flips) {
        std::vector<Insertion> insertions;
        for (std::size_t j = 0; j < n; ++j) {
          auto const& [c, after] = gaps[choice[j]];
          std::vector<PointId> pair{pairing[j].first, pairing[j].second};
          if ((flips >> j) & 1) std::swap(pair[0], pair[1]);
          if (!insertions.empty() && insertions.back().circle == c && insertions.back().after == after) {
            insertions.back().points.insert(insertions.back().points.end(), pair.begin(), pair.end());
          } else {
            insertions.push_back({c, after, pair});
          }
        }
        for (auto const& oa : orders_a) {
          std::vector<Endpoint> seq;
          for (auto const& e : oa.sequence()) seq.push_back({to_b.at(e.point), e.sign});
          PhiDescriptor m{la, la + 1, pairing, PhiDirection::create, insertions, oa,
                          OrientedCyclicOrder(std::move(seq)).reversed()};
          try {
            apply_phi(d, m);
            out.push_back(std::move(m));
          } catch (std::invalid_argument const&) {
          }
        }
      }
      return;
    }
    for (std::size_t g = from; g < gaps.size(); ++g) {
      choice[i] = g;
      place(i + 1, g);
    }
  };
  place(0, 0);
  return out;
}

MoveGraph bounded_move_graph(GaussDiagram const& d, std::size_t extra_crossings,
                             std::size_t max_creation_size, std::size_t max_nodes) {
  MoveGraph g;
  std::unordered_set<std::string> seen;
  auto const bound = crossing_count(d) + extra_crossings;
  auto visit = [&](GaussDiagram x) {
    auto key = canonical_form(x);
    if (!seen.insert(key).second) return;
    if (g.nodes.size() >= max_nodes) throw BudgetExceeded(max_nodes);
    g.nodes.push_back(std::move(x));
    g.keys.push_back(std::move(key));
  };
  visit(d);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    auto const cur = g.nodes[i];
    for (auto const& m : enumerate_psi_moves(cur)) visit(apply_psi(cur, m));
    for (auto const& m : enumerate_phi_annihilations(cur)) visit(apply_phi(cur, m));
    if (crossing_count(cur) + 2 > bound) continue;
    for (std::size_t n = 2; n <= max_creation_size; ++n) {
      for (auto const& m : phi_creations(cur, n)) {
        auto r = apply_phi(cur, m);
        if (is_realizable(r)) visit(std::move(r));
      }
    }
  }
  return g;
}

GaussDiagram random_minimize(GaussDiagram const& d, Rng& rng) {
  GaussDiagram cur = d;
  for (;;) {
    auto const orbit = psi_orbit(cur);
    std::vector<std::pair<std::size_t, PhiDescriptor>> options;
    for (std::size_t i = 0; i < orbit.members.size(); ++i) {
      for (auto& m : enumerate_phi_annihilations(orbit.members[i])) options.emplace_back(i, m);
    }
    if (options.empty()) return cur;
    auto const& [i, m] = pick(rng, options);
    cur = apply_phi(orbit.members[i], m);
  }
}

std::vector<int> perm_by_positions(CactusWord const& w) {
  std::vector<int> at(static_cast<std::size_t>(w.n()));
  std::iota(at.begin(), at.end(), 1);
  for (auto const& g : w.letters()) {
    std::reverse(at.begin() + g.p() - 1, at.begin() + g.q());
  }
  std::vector<int> images(at.size());
  for (std::size_t pos = 0; pos < at.size(); ++pos) {
    images[static_cast<std::size_t>(at[pos] - 1)] = static_cast<int>(pos + 1);
  }
  return images;
}

std::size_t cycle_count(std::vector<int> const& images) {
  std::vector<bool> seen(images.size(), false);
  std::size_t count = 0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (seen[i]) continue;
    ++count;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images[j] - 1)) seen[j] = true;
  }
  return count;
}

std::size_t face_count(GaussDiagram const& d) {
  std::map<PointId, std::pair<PointId, PointId>> around;  // prev, next
  for (auto const& c : d.circles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      around[c[i]] = {c[(i + c.size() - 1) % c.size()], c[(i + 1) % c.size()]};
    }
  }
  // A dart leaves a singular point along a branch endpoint; following it
  // reaches the opposite endpoint of the neighbouring point on the circle.
  auto arrive = [&](Endpoint e) {
    return e.sign > 0 ? Endpoint{around.at(e.point).second, -1}
                      : Endpoint{around.at(e.point).first, +1};
  };
  auto turn = [&](Endpoint e) {
    auto const& o = d.orders.at(d.labels.at(e.point));
    return o[*o.position(e) + 1];
  };
  std::set<Endpoint> used;
  std::size_t count = 0;
  for (auto const& [l, o] : d.orders) {
    for (auto const& start : o.sequence()) {
      if (used.contains(start)) continue;
      ++count;
      for (Endpoint e = start; used.insert(e).second;) e = turn(arrive(e));
    }
  }
  return count;
}

bool connected(GaussDiagram const& d) {
  if (d.circles.size() == 1) return true;
  std::vector<std::size_t> parent(d.circles.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = root(parent[x]);
  };
  std::map<Label, std::size_t> first_circle;
  for (std::size_t c = 0; c < d.circles.size(); ++c) {
    for (auto p : d.circles[c]) {
      auto [it, fresh] = first_circle.emplace(d.labels.at(p), c);
      if (!fresh) parent[root(c)] = root(it->second);
    }
  }
  for (std::size_t c = 1; c < d.circles.size(); ++c) {
    if (root(c) != root(0)) return false;
  }
  return true;
}

namespace {

GaussDiagram peak_base(Rng& rng, PeakCase wanted) {
  static std::vector<std::string> const words{
      "n=2 s(1,2)",           "n=3 s(1,3)",           "n=3 s(1,3) s(1,2)",
      "n=3 s(1,2) s(2,3)",    "n=2 s(1,2) s(1,2)",    "n=3 s(1,3) s(1,3)",
      "n=3 s(1,3) s(2,3)",    "n=3 s(1,2) s(1,2) s(1,3)", "n=4 s(1,3) s(2,4)",
      "n=2",                  "n=3 s(2,3) s(1,3) s(1,2)"};
  if (wanted != PeakCase::disjoint && coin(rng, 0.3)) {
    return random_realizable_diagram(rng, 4);
  }
  return close(parse_word(pick(rng, words)));
}

}  // namespace

std::optional<MoveSequence> random_peak(Rng& rng, PeakCase wanted, std::size_t attempts) {
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    auto const d0 = peak_base(rng, wanted);
    auto const n = (d0.point_count() <= 4 && coin(rng, 0.3)) ? 3 : 2;
    auto creations = phi_creations(d0, static_cast<std::size_t>(n));
    if (creations.empty()) continue;
    auto const& cre = pick(rng, creations);
    auto d1 = apply_phi(d0, cre);
    if (!is_realizable(d1)) continue;
    MoveSequence seq{d0, {{cre, d1, canonical_form(d1)}}};
    auto cur = d1;
    auto const walk = uniform(rng, 0, 3);
    for (std::size_t i = 0; i < walk; ++i) {
      auto moves = enumerate_psi_moves(cur);
      if (moves.empty()) break;
      auto const& m = pick(rng, moves);
      cur = apply_psi(cur, m);
      seq.steps.push_back({m, cur, canonical_form(cur)});
    }
    auto anns = enumerate_phi_annihilations(cur);
    std::shuffle(anns.begin(), anns.end(), rng);
    for (auto const& a : anns) {
      auto end = apply_phi(cur, a);
      auto candidate = seq;
      candidate.steps.push_back({a, end, canonical_form(end)});
      if (classify_peak(candidate) == wanted) return candidate;
    }
  }
  return std::nullopt;
}

std::vector<std::pair<std::string, GaussDiagram>> load_corpus() {
  std::vector<std::filesystem::path> files;
  for (auto const& entry : std::filesystem::directory_iterator(CACTUS_CORPUS_DIR)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::pair<std::string, GaussDiagram>> out;
  for (auto const& f : files) {
    std::ifstream in(f);
    std::stringstream text;
    text << in.rdbuf();
    out.emplace_back(f.stem().string(), parse_diagram(text.str()));
  }
  return out;
}

}  // namespace cactus::testing
