#include "cactus/equivalence.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <thread>
#include <unordered_map>

#include "cactus/realize.hpp"

namespace cactus {

bool OrbitSummary::contains(std::string const& key) const {
  return std::binary_search(representatives.begin(), representatives.end(), key);
}

std::optional<std::string> check_sequence(MoveSequence const& seq) {
  GaussDiagram current = seq.start;
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    auto const& step = seq.steps[i];
    GaussDiagram next;
    try {
      next = apply_move(current, step.move);
    } catch (std::exception const& e) {
      return "step " + std::to_string(i) + " (" + describe(step.move) +
             ") does not apply: " + e.what();
    }
    if (!identical(next, step.result)) {
      return "step " + std::to_string(i) + " result differs from the recorded diagram";
    }
    current = std::move(next);
  }
  return std::nullopt;
}

namespace {

struct OrbitNode {
  GaussDiagram diagram;
  std::string key;
  std::size_t parent;
  std::optional<PsiDescriptor> via;
};

struct Expansion {
  PsiDescriptor move;
  GaussDiagram result;
  std::string key;
};

std::vector<Expansion> expand(GaussDiagram const& d, CanonicalOptions canon) {
  std::vector<Expansion> out;
  for (auto& m : enumerate_psi_moves(d)) {
    auto result = apply_psi(d, m);
    auto key = canonical_form(result, canon);
    out.push_back({std::move(m), std::move(result), std::move(key)});
  }
  return out;
}

// Breadth-first Psi closure. Each level is expanded (possibly in parallel)
// and merged in frontier order, so the node list is thread-count independent.
std::vector<OrbitNode> explore_orbit(GaussDiagram const& d, SearchOptions const& opts) {
  std::vector<OrbitNode> nodes;
  std::unordered_map<std::string, std::size_t> index;
  auto root_key = canonical_form(d, opts.canonical);
  index.emplace(root_key, 0);
  nodes.push_back({d, std::move(root_key), 0, std::nullopt});
  std::vector<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::vector<Expansion>> results(frontier.size());
    unsigned const workers =
        std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(frontier.size())));
    if (workers == 1) {
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        results[i] = expand(nodes[frontier[i]].diagram, opts.canonical);
      }
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
          for (std::size_t i = t; i < frontier.size(); i += workers) {
            results[i] = expand(nodes[frontier[i]].diagram, opts.canonical);
          }
        });
      }
      for (auto& th : pool) th.join();
    }
    std::vector<std::size_t> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (auto& e : results[i]) {
        if (index.contains(e.key)) continue;
        if (nodes.size() >= opts.max_nodes) throw BudgetExceeded(opts.max_nodes);
        index.emplace(e.key, nodes.size());
        next.push_back(nodes.size());
        nodes.push_back({std::move(e.result), std::move(e.key), frontier[i], std::move(e.move)});
      }
    }
    frontier = std::move(next);
  }
  return nodes;
}

// Psi steps leading from the root to node `target`.
std::vector<MoveStep> path_to(std::vector<OrbitNode> const& nodes, std::size_t target) {
  std::vector<MoveStep> steps;
  for (std::size_t i = target; i != 0; i = nodes[i].parent) {
    steps.push_back({*nodes[i].via, nodes[i].diagram, nodes[i].key});
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

std::vector<std::size_t> by_key(std::vector<OrbitNode> const& nodes) {
  std::vector<std::size_t> order(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return nodes[a].key < nodes[b].key; });
  return order;
}

}  // namespace

OrbitSummary psi_orbit(GaussDiagram const& d, SearchOptions const& opts) {
  auto nodes = explore_orbit(d, opts);
  OrbitSummary out;
  for (auto i : by_key(nodes)) {
    out.representatives.push_back(nodes[i].key);
    out.members.push_back(std::move(nodes[i].diagram));
  }
  return out;
}

bool is_minimal(GaussDiagram const& d, SearchOptions const& opts) {
  auto const nodes = explore_orbit(d, opts);
  return std::none_of(nodes.begin(), nodes.end(), [](OrbitNode const& n) {
    return !enumerate_phi_annihilations(n.diagram).empty();
  });
}

MoveSequence minimize_path(GaussDiagram const& d, SearchOptions const& opts) {
  require_valid(d);
  MoveSequence seq{d, {}};
  GaussDiagram current = d;
  for (;;) {
    auto const nodes = explore_orbit(current, opts);
    struct Candidate {
      std::string key;
      std::size_t node;
      PhiDescriptor move;
      GaussDiagram result;
    };
    std::optional<Candidate> best;
    for (auto i : by_key(nodes)) {
      for (auto& m : enumerate_phi_annihilations(nodes[i].diagram)) {
        auto result = apply_phi(nodes[i].diagram, m);
        auto key = canonical_form(result, opts.canonical);
        if (!best || key < best->key) {
          best = Candidate{std::move(key), i, std::move(m), std::move(result)};
        }
      }
    }
    if (!best) break;
    for (auto& step : path_to(nodes, best->node)) seq.steps.push_back(std::move(step));
    seq.steps.push_back({best->move, best->result, best->key});
    current = std::move(best->result);
  }
  return seq;
}

GaussDiagram minimize(GaussDiagram const& d, SearchOptions const& opts) {
  return minimize_path(d, opts).finish();
}

std::size_t min_crossing_number(GaussDiagram const& d, SearchOptions const& opts) {
  return crossing_count(minimize(d, opts));
}

std::string equivalence_key(GaussDiagram const& d, SearchOptions const& opts) {
  return psi_orbit(minimize(d, opts), opts).representatives.front();
}

bool equivalent(GaussDiagram const& d1, GaussDiagram const& d2, SearchOptions const& opts) {
  return equivalence_key(d1, opts) == equivalence_key(d2, opts);
}

namespace {

// First removable bigon between two double points, by label order.
std::optional<std::pair<Label, Label>> find_bigon(GaussDiagram const& d) {
  DiagramIndex idx(d);
  auto adjacent = [&](PointId a, PointId b) { return idx.next(a) == b || idx.prev(a) == b; };
  for (auto ia = d.orders.begin(); ia != d.orders.end(); ++ia) {
    auto const pa = d.points_of(ia->first);
    for (auto ib = std::next(ia); ib != d.orders.end(); ++ib) {
      auto const pb = d.points_of(ib->first);
      for (int swap = 0; swap < 2; ++swap) {
        PointId const b0 = pb[static_cast<std::size_t>(swap)];
        PointId const b1 = pb[static_cast<std::size_t>(1 - swap)];
        if (!adjacent(pa[0], b0) || !adjacent(pa[1], b1)) continue;
        // order(B) must be the reverse of order(A) with a_i renamed to b_i.
        std::vector<Endpoint> expected;
        for (auto it = ia->second.sequence().rbegin(); it != ia->second.sequence().rend();
             ++it) {
          expected.push_back({it->point == pa[0] ? b0 : b1, it->sign});
        }
        if (OrientedCyclicOrder(std::move(expected)).same_cycle(ib->second)) {
          return std::pair{ia->first, ib->first};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

GaussDiagram doodle_reduce(GaussDiagram const& d) {
  require_valid(d);
  if (!is_doodle(d)) throw std::invalid_argument("not a doodle: a singular set has size > 2");
  GaussDiagram current = d;
  while (auto bigon = find_bigon(current)) {
    Label const drop[] = {bigon->first, bigon->second};
    current = erase_sets(current, drop);
  }
  return current;
}

bool doodle_equivalent(GaussDiagram const& d1, GaussDiagram const& d2,
                       CanonicalOptions opts) {
  return canonical_form(doodle_reduce(d1), opts) == canonical_form(doodle_reduce(d2), opts);
}

// ---------------------------------------------------------------------------
// Peak flattening.

namespace {

struct PeakParts {
  std::vector<GaussDiagram> diagrams;  // D_0 .. D_r
  PhiDescriptor creation;
  PhiDescriptor annihilation;
};

PeakParts split_peak(MoveSequence const& seq) {
  auto const r = seq.steps.size();
  if (r < 2) throw std::invalid_argument("a peak needs a creation and an annihilation");
  auto const* first = std::get_if<PhiDescriptor>(&seq.steps.front().move);
  auto const* last = std::get_if<PhiDescriptor>(&seq.steps.back().move);
  if (first == nullptr || first->direction != PhiDirection::create) {
    throw std::invalid_argument("a peak must start with a Phi creation");
  }
  if (last == nullptr || last->direction != PhiDirection::annihilate) {
    throw std::invalid_argument("a peak must end with a Phi annihilation");
  }
  for (std::size_t i = 1; i + 1 < r; ++i) {
    if (!std::holds_alternative<PsiDescriptor>(seq.steps[i].move)) {
      throw std::invalid_argument("the middle of a peak must consist of Psi moves");
    }
  }
  if (auto problem = check_sequence(seq)) throw std::invalid_argument(*problem);
  PeakParts parts{{seq.start}, *first, *last};
  for (auto const& step : seq.steps) parts.diagrams.push_back(step.result);
  return parts;
}

// One arc per paired branch: from `from` walking in direction `side` to `to`.
struct Segment {
  PointId from;
  PointId to;
  int side;
};

struct Lens {
  Label first;
  Label second;
  std::vector<Segment> segments;
};

// Sides are read off the diagram where the pair is adjacent. When both sides
// of a branch are empty arcs, the first consecutive choice is taken.
Lens make_lens(GaussDiagram const& d, Label first, Label second,
               std::vector<std::pair<PointId, PointId>> const& pairing) {
  DiagramIndex idx(d);
  auto const& order = d.orders.at(first);
  std::vector<std::vector<int>> options;
  for (auto const& [a, b] : pairing) {
    auto& o = options.emplace_back();
    if (idx.next(a) == b) o.push_back(+1);
    if (idx.prev(a) == b) o.push_back(-1);
  }
  std::vector<int> sides(pairing.size(), 0);
  std::function<bool(std::size_t)> choose = [&](std::size_t i) {
    if (i == pairing.size()) {
      std::set<Endpoint> window;
      for (std::size_t j = 0; j < pairing.size(); ++j) window.insert({pairing[j].first, sides[j]});
      // Consecutive iff some rotation puts the window first.
      auto const& seq = order.sequence();
      for (std::size_t s = 0; s < seq.size(); ++s) {
        bool ok = true;
        for (std::size_t t = 0; t < window.size() && ok; ++t) {
          ok = window.contains(seq[(s + t) % seq.size()]);
        }
        if (ok) return true;
      }
      return false;
    }
    for (int s : options[i]) {
      sides[i] = s;
      if (choose(i + 1)) return true;
    }
    return false;
  };
  if (!choose(0)) throw std::logic_error("paired sets are not adjacent along a lens");
  Lens lens{first, second, {}};
  for (std::size_t j = 0; j < pairing.size(); ++j) {
    lens.segments.push_back({pairing[j].first, pairing[j].second, sides[j]});
  }
  return lens;
}

std::set<PointId> interior_points(GaussDiagram const& d, Lens const& lens) {
  DiagramIndex idx(d);
  std::set<PointId> out;
  for (auto const& seg : lens.segments) {
    std::size_t guard = idx.circle_size(seg.from);
    for (PointId p = idx.neighbour(seg.from, seg.side); p != seg.to;
         p = idx.neighbour(p, seg.side)) {
      if (guard-- == 0) throw std::logic_error("lens segment does not reach its partner");
      out.insert(p);
    }
  }
  return out;
}

// Reverses, in every other set, the order on its points inside the lenses.
GaussDiagram reverse_inside(GaussDiagram const& d, std::set<PointId> const& inside,
                            std::set<Label> const& skip) {
  GaussDiagram out = d;
  std::map<Label, std::vector<PointId>> touched;
  for (auto p : inside) {
    auto l = d.labels.at(p);
    if (!skip.contains(l)) touched[l].push_back(p);
  }
  for (auto const& [l, pts] : touched) {
    out.orders[l] = reverse_subset_order(d.orders.at(l), pts);
  }
  return out;
}

GaussDiagram collapse(GaussDiagram const& d, Lens const& lens) {
  auto const inside = interior_points(d, lens);
  auto out = reverse_inside(d, inside, {lens.first, lens.second});
  Label const drop[] = {lens.first, lens.second};
  return erase_sets(out, drop);
}

std::vector<std::pair<PointId, PointId>> flipped(
    std::vector<std::pair<PointId, PointId>> const& pairs) {
  std::vector<std::pair<PointId, PointId>> out;
  for (auto const& [a, b] : pairs) out.emplace_back(b, a);
  std::sort(out.begin(), out.end());
  return out;
}

std::set<Label> label_set(GaussDiagram const& d) {
  std::set<Label> out;
  for (auto const& [l, o] : d.orders) out.insert(l);
  return out;
}

// A single move taking `from` to exactly `to`, if one exists.
std::optional<MoveDescriptor> connecting_move(
    GaussDiagram const& from, GaussDiagram const& to,
    std::vector<std::vector<std::pair<PointId, PointId>>> const& known_pairings) {
  auto const lf = label_set(from);
  auto const lt = label_set(to);
  if (lf == lt) {
    for (auto const& m : enumerate_psi_moves(from)) {
      if (identical(apply_psi(from, m), to)) return m;
    }
    return std::nullopt;
  }
  if (lf.size() == lt.size()) {
    std::vector<Label> gone;
    std::vector<Label> added;
    std::set_difference(lf.begin(), lf.end(), lt.begin(), lt.end(), std::back_inserter(gone));
    std::set_difference(lt.begin(), lt.end(), lf.begin(), lf.end(), std::back_inserter(added));
    if (gone.size() != 1 || added.size() != 1) return std::nullopt;
    auto const old_points = from.points_of(gone[0]);
    for (auto const& pairing : known_pairings) {
      for (auto const& candidate : {pairing, flipped(pairing)}) {
        std::map<PointId, PointId> m(candidate.begin(), candidate.end());
        if (!std::all_of(old_points.begin(), old_points.end(),
                         [&](PointId p) { return m.contains(p); })) {
          continue;
        }
        RenameDescriptor rename{gone[0], added[0], {}};
        for (auto p : old_points) rename.points.emplace_back(p, m.at(p));
        try {
          if (identical(apply_rename(from, rename), to)) return rename;
        } catch (std::invalid_argument const&) {
        }
      }
    }
    return std::nullopt;
  }
  if (lt.size() + 2 == lf.size()) {
    for (auto const& m : enumerate_phi_annihilations(from)) {
      if (identical(apply_phi(from, m), to)) return m;
    }
    return std::nullopt;
  }
  if (lf.size() + 2 == lt.size()) {
    for (auto const& m : enumerate_phi_annihilations(to)) {
      if (identical(apply_phi(to, m), from)) {
        auto creation = inverse_creation(to, m);
        if (identical(apply_phi(from, creation), to)) return creation;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

PeakCase classify_peak(MoveSequence const& seq) {
  auto const parts = split_peak(seq);
  std::set<Label> created{parts.creation.set_a, parts.creation.set_b};
  std::set<Label> removed{parts.annihilation.set_a, parts.annihilation.set_b};
  std::size_t common = 0;
  for (auto l : created) common += removed.count(l);
  if (common == 2) return PeakCase::same_pair;
  if (common == 1) return PeakCase::one_common;
  return PeakCase::disjoint;
}

namespace {

// The sequence of collapsed diagrams built from the lenses of the created and
// annihilated pairs, or nullopt when two consecutive ones are not one move
// apart.
std::optional<MoveSequence> lens_sequence(PeakParts const& parts, PeakCase kind) {
  auto const& D = parts.diagrams;
  auto const r = D.size() - 1;
  auto const& cre = parts.creation;
  auto const& ann = parts.annihilation;

  std::vector<GaussDiagram> targets;
  std::vector<std::vector<std::pair<PointId, PointId>>> pairings{cre.pairing, ann.pairing};
  try {
    if (kind == PeakCase::same_pair) {
      auto const lens = make_lens(D[1], cre.set_a, cre.set_b, cre.pairing);
      for (std::size_t i = 1; i < r; ++i) targets.push_back(collapse(D[i], lens));
    } else if (kind == PeakCase::one_common) {
      // Name the shared set a2; a1 is the other created set, b the other
      // annihilated one.
      Label const a2 =
          (cre.set_a == ann.set_a || cre.set_a == ann.set_b) ? cre.set_a : cre.set_b;
      Label const a1 = a2 == cre.set_a ? cre.set_b : cre.set_a;
      Label const b = a2 == ann.set_a ? ann.set_b : ann.set_a;
      auto const pair_a = a1 == cre.set_a ? cre.pairing : flipped(cre.pairing);
      auto const pair_b = a2 == ann.set_a ? ann.pairing : flipped(ann.pairing);
      auto const lens_a = make_lens(D[1], a1, a2, pair_a);
      auto const lens_b = make_lens(D[r - 1], a2, b, pair_b);
      std::vector<GaussDiagram> first;
      std::vector<GaussDiagram> middle;
      std::vector<GaussDiagram> last;
      for (std::size_t i = 1; i < r; ++i) {
        first.push_back(collapse(D[i], lens_a));
        last.push_back(collapse(D[i], lens_b));
        auto inside = interior_points(D[i], lens_a);
        auto inside_b = interior_points(D[i], lens_b);
        inside.insert(inside_b.begin(), inside_b.end());
        auto mid = reverse_inside(D[i], inside, {a1, a2, b});
        mid.orders[a2] = mid.orders.at(a2).reversed();
        Label const drop[] = {a1, b};
        middle.push_back(erase_sets(mid, drop));
      }
      targets = first;
      targets.insert(targets.end(), middle.rbegin(), middle.rend());
      targets.insert(targets.end(), last.begin(), last.end());
    } else {
      auto const lens_a = make_lens(D[1], cre.set_a, cre.set_b, cre.pairing);
      auto const lens_b = make_lens(D[r - 1], ann.set_a, ann.set_b, ann.pairing);
      std::set<Label> const all{cre.set_a, cre.set_b, ann.set_a, ann.set_b};
      std::vector<GaussDiagram> first;
      std::vector<GaussDiagram> middle;
      std::vector<GaussDiagram> last;
      for (std::size_t i = 1; i < r; ++i) {
        first.push_back(collapse(D[i], lens_a));
        last.push_back(collapse(D[i], lens_b));
        auto const inside_b = interior_points(D[i], lens_b);
        auto mid = reverse_inside(D[i], interior_points(D[i], lens_a), all);
        mid = reverse_inside(mid, inside_b, all);
        Label const drop[] = {cre.set_a, cre.set_b, ann.set_a, ann.set_b};
        middle.push_back(erase_sets(mid, drop));
      }
      targets = first;
      targets.insert(targets.end(), middle.rbegin(), middle.rend());
      targets.insert(targets.end(), last.begin(), last.end());
    }
  } catch (std::logic_error const&) {
    return std::nullopt;
  }

  if (!identical(targets.front(), D.front()) || !identical(targets.back(), D.back())) {
    return std::nullopt;
  }
  MoveSequence out{D.front(), {}};
  GaussDiagram current = D.front();
  for (std::size_t i = 1; i < targets.size(); ++i) {
    if (identical(targets[i - 1], targets[i])) continue;
    auto move = connecting_move(targets[i - 1], targets[i], pairings);
    if (!move) return std::nullopt;
    current = apply_move(current, *move);
    if (!is_realizable(current)) return std::nullopt;
    out.steps.push_back({*move, current, canonical_form(current)});
  }
  return out;
}

struct DescentNode {
  GaussDiagram diagram;
  std::size_t parent;
  std::optional<MoveDescriptor> via;
};

struct Descent {
  std::vector<DescentNode> nodes;
  std::vector<std::string> keys;
  std::unordered_map<std::string, std::size_t> index;
};

// Everything reachable from d by Psi moves and annihilations, breadth first.
Descent explore_descent(GaussDiagram const& d, SearchOptions const& opts) {
  Descent out;
  auto visit = [&](GaussDiagram x, std::size_t parent, std::optional<MoveDescriptor> via) {
    auto key = canonical_form(x, opts.canonical);
    if (out.index.contains(key)) return;
    if (out.nodes.size() >= opts.max_nodes) throw BudgetExceeded(opts.max_nodes);
    out.index.emplace(key, out.nodes.size());
    out.keys.push_back(std::move(key));
    out.nodes.push_back({std::move(x), parent, std::move(via)});
  };
  visit(d, 0, std::nullopt);
  for (std::size_t i = 0; i < out.nodes.size(); ++i) {
    auto const cur = out.nodes[i].diagram;
    for (auto const& m : enumerate_psi_moves(cur)) visit(apply_psi(cur, m), i, m);
    for (auto const& m : enumerate_phi_annihilations(cur)) visit(apply_phi(cur, m), i, m);
  }
  return out;
}

std::vector<std::size_t> chain_to(Descent const& g, std::size_t target) {
  std::vector<std::size_t> chain;
  for (std::size_t i = target; i != 0; i = g.nodes[i].parent) chain.push_back(i);
  chain.push_back(0);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

Relabeling compose_inverse(Relabeling const& onto, Relabeling const& from) {
  std::map<PointId, PointId> point_back;
  std::map<Label, Label> label_back;
  for (auto const& [p, q] : onto.points) point_back.emplace(q, p);
  for (auto const& [l, m] : onto.labels) label_back.emplace(m, l);
  Relabeling r;
  for (auto const& [p, q] : from.points) r.points.emplace(p, point_back.at(q));
  for (auto const& [l, m] : from.labels) r.labels.emplace(l, label_back.at(m));
  return r;
}

// Walks down from the first diagram to a diagram that the last one also
// descends to, then climbs back up along the last diagram's descent, renamed
// into the ids of the first.
std::optional<MoveSequence> descent_sequence(GaussDiagram const& first, GaussDiagram const& last,
                                             SearchOptions const& opts) {
  auto const from = explore_descent(first, opts);
  auto const to = explore_descent(last, opts);
  std::optional<std::size_t> meet;
  for (std::size_t i = 0; i < to.nodes.size() && !meet; ++i) {
    if (from.index.contains(to.keys[i])) meet = i;
  }
  if (!meet) return std::nullopt;

  MoveSequence out{first, {}};
  auto const down = chain_to(from, from.index.at(to.keys[*meet]));
  for (std::size_t k = 1; k < down.size(); ++k) {
    auto const& node = from.nodes[down[k]];
    out.steps.push_back({*node.via, node.diagram, from.keys[down[k]]});
  }

  auto const up = chain_to(to, *meet);
  auto const& bottom = out.finish();
  auto rename = compose_inverse(canonical_relabeling(bottom, opts.canonical),
                                canonical_relabeling(to.nodes[*meet].diagram, opts.canonical));
  PointId next_point = first.fresh_point();
  Label next_label = first.fresh_label();
  for (auto const& [p, l] : last.labels) {
    if (!rename.points.contains(p)) rename.points.emplace(p, next_point++);
    if (!rename.labels.contains(l)) rename.labels.emplace(l, next_label++);
  }
  GaussDiagram current = bottom;
  if (!identical(relabel(to.nodes[*meet].diagram, rename), current)) return std::nullopt;
  for (std::size_t k = up.size() - 1; k-- > 0;) {
    auto target = relabel(to.nodes[up[k]].diagram, rename);
    auto move = connecting_move(current, target, {});
    if (!move) return std::nullopt;
    current = apply_move(current, *move);
    out.steps.push_back({*move, current, canonical_form(current)});
  }
  return out;
}

}  // namespace

MoveSequence flatten_peak(MoveSequence const& seq, FlattenMethod* method,
                          SearchOptions const& opts) {
  auto const parts = split_peak(seq);
  for (auto const& d : parts.diagrams) {
    if (!is_realizable(d)) throw std::invalid_argument("peak contains a non-realizable diagram");
  }
  if (auto out = lens_sequence(parts, classify_peak(seq))) {
    if (method != nullptr) *method = FlattenMethod::lens_collapse;
    return *out;
  }
  if (auto out = descent_sequence(parts.diagrams.front(), parts.diagrams.back(), opts)) {
    if (method != nullptr) *method = FlattenMethod::descent_search;
    return *out;
  }
  throw PeakNotFlattenable(
      "the endpoints have no common descendant under Psi moves and annihilations");
}

}  // namespace cactus
