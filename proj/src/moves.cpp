#include "cactus/moves.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cactus {

OrientedCyclicOrder reverse_subset_order(OrientedCyclicOrder const& order,
                                         std::span<PointId const> subset) {
  std::set<PointId> in(subset.begin(), subset.end());
  auto seq = order.sequence();
  auto const len = seq.size();
  auto inside = [&](std::size_t i) { return in.contains(seq[i % len].point); };
  std::size_t start = len;
  for (std::size_t i = 0; i < len; ++i) {
    if (!inside(i)) {
      start = i;
      break;
    }
  }
  if (start == len) {
    std::reverse(seq.begin(), seq.end());
    return OrientedCyclicOrder(std::move(seq));
  }
  // Walk once around from an outside position, reversing each run in place.
  std::vector<Endpoint> out = seq;
  std::size_t i = 1;
  while (i <= len) {
    if (!inside(start + i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < len && inside(start + j)) ++j;
    for (std::size_t t = 0; t < j - i; ++t) {
      out[(start + i + t) % len] = seq[(start + j - 1 - t) % len];
    }
    i = j;
  }
  return OrientedCyclicOrder(std::move(out));
}

namespace {

template <class Map>
OrientedCyclicOrder transport(OrientedCyclicOrder const& order, Map const& to) {
  std::vector<Endpoint> out;
  out.reserve(order.size());
  for (auto const& e : order.sequence()) out.push_back({to.at(e.point), e.sign});
  return OrientedCyclicOrder(std::move(out));
}

// True if the endpoints occupy a window of consecutive positions.
bool consecutive(OrientedCyclicOrder const& order, std::set<Endpoint> const& window) {
  auto const& seq = order.sequence();
  auto const len = seq.size();
  auto const k = window.size();
  if (k == 0 || k > len) return false;
  for (std::size_t start = 0; start < len; ++start) {
    if (!window.contains(seq[start])) continue;
    if (window.contains(seq[(start + len - 1) % len]) && k < len) continue;
    std::size_t run = 0;
    while (run < k && window.contains(seq[(start + run) % len])) ++run;
    return run == k;
  }
  return k == len;
}

// Sides s such that neighbour(a, s) == b.
std::vector<int> sides_towards(DiagramIndex const& idx, PointId a, PointId b) {
  std::vector<int> out;
  if (idx.next(a) == b) out.push_back(+1);
  if (idx.prev(a) == b) out.push_back(-1);
  return out;
}

bool has_order(GaussDiagram const& d, Label l) { return d.orders.contains(l); }

// Checks a candidate Phi pairing; sides are chosen freely where both work.
bool phi_pairing_ok(GaussDiagram const& d, DiagramIndex const& idx, Label a, Label b,
                    std::vector<std::pair<PointId, PointId>> const& pairing) {
  auto const& order_a = d.orders.at(a);
  auto const& order_b = d.orders.at(b);
  std::map<PointId, PointId> to_b(pairing.begin(), pairing.end());
  if (!transport(order_a, to_b).reversed().same_cycle(order_b)) return false;
  std::vector<std::vector<int>> options;
  for (auto const& [pa, pb] : pairing) {
    options.push_back(sides_towards(idx, pa, pb));
    if (options.back().empty()) return false;
  }
  std::set<Endpoint> window;
  std::function<bool(std::size_t)> choose = [&](std::size_t i) {
    if (i == pairing.size()) return consecutive(order_a, window);
    for (int s : options[i]) {
      Endpoint e{pairing[i].first, s};
      window.insert(e);
      bool ok = choose(i + 1);
      window.erase(e);
      if (ok) return true;
    }
    return false;
  };
  return choose(0);
}

}  // namespace

std::vector<PhiDescriptor> phi_annihilations_between(GaussDiagram const& d, Label a,
                                                     Label b) {
  std::vector<PhiDescriptor> out;
  if (a == b || !has_order(d, a) || !has_order(d, b)) return out;
  if (a > b) std::swap(a, b);
  auto const points_a = d.points_of(a);
  auto const points_b = d.points_of(b);
  if (points_a.size() != points_b.size() || points_a.size() < 2) return out;
  DiagramIndex idx(d);
  std::set<PointId> in_b(points_b.begin(), points_b.end());
  std::set<PointId> used;
  std::vector<std::pair<PointId, PointId>> pairing;
  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i == points_a.size()) {
      if (phi_pairing_ok(d, idx, a, b, pairing)) {
        out.push_back(PhiDescriptor{a, b, pairing, PhiDirection::annihilate, {}, {}, {}});
      }
      return;
    }
    PointId const pa = points_a[i];
    std::set<PointId> candidates;
    for (PointId nb : {idx.next(pa), idx.prev(pa)}) {
      if (nb != pa && in_b.contains(nb) && !used.contains(nb)) candidates.insert(nb);
    }
    for (PointId pb : candidates) {
      used.insert(pb);
      pairing.emplace_back(pa, pb);
      extend(i + 1);
      pairing.pop_back();
      used.erase(pb);
    }
  };
  extend(0);
  return out;
}

std::vector<PhiDescriptor> enumerate_phi_annihilations(GaussDiagram const& d) {
  std::vector<PhiDescriptor> out;
  for (auto ia = d.orders.begin(); ia != d.orders.end(); ++ia) {
    for (auto ib = std::next(ia); ib != d.orders.end(); ++ib) {
      if (ia->second.size() != ib->second.size()) continue;
      auto found = phi_annihilations_between(d, ia->first, ib->first);
      out.insert(out.end(), found.begin(), found.end());
    }
  }
  return out;
}

bool phi_annihilation_applies(GaussDiagram const& d, PhiDescriptor const& m) {
  if (m.direction != PhiDirection::annihilate) return false;
  auto found = phi_annihilations_between(d, m.set_a, m.set_b);
  auto pairing = m.pairing;
  if (m.set_a > m.set_b) {
    for (auto& pr : pairing) std::swap(pr.first, pr.second);
  }
  std::sort(pairing.begin(), pairing.end());
  return std::any_of(found.begin(), found.end(),
                     [&](PhiDescriptor const& f) { return f.pairing == pairing; });
}

namespace {

GaussDiagram apply_creation(GaussDiagram const& d, PhiDescriptor const& m) {
  std::set<PointId> fresh;
  for (auto const& ins : m.insertions) {
    for (auto p : ins.points) {
      if (d.labels.contains(p) || !fresh.insert(p).second) {
        throw std::invalid_argument("creation reuses point id " + std::to_string(p));
      }
    }
  }
  if (d.orders.contains(m.set_a) || d.orders.contains(m.set_b) || m.set_a == m.set_b) {
    throw std::invalid_argument("creation labels must be new and distinct");
  }
  GaussDiagram out = d;
  std::set<std::pair<std::size_t, std::optional<PointId>>> gaps;
  for (auto const& ins : m.insertions) {
    if (ins.circle >= out.circles.size()) {
      throw std::invalid_argument("creation names a missing circle");
    }
    if (!gaps.insert({ins.circle, ins.after}).second) {
      throw std::invalid_argument("two insertions into the same gap");
    }
    auto& circle = out.circles[ins.circle];
    if (!ins.after) {
      if (!d.circles[ins.circle].empty()) {
        throw std::invalid_argument("insertion without anchor into a non-empty circle");
      }
      circle.insert(circle.end(), ins.points.begin(), ins.points.end());
      continue;
    }
    auto it = std::find(circle.begin(), circle.end(), *ins.after);
    if (it == circle.end() || fresh.contains(*ins.after)) {
      throw std::invalid_argument("insertion anchor is not on the circle");
    }
    circle.insert(std::next(it), ins.points.begin(), ins.points.end());
  }
  std::set<PointId> from_a;
  std::set<PointId> from_b;
  for (auto const& [pa, pb] : m.pairing) {
    from_a.insert(pa);
    from_b.insert(pb);
  }
  if (from_a.size() + from_b.size() != fresh.size() || from_a.size() != m.pairing.size()) {
    throw std::invalid_argument("creation pairing does not cover the inserted points");
  }
  for (auto p : from_a) out.labels.emplace(p, m.set_a);
  for (auto p : from_b) {
    if (!out.labels.emplace(p, m.set_b).second) {
      throw std::invalid_argument("creation pairing reuses a point");
    }
  }
  out.orders.emplace(m.set_a, m.order_a);
  out.orders.emplace(m.set_b, m.order_b);
  if (auto problem = validate(out)) {
    throw std::invalid_argument("creation yields an invalid diagram: " + *problem);
  }
  PhiDescriptor check = m;
  check.direction = PhiDirection::annihilate;
  if (!phi_annihilation_applies(out, check)) {
    throw std::invalid_argument("created sets do not form an annihilable pair");
  }
  return out;
}

}  // namespace

GaussDiagram apply_phi(GaussDiagram const& d, PhiDescriptor const& m) {
  if (m.direction == PhiDirection::create) return apply_creation(d, m);
  if (!phi_annihilation_applies(d, m)) {
    throw std::invalid_argument("Phi annihilation does not apply to this diagram");
  }
  Label const sets[] = {m.set_a, m.set_b};
  return erase_sets(d, sets);
}

PhiDescriptor inverse_creation(GaussDiagram const& with_pair,
                               PhiDescriptor const& annihilation) {
  if (!phi_annihilation_applies(with_pair, annihilation)) {
    throw std::invalid_argument("annihilation does not apply; no inverse creation");
  }
  PhiDescriptor out = annihilation;
  out.direction = PhiDirection::create;
  out.order_a = with_pair.orders.at(annihilation.set_a);
  out.order_b = with_pair.orders.at(annihilation.set_b);
  auto is_new = [&](PointId p) {
    auto l = with_pair.labels.at(p);
    return l == annihilation.set_a || l == annihilation.set_b;
  };
  for (std::size_t c = 0; c < with_pair.circles.size(); ++c) {
    auto const& circle = with_pair.circles[c];
    auto anchor = std::find_if_not(circle.begin(), circle.end(), is_new);
    if (anchor == circle.end()) {
      if (!circle.empty()) out.insertions.push_back({c, std::nullopt, circle});
      continue;
    }
    std::size_t const len = circle.size();
    std::size_t const start = static_cast<std::size_t>(anchor - circle.begin());
    for (std::size_t i = 0; i < len;) {
      PointId const here = circle[(start + i) % len];
      std::vector<PointId> run;
      std::size_t j = i + 1;
      while (j < len && is_new(circle[(start + j) % len])) {
        run.push_back(circle[(start + j) % len]);
        ++j;
      }
      if (!run.empty()) out.insertions.push_back({c, here, std::move(run)});
      i = j;
    }
  }
  return out;
}

namespace {

bool psi_conditions(GaussDiagram const& d, DiagramIndex const& idx,
                    PsiDescriptor const& m) {
  if (m.big == m.small || !has_order(d, m.big) || !has_order(d, m.small)) return false;
  auto const& order_big = d.orders.at(m.big);
  auto const& order_small = d.orders.at(m.small);
  auto const n = order_big.branch_count();
  auto const k = order_small.branch_count();
  if (!(2 <= k && k < n) || m.attachment.size() != k) return false;
  std::set<PointId> smalls;
  std::set<PointId> bigs;
  std::set<Endpoint> window;
  std::map<PointId, PointId> big_to_small;
  for (auto const& att : m.attachment) {
    if (d.labels.at(att.small) != m.small || d.labels.at(att.big) != m.big) return false;
    if (att.side != 1 && att.side != -1) return false;
    if (idx.neighbour(att.big, att.side) != att.small) return false;
    smalls.insert(att.small);
    bigs.insert(att.big);
    window.insert({att.big, att.side});
    big_to_small.emplace(att.big, att.small);
  }
  if (smalls.size() != k || bigs.size() != k) return false;
  if (!consecutive(order_big, window)) return false;
  std::vector<PointId> attached(bigs.begin(), bigs.end());
  auto expected = transport(induced_suborder(order_big, attached), big_to_small).reversed();
  return expected.same_cycle(order_small);
}

}  // namespace

bool psi_applies(GaussDiagram const& d, PsiDescriptor const& m) {
  try {
    DiagramIndex idx(d);
    return psi_conditions(d, idx, m);
  } catch (std::exception const&) {
    return false;
  }
}

std::vector<PsiDescriptor> enumerate_psi_moves(GaussDiagram const& d) {
  std::vector<PsiDescriptor> out;
  DiagramIndex idx(d);
  for (auto const& [big, order_big] : d.orders) {
    auto const n = order_big.branch_count();
    if (n < 3) continue;
    for (auto const& [small, order_small] : d.orders) {
      auto const k = order_small.branch_count();
      if (small == big || k < 2 || k >= n) continue;
      auto const smalls = d.points_of(small);
      PsiDescriptor m{big, small, {}};
      std::set<PointId> used;
      std::function<void(std::size_t)> extend = [&](std::size_t i) {
        if (i == smalls.size()) {
          if (psi_conditions(d, idx, m)) out.push_back(m);
          return;
        }
        PointId const s = smalls[i];
        // s follows its big point (side +1) or precedes it (side -1).
        std::pair<PointId, int> const options[] = {{idx.prev(s), +1}, {idx.next(s), -1}};
        for (auto const& [b, side] : options) {
          if (b == s || d.labels.at(b) != big || used.contains(b)) continue;
          used.insert(b);
          m.attachment.push_back({s, b, side});
          extend(i + 1);
          m.attachment.pop_back();
          used.erase(b);
        }
      };
      extend(0);
    }
  }
  return out;
}

GaussDiagram apply_psi(GaussDiagram const& d, PsiDescriptor const& m) {
  DiagramIndex idx(d);
  if (!psi_conditions(d, idx, m)) {
    throw std::invalid_argument("Psi move does not apply to this diagram");
  }
  std::map<PointId, Attachment> by_big;
  std::set<PointId> smalls;
  std::vector<PointId> bigs;
  for (auto const& att : m.attachment) {
    by_big.emplace(att.big, att);
    smalls.insert(att.small);
    bigs.push_back(att.big);
  }
  GaussDiagram out;
  out.labels = d.labels;
  for (auto const& circle : d.circles) {
    auto& rebuilt = out.circles.emplace_back();
    for (auto p : circle) {
      if (smalls.contains(p)) continue;
      auto it = by_big.find(p);
      if (it == by_big.end()) {
        rebuilt.push_back(p);
      } else if (it->second.side > 0) {
        rebuilt.push_back(it->second.small);
        rebuilt.push_back(p);
      } else {
        rebuilt.push_back(p);
        rebuilt.push_back(it->second.small);
      }
    }
  }
  out.orders = d.orders;
  out.orders[m.small] = d.orders.at(m.small).reversed();
  out.orders[m.big] = reverse_subset_order(d.orders.at(m.big), bigs);
  return out;
}

PsiDescriptor mirror(PsiDescriptor const& m) {
  PsiDescriptor out = m;
  for (auto& att : out.attachment) att.side = -att.side;
  return out;
}

GaussDiagram apply_rename(GaussDiagram const& d, RenameDescriptor const& m) {
  auto it = d.orders.find(m.from);
  if (it == d.orders.end()) throw std::invalid_argument("rename of a missing set");
  if (m.from != m.to && d.orders.contains(m.to)) {
    throw std::invalid_argument("rename target label already in use");
  }
  std::map<PointId, PointId> to(m.points.begin(), m.points.end());
  auto const old_points = d.points_of(m.from);
  if (to.size() != old_points.size() || m.points.size() != old_points.size()) {
    throw std::invalid_argument("rename must map every point of the set");
  }
  std::set<PointId> targets;
  for (auto p : old_points) {
    auto t = to.find(p);
    if (t == to.end()) throw std::invalid_argument("rename misses a point");
    bool const reused = d.labels.contains(t->second) && !to.contains(t->second);
    if (reused || !targets.insert(t->second).second) {
      throw std::invalid_argument("rename target point id already in use");
    }
  }
  GaussDiagram out;
  for (auto const& circle : d.circles) {
    auto& c = out.circles.emplace_back();
    for (auto p : circle) c.push_back(to.contains(p) ? to.at(p) : p);
  }
  for (auto const& [p, l] : d.labels) {
    if (l == m.from) {
      out.labels.emplace(to.at(p), m.to);
    } else {
      out.labels.emplace(p, l);
    }
  }
  for (auto const& [l, o] : d.orders) {
    if (l == m.from) {
      out.orders.emplace(m.to, transport(o, to));
    } else {
      out.orders.emplace(l, o);
    }
  }
  return out;
}

GaussDiagram apply_move(GaussDiagram const& d, MoveDescriptor const& m) {
  return std::visit(
      [&](auto const& move) -> GaussDiagram {
        using T = std::decay_t<decltype(move)>;
        if constexpr (std::is_same_v<T, PhiDescriptor>) {
          return apply_phi(d, move);
        } else if constexpr (std::is_same_v<T, PsiDescriptor>) {
          return apply_psi(d, move);
        } else {
          return apply_rename(d, move);
        }
      },
      m);
}

std::string describe(MoveDescriptor const& m) {
  std::ostringstream os;
  std::visit(
      [&](auto const& move) {
        using T = std::decay_t<decltype(move)>;
        if constexpr (std::is_same_v<T, PhiDescriptor>) {
          os << "Phi_" << move.pairing.size()
             << (move.direction == PhiDirection::annihilate ? " annihilate " : " create ")
             << move.set_a << "," << move.set_b;
        } else if constexpr (std::is_same_v<T, PsiDescriptor>) {
          os << "Psi_" << move.attachment.size() << " small " << move.small << " through big "
             << move.big;
        } else {
          os << "rename " << move.from << " -> " << move.to;
        }
      },
      m);
  return os.str();
}

}  // namespace cactus
