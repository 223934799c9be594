#include "cactus/gauss_diagram.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cactus {

std::vector<PointId> OrientedCyclicOrder::branches() const {
  std::vector<PointId> out;
  out.reserve(seq_.size());
  for (auto const& e : seq_) out.push_back(e.point);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::size_t> OrientedCyclicOrder::position(Endpoint e) const {
  auto it = std::find(seq_.begin(), seq_.end(), e);
  if (it == seq_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - seq_.begin());
}

std::optional<std::string> OrientedCyclicOrder::check() const {
  if (seq_.empty() || seq_.size() % 2 != 0) {
    return "order length " + std::to_string(seq_.size()) + " is not 2k with k >= 1";
  }
  std::set<Endpoint> seen;
  for (auto const& e : seq_) {
    if (e.sign != 1 && e.sign != -1) return "endpoint sign must be +1 or -1";
    if (!seen.insert(e).second) {
      return "endpoint (" + std::to_string(e.point) + "," + std::to_string(e.sign) +
             ") repeated in order";
    }
  }
  auto const k = branch_count();
  for (std::size_t i = 0; i < k; ++i) {
    if (seq_[i + k] != seq_[i].negated()) {
      return "antipodal property fails at position " + std::to_string(i);
    }
  }
  return std::nullopt;
}

OrientedCyclicOrder OrientedCyclicOrder::reversed() const {
  return OrientedCyclicOrder(std::vector<Endpoint>(seq_.rbegin(), seq_.rend()));
}

OrientedCyclicOrder OrientedCyclicOrder::normalized() const {
  if (seq_.empty()) return *this;
  auto start = std::min_element(seq_.begin(), seq_.end()) - seq_.begin();
  std::vector<Endpoint> out;
  out.reserve(seq_.size());
  for (std::size_t i = 0; i < seq_.size(); ++i) {
    out.push_back(seq_[(static_cast<std::size_t>(start) + i) % seq_.size()]);
  }
  return OrientedCyclicOrder(std::move(out));
}

bool OrientedCyclicOrder::same_cycle(OrientedCyclicOrder const& other) const {
  // Endpoints are distinct, so the minimum fixes the rotation.
  return size() == other.size() && normalized().seq_ == other.normalized().seq_;
}

OrientedCyclicOrder induced_suborder(OrientedCyclicOrder const& order,
                                     std::span<PointId const> subset) {
  if (subset.empty()) throw std::invalid_argument("induced order on an empty subset");
  std::set<PointId> keep(subset.begin(), subset.end());
  std::vector<Endpoint> out;
  for (auto const& e : order.sequence()) {
    if (keep.contains(e.point)) out.push_back(e);
  }
  if (out.size() != 2 * keep.size()) {
    throw std::invalid_argument("subset is not contained in the order's branches");
  }
  return OrientedCyclicOrder(std::move(out));
}

std::vector<PointId> GaussDiagram::points_of(Label label) const {
  std::vector<PointId> out;
  for (auto const& [p, l] : labels) {
    if (l == label) out.push_back(p);
  }
  return out;
}

std::size_t GaussDiagram::free_loop_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(circles.begin(), circles.end(), [](auto const& c) { return c.empty(); }));
}

Label GaussDiagram::fresh_label() const noexcept {
  return orders.empty() ? 0 : orders.rbegin()->first + 1;
}

PointId GaussDiagram::fresh_point() const noexcept {
  PointId next = 0;
  for (auto const& c : circles) {
    for (auto p : c) next = std::max(next, p + 1);
  }
  if (!labels.empty()) next = std::max(next, labels.rbegin()->first + 1);
  return next;
}

DiagramIndex::DiagramIndex(GaussDiagram const& d) : d_(&d) {
  for (std::size_t c = 0; c < d.circles.size(); ++c) {
    for (std::size_t i = 0; i < d.circles[c].size(); ++i) {
      where_.emplace(d.circles[c][i], Location{c, i});
    }
  }
}

Location const& DiagramIndex::at(PointId p) const {
  auto it = where_.find(p);
  if (it == where_.end()) {
    throw std::invalid_argument("point " + std::to_string(p) + " is not on any circle");
  }
  return it->second;
}

PointId DiagramIndex::next(PointId p) const {
  auto const& loc = at(p);
  auto const& circle = d_->circles[loc.circle];
  return circle[(loc.index + 1) % circle.size()];
}

PointId DiagramIndex::prev(PointId p) const {
  auto const& loc = at(p);
  auto const& circle = d_->circles[loc.circle];
  return circle[(loc.index + circle.size() - 1) % circle.size()];
}

std::size_t DiagramIndex::circle_size(PointId p) const {
  return d_->circles[at(p).circle].size();
}

std::optional<std::string> validate(GaussDiagram const& d) {
  std::set<PointId> on_circles;
  for (auto const& circle : d.circles) {
    for (auto p : circle) {
      if (!on_circles.insert(p).second) {
        return "duplicate point id " + std::to_string(p);
      }
      if (!d.labels.contains(p)) {
        return "point " + std::to_string(p) + " has no singular-set label";
      }
    }
  }
  std::map<Label, std::vector<PointId>> sets;
  for (auto const& [p, l] : d.labels) {
    if (!on_circles.contains(p)) {
      return "labeled point " + std::to_string(p) + " is not on any circle";
    }
    sets[l].push_back(p);
  }
  for (auto const& [label, points] : sets) {
    if (points.size() < 2) {
      return "singleton singular set " + std::to_string(label);
    }
    auto it = d.orders.find(label);
    if (it == d.orders.end()) {
      return "singular set " + std::to_string(label) + " has no order";
    }
    auto const& order = it->second;
    std::set<Endpoint> expected;
    for (auto p : points) {
      expected.insert({p, -1});
      expected.insert({p, +1});
    }
    std::set<Endpoint> present;
    for (auto const& e : order.sequence()) {
      if (!expected.contains(e)) {
        return "order of set " + std::to_string(label) + " mentions foreign endpoint (" +
               std::to_string(e.point) + "," + std::to_string(e.sign) + ")";
      }
      present.insert(e);
    }
    if (present.size() != expected.size()) {
      return "incomplete order on set " + std::to_string(label);
    }
    if (auto problem = order.check()) {
      return "set " + std::to_string(label) + ": " + *problem;
    }
  }
  for (auto const& [label, order] : d.orders) {
    if (!sets.contains(label)) {
      return "order given for set " + std::to_string(label) + " which has no points";
    }
  }
  return std::nullopt;
}

void require_valid(GaussDiagram const& d) {
  if (auto problem = validate(d)) throw std::invalid_argument("invalid diagram: " + *problem);
}

std::size_t crossing_count(GaussDiagram const& d) { return d.orders.size(); }

bool is_doodle(GaussDiagram const& d) {
  return std::all_of(d.orders.begin(), d.orders.end(),
                     [](auto const& kv) { return kv.second.branch_count() == 2; });
}

GaussDiagram erase_sets(GaussDiagram const& d, std::span<Label const> sets) {
  std::set<Label> drop(sets.begin(), sets.end());
  GaussDiagram out;
  for (auto const& circle : d.circles) {
    auto& kept = out.circles.emplace_back();
    for (auto p : circle) {
      if (!drop.contains(d.labels.at(p))) kept.push_back(p);
    }
  }
  for (auto const& [p, l] : d.labels) {
    if (!drop.contains(l)) out.labels.emplace(p, l);
  }
  for (auto const& [l, o] : d.orders) {
    if (!drop.contains(l)) out.orders.emplace(l, o);
  }
  return out;
}

namespace {

std::vector<PointId> rotated_to_min(std::vector<PointId> circle) {
  if (!circle.empty()) {
    std::rotate(circle.begin(), std::min_element(circle.begin(), circle.end()), circle.end());
  }
  return circle;
}

}  // namespace

bool identical(GaussDiagram const& a, GaussDiagram const& b) {
  if (a.circles.size() != b.circles.size() || a.labels != b.labels ||
      a.orders.size() != b.orders.size()) {
    return false;
  }
  auto normal = [](GaussDiagram const& d) {
    std::vector<std::vector<PointId>> cs;
    for (auto const& c : d.circles) cs.push_back(rotated_to_min(c));
    std::sort(cs.begin(), cs.end());
    return cs;
  };
  if (normal(a) != normal(b)) return false;
  for (auto const& [label, order] : a.orders) {
    auto it = b.orders.find(label);
    if (it == b.orders.end() || !order.same_cycle(it->second)) return false;
  }
  return true;
}

namespace {

// Lexicographic search for the smallest encoding over circle arrangements.
// A circle contributes [size, l_1, ..., l_m] where l_i numbers sets by first
// appearance; orders follow, each as its minimal rotation over tokens
// 2 * (global point index) + (sign > 0).
class CanonicalSearch {
 public:
  CanonicalSearch(GaussDiagram const& d, CanonicalOptions opts) : d_(d), opts_(opts) {
    std::map<Label, int> dense_label;
    for (auto const& [label, order] : d.orders) {
      dense_label.emplace(label, static_cast<int>(dense_label.size()));
    }
    for (auto const& [p, label] : d.labels) {
      if (!dense_label.contains(label)) {
        dense_label.emplace(label, static_cast<int>(dense_label.size()));
      }
    }
    label_count_ = dense_label.size();
    labels_of_dense_.resize(label_count_);
    for (auto const& [label, i] : dense_label) labels_of_dense_[static_cast<std::size_t>(i)] = label;
    for (std::size_t c = 0; c < d.circles.size(); ++c) {
      if (d.circles[c].empty() && !opts.labeled_components) {
        ++free_loops_;
        continue;
      }
      circle_ids_.push_back(c);
      auto& dense = dense_circles_.emplace_back();
      for (auto p : d.circles[c]) dense.push_back(dense_label.at(d.labels.at(p)));
    }
    canon_of_dense_.assign(label_count_, -1);
    used_.assign(circle_ids_.size(), false);
  }

  void run() { descend(0); }

  std::vector<int> const& best_code() const { return best_code_; }
  /// (circle index in the diagram, rotation) for each position.
  std::vector<std::pair<std::size_t, std::size_t>> const& best_arrangement() const {
    return best_arrangement_;
  }
  std::size_t free_loops() const { return free_loops_; }

 private:
  void descend(std::size_t depth) {
    if (depth == circle_ids_.size()) {
      finish();
      return;
    }
    auto try_circle = [&](std::size_t slot) {
      auto const& circle = dense_circles_[slot];
      std::size_t const m = circle.size();
      std::size_t const rotations = std::max<std::size_t>(m, 1);
      for (std::size_t r = 0; r < rotations; ++r) {
        std::size_t const mark = code_.size();
        std::vector<int> assigned;
        code_.push_back(static_cast<int>(m));
        for (std::size_t i = 0; i < m; ++i) {
          int& canon = canon_of_dense_[static_cast<std::size_t>(circle[(r + i) % m])];
          if (canon < 0) {
            canon = next_canon_++;
            assigned.push_back(circle[(r + i) % m]);
          }
          code_.push_back(canon);
        }
        if (!have_best_ || compare_prefix() <= 0) {
          used_[slot] = true;
          arrangement_.emplace_back(circle_ids_[slot], r);
          descend(depth + 1);
          arrangement_.pop_back();
          used_[slot] = false;
        }
        for (int dense : assigned) canon_of_dense_[static_cast<std::size_t>(dense)] = -1;
        next_canon_ -= static_cast<int>(assigned.size());
        code_.resize(mark);
      }
    };
    if (opts_.labeled_components) {
      try_circle(depth);
    } else {
      for (std::size_t slot = 0; slot < circle_ids_.size(); ++slot) {
        if (!used_[slot]) try_circle(slot);
      }
    }
  }

  // Compares code_ with the prefix of best_code_ of the same length.
  int compare_prefix() const {
    for (std::size_t i = 0; i < code_.size(); ++i) {
      if (i >= best_code_.size()) return 1;
      if (code_[i] != best_code_[i]) return code_[i] < best_code_[i] ? -1 : 1;
    }
    return 0;
  }

  void finish() {
    std::vector<int> full = code_;
    full.push_back(-1);
    full.push_back(static_cast<int>(free_loops_));
    full.push_back(-2);
    // Global point numbering in arrangement order.
    std::map<PointId, int> index;
    for (auto const& [c, r] : arrangement_) {
      auto const& circle = d_.circles[c];
      for (std::size_t i = 0; i < circle.size(); ++i) {
        index.emplace(circle[(r + i) % circle.size()], static_cast<int>(index.size()));
      }
    }
    std::vector<std::size_t> dense_of_canon(label_count_);
    for (std::size_t dense = 0; dense < label_count_; ++dense) {
      int canon = canon_of_dense_[dense];
      if (canon >= 0) dense_of_canon[static_cast<std::size_t>(canon)] = dense;
    }
    for (int canon = 0; canon < next_canon_; ++canon) {
      auto const label = labels_of_dense_[dense_of_canon[static_cast<std::size_t>(canon)]];
      auto it = d_.orders.find(label);
      std::vector<int> tokens;
      if (it != d_.orders.end()) {
        for (auto const& e : it->second.sequence()) {
          auto pi = index.find(e.point);
          tokens.push_back(pi == index.end() ? -3 : 2 * pi->second + (e.sign > 0 ? 1 : 0));
        }
      }
      full.push_back(static_cast<int>(tokens.size()));
      if (!tokens.empty()) {
        auto start = std::min_element(tokens.begin(), tokens.end());
        std::rotate(tokens.begin(), start, tokens.end());
      }
      full.insert(full.end(), tokens.begin(), tokens.end());
    }
    if (!have_best_ || full < best_code_) {
      best_code_ = std::move(full);
      best_arrangement_ = arrangement_;
      have_best_ = true;
    }
  }

  GaussDiagram const& d_;
  CanonicalOptions opts_;
  std::size_t label_count_ = 0;
  std::vector<Label> labels_of_dense_;
  std::vector<std::size_t> circle_ids_;
  std::vector<std::vector<int>> dense_circles_;
  std::size_t free_loops_ = 0;

  std::vector<int> canon_of_dense_;
  int next_canon_ = 0;
  std::vector<bool> used_;
  std::vector<int> code_;
  std::vector<std::pair<std::size_t, std::size_t>> arrangement_;

  bool have_best_ = false;
  std::vector<int> best_code_;
  std::vector<std::pair<std::size_t, std::size_t>> best_arrangement_;
};

}  // namespace

std::string canonical_form(GaussDiagram const& d, CanonicalOptions opts) {
  CanonicalSearch search(d, opts);
  search.run();
  std::string out;
  out.reserve(search.best_code().size() * 3);
  for (int token : search.best_code()) {
    switch (token) {
      case -1: out += '|'; break;
      case -2: out += '/'; break;
      default:
        out += std::to_string(token);
        out += '.';
    }
  }
  return out;
}

Relabeling canonical_relabeling(GaussDiagram const& d, CanonicalOptions opts) {
  CanonicalSearch search(d, opts);
  search.run();
  Relabeling r;
  for (auto const& [c, rot] : search.best_arrangement()) {
    auto const& circle = d.circles[c];
    for (std::size_t i = 0; i < circle.size(); ++i) {
      PointId const p = circle[(rot + i) % circle.size()];
      r.points.emplace(p, static_cast<PointId>(r.points.size()));
      r.labels.emplace(d.labels.at(p), static_cast<Label>(r.labels.size()));
    }
  }
  return r;
}

GaussDiagram relabel(GaussDiagram const& d, Relabeling const& r) {
  auto point = [&](PointId p) {
    auto it = r.points.find(p);
    return it == r.points.end() ? p : it->second;
  };
  auto label = [&](Label l) {
    auto it = r.labels.find(l);
    return it == r.labels.end() ? l : it->second;
  };
  GaussDiagram out;
  for (auto const& circle : d.circles) {
    auto& target = out.circles.emplace_back();
    for (auto p : circle) target.push_back(point(p));
  }
  for (auto const& [p, l] : d.labels) out.labels.emplace(point(p), label(l));
  for (auto const& [l, order] : d.orders) {
    std::vector<Endpoint> seq;
    for (auto const& e : order.sequence()) seq.push_back({point(e.point), e.sign});
    out.orders.emplace(label(l), OrientedCyclicOrder(std::move(seq)).normalized());
  }
  return out;
}

GaussDiagram canonical_diagram(GaussDiagram const& d, CanonicalOptions opts) {
  auto out = relabel(d, canonical_relabeling(d, opts));
  // Circles in canonical order, each starting at its smallest new id.
  std::vector<std::vector<PointId>> marked;
  std::size_t loops = 0;
  for (auto& c : out.circles) {
    if (c.empty()) {
      ++loops;
      continue;
    }
    std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
    marked.push_back(std::move(c));
  }
  std::sort(marked.begin(), marked.end());
  marked.resize(marked.size() + loops);
  out.circles = std::move(marked);
  return out;
}

GaussDiagram embedded_circle() {
  GaussDiagram d;
  d.circles.emplace_back();
  return d;
}

GaussDiagram figure_eight() {
  GaussDiagram d;
  d.circles.push_back({0, 1});
  d.labels = {{0, 0}, {1, 0}};
  d.orders.emplace(0, OrientedCyclicOrder({{0, -1}, {1, -1}, {0, 1}, {1, 1}}));
  return d;
}

}  // namespace cactus
