#include "cactus/closure.hpp"

#include <algorithm>
#include <numeric>

namespace cactus {

GaussDiagram close(CactusWord const& w) {
  auto const n = static_cast<std::size_t>(w.n());
  // strand_at[pos] = strand (named by its starting position, 0-based).
  std::vector<std::size_t> strand_at(n);
  std::iota(strand_at.begin(), strand_at.end(), std::size_t{0});
  std::vector<std::vector<PointId>> events(n);
  GaussDiagram d;
  PointId next_point = 0;
  Label label = 0;
  for (auto const& g : w.letters()) {
    auto const p = static_cast<std::size_t>(g.p() - 1);
    auto const q = static_cast<std::size_t>(g.q() - 1);
    std::vector<PointId> branch(q - p + 1);
    for (std::size_t pos = p; pos <= q; ++pos) {
      PointId const id = next_point++;
      branch[pos - p] = id;
      events[strand_at[pos]].push_back(id);
      d.labels.emplace(id, label);
    }
    std::vector<Endpoint> seq;
    for (std::size_t j = branch.size(); j-- > 0;) seq.push_back({branch[j], -1});
    for (std::size_t j = branch.size(); j-- > 0;) seq.push_back({branch[j], +1});
    d.orders.emplace(label, OrientedCyclicOrder(std::move(seq)));
    std::reverse(strand_at.begin() + static_cast<std::ptrdiff_t>(p),
                 strand_at.begin() + static_cast<std::ptrdiff_t>(q + 1));
    ++label;
  }
  // The strand that ends at position j continues as the strand starting there.
  std::vector<std::size_t> continues(n);
  for (std::size_t pos = 0; pos < n; ++pos) continues[strand_at[pos]] = pos;
  std::vector<bool> seen(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    auto& circle = d.circles.emplace_back();
    for (std::size_t s = start; !seen[s]; s = continues[s]) {
      seen[s] = true;
      circle.insert(circle.end(), events[s].begin(), events[s].end());
    }
  }
  return d;
}

bool component_count_check(CactusWord const& w) {
  return close(w).circles.size() == perm_image(w).cycles().size();
}

}  // namespace cactus
