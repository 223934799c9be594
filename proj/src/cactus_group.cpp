#include "cactus/cactus_group.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cactus {

Generator::Generator(int p, int q, int n) : p_(p), q_(q), n_(n) {
  if (!(1 <= p && p < q && q <= n)) {
    throw std::invalid_argument("generator s(" + std::to_string(p) + "," +
                                std::to_string(q) + ") requires 1 <= p < q <= n = " +
                                std::to_string(n));
  }
}

CactusWord::CactusWord(int n, std::vector<Generator> letters)
    : n_(n), letters_(std::move(letters)) {
  if (n < 1) {
    throw std::invalid_argument("strand count must be positive");
  }
  for (auto const& g : letters_) {
    if (g.n() != n) {
      throw std::invalid_argument("letter s(" + std::to_string(g.p()) + "," +
                                  std::to_string(g.q()) + ") has n = " +
                                  std::to_string(g.n()) + ", word has n = " +
                                  std::to_string(n));
    }
  }
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 1 || v > degree() || seen[static_cast<std::size_t>(v - 1)]) {
      throw std::invalid_argument("not a permutation");
    }
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = i + 1;
  return Permutation(std::move(images));
}

Permutation Permutation::then(Permutation const& next) const {
  if (next.degree() != degree()) {
    throw std::invalid_argument("composing permutations of different degree");
  }
  std::vector<int> images(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) images[i] = next(images_[i]);
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> images(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    images[static_cast<std::size_t>(images_[i] - 1)] = static_cast<int>(i) + 1;
  }
  return Permutation(std::move(images));
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> result;
  std::vector<bool> seen(images_.size(), false);
  for (int start = 1; start <= degree(); ++start) {
    if (seen[static_cast<std::size_t>(start - 1)]) continue;
    auto& cycle = result.emplace_back();
    for (int i = start; !seen[static_cast<std::size_t>(i - 1)]; i = (*this)(i)) {
      seen[static_cast<std::size_t>(i - 1)] = true;
      cycle.push_back(i);
    }
  }
  return result;
}

Permutation perm_of_generator(Generator const& g) {
  auto images = Permutation::identity(g.n()).images();
  for (int i = g.p(); i <= g.q(); ++i) {
    images[static_cast<std::size_t>(i - 1)] = g.p() + g.q() - i;
  }
  return Permutation(std::move(images));
}

Permutation perm_image(CactusWord const& w) {
  auto result = Permutation::identity(w.n());
  for (auto const& g : w.letters()) result = result.then(perm_of_generator(g));
  return result;
}

namespace {

// The relation s_{p,q} s_{m,r} = s_{p+q-r, p+q-m} s_{p,q} for [m,r] inside [p,q].
Generator reflect_inside(Generator const& outer, Generator const& inner) {
  int const s = outer.p() + outer.q();
  return Generator(s - inner.q(), s - inner.p(), outer.n());
}

std::optional<RelationKind> classify(Generator const& a, Generator const& b) {
  if (a == b) return RelationKind::C1;
  if (a.disjoint_from(b)) return RelationKind::C2;
  if (a.strictly_contains(b) || b.strictly_contains(a)) return RelationKind::C3;
  return std::nullopt;
}

}  // namespace

std::vector<RelationInstance> find_relations(CactusWord const& w) {
  std::vector<RelationInstance> found;
  auto const& letters = w.letters();
  for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
    if (auto kind = classify(letters[i], letters[i + 1])) {
      found.push_back({*kind, i, letters[i], letters[i + 1]});
    }
  }
  return found;
}

std::vector<Generator> rewrite_pair(RelationInstance const& rel) {
  auto const& a = rel.first;
  auto const& b = rel.second;
  if (classify(a, b) != rel.kind) {
    throw std::invalid_argument("letters do not match relation " + to_string(rel.kind));
  }
  switch (rel.kind) {
    case RelationKind::C1:
      return {};
    case RelationKind::C2:
      return {b, a};
    case RelationKind::C3:
      // s_{p,q} s_{m,r} -> s_{p+q-r,p+q-m} s_{p,q}, or the reverse rewrite
      // s_{m',r'} s_{p,q} -> s_{p,q} s_{p+q-r',p+q-m'}.
      if (a.strictly_contains(b)) return {reflect_inside(a, b), a};
      return {b, reflect_inside(b, a)};
  }
  return {};
}

CactusWord apply_relation(CactusWord const& w, RelationInstance const& rel) {
  auto const& letters = w.letters();
  if (rel.position + 1 >= letters.size() || letters[rel.position] != rel.first ||
      letters[rel.position + 1] != rel.second) {
    throw std::invalid_argument("relation instance does not match the word");
  }
  auto replacement = rewrite_pair(rel);
  std::vector<Generator> out(letters.begin(),
                             letters.begin() + static_cast<std::ptrdiff_t>(rel.position));
  out.insert(out.end(), replacement.begin(), replacement.end());
  out.insert(out.end(), letters.begin() + static_cast<std::ptrdiff_t>(rel.position + 2),
             letters.end());
  return CactusWord(w.n(), std::move(out));
}

WordEquality bounded_word_equal(CactusWord const& lhs, CactusWord const& rhs,
                                std::size_t depth) {
  if (lhs.n() != rhs.n()) {
    throw std::invalid_argument("words over different strand counts");
  }
  if (lhs == rhs) return WordEquality::equal;
  std::set<CactusWord> seen{lhs};
  std::vector<CactusWord> frontier{lhs};
  for (std::size_t level = 0; level < depth && !frontier.empty(); ++level) {
    std::vector<CactusWord> next;
    for (auto const& w : frontier) {
      for (auto const& rel : find_relations(w)) {
        auto rewritten = apply_relation(w, rel);
        if (rewritten == rhs) return WordEquality::equal;
        if (seen.insert(rewritten).second) next.push_back(std::move(rewritten));
      }
    }
    frontier = std::move(next);
  }
  return WordEquality::unknown;
}

namespace {

int parse_int(std::string_view s, std::string_view what) {
  int value = 0;
  auto const* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("bad integer in " + std::string(what) + ": '" +
                                std::string(s) + "'");
  }
  return value;
}

}  // namespace

CactusWord parse_word(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string token;
  if (!(in >> token) || token.rfind("n=", 0) != 0) {
    throw std::invalid_argument("word must start with a header n=<int>");
  }
  int const n = parse_int(std::string_view(token).substr(2), "header");
  if (n < 1) throw std::invalid_argument("strand count must be positive");
  std::vector<Generator> letters;
  while (in >> token) {
    std::string_view t = token;
    if (t.size() < 6 || t.substr(0, 2) != "s(" || t.back() != ')') {
      throw std::invalid_argument("bad token '" + token + "', expected s(p,q)");
    }
    auto body = t.substr(2, t.size() - 3);
    auto comma = body.find(',');
    if (comma == std::string_view::npos) {
      throw std::invalid_argument("bad token '" + token + "', expected s(p,q)");
    }
    int const p = parse_int(body.substr(0, comma), token);
    int const q = parse_int(body.substr(comma + 1), token);
    letters.emplace_back(p, q, n);
  }
  return CactusWord(n, std::move(letters));
}

std::string format_word(CactusWord const& w) {
  std::string out = "n=" + std::to_string(w.n());
  for (auto const& g : w.letters()) {
    out += " s(" + std::to_string(g.p()) + "," + std::to_string(g.q()) + ")";
  }
  return out;
}

std::string to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::C1: return "C1";
    case RelationKind::C2: return "C2";
    case RelationKind::C3: return "C3";
  }
  return "?";
}

}  // namespace cactus
