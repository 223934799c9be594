#pragma once

// Words in the cactus group J_n, the three relation families and the
// homomorphism J_n -> S_n given by interval reversal.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cactus {

/// The generator s_{p,q} of J_n, 1 <= p < q <= n. Strand indices are 1-based.
class Generator {
 public:
  Generator(int p, int q, int n);

  int p() const noexcept { return p_; }
  int q() const noexcept { return q_; }
  int n() const noexcept { return n_; }
  int width() const noexcept { return q_ - p_ + 1; }

  bool disjoint_from(Generator const& other) const noexcept {
    return q_ < other.p_ || other.q_ < p_;
  }
  /// Strict nesting: [other.p, other.q] is a proper subinterval of [p, q].
  bool strictly_contains(Generator const& other) const noexcept {
    return p_ <= other.p_ && other.q_ <= q_ && width() > other.width();
  }

  friend bool operator==(Generator const&, Generator const&) = default;
  friend auto operator<=>(Generator const&, Generator const&) = default;

 private:
  int p_;
  int q_;
  int n_;
};

/// A finite word in the generators of J_n. The empty word is the identity.
class CactusWord {
 public:
  explicit CactusWord(int n, std::vector<Generator> letters = {});

  int n() const noexcept { return n_; }
  std::vector<Generator> const& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  friend bool operator==(CactusWord const&, CactusWord const&) = default;
  friend auto operator<=>(CactusWord const&, CactusWord const&) = default;

 private:
  int n_;
  std::vector<Generator> letters_;
};

/// A permutation of {1, ..., n}; images[i - 1] is the image of i.
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);

  int degree() const noexcept { return static_cast<int>(images_.size()); }
  std::vector<int> const& images() const noexcept { return images_; }
  int operator()(int i) const { return images_.at(static_cast<std::size_t>(i - 1)); }

  /// The permutation "this first, then next".
  Permutation then(Permutation const& next) const;
  Permutation inverse() const;
  /// Cycles in order of their smallest element, each starting there.
  std::vector<std::vector<int>> cycles() const;

  friend bool operator==(Permutation const&, Permutation const&) = default;

 private:
  std::vector<int> images_;
};

enum class RelationKind { C1, C2, C3 };

/// A located match of a defining relation at letters (position, position+1).
/// `first` and `second` are the two letters as they appear in the word.
struct RelationInstance {
  RelationKind kind;
  std::size_t position;
  Generator first;
  Generator second;

  friend bool operator==(RelationInstance const&, RelationInstance const&) = default;
};

Permutation perm_of_generator(Generator const& g);

/// Left-to-right product: the leftmost letter acts first on strand positions.
Permutation perm_image(CactusWord const& w);

std::vector<RelationInstance> find_relations(CactusWord const& w);

/// Throws std::invalid_argument if `rel` does not match `w`.
CactusWord apply_relation(CactusWord const& w, RelationInstance const& rel);

/// The right-hand side of a matched pair of letters.
std::vector<Generator> rewrite_pair(RelationInstance const& rel);

enum class WordEquality { equal, unknown };

/// Breadth-first search over relation rewrites starting from `lhs`, at most
/// `depth` rewrites deep. Returns `equal` only when `rhs` is reached.
WordEquality bounded_word_equal(CactusWord const& lhs, CactusWord const& rhs,
                                std::size_t depth);

/// Parses "n=<int> s(p,q) s(p,q) ...". Throws std::invalid_argument.
CactusWord parse_word(std::string_view text);
std::string format_word(CactusWord const& w);
std::string to_string(RelationKind kind);

}  // namespace cactus
