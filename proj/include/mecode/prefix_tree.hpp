#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mecode/codebook.hpp"
#include "mecode/cost_model.hpp"

namespace mecode {

inline constexpr unsigned kMaxTreeDepth = 30;
// Largest depth for which the ancestor-pair list is materialized.
inline constexpr unsigned kMaxPairDepth = 16;

// All non-empty words of length <= depth, numbered depth-first with the
// 0-branch before the 1-branch:
//   depth 2 -> 0, 00, 01, 1, 10, 11.
// Nodes are computed from their index, never stored, so the tree is cheap
// at any supported depth.
class PrefixTree {
 public:
  PrefixTree(unsigned depth, const CostModel& cm);

  unsigned depth() const noexcept { return depth_; }
  // 2^(depth+1) - 2.
  std::int64_t size() const noexcept { return (std::int64_t{2} << depth_) - 2; }

  Codeword word(std::int64_t index) const;
  double cost(std::int64_t index) const;
  std::int64_t index_of(const Codeword& cw) const;

  // Nodes strictly below a node at word-length d: 2^(depth-d+1) - 2. They
  // occupy the indices immediately after it.
  std::int64_t descendant_count(unsigned length) const noexcept {
    return (std::int64_t{2} << (depth_ - length)) - 2;
  }

  const CostModel& cost_model() const noexcept { return cm_; }

 private:
  unsigned depth_;
  CostModel cm_;
};

// Sparse ancestor/descendant incidence: one (ancestor, descendant) index
// pair per row, rows ordered by ancestor then descendant.
struct ParentChildMatrix {
  unsigned depth = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> rows;

  std::int64_t columns() const noexcept { return (std::int64_t{2} << depth) - 2; }
  // Dense 0/1 rows; only sensible for small depths.
  std::vector<std::vector<int>> dense() const;
};

// Built recursively: each half-tree contributes its root paired with every
// node beneath it, followed by the pairs of its two half-subtrees.
ParentChildMatrix parent_child_pairs(unsigned depth);

// 0/1 selection over tree nodes.
struct SelectionVector {
  std::vector<std::uint8_t> a;

  std::size_t count() const;
  // P * a <= 1 row by row.
  bool satisfies(const ParentChildMatrix& p) const;
};

SelectionVector selection_of(const PrefixTree& tree, std::span<const Codeword> words);
std::vector<Codeword> selected_words(const PrefixTree& tree, const SelectionVector& sel);

}  // namespace mecode
