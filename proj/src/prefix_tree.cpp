#include "mecode/prefix_tree.hpp"

#include <string>

#include "mecode/error.hpp"

namespace mecode {

PrefixTree::PrefixTree(unsigned depth, const CostModel& cm) : depth_(depth), cm_(cm) {
  if (depth < 1 || depth > kMaxTreeDepth) {
    throw ValidationError("tree depth must be in [1, " + std::to_string(kMaxTreeDepth) + "]",
                          "dp");
  }
}

Codeword PrefixTree::word(std::int64_t index) const {
  if (index < 0 || index >= size()) throw ValidationError("node index out of range", "index");
  std::string bits;
  // A half-tree rooted at length d holds 2^(depth-d+1) - 1 nodes.
  for (unsigned d = 1;; ++d) {
    const std::int64_t half = (std::int64_t{1} << (depth_ - d + 1)) - 1;
    if (index < half) {
      bits.push_back('0');
    } else {
      bits.push_back('1');
      index -= half;
    }
    if (index == 0) break;
    --index;  // step past the node itself into its subtree
  }
  return Codeword::from_string(bits);
}

double PrefixTree::cost(std::int64_t index) const { return codeword_cost(word(index), cm_); }

std::int64_t PrefixTree::index_of(const Codeword& cw) const {
  if (cw.size() > depth_) throw ValidationError("codeword deeper than tree", "codeword");
  std::int64_t index = 0;
  for (std::size_t i = 0; i < cw.size(); ++i) {
    const unsigned d = static_cast<unsigned>(i) + 1;
    if (i > 0) ++index;  // enter the subtree of the previous node
    if (cw.bit(i)) index += (std::int64_t{1} << (depth_ - d + 1)) - 1;
  }
  return index;
}

std::vector<std::vector<int>> ParentChildMatrix::dense() const {
  std::vector<std::vector<int>> out(rows.size(), std::vector<int>(columns(), 0));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out[r][rows[r].first] = 1;
    out[r][rows[r].second] = 1;
  }
  return out;
}

namespace {

// Half-tree of height h (root plus 2^h - 2 nodes) starting at offset.
void half_tree_pairs(unsigned h, std::int64_t offset,
                     std::vector<std::pair<std::int64_t, std::int64_t>>& rows) {
  const std::int64_t below = (std::int64_t{1} << h) - 2;
  for (std::int64_t k = 1; k <= below; ++k) rows.emplace_back(offset, offset + k);
  if (h <= 1) return;
  const std::int64_t child_size = (std::int64_t{1} << (h - 1)) - 1;
  half_tree_pairs(h - 1, offset + 1, rows);
  half_tree_pairs(h - 1, offset + 1 + child_size, rows);
}

}  // namespace

ParentChildMatrix parent_child_pairs(unsigned depth) {
  if (depth < 1 || depth > kMaxPairDepth) {
    throw ValidationError("pair list depth must be in [1, " + std::to_string(kMaxPairDepth) + "]",
                          "dp");
  }
  ParentChildMatrix p;
  p.depth = depth;
  const std::int64_t half = (std::int64_t{1} << depth) - 1;
  half_tree_pairs(depth, 0, p.rows);
  half_tree_pairs(depth, half, p.rows);
  return p;
}

std::size_t SelectionVector::count() const {
  std::size_t c = 0;
  for (auto v : a) c += v;
  return c;
}

bool SelectionVector::satisfies(const ParentChildMatrix& p) const {
  if (static_cast<std::int64_t>(a.size()) != p.columns()) return false;
  for (const auto& [i, j] : p.rows) {
    if (a[i] + a[j] > 1) return false;
  }
  return true;
}

SelectionVector selection_of(const PrefixTree& tree, std::span<const Codeword> words) {
  SelectionVector sel;
  sel.a.assign(static_cast<std::size_t>(tree.size()), 0);
  for (const auto& w : words) sel.a[tree.index_of(w)] = 1;
  return sel;
}

std::vector<Codeword> selected_words(const PrefixTree& tree, const SelectionVector& sel) {
  std::vector<Codeword> out;
  for (std::size_t i = 0; i < sel.a.size(); ++i) {
    if (sel.a[i]) out.push_back(tree.word(static_cast<std::int64_t>(i)));
  }
  return out;
}

}  // namespace mecode
