#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mecode/cost_model.hpp"

namespace mecode {

// A non-empty binary word. Ordering is lexicographic on the bit string,
// which coincides with depth-first (0-branch first) order in the code tree.
class Codeword {
 public:
  // Accepts a string of '0'/'1' characters.
  static Codeword from_string(std::string_view bits);

  std::size_t size() const noexcept { return bits_.size(); }
  std::size_t n0() const noexcept { return size() - n1_; }
  std::size_t n1() const noexcept { return n1_; }
  bool bit(std::size_t i) const { return bits_.at(i) == '1'; }
  const std::string& str() const noexcept { return bits_; }

  bool is_prefix_of(const Codeword& other) const noexcept;
  Codeword operator+(const Codeword& tail) const;
  Codeword inverted() const;

  friend bool operator==(const Codeword&, const Codeword&) = default;
  friend auto operator<=>(const Codeword& a, const Codeword& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  explicit Codeword(std::string bits);
  std::string bits_;
  std::size_t n1_ = 0;
};

// n0 * beta0 + n1 * beta1.
double codeword_cost(const Codeword& cw, const CostModel& cm);
// n0 * t0 + n1 * t1.
double codeword_duration(const Codeword& cw, const CostModel& cm);

enum class CodebookKind { fixed, prefix };

std::string to_string(CodebookKind kind);
CodebookKind codebook_kind_from_string(std::string_view s);

// True iff no word is a prefix of another (duplicates count as violations).
bool is_prefix_free(std::span<const Codeword> words);

// Symbol -> codeword table, indexed by the source's original symbol order.
class Codebook {
 public:
  // Validates: at least two entries, all distinct, equal length for fixed,
  // prefix-free for prefix.
  static Codebook create(CodebookKind kind, std::vector<Codeword> entries);
  static Codebook create(CodebookKind kind, std::span<const std::string_view> entries);

  CodebookKind kind() const noexcept { return kind_; }
  std::size_t m() const noexcept { return entries_.size(); }
  // Common length for fixed codebooks.
  std::optional<std::size_t> n() const noexcept;
  std::size_t max_length() const noexcept;
  const Codeword& operator[](std::size_t symbol) const { return entries_.at(symbol); }
  std::span<const Codeword> entries() const noexcept { return entries_; }

  // Sum of 2^-l_i.
  double kraft_sum() const;

  friend bool operator==(const Codebook&, const Codebook&) = default;

 private:
  Codebook(CodebookKind kind, std::vector<Codeword> entries)
      : kind_(kind), entries_(std::move(entries)) {}

  CodebookKind kind_;
  std::vector<Codeword> entries_;
};

bool is_prefix_free(const Codebook& cb);

// {"kind":"fixed"|"prefix", "n":int?, "entries":["bits",...]}
nlohmann::json codebook_to_json(const Codebook& cb);
Codebook codebook_from_json(const nlohmann::json& j);
std::string codebook_to_json_text(const Codebook& cb);
Codebook codebook_from_json_text(std::string_view text);

}  // namespace mecode
