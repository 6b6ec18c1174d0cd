#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mecode/codebook.hpp"
#include "mecode/cost_model.hpp"

namespace mecode {

// Ordered bits. Serialized as an 8-byte little-endian bit count followed by
// the bits packed MSB-first; padding bits in the last byte are zero.
class BitStream {
 public:
  BitStream() = default;
  static BitStream from_string(std::string_view bits);

  std::uint64_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::uint64_t i) const { return bits_.at(i) != 0; }
  void push_back(bool bit) { bits_.push_back(bit ? 1 : 0); }
  void append(const Codeword& cw);
  std::string str() const;
  std::uint64_t count_ones() const;

  std::vector<std::uint8_t> to_bytes() const;
  static BitStream from_bytes(std::span<const std::uint8_t> bytes);

  friend bool operator==(const BitStream&, const BitStream&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// Channel bit orientation. Codebooks are held canonically (bit-0 cheap);
// when the channel's cheap bit is 1 every bit is complemented on the wire.
enum class Orientation { canonical, inverted };

inline Orientation orientation_of(const CostModel& cm) {
  return cm.inverted() ? Orientation::inverted : Orientation::canonical;
}

BitStream encode(std::span<const std::size_t> symbols, const Codebook& cb,
                 Orientation orientation = Orientation::canonical);

std::vector<std::size_t> decode(const BitStream& bs, const Codebook& cb,
                                Orientation orientation = Orientation::canonical);

// Online decoder for prefix codes: feed bits one at a time, a symbol comes
// out exactly at each codeword boundary.
class PrefixDecoder {
 public:
  explicit PrefixDecoder(const Codebook& cb);

  // Throws DecodeError when the bits walk off the code tree.
  std::optional<std::size_t> push(bool bit);
  // True when the bits consumed so far end on a codeword boundary.
  bool at_boundary() const noexcept { return node_ == 0; }
  std::uint64_t bits_consumed() const noexcept { return consumed_; }

 private:
  struct Node {
    std::int32_t child[2] = {-1, -1};
    std::int64_t symbol = -1;
  };
  std::vector<Node> nodes_;
  std::size_t node_ = 0;
  std::uint64_t consumed_ = 0;
};

// Total cost of transmitting the symbols with cb.
double stream_cost(std::span<const std::size_t> symbols, const Codebook& cb, const CostModel& cm);
// Total cost of a channel bitstream.
double stream_cost(const BitStream& bs, const CostModel& cm,
                   Orientation orientation = Orientation::canonical);

// Whitespace-separated non-negative integers.
std::vector<std::size_t> parse_symbols(std::string_view text);
std::string format_symbols(std::span<const std::size_t> symbols);

}  // namespace mecode
