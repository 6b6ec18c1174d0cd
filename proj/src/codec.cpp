#include "mecode/codec.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "mecode/error.hpp"

namespace mecode {

BitStream BitStream::from_string(std::string_view bits) {
  BitStream bs;
  for (char c : bits) {
    if (c == '0' || c == '1') {
      bs.push_back(c == '1');
    } else if (c != ' ') {
      throw ValidationError("bit string may contain only '0', '1' and spaces", "bits");
    }
  }
  return bs;
}

void BitStream::append(const Codeword& cw) {
  for (char c : cw.str()) bits_.push_back(c == '1' ? 1 : 0);
}

std::string BitStream::str() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::uint64_t BitStream::count_ones() const {
  std::uint64_t n = 0;
  for (auto b : bits_) n += b;
  return n;
}

std::vector<std::uint8_t> BitStream::to_bytes() const {
  std::vector<std::uint8_t> out(8 + (bits_.size() + 7) / 8, 0);
  const std::uint64_t n = bits_.size();
  for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(n >> (8 * i));
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out[8 + i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return out;
}

BitStream BitStream::from_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8) throw ParseError("bitstream shorter than its 8-byte header");
  std::uint64_t n = 0;
  for (int i = 0; i < 8; ++i) n |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  const std::uint64_t payload = bytes.size() - 8;
  if (n > payload * 8 || (n + 7) / 8 != payload) {
    throw ParseError("bitstream header says " + std::to_string(n) + " bits but payload has " +
                     std::to_string(payload) + " bytes");
  }
  BitStream bs;
  bs.bits_.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    bs.bits_.push_back((bytes[8 + i / 8] >> (7 - i % 8)) & 1u);
  }
  if (n % 8 != 0) {
    const std::uint8_t pad_mask = static_cast<std::uint8_t>(0xFFu >> (n % 8));
    if (bytes.back() & pad_mask) throw ParseError("non-zero padding bits in bitstream");
  }
  return bs;
}

BitStream encode(std::span<const std::size_t> symbols, const Codebook& cb,
                 Orientation orientation) {
  BitStream bs;
  const bool flip = orientation == Orientation::inverted;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] >= cb.m()) {
      throw ValidationError("symbol " + std::to_string(symbols[i]) + " at position " +
                                std::to_string(i) + " is outside [0, " + std::to_string(cb.m()) +
                                ")",
                            "symbols");
    }
    const Codeword& cw = cb[symbols[i]];
    bs.append(flip ? cw.inverted() : cw);
  }
  return bs;
}

PrefixDecoder::PrefixDecoder(const Codebook& cb) : nodes_(1) {
  for (std::size_t s = 0; s < cb.m(); ++s) {
    std::size_t at = 0;
    for (char c : cb[s].str()) {
      const int b = c == '1';
      if (nodes_[at].child[b] < 0) {
        nodes_[at].child[b] = static_cast<std::int32_t>(nodes_.size());
        nodes_.emplace_back();
      }
      at = static_cast<std::size_t>(nodes_[at].child[b]);
    }
    nodes_[at].symbol = static_cast<std::int64_t>(s);
  }
}

std::optional<std::size_t> PrefixDecoder::push(bool bit) {
  const auto next = nodes_[node_].child[bit ? 1 : 0];
  if (next < 0) throw DecodeError("bit sequence matches no codeword", consumed_);
  ++consumed_;
  node_ = static_cast<std::size_t>(next);
  if (nodes_[node_].symbol >= 0) {
    const auto s = static_cast<std::size_t>(nodes_[node_].symbol);
    node_ = 0;
    return s;
  }
  return std::nullopt;
}

std::vector<std::size_t> decode(const BitStream& bs, const Codebook& cb,
                                Orientation orientation) {
  const bool flip = orientation == Orientation::inverted;
  std::vector<std::size_t> out;
  if (cb.kind() == CodebookKind::fixed) {
    const std::size_t n = *cb.n();
    if (bs.size() % n != 0) {
      throw DecodeError("stream length " + std::to_string(bs.size()) +
                            " is not a multiple of the code length " + std::to_string(n),
                        bs.size() - bs.size() % n);
    }
    std::unordered_map<std::string, std::size_t> lookup;
    for (std::size_t s = 0; s < cb.m(); ++s) lookup.emplace(cb[s].str(), s);
    std::string chunk(n, '0');
    for (std::uint64_t at = 0; at < bs.size(); at += n) {
      for (std::size_t k = 0; k < n; ++k) chunk[k] = (bs[at + k] != flip) ? '1' : '0';
      auto it = lookup.find(chunk);
      if (it == lookup.end()) throw DecodeError("chunk '" + chunk + "' is not a codeword", at);
      out.push_back(it->second);
    }
    return out;
  }

  PrefixDecoder dec(cb);
  std::uint64_t start = 0;
  for (std::uint64_t i = 0; i < bs.size(); ++i) {
    if (auto s = dec.push(bs[i] != flip)) {
      out.push_back(*s);
      start = i + 1;
    }
  }
  if (!dec.at_boundary()) throw DecodeError("stream ends inside a codeword", start);
  return out;
}

double stream_cost(std::span<const std::size_t> symbols, const Codebook& cb, const CostModel& cm) {
  double total = 0.0;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] >= cb.m()) {
      throw ValidationError("symbol " + std::to_string(symbols[i]) + " is out of range",
                            "symbols");
    }
    total += codeword_cost(cb[symbols[i]], cm);
  }
  return total;
}

double stream_cost(const BitStream& bs, const CostModel& cm, Orientation orientation) {
  std::uint64_t ones = bs.count_ones();
  std::uint64_t zeros = bs.size() - ones;
  if (orientation == Orientation::inverted) std::swap(ones, zeros);
  return static_cast<double>(zeros) * cm.beta0() + static_cast<double>(ones) * cm.beta1();
}

std::vector<std::size_t> parse_symbols(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size()) break;
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    const auto end = static_cast<std::size_t>(ptr - text.data());
    if (ec != std::errc{} || (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])))) {
      throw ParseError("invalid symbol at character " + std::to_string(i));
    }
    out.push_back(value);
    i = end;
  }
  return out;
}

std::string format_symbols(std::span<const std::size_t> symbols) {
  std::ostringstream os;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    os << symbols[i] << (i + 1 == symbols.size() ? "\n" : " ");
  }
  return os.str();
}

}  // namespace mecode
