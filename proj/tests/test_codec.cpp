#include <random>

#include "doctest.h"
#include "mecode/codec.hpp"
#include "mecode/error.hpp"
#include "mecode/metrics.hpp"
#include "support.hpp"

using namespace mecode;

namespace {

std::vector<std::size_t> random_symbols(std::mt19937_64& rng, std::size_t count, std::size_t m) {
  std::uniform_int_distribution<std::size_t> d(0, m - 1);
  std::vector<std::size_t> out(count);
  for (auto& s : out) s = d(rng);
  return out;
}

std::uint64_t decode_error_offset(const BitStream& bs, const Codebook& cb) {
  try {
    decode(bs, cb);
  } catch (const DecodeError& e) {
    return e.bit_offset();
  }
  return ~std::uint64_t{0};
}

}  // namespace

TEST_SUITE("codec") {
  TEST_CASE("encoding examples") {
    const std::vector<std::size_t> sevens{7, 7};
    CHECK(encode(sevens, fixtures::reference_prefix()).str() == "000000000000");
    CHECK(encode(std::vector<std::size_t>{}, fixtures::reference_prefix()).empty());
    const std::vector<std::size_t> first{0, 1, 2};
    CHECK(encode(first, fixtures::reference_fixed()).str() == "000001010");
    const std::vector<std::size_t> bad{0, 8};
    CHECK_THROWS_AS(encode(bad, fixtures::reference_fixed()), ValidationError);
  }

  TEST_CASE("decoding examples") {
    CHECK(decode(BitStream::from_string("11 10 01 001"), fixtures::reference_prefix()) ==
          std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(decode_error_offset(BitStream::from_string("0000000"), fixtures::reference_fixed()) == 6);
    CHECK(decode_error_offset(BitStream::from_string("11 000"), fixtures::reference_prefix()) == 2);
    std::vector<std::string_view> partial{"1", "01", "001"};
    const auto incomplete =
        Codebook::create(CodebookKind::prefix, std::span<const std::string_view>(partial));
    CHECK(decode_error_offset(BitStream::from_string("01 000"), incomplete) == 4);  // first bit off the tree
    std::vector<std::string_view> sparse{"00", "01", "10"};
    const auto holey = Codebook::create(CodebookKind::fixed, std::span<const std::string_view>(sparse));
    CHECK(decode_error_offset(BitStream::from_string("10 11"), holey) == 2);
  }

  TEST_CASE("round trip, both kinds, both orientations") {
    std::mt19937_64 rng(1);
    for (const auto& cb : {fixtures::reference_fixed(), fixtures::reference_prefix()}) {
      for (auto orient : {Orientation::canonical, Orientation::inverted}) {
        const auto symbols = random_symbols(rng, 10'000, 8);
        const auto bs = encode(symbols, cb, orient);
        CHECK(decode(bs, cb, orient) == symbols);
        CHECK(BitStream::from_bytes(bs.to_bytes()) == bs);
      }
    }
  }

  TEST_CASE("inversion complements channel bits") {
    const std::vector<std::size_t> s{0, 3, 7};
    const auto cb = fixtures::reference_prefix();
    const auto plain = encode(s, cb);
    const auto flipped = encode(s, cb, Orientation::inverted);
    REQUIRE(plain.size() == flipped.size());
    for (std::uint64_t i = 0; i < plain.size(); ++i) CHECK(plain[i] != flipped[i]);
    // channel where bit-1 is the cheap one
    const auto channel = CostModel::create(5, 1, 1, 1);
    CHECK(stream_cost(flipped, channel, orientation_of(channel)) ==
          stream_cost(plain, fixtures::gamma5()));
  }

  TEST_CASE("stream cost") {
    const std::vector<std::size_t> all{0, 1, 2, 3, 4, 5, 6, 7};
    CHECK(stream_cost(all, fixtures::reference_prefix(), fixtures::gamma5()) == 62.0);
    CHECK(stream_cost(std::vector<std::size_t>{}, fixtures::reference_prefix(), fixtures::gamma5()) ==
          0.0);
    const auto cm = CostModel::create(0.4, 2, 1, 1);
    CHECK(stream_cost(std::vector<std::size_t>{0}, fixtures::reference_fixed(), cm) == 3 * 0.4);
    std::mt19937_64 rng(4);
    const auto s = random_symbols(rng, 500, 8);
    double parts = 0;
    for (auto x : s) parts += codeword_cost(fixtures::reference_prefix()[x], cm);
    CHECK(stream_cost(s, fixtures::reference_prefix(), cm) == doctest::Approx(parts).epsilon(1e-14));
    CHECK(stream_cost(encode(s, fixtures::reference_prefix()), cm) ==
          doctest::Approx(parts).epsilon(1e-14));
  }

  TEST_CASE("empirical cost converges to the expected cost") {
    const auto src = SymbolSource::create({0.4, 0.2, 0.1, 0.1, 0.05, 0.05, 0.05, 0.05});
    const auto cb = fixtures::reference_prefix();
    const auto cm = fixtures::gamma5();
    std::mt19937_64 rng(8);
    std::discrete_distribution<std::size_t> d(src.probs().begin(), src.probs().end());
    std::vector<std::size_t> s(100'000);
    for (auto& x : s) x = d(rng);
    const double empirical = stream_cost(s, cb, cm) / static_cast<double>(s.size());
    CHECK(empirical == doctest::Approx(average_cost(src, cb, cm)).epsilon(0.02));
  }

  TEST_CASE("prefix decoding is online") {
    const auto cb = fixtures::reference_prefix();
    const std::vector<std::size_t> s{4, 0, 7, 2, 6};
    const auto bs = encode(s, cb);
    PrefixDecoder dec(cb);
    std::vector<std::size_t> out;
    std::uint64_t boundary = 0;
    for (std::uint64_t i = 0; i < bs.size(); ++i) {
      if (auto sym = dec.push(bs[i])) {
        boundary += cb[*sym].size();
        CHECK(i + 1 == boundary);  // emitted on the codeword's last bit
        CHECK(dec.at_boundary());
        out.push_back(*sym);
      } else {
        CHECK_FALSE(dec.at_boundary());
      }
    }
    CHECK(out == s);
  }

  TEST_CASE("byte serialization") {
    const auto bs = BitStream::from_string("1011 0000 1");
    const auto bytes = bs.to_bytes();
    REQUIRE(bytes.size() == 10);
    CHECK(bytes[0] == 9);
    for (int i = 1; i < 8; ++i) CHECK(bytes[i] == 0);
    CHECK(bytes[8] == 0xB0);
    CHECK(bytes[9] == 0x80);
    CHECK(BitStream::from_bytes(bytes) == bs);
    auto padded = bytes;
    padded[9] = 0x81;
    CHECK_THROWS_AS(BitStream::from_bytes(padded), ParseError);
    auto truncated = bytes;
    truncated.pop_back();
    CHECK_THROWS_AS(BitStream::from_bytes(truncated), ParseError);
    CHECK(BitStream::from_bytes(BitStream{}.to_bytes()).empty());
  }

  TEST_CASE("symbol text") {
    CHECK(parse_symbols(" 3 0\n12\t7 ") == std::vector<std::size_t>{3, 0, 12, 7});
    CHECK(parse_symbols("").empty());
    CHECK_THROWS_AS(parse_symbols("1 x 2"), ParseError);
    CHECK(format_symbols(std::vector<std::size_t>{3, 0, 12}) == "3 0 12\n");
  }
}
