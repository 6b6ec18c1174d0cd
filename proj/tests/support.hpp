#pragma once

#include <array>
#include <string_view>

#include "mecode/codebook.hpp"
#include "mecode/cost_model.hpp"

namespace fixtures {

// Reference M=8, cost ratio 5 codebooks, listed by source symbol 000..111.
inline mecode::Codebook reference_fixed() {
  static constexpr std::array<std::string_view, 8> e{"000", "001", "010", "100",
                                                     "011", "101", "110", "111"};
  return mecode::Codebook::create(mecode::CodebookKind::fixed, e);
}

inline mecode::Codebook reference_prefix() {
  static constexpr std::array<std::string_view, 8> e{"11",   "10",    "01",     "001",
                                                     "0001", "00001", "000001", "000000"};
  return mecode::Codebook::create(mecode::CodebookKind::prefix, e);
}

inline mecode::CostModel gamma5() { return mecode::CostModel::create(1, 5, 1, 1); }

}  // namespace fixtures
