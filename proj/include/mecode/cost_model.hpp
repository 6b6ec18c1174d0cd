#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace mecode {

// Ratio beta1 / beta0. Infinite when bit-0 is free; kept as an explicit
// flag so callers never do arithmetic on an IEEE infinity.
class Gamma {
 public:
  static Gamma finite(double value);
  static Gamma infinite() { return Gamma{0.0, true}; }

  bool is_infinite() const noexcept { return infinite_; }
  // Throws ValidationError when infinite.
  double value() const;
  std::string to_string() const;

 private:
  Gamma(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

// Per-bit transmission economics of a binary channel.
//
// Always held in canonical orientation beta0 <= beta1. When the caller
// supplies beta0 > beta1 the two bit roles (costs and durations) are
// swapped and inverted() is set; the codec then complements every bit on
// its way to and from the channel.
class CostModel {
 public:
  static CostModel create(double beta0, double beta1, double t0, double t1);

  double beta0() const noexcept { return beta0_; }
  double beta1() const noexcept { return beta1_; }
  double t0() const noexcept { return t0_; }
  double t1() const noexcept { return t1_; }
  double delta_beta() const noexcept { return beta1_ - beta0_; }
  bool inverted() const noexcept { return inverted_; }
  Gamma gamma() const;

  // Same economics with both costs multiplied by factor > 0.
  CostModel scaled(double factor) const;

  friend bool operator==(const CostModel&, const CostModel&) = default;

 private:
  CostModel(double b0, double b1, double t0, double t1, bool inv)
      : beta0_(b0), beta1_(b1), t0_(t0), t1_(t1), inverted_(inv) {}

  double beta0_;
  double beta1_;
  double t0_;
  double t1_;
  bool inverted_;
};

// Discrete memoryless source with M symbols.
//
// Probabilities are kept sorted ascending (p_1 <= ... <= p_M) alongside the
// permutation back to the caller's symbol indices.
class SymbolSource {
 public:
  static constexpr double kSumTolerance = 1e-9;

  static SymbolSource create(std::vector<double> probs);
  static SymbolSource uniform(std::size_t m);

  std::size_t m() const noexcept { return sorted_.size(); }
  bool is_uniform() const noexcept { return uniform_; }

  // Probability of the symbol with original index i.
  double prob(std::size_t i) const { return by_symbol_.at(i); }
  std::span<const double> probs() const noexcept { return by_symbol_; }
  // Ascending view and the original index of each sorted slot.
  std::span<const double> sorted_probs() const noexcept { return sorted_; }
  std::size_t original_index(std::size_t sorted_slot) const {
    return order_.at(sorted_slot);
  }
  // Original indices from most to least probable; equal probabilities keep
  // ascending original index.
  std::vector<std::size_t> by_decreasing_probability() const;

 private:
  SymbolSource() = default;

  std::vector<double> by_symbol_;
  std::vector<double> sorted_;
  std::vector<std::size_t> order_;
  bool uniform_ = false;
};

void to_json(nlohmann::json& j, const CostModel& cm);
void to_json(nlohmann::json& j, const SymbolSource& src);

CostModel cost_model_from_json(const nlohmann::json& j);
SymbolSource symbol_source_from_json(const nlohmann::json& j);

}  // namespace mecode
