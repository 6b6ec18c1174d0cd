#include "mecode/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "mecode/error.hpp"

namespace mecode {

Gamma Gamma::finite(double value) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw ValidationError("must be finite and > 0", "gamma");
  }
  return Gamma{value, false};
}

double Gamma::value() const {
  if (infinite_) throw ValidationError("gamma is infinite", "gamma");
  return value_;
}

std::string Gamma::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

namespace {

void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) throw ValidationError("must be finite", field);
}

}  // namespace

CostModel CostModel::create(double beta0, double beta1, double t0, double t1) {
  require_finite(beta0, "beta0");
  require_finite(beta1, "beta1");
  require_finite(t0, "t0");
  require_finite(t1, "t1");
  if (t0 <= 0) throw ValidationError("must be > 0", "t0");
  if (t1 <= 0) throw ValidationError("must be > 0", "t1");
  if (beta0 < 0) throw ValidationError("must be >= 0", "beta0");
  if (beta1 <= 0) throw ValidationError("must be > 0", "beta1");
  if (beta0 > beta1) {
    // Channel bit-1 is the cheap one: relabel so canonical bit-0 is cheap.
    return CostModel{beta1, beta0, t1, t0, true};
  }
  return CostModel{beta0, beta1, t0, t1, false};
}

Gamma CostModel::gamma() const {
  if (beta0_ == 0.0) return Gamma::infinite();
  return Gamma::finite(beta1_ / beta0_);
}

CostModel CostModel::scaled(double factor) const {
  if (!std::isfinite(factor) || factor <= 0) {
    throw ValidationError("must be finite and > 0", "scale");
  }
  return CostModel{beta0_ * factor, beta1_ * factor, t0_, t1_, inverted_};
}

SymbolSource SymbolSource::create(std::vector<double> probs) {
  if (probs.size() < 2) {
    throw ValidationError("need at least 2 symbols", "probs");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0) {
      throw ValidationError("probabilities must be finite and >= 0", "probs");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw ValidationError("probabilities must sum to 1", "probs");
  }

  SymbolSource src;
  src.order_.resize(probs.size());
  std::iota(src.order_.begin(), src.order_.end(), std::size_t{0});
  std::stable_sort(src.order_.begin(), src.order_.end(),
                   [&](std::size_t a, std::size_t b) { return probs[a] < probs[b]; });
  src.sorted_.reserve(probs.size());
  for (std::size_t i : src.order_) src.sorted_.push_back(probs[i]);
  src.uniform_ = src.sorted_.front() == src.sorted_.back();
  src.by_symbol_ = std::move(probs);
  return src;
}

SymbolSource SymbolSource::uniform(std::size_t m) {
  if (m < 2) throw ValidationError("need at least 2 symbols", "m");
  return create(std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

std::vector<std::size_t> SymbolSource::by_decreasing_probability() const {
  std::vector<std::size_t> idx(m());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return by_symbol_[a] > by_symbol_[b];
  });
  return idx;
}

namespace {

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) throw ParseError("unknown field '" + key + "'");
  }
}

double number_field(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  if (!it->is_number()) throw ParseError(std::string("field '") + key + "' must be a number");
  return it->get<double>();
}

}  // namespace

void to_json(nlohmann::json& j, const CostModel& cm) {
  // Emit channel orientation so a round trip reproduces the inversion flag.
  if (cm.inverted()) {
    j = {{"beta0", cm.beta1()}, {"beta1", cm.beta0()}, {"t0", cm.t1()}, {"t1", cm.t0()}};
  } else {
    j = {{"beta0", cm.beta0()}, {"beta1", cm.beta1()}, {"t0", cm.t0()}, {"t1", cm.t1()}};
  }
}

CostModel cost_model_from_json(const nlohmann::json& j) {
  reject_unknown(j, {"beta0", "beta1", "t0", "t1"});
  return CostModel::create(number_field(j, "beta0"), number_field(j, "beta1"),
                           number_field(j, "t0"), number_field(j, "t1"));
}

void to_json(nlohmann::json& j, const SymbolSource& src) {
  j = {{"probs", std::vector<double>(src.probs().begin(), src.probs().end())}};
}

SymbolSource symbol_source_from_json(const nlohmann::json& j) {
  reject_unknown(j, {"probs"});
  auto it = j.find("probs");
  if (it == j.end() || !it->is_array()) throw ParseError("'probs' must be an array");
  std::vector<double> probs;
  for (const auto& v : *it) {
    if (!v.is_number()) throw ParseError("'probs' entries must be numbers");
    probs.push_back(v.get<double>());
  }
  return SymbolSource::create(std::move(probs));
}

}  // namespace mecode
