#include "mecode/rfid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mecode/error.hpp"

namespace mecode::rfid {

namespace {

void require_positive(double v, const char* field) {
  if (!std::isfinite(v) || v <= 0) throw ValidationError("must be finite and > 0", field);
}

}  // namespace

double wavelength_for(double frequency_hz) {
  require_positive(frequency_hz, "freq");
  return kSpeedOfLight / frequency_hz;
}

void RfidLink::validate() const {
  require_positive(p_t, "p_t");
  require_positive(g_t, "g_t");
  require_positive(g_r, "g_r");
  require_positive(lambda, "lambda");
  require_positive(r, "r");
  require_positive(l_p, "l_p");
  if (l_p > 1) throw ValidationError("must be <= 1", "l_p");
  require_positive(r_ant, "r_ant");
  if (n_stages < 1) throw ValidationError("must be >= 1", "n_stages");
  if (!std::isfinite(v_t) || v_t < 0) throw ValidationError("must be finite and >= 0", "v_t");
  require_positive(p_tag, "p_tag");
  require_positive(t0, "t0");
  require_positive(t1, "t1");
  require_positive(mismatch, "mismatch");
  if (mismatch > 1) throw ValidationError("must be <= 1", "mismatch");
}

std::string to_string(Regime regime) { return regime == Regime::deficit ? "deficit" : "surplus"; }

double input_power(const RfidLink& link) {
  link.validate();
  const double path = link.lambda / (4.0 * std::numbers::pi * link.r);
  return link.p_t * path * path * link.g_t * link.g_r * link.l_p * link.mismatch;
}

double antenna_voltage(const RfidLink& link) {
  return 2.0 * std::sqrt(2.0 * link.r_ant * input_power(link));
}

double rectifier_dc_voltage(const RfidLink& link) {
  return 2.0 * link.n_stages * std::max(0.0, antenna_voltage(link) - link.v_t);
}

double harvested_dc_power(const RfidLink& link) {
  const double p_in = input_power(link);
  const double v_ant = 2.0 * std::sqrt(2.0 * link.r_ant * p_in);
  const double bracket = 1.0 - link.v_t / v_ant;
  return std::max(0.0, bracket) * p_in;
}

TagCosts tag_costs(double p_tag, double p_in_dc, double t0, double t1) {
  require_positive(p_tag, "p_tag");
  require_positive(t0, "t0");
  require_positive(t1, "t1");
  if (!std::isfinite(p_in_dc) || p_in_dc < 0) {
    throw ValidationError("must be finite and >= 0", "p_in_dc");
  }
  TagCosts c;
  c.beta1 = p_tag * t1;
  c.beta0 = std::max(0.0, (p_tag - p_in_dc) * t0);
  c.regime = p_tag > p_in_dc ? Regime::deficit : Regime::surplus;
  return c;
}

TagCosts tag_costs(const RfidLink& link) {
  return tag_costs(link.p_tag, harvested_dc_power(link), link.t0, link.t1);
}

Gamma cost_ratio(const RfidLink& link) {
  const auto c = tag_costs(link);
  if (c.beta0 == 0.0) return Gamma::infinite();
  return Gamma::finite(c.beta1 / c.beta0);
}

CostModel to_cost_model(const RfidLink& link, double energy_unit) {
  require_positive(energy_unit, "energy_unit");
  const auto c = tag_costs(link);
  return CostModel::create(c.beta0 / energy_unit, c.beta1 / energy_unit, link.t0, link.t1);
}

double halfwave_baseline(std::size_t m, const CostModel& cm) {
  if (m < 2) throw ValidationError("need at least 2 symbols", "m");
  return std::log2(static_cast<double>(m)) * (cm.beta0() + cm.beta1()) / 2.0;
}

}  // namespace mecode::rfid
