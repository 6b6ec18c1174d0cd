#pragma once

#include <cstddef>
#include <string>

#include "mecode/cost_model.hpp"

namespace mecode::rfid {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s
// Joules per dimensionless cost unit handed to the optimizers.
inline constexpr double kDefaultEnergyUnit = 1e-12;

double wavelength_for(double frequency_hz);

// Reader-to-tag link and tag circuit description, SI units, linear gains.
struct RfidLink {
  double p_t = 0;          // reader carrier power, W
  double g_t = 1;          // reader antenna gain
  double g_r = 1;          // tag antenna gain
  double lambda = 0;       // carrier wavelength, m
  double r = 0;            // reader-tag distance, m
  double l_p = 1;          // polarization loss, (0, 1]
  double r_ant = 50;       // antenna resistance, ohm
  unsigned n_stages = 1;   // rectifier multiplier stages
  double v_t = 0;          // diode threshold, V
  double p_tag = 0;        // tag circuit consumption, W
  double t0 = 0;           // bit-0 duration, s
  double t1 = 0;           // bit-1 duration, s
  double mismatch = 1;     // extra power-transfer factor on P_in, (0, 1]

  // Throws ValidationError naming the first bad field.
  void validate() const;
};

enum class Regime { deficit, surplus };
std::string to_string(Regime regime);

// Friis: P_t (lambda / 4 pi r)^2 G_t G_r L_p, times the mismatch factor.
double input_power(const RfidLink& link);
// 2 sqrt(2 R_ant P_in).
double antenna_voltage(const RfidLink& link);
// 2 N (V_ant - V_t). Diagnostic only; may be negative below threshold.
double rectifier_dc_voltage(const RfidLink& link);
// [1 - V_t / (2 sqrt(2 R_ant P_in))] P_in, clamped at zero below threshold.
double harvested_dc_power(const RfidLink& link);

struct TagCosts {
  double beta0 = 0;  // J, [(P_tag - P_dc) T0]^+
  double beta1 = 0;  // J, P_tag T1
  Regime regime = Regime::deficit;
};

TagCosts tag_costs(double p_tag, double p_in_dc, double t0, double t1);
TagCosts tag_costs(const RfidLink& link);

// beta1 / beta0; infinite in the surplus regime.
Gamma cost_ratio(const RfidLink& link);

// Tag costs expressed in units of energy_unit joules.
CostModel to_cost_model(const RfidLink& link, double energy_unit = kDefaultEnergyUnit);

// Per-symbol cost of FM0 / Miller half-wave signalling, where both bits cost
// (beta0 + beta1)/2: log2(M) (beta0 + beta1) / 2.
double halfwave_baseline(std::size_t m, const CostModel& cm);

}  // namespace mecode::rfid
