#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mecode/error.hpp"
#include "mecode/fixed_opt.hpp"
#include "mecode/metrics.hpp"
#include "mecode/prefix_opt.hpp"
#include "mecode/rfid.hpp"
#include "mecode/sweep.hpp"

using namespace mecode;
using namespace mecode::rfid;

namespace {

// Unit-gain link whose free-space term is one at r = lambda / 4pi.
RfidLink unit_link(double p_in) {
  RfidLink l;
  l.p_t = p_in;
  l.lambda = 0.327;
  l.r = l.lambda / (4 * std::numbers::pi);
  l.p_tag = 1e-5;
  l.t0 = 12.5e-6;
  l.t1 = 12.5e-6;
  return l;
}

RfidLink reader_link(double r) {
  RfidLink l;
  l.p_t = 4;
  l.g_t = 1;
  l.g_r = 1.64;
  l.lambda = wavelength_for(915e6);
  l.r = r;
  l.l_p = 0.5;
  l.r_ant = 50;
  l.n_stages = 3;
  l.v_t = 0.2;
  l.p_tag = 5e-5;
  l.t0 = 12.5e-6;
  l.t1 = 12.5e-6;
  return l;
}

double db(double x) { return 10 * std::log10(x); }

}  // namespace

TEST_SUITE("rfid") {
  TEST_CASE("free-space input power") {
    auto l = unit_link(1.0);
    CHECK(input_power(l) == doctest::Approx(1.0).epsilon(1e-14));
    l.r *= 2;
    CHECK(input_power(l) == doctest::Approx(0.25).epsilon(1e-14));

    RfidLink b;
    b.p_t = 4;
    b.lambda = 0.327;
    b.r = 3;
    b.l_p = 0.5;
    b.p_tag = 1e-5;
    b.t0 = b.t1 = 1e-6;
    const double p = input_power(b);
    CHECK(p == doctest::Approx(1.5047e-4).epsilon(1e-4));
    // link budget in dB: transmit power minus free-space path loss minus polarization loss
    const double fspl_db = 20 * std::log10(4 * std::numbers::pi * 3 / 0.327);
    CHECK(db(p) == doctest::Approx(db(4) - fspl_db + db(0.5)).epsilon(1e-12));
    b.mismatch = 0.5;
    CHECK(input_power(b) == doctest::Approx(p / 2).epsilon(1e-14));
  }

  TEST_CASE("wavelength") {
    CHECK(wavelength_for(915e6) == doctest::Approx(0.32764).epsilon(1e-4));
  }

  TEST_CASE("harvested power") {
    auto l = unit_link(1e-4);
    l.v_t = 0;
    CHECK(harvested_dc_power(l) == doctest::Approx(1e-4).epsilon(1e-13));
    l.v_t = 2 * std::sqrt(2 * l.r_ant * 1e-4);
    CHECK(harvested_dc_power(l) == doctest::Approx(0.0));
    l.v_t = 0.2;
    CHECK(std::abs(harvested_dc_power(l)) < 1e-15);
    l.p_t = 4e-4;
    CHECK(harvested_dc_power(l) == doctest::Approx(2e-4).epsilon(1e-12));
    CHECK(antenna_voltage(l) == doctest::Approx(0.4).epsilon(1e-12));
    l.n_stages = 3;
    CHECK(rectifier_dc_voltage(l) == doctest::Approx(1.2).epsilon(1e-12));
    l.p_t = 1e-6;  // below threshold clamps to zero
    CHECK(harvested_dc_power(l) == 0.0);
    CHECK(rectifier_dc_voltage(l) == 0.0);
  }

  TEST_CASE("tag costs and regimes") {
    const auto c = tag_costs(10e-6, 4e-6, 12.5e-6, 12.5e-6);
    CHECK(c.beta0 == doctest::Approx(7.5e-11).epsilon(1e-12));
    CHECK(c.beta1 == doctest::Approx(1.25e-10).epsilon(1e-12));
    CHECK(c.regime == Regime::deficit);
    CHECK(c.beta1 / c.beta0 == doctest::Approx(5.0 / 3.0).epsilon(1e-12));

    const auto s = tag_costs(10e-6, 12e-6, 12.5e-6, 12.5e-6);
    CHECK(s.beta0 == 0.0);
    CHECK(s.regime == Regime::surplus);
    CHECK(to_string(s.regime) == "surplus");

    const auto off = tag_costs(10e-6, 0.0, 12.5e-6, 25e-6);
    CHECK(off.beta1 / off.beta0 == doctest::Approx(2.0).epsilon(1e-14));
    auto far = reader_link(1000);
    far.t1 = far.t0;
    CHECK(harvested_dc_power(far) == 0.0);
    CHECK(cost_ratio(far).value() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(tag_costs(10e-6, -1.0, 1, 1), ValidationError);
  }

  TEST_CASE("cost ratio against distance") {
    std::optional<double> threshold;
    double prev_gamma = std::numeric_limits<double>::infinity();
    for (double r = 0.1; r <= 10.0; r += 0.05) {
      const auto link = reader_link(r);
      const double p_in = input_power(link);
      const double p_dc = harvested_dc_power(link);
      CHECK(p_dc >= 0.0);
      CHECK(p_dc <= p_in);
      const auto g = cost_ratio(link);
      if (g.is_infinite()) {
        CHECK_FALSE(threshold.has_value());  // surplus only at short range
        CHECK(tag_costs(link).regime == Regime::surplus);
        continue;
      }
      if (!threshold) threshold = r;
      CHECK(tag_costs(link).regime == Regime::deficit);
      CHECK(g.value() <= prev_gamma);
      prev_gamma = g.value();
    }
    REQUIRE(threshold.has_value());
    CHECK(*threshold > 0.1);
  }

  TEST_CASE("cost model conversion") {
    const auto link = reader_link(4.0);
    const auto c = tag_costs(link);
    const auto cm = to_cost_model(link);
    CHECK(cm.beta0() == doctest::Approx(c.beta0 / 1e-12).epsilon(1e-14));
    CHECK(cm.beta1() == doctest::Approx(c.beta1 / 1e-12).epsilon(1e-14));
    CHECK(cm.t0() == link.t0);
    const auto cm2 = to_cost_model(link, 1e-9);
    CHECK(cm2.gamma().value() == doctest::Approx(cm.gamma().value()).epsilon(1e-14));
  }

  TEST_CASE("optimized saving under physical costs equals the pure-ratio saving") {
    for (double r : {4.0, 4.2, 4.4, 6.0}) {
      const auto link = reader_link(r);
      const auto g = cost_ratio(link);
      REQUIRE_FALSE(g.is_infinite());
      const auto physical = to_cost_model(link);
      const auto pure = cost_model_for_gamma(g.value());
      const auto src = SymbolSource::uniform(8);
      const double a = energy_saving(src, optimize_fixed(8, physical).codebook, physical);
      const double b = energy_saving(src, optimize_fixed(8, pure).codebook, pure);
      CHECK(std::abs(a - b) < 1e-12);
      const double pa = energy_saving(src, optimize_prefix(src, physical).codebook, physical);
      const double pb = energy_saving(src, optimize_prefix(src, pure).codebook, pure);
      CHECK(std::abs(pa - pb) < 1e-12);
    }
  }

  TEST_CASE("half-wave baseline") {
    CHECK(halfwave_baseline(8, CostModel::create(1, 5, 1, 1)) == 9.0);
    CHECK(halfwave_baseline(16, CostModel::create(2, 2, 1, 1)) == 8.0);
    CHECK(halfwave_baseline(2, CostModel::create(1, 4, 1, 1)) == 2.5);
    const auto cm = CostModel::create(1, 6, 1, 1);
    CHECK(halfwave_baseline(8, cm) == uncoded_cost(SymbolSource::uniform(8), cm));
  }

  TEST_CASE("link validation") {
    auto l = reader_link(3);
    l.r = -1;
    CHECK_THROWS_AS(input_power(l), ValidationError);
    l = reader_link(3);
    l.l_p = 1.5;
    CHECK_THROWS_AS(input_power(l), ValidationError);
    l = reader_link(3);
    l.n_stages = 0;
    CHECK_THROWS_AS(l.validate(), ValidationError);
    l = reader_link(3);
    l.p_tag = 0;
    CHECK_THROWS_AS(tag_costs(l), ValidationError);
  }
}
