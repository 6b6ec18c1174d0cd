#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "mecode/error.hpp"
#include "support.hpp"

using namespace mecode;

TEST_SUITE("costmodel") {
  TEST_CASE("gamma of the reference models") {
    CHECK(CostModel::create(1, 5, 1, 1).gamma().value() == 5.0);
    CHECK(CostModel::create(1, 1, 1, 1).gamma().value() == 1.0);
    const auto free_zero = CostModel::create(0, 3, 1, 1);
    CHECK(free_zero.gamma().is_infinite());
    CHECK_THROWS_AS(free_zero.gamma().value(), ValidationError);
    CHECK(free_zero.gamma().to_string() == "inf");
  }

  TEST_CASE("validation names the offending field") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    auto field_of = [](auto&& f) {
      try {
        f();
      } catch (const ValidationError& e) {
        return e.field();
      }
      return std::string("<none>");
    };
    CHECK(field_of([&] { CostModel::create(nan, 1, 1, 1); }) == "beta0");
    CHECK(field_of([&] { CostModel::create(1, inf, 1, 1); }) == "beta1");
    CHECK(field_of([&] { CostModel::create(-1, 1, 1, 1); }) == "beta0");
    CHECK(field_of([&] { CostModel::create(1, 0, 1, 1); }) == "beta1");
    CHECK(field_of([&] { CostModel::create(1, 2, 0, 1); }) == "t0");
    CHECK(field_of([&] { CostModel::create(1, 2, 1, -3); }) == "t1");
    CHECK(field_of([&] { CostModel::create(1, 2, 1, 1); }) == "<none>");
  }

  TEST_CASE("bit-1 cheaper than bit-0 is normalized with an inversion flag") {
    const auto cm = CostModel::create(5, 1, 2, 3);
    CHECK(cm.inverted());
    CHECK(cm.beta0() == 1.0);
    CHECK(cm.beta1() == 5.0);
    CHECK(cm.t0() == 3.0);
    CHECK(cm.t1() == 2.0);
    CHECK(cm.delta_beta() == 4.0);
    CHECK_FALSE(CostModel::create(1, 5, 2, 3).inverted());
    nlohmann::json j = cm;
    CHECK(j["beta0"] == 5.0);
    CHECK(cost_model_from_json(j) == cm);
  }

  TEST_CASE("gamma is at least one after normalization") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
      const double a = u(rng);
      const double b = u(rng) + 1e-6;
      const auto g = CostModel::create(a, b, 1, 1).gamma();
      if (!g.is_infinite()) CHECK(g.value() >= 1.0);
    }
  }

  TEST_CASE("uniform sources") {
    for (std::size_t m : {2u, 8u, 128u}) {
      const auto src = SymbolSource::uniform(m);
      CHECK(src.m() == m);
      CHECK(src.is_uniform());
      for (double p : src.probs()) CHECK(p == 1.0 / static_cast<double>(m));
    }
    CHECK(SymbolSource::uniform(8).prob(3) == 0.125);
    CHECK_THROWS_AS(SymbolSource::uniform(1), ValidationError);
  }

  TEST_CASE("general sources keep ascending order and original indices") {
    const auto src = SymbolSource::create({0.5, 0.1, 0.25, 0.15});
    CHECK_FALSE(src.is_uniform());
    const auto sorted = src.sorted_probs();
    CHECK(sorted[0] == 0.1);
    CHECK(sorted[3] == 0.5);
    CHECK(src.original_index(0) == 1);
    CHECK(src.original_index(3) == 0);
    CHECK(src.prob(2) == 0.25);
    CHECK(src.by_decreasing_probability() == std::vector<std::size_t>{0, 2, 3, 1});
    CHECK_THROWS_AS(SymbolSource::create({0.5, 0.6}), ValidationError);
    CHECK_THROWS_AS(SymbolSource::create({1.2, -0.2}), ValidationError);
    CHECK_THROWS_AS(SymbolSource::create({1.0}), ValidationError);
    CHECK_NOTHROW(SymbolSource::create({0.5, 0.5 + 5e-10}));
  }

  TEST_CASE("JSON round trip and strict fields") {
    const auto cm = CostModel::create(0.25, 3, 1e-6, 2e-6);
    nlohmann::json j = cm;
    CHECK(cost_model_from_json(j) == cm);
    const auto parsed = cost_model_from_json(
        nlohmann::json::parse(R"({"t1": 1, "beta1": 5, "t0": 1, "beta0": 1})"));
    CHECK(parsed == fixtures::gamma5());
    CHECK_THROWS_AS(cost_model_from_json(nlohmann::json::parse(
                        R"({"beta0":1,"beta1":5,"t0":1,"t1":1,"colour":2})")),
                    ParseError);
    CHECK_THROWS_AS(cost_model_from_json(nlohmann::json::parse(R"({"beta0":1,"beta1":5})")),
                    ParseError);

    const auto src = SymbolSource::create({0.5, 0.25, 0.25});
    nlohmann::json js = src;
    const auto back = symbol_source_from_json(js);
    CHECK(std::vector<double>(back.probs().begin(), back.probs().end()) ==
          std::vector<double>{0.5, 0.25, 0.25});
    CHECK_THROWS_AS(symbol_source_from_json(nlohmann::json::parse(R"({"probs":[0.5,0.5],"x":1})")),
                    ParseError);
  }
}
