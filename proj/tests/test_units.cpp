#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "aitest/errors.hpp"
#include "aitest/units.hpp"

using namespace aitest;

TEST_CASE("units: convert examples") {
  CHECK(convert({1.0, InfoUnit::bits()}, InfoUnit::nats()).value == doctest::Approx(0.6931471805599453).epsilon(1e-15));
  CHECK(convert({1.0, InfoUnit::bits()}, InfoUnit::nats()).value == doctest::Approx(0.6931).epsilon(1e-4));
  CHECK(convert({0.0, InfoUnit::nats()}, InfoUnit::bits()).value == 0.0);
  CHECK(convert({1.0, InfoUnit::nits(10)}, InfoUnit::bits()).value == doctest::Approx(3.321928094887362).epsilon(1e-15));
  CHECK(convert({1.0, InfoUnit::nits(10)}, InfoUnit::bits()).unit == InfoUnit::bits());
}

TEST_CASE("units: infinity is absorbing") {
  const double inf = std::numeric_limits<double>::infinity();
  for (const auto& u : {InfoUnit::bits(), InfoUnit::nats(), InfoUnit::nits(7)}) {
    CHECK(convert({inf, InfoUnit::nats()}, u).value == inf);
    CHECK(convert({inf, u}, InfoUnit::bits()).value == inf);
  }
}

TEST_CASE("units: log_in_unit") {
  CHECK(log_in_unit(8.0, InfoUnit::bits()) == 3.0);
  CHECK(log_in_unit(std::exp(1.0), InfoUnit::nats()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(log_in_unit(0.5, InfoUnit::nits(4)) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK_THROWS_AS(log_in_unit(0.0, InfoUnit::bits()), DomainError);
  CHECK_THROWS_AS(log_in_unit(-1.0, InfoUnit::nats()), DomainError);
  CHECK_THROWS_AS(log_in_unit(std::nan(""), InfoUnit::nats()), DomainError);
}

TEST_CASE("units: bases and names") {
  CHECK(InfoUnit::bits().base() == 2.0);
  CHECK(InfoUnit::nats().base() == doctest::Approx(std::exp(1.0)));
  CHECK(InfoUnit::nits(10).base() == 10.0);
  CHECK(InfoUnit::nits(10).name() == "nits:10");
  CHECK_THROWS_AS(InfoUnit::nits(1), DomainError);
  CHECK_THROWS_AS(InfoUnit::nits(0), DomainError);
}

TEST_CASE("units: parse_unit") {
  CHECK(parse_unit("bits") == InfoUnit::bits());
  CHECK(parse_unit("nats") == InfoUnit::nats());
  CHECK(parse_unit("nits:3") == InfoUnit::nits(3));
  for (const char* bad : {"", "bit", "nits:", "nits:1", "nits:2.5", "nits:x", "NATS", "nits:-4"}) {
    CHECK_THROWS_AS(parse_unit(bad), ValidationError);
  }
}

TEST_CASE("units: conversion round trips and preserves order") {
  const InfoUnit units[] = {InfoUnit::bits(), InfoUnit::nats(), InfoUnit::nits(3), InfoUnit::nits(10),
                            InfoUnit::nits(1000)};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> value(-100.0, 100.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const double v = value(rng);
    const double w = value(rng);
    for (const auto& a : units) {
      for (const auto& b : units) {
        const double back = convert(convert({v, a}, b), a).value;
        CHECK(std::fabs(back - v) <= 1e-14 * std::fabs(v));
        if (v < w) CHECK(convert({v, a}, b).value < convert({w, a}, b).value);
      }
    }
  }
}
