#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "blowup/oscillator.hpp"
#include "blowup/reparam.hpp"
#include "oracles.hpp"

using namespace blowup;

TEST_CASE("time map basics") {
  const auto X = build_oscillator({1.0, 8, 512});
  CHECK(time_map(X, 0.0) == 0.0);
  double prev = 0.0;
  for (const double tau : {0.3, 0.5, 1.0, 2.7, 5.0, 8.5}) {
    const double t = time_map(X, tau);
    CHECK(t > prev);
    prev = t;
  }
  CHECK_THROWS_AS(time_map(X, -0.5), std::domain_error);
  CHECK_THROWS_AS(time_map(X, X.domain_end() + 1.0), std::domain_error);
}

TEST_CASE("time map scales as 1/M") {
  const auto X1 = build_oscillator({1.0, 8, 512});
  const auto X2 = build_oscillator({2.0, 8, 512});
  for (const double tau : {1.0, 3.0, 5.5}) {
    const double t1 = time_map(X1, tau);
    const double t2 = time_map(X2, tau);
    CHECK(2.0 * t2 == doctest::Approx(t1).epsilon(1e-9));
  }
}

TEST_CASE("blow-up time is amplitude-homogeneous") {
  double reference = 0.0;
  for (const double M : {0.5, 1.0, 10.0}) {
    const auto X = build_oscillator({M, 8, 512});
    const ReparamResult r = blowup_time(X, 8);
    CHECK(r.T_star > 0.0);
    CHECK(std::isfinite(r.T_star));
    CHECK(r.T_star_error_bound > 0.0);
    const double scaled = r.T_star * M;
    if (reference == 0.0) {
      reference = scaled;
    } else {
      CHECK(scaled == doctest::Approx(reference).epsilon(1e-8));
    }
  }
}

TEST_CASE("reparam table is a strictly increasing map from zero") {
  const auto X = build_oscillator({1.0, 8, 512});
  const ReparamResult r = blowup_time(X, 8);
  REQUIRE(!r.table.values.empty());
  CHECK(r.table.values.front() == 0.0);
  CHECK(r.table.abscissae.front() == 0.0);
  for (std::size_t i = 1; i < r.table.values.size(); ++i) {
    CHECK(r.table.values[i] > r.table.values[i - 1]);
    CHECK(r.table.abscissae[i] > r.table.abscissae[i - 1]);
  }
  CHECK(r.T_star >= r.table.values.back());
}

TEST_CASE("tail majorant is small and decays at depth") {
  CHECK(tail_series_bound(30) < 1e-4);
  CHECK(tail_series_bound(32) <= 0.5 * tail_series_bound(30));
  CHECK(tail_series_bound(34) <= 0.5 * tail_series_bound(32));
}

TEST_CASE("tail majorant dominates the measured remainder") {
  // Integrate 1/Y over [domain_end(8), domain_end(20)] on a deeper build;
  // this partial remainder must stay below the depth-8 tail bound.
  const auto deep = build_oscillator({1.0, 20, 512});
  const auto shallow = build_oscillator({1.0, 8, 512});
  const double measured =
      time_map(deep, deep.domain_end()) - time_map(deep, shallow.domain_end());
  CHECK(measured > 0.0);
  CHECK(tail_series_bound(8) > measured);
}

TEST_CASE("requesting more accuracy than the depth supports is an error") {
  const auto X = build_oscillator({1.0, 8, 512});
  CHECK_THROWS_AS(blowup_time(X, 8, 1e-6), std::runtime_error);
  CHECK_THROWS_AS(blowup_time(X, 5, 0.0), std::invalid_argument);  // depth mismatch
}

TEST_CASE("inverse time map round trip") {
  const auto X = build_oscillator({1.0, 8, 512});
  const ReparamResult r = blowup_time(X, 8);
  CHECK(inverse_time_map(r, X, 0.0) == 0.0);
  for (const double tau : {0.5, 1.7, 5.25}) {
    const double t = time_map(X, tau);
    CHECK(inverse_time_map(r, X, t) == doctest::Approx(tau).epsilon(1e-8));
  }
  CHECK_THROWS_AS(inverse_time_map(r, X, r.table.values.back() + 1.0),
                  std::out_of_range);
}

TEST_CASE("inverse round trip holds at random interior times") {
  const auto X = build_oscillator({2.0, 8, 512});
  const ReparamResult r = blowup_time(X, 8);
  std::mt19937 rng(20240917);
  std::uniform_real_distribution<double> dist(0.0, X.domain_end());
  for (int i = 0; i < 100; ++i) {
    const double tau = dist(rng);
    const double back = inverse_time_map(r, X, time_map(X, tau));
    CHECK(std::abs(back - tau) <= 1e-8);
  }
}

TEST_CASE("inverse map derivative equals the pushforward value") {
  const auto X = build_oscillator({1.0, 8, 512});
  const ReparamResult r = blowup_time(X, 8);
  const double horizon = r.table.values.back();
  const auto tau_of = [&](double t) { return inverse_time_map(r, X, t); };
  for (const double frac : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double t = frac * horizon;
    const double x = X.eval(tau_of(t));
    const double h = 1e-6 * horizon;
    const double fd = oracles::central_diff(tau_of, t, h);
    CHECK(fd == doctest::Approx(x).epsilon(1e-6));
  }
}

TEST_CASE("pushforward hits the prescribed sequence") {
  for (const double M : {1.0, 3.0}) {
    const auto X = build_oscillator({M, 8, 512});
    const ReparamResult r = blowup_time(X, 8);
    std::vector<double> t_grid = {0.0};
    for (int n = 1; n <= 8; ++n) t_grid.push_back(time_map(X, n));
    const GridFunction g = pushforward(r, X, t_grid);
    CHECK(g.values[0] == M);
    for (int n = 1; n <= 8; ++n) {
      CHECK(g.values[n] == doctest::Approx(M / (n + 1)).epsilon(1e-9));
    }
    REQUIRE(g.derivatives.has_value());
    REQUIRE(g.accumulation.has_value());
    // The accumulation channel recovers tau = n.
    for (int n = 1; n <= 8; ++n) {
      CHECK((*g.accumulation)[n] == doctest::Approx(n).epsilon(1e-9));
    }
  }
}

TEST_CASE("accumulation exhausts the domain as t approaches the horizon") {
  const auto X = build_oscillator({1.0, 8, 512});
  const ReparamResult r = blowup_time(X, 8);
  const double horizon = r.table.values.back();
  const GridFunction g =
      pushforward(r, X, {0.9 * horizon, 0.99 * horizon, horizon});
  CHECK((*g.accumulation)[0] < (*g.accumulation)[1]);
  CHECK((*g.accumulation)[1] < (*g.accumulation)[2]);
  CHECK((*g.accumulation)[2] == X.domain_end());
}

TEST_CASE("accumulation channel equals the quadrature of the pushforward") {
  const auto X = build_oscillator({1.0, 8, 512});
  const ReparamResult r = blowup_time(X, 8);
  const double horizon = 0.8 * r.table.values.back();
  // Richardson-extrapolated trapezoid of x(t) over [0, t_i] as an
  // independent oracle for tau(t_i) = integral_0^{t_i} x.
  const auto x_of = [&](double t) {
    return X.eval(inverse_time_map(r, X, t));
  };
  for (const double frac : {0.25, 0.6, 1.0}) {
    const double t_i = frac * horizon;
    const double coarse = oracles::trapezoid(x_of, 0.0, t_i, 2000);
    const double fine = oracles::trapezoid(x_of, 0.0, t_i, 4000);
    const double tau_quad = (4.0 * fine - coarse) / 3.0;
    const GridFunction g = pushforward(r, X, {t_i});
    CHECK((*g.accumulation)[0] == doctest::Approx(tau_quad).epsilon(1e-6));
  }
}
