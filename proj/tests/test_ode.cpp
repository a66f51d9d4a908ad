#include <cmath>
#include <random>

#include "doctest.h"
#include "teichflow/errors.hpp"
#include "teichflow/ode_comparison.hpp"
#include "teichflow/tridiagonal.hpp"

using namespace teichflow;

TEST_SUITE("ode") {
  TEST_CASE("tridiagonal solve") {
    const std::vector<double> sub{0, -1, -1, -1}, diag{4, 4, 4, 4}, sup{-1, -1, -1, 0};
    const std::vector<double> x{1, -2, 3, 0.5};
    std::vector<double> rhs(4);
    for (int i = 0; i < 4; ++i) {
      rhs[i] = diag[i] * x[i];
      if (i > 0) rhs[i] += sub[i] * x[i - 1];
      if (i < 3) rhs[i] += sup[i] * x[i + 1];
    }
    const auto got = solve_tridiagonal(sub, diag, sup, rhs);
    for (int i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(x[i]).epsilon(1e-14));
  }

  TEST_CASE("T = 0 matches the two-exponential closed form") {
    OdeComparisonInput in;
    in.s1 = 0.0;
    in.s2 = 6.0;
    in.t.assign(121, 0.0);
    in.e0 = 1.0;
    in.f1 = in.f2 = 2.0;
    const auto tab = ode_comparison_oracle(in);
    for (const auto& r : tab.rows) {
      const double exact = 2.0 * std::cosh(r.s - 3.0) / std::cosh(3.0);
      CHECK(std::abs(r.f - exact) < 1e-8);
      CHECK(r.bound == doctest::Approx(2 * (std::exp(r.s - 6.0) + std::exp(-r.s))).epsilon(1e-14));
    }
    CHECK(tab.min_margin >= -1e-8);
  }

  TEST_CASE("T = 1 and zero boundary values") {
    OdeComparisonInput in;
    in.s2 = 5.0;
    in.t.assign(101, 1.0);
    in.f1 = in.f2 = 2.0;
    const auto a = ode_comparison_oracle(in);
    CHECK(a.min_margin >= -1e-8);
    for (const auto& r : a.rows) {
      const double conv = 2.0 - std::exp(-r.s) - std::exp(r.s - 5.0);
      CHECK(exponential_convolution(0.0, 5.0, in.t, r.s) == doctest::Approx(conv).epsilon(1e-13));
    }
    in.f1 = in.f2 = 0.0;
    const auto b = ode_comparison_oracle(in);
    CHECK(b.min_margin >= -1e-8);
    CHECK(b.rows.front().bound >= 0.0);
    CHECK(b.rows.back().bound >= 0.0);
  }

  TEST_CASE("central scheme converges at second order") {
    std::vector<double> err;
    for (int n : {41, 81, 161}) {
      OdeComparisonInput in;
      in.s2 = 4.0;
      in.t.resize(n);
      for (int k = 0; k < n; ++k) in.t[k] = 1.0 + std::sin(4.0 * k / (n - 1));
      in.f1 = 0.5;
      in.f2 = 1.5;
      auto fit = ode_comparison_oracle(in);
      in.scheme = BvpScheme::central;
      auto cen = ode_comparison_oracle(in);
      const std::size_t mid = fit.rows.size() / 2;
      err.push_back(std::abs(cen.rows[mid].f - fit.rows[mid].f));
    }
    CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.05));
    CHECK(err[1] / err[2] == doctest::Approx(4.0).epsilon(0.05));
  }

  TEST_CASE("random instances respect the bound") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
      OdeComparisonInput in;
      in.s1 = -5.0 * u01(rng);
      in.s2 = in.s1 + 2.0 + 10.0 * u01(rng);
      in.e0 = 0.1 + 2.0 * u01(rng);
      in.f1 = 2 * in.e0 * u01(rng);
      in.f2 = 2 * in.e0 * u01(rng);
      in.t.resize(50 + trial * 5);
      for (auto& v : in.t) v = u01(rng) * u01(rng);
      CHECK(ode_comparison_oracle(in).min_margin >= -1e-8);
    }
  }

  TEST_CASE("invalid inputs") {
    OdeComparisonInput in;
    in.t = {0.0, -0.1, 0.0};
    CHECK_THROWS_AS(ode_comparison_oracle(in), DomainError);
    in.t = {0.0, 0.0, 0.0};
    in.s2 = 1.0;
    CHECK_THROWS_AS(ode_comparison_oracle(in), DomainError);
    in.s2 = 3.0;
    in.f1 = 5.0;
    CHECK_THROWS_AS(ode_comparison_oracle(in), DomainError);
    in.f1 = 0.0;
    in.t = {0.0, 0.0};
    CHECK_THROWS_AS(ode_comparison_oracle(in), DomainError);
  }
}
