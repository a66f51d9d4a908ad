#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "teichflow/analyzer.hpp"
#include "teichflow/errors.hpp"
#include "teichflow/hyperbolic.hpp"
#include "teichflow/report.hpp"

using namespace teichflow;
using std::numbers::pi;

namespace {
CylinderGrid long_grid(double lambda, int rows_per_unit = 4, int n_theta = 32) {
  return CylinderGrid::finite(-lambda, lambda, static_cast<int>(2 * lambda * rows_per_unit) + 1, n_theta);
}
MapField pole(const CylinderGrid& g) {
  const double p[3] = {0.0, 0.0, 1.0};
  return MapField::constant(g, TargetManifold::sphere(2), p);
}
}  // namespace

TEST_SUITE("analyzer") {
  TEST_CASE("decomposition of the standard fixtures") {
    const auto g = long_grid(100.0);
    const auto c = decompose(pole(g), 0.1, 10.0);
    CHECK(c.centers == std::vector<double>{-100.0, 100.0});
    CHECK(c.intervals.size() == 1);
    CHECK(c.heavy_chunks.empty());

    const auto one = decompose(gaussian_bumps(g, {{0.0, 1.0}}), 0.1, 10.0);
    REQUIRE(one.centers.size() == 3);
    CHECK(one.centers[1] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(one.interior_count() == 1);

    const auto two = decompose(gaussian_bumps(g, {{-40.0, 0.5}, {40.0, 0.5}}), 0.1, 10.0);
    REQUIRE(two.centers.size() == 4);
    CHECK(two.centers[1] == doctest::Approx(-40.0).epsilon(1e-9));
    CHECK(two.centers[2] == doctest::Approx(40.0).epsilon(1e-9));
    CHECK(two.intervals.size() == 3);

    CHECK_THROWS_AS(decompose(pole(CylinderGrid::finite(-2, 2, 17, 8))), DomainError);
    CHECK_THROWS_AS(decompose(pole(g), 0.0, 10.0), DomainError);
  }

  TEST_CASE("bump energies are as requested") {
    const auto g = long_grid(20.0, 8);
    CHECK(energy(gaussian_bumps(g, {{0.0, 0.7}})) == doctest::Approx(0.7).epsilon(1e-6));
  }

  TEST_CASE("heavy chunks near an end are absorbed") {
    const auto g = long_grid(50.0);
    const auto d = decompose(gaussian_bumps(g, {{-45.0, 1.0}}), 0.1, 10.0);
    CHECK(d.interior_count() == 0);
    CHECK_FALSE(d.heavy_chunks.empty());
  }

  TEST_CASE("decay certificate") {
    const auto g = long_grid(10.0, 8);
    const auto c = certify_decay(pole(g), 0.0);
    CHECK(c.verdict == Verdict::pass);
    CHECK(c.min_margin >= 0.0);

    const auto u = fixtures::boundary_driven_harmonic(10.0, 0.05);
    const auto d = certify_decay(u, energy(u));
    CHECK(d.verdict == Verdict::pass);
    CHECK(d.slice_bound);
    CHECK(d.min_margin >= 0.0);
    CHECK(d.integrated_bound);
    CHECK(d.energy_bound);
    CHECK(d.decay_exponent >= 1.0);

    const auto heavy = certify_decay(gaussian_bumps(g, {{2.0, 0.5}}), 1.0);
    CHECK(heavy.verdict == Verdict::declined);
    REQUIRE(heavy.offending_chunk.has_value());
    const auto heavy_field = gaussian_bumps(g, {{2.0, 0.5}});
    for (const auto& ch : chunk_energies(heavy_field)) {
      if (ch.k == *heavy.offending_chunk) CHECK(ch.energy >= 0.05);
      if (ch.k < *heavy.offending_chunk) CHECK(ch.energy < 0.05);
    }
    CHECK(to_string(Verdict::declined) == "declined");
  }

  TEST_CASE("energy-loss ledger") {
    const auto g = long_grid(20.0, 8);
    const auto c = pole(g);
    for (const auto& e : energy_loss_ledger(c, decompose(c), 2.0).entries) {
      CHECK(e.energy == 0.0);
      CHECK(e.half_hopf_real == 0.0);
      CHECK(e.difference == 0.0);
    }

    const auto seg = curve_collapse_map(20.0, UnitSpeedCurve::segment(1.0), 321, 8);
    const auto ls = energy_loss_ledger(seg, decompose(seg), 2.0);
    REQUIRE(ls.entries.size() == 1);
    CHECK(ls.entries[0].energy > 0.0);
    CHECK(std::abs(ls.entries[0].difference) <= 1e-15 * ls.entries[0].energy);

    const auto tw = theta_winding(g.with_theta_scheme(ThetaScheme::spectral));
    const auto lt = energy_loss_ledger(tw, decompose(tw), 0.0);
    for (const auto& e : lt.entries) CHECK(e.difference == doctest::Approx(2 * pi * (e.hi - e.lo)).epsilon(1e-10));

    const auto skipped = energy_loss_ledger(c, decompose(c), 25.0);
    CHECK(skipped.entries[0].skipped);

    const auto tor = theta_winding(CylinderGrid::torus(0, 12, 48, 16).with_theta_scheme(ThetaScheme::spectral));
    BranchDecomposition whole{0.1, 10.0, 0.0, 12.0, {0.0, 12.0}, {}, {}};
    const auto lp = energy_loss_ledger(tor, whole, 0.0);
    REQUIRE(lp.mean_hopf_defect.has_value());
    CHECK(*lp.mean_hopf_defect == doctest::Approx(2 * pi * 12.0).epsilon(1e-12));
  }

  TEST_CASE("concentration reports") {
    const auto g = long_grid(60.0);
    const auto c = pole(g);
    CHECK(detect_concentration(c, decompose(c)).records.empty());

    const auto two = gaussian_bumps(g, {{-20.0, 0.5}, {20.0, 0.5}});
    const auto rep = detect_concentration(two, decompose(two, 0.1, 10.0));
    REQUIRE(rep.records.size() == 2);
    CHECK(rep.records[0].center == doctest::Approx(-20.0).epsilon(1e-9));
    CHECK(rep.records[1].center == doctest::Approx(20.0).epsilon(1e-9));

    const auto bg = CylinderGrid::finite(-12, 12, 961, 256);
    const auto b = bubble(bg, 0.1);
    CHECK(energy(b) == doctest::Approx(4 * pi).epsilon(0.02));
    const auto br = detect_concentration(b, decompose(b));
    REQUIRE(br.records.size() == 1);
    CHECK(std::abs(br.records[0].peak_s) <= bg.h_s());
    CHECK(br.records[0].scale >= 0.05);
    CHECK(br.records[0].scale <= 0.2);
  }

  TEST_CASE("collar pipeline") {
    const Collar col(0.3);
    const auto g = col.grid(static_cast<int>(16 * col.halflength()) + 1, 16);
    const auto u = fixtures::boundary_driven_harmonic(col.halflength(), 0.02, 8, 16, 4.0).with_grid(g);
    const auto a = collar_pipeline(u, 0.3);
    CHECK(a.tension_inequality);
    CHECK(a.flat_tension_norm <= a.collar_tension_norm);
    CHECK(a.hopf_l1_flat == doctest::Approx(a.hopf_l1_collar).epsilon(1e-12));
    CHECK(a.decay.verdict == Verdict::pass);
    CHECK(a.decomposition.interior_count() == 0);
  }

  TEST_CASE("reports") {
    const auto g = long_grid(30.0);
    const auto u = gaussian_bumps(g, {{0.0, 1.0}});
    AnalysisReport r;
    r.header = {{"command", "analyze"}};
    r.decomposition = decompose(u);
    r.ledger = energy_loss_ledger(u, *r.decomposition, 2.0);
    r.concentration = detect_concentration(u, *r.decomposition);
    const auto text = format_text(r);
    for (const char* s : {"[decomposition]", "[ledger]", "[concentration]"}) CHECK(text.find(s) != std::string::npos);
    CHECK(text.find("[decay]") == std::string::npos);
    std::istringstream js(format_json(r));
    std::string line;
    int sections = 0;
    while (std::getline(js, line)) {
      const auto j = nlohmann::json::parse(line);
      CHECK(j.contains("section"));
      ++sections;
    }
    CHECK(sections >= 3);
  }
}
