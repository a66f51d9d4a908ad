#include <sstream>

#include "doctest.h"
#include "teichflow/errors.hpp"
#include "teichflow/initial_data.hpp"
#include "teichflow/snapshot.hpp"

using namespace teichflow;

TEST_SUITE("snapshot") {
  TEST_CASE("round trip is exact") {
    const auto g = CylinderGrid(0.0, 7.5, 24, 16, BoundaryKind::twisted_periodic, 1.1, ThetaScheme::spectral);
    const auto u = random_sphere_field(g, 3);
    std::stringstream ss;
    write_snapshot(ss, u, {{"t", "0.25"}, {"config_hash", "abc"}});
    const auto back = read_snapshot(ss);
    CHECK(back.field.grid() == g);
    CHECK(back.field.target() == u.target());
    CHECK(back.field.values().data == u.values().data);
    CHECK(back.meta.at("t") == "0.25");
    CHECK(back.meta.at("config_hash") == "abc");
  }

  TEST_CASE("finite grids round trip") {
    const auto g = CylinderGrid::finite(-3, 3, 25, 8);
    const auto u = s_winding(CylinderGrid::torus(0, 6, 25, 8)).with_grid(g);
    std::stringstream ss;
    write_snapshot(ss, u);
    CHECK(read_snapshot(ss).field.values().data == u.values().data);
  }

  TEST_CASE("malformed input is rejected") {
    std::stringstream empty;
    CHECK_THROWS_AS(read_snapshot(empty), DomainError);
    std::stringstream wrong("teichflow-snapshot 9\n");
    CHECK_THROWS_AS(read_snapshot(wrong), DomainError);

    const auto u = random_sphere_field(CylinderGrid::finite(0, 1, 9, 8), 1);
    std::stringstream ss;
    write_snapshot(ss, u);
    std::string text = ss.str();
    std::stringstream truncated(text.substr(0, text.size() / 2));
    CHECK_THROWS_AS(read_snapshot(truncated), DomainError);
  }
}
