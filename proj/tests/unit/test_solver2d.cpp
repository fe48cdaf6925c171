#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "heatlab/geometry.hpp"
#include "heatlab/solver2d.hpp"

using namespace heatlab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Solve2dConfig base_config(DomainGeometry geometry) {
  Solve2dConfig cfg;
  cfg.geometry = std::move(geometry);
  cfg.medium = {1.0, 1.0};
  cfg.lambda = kInf;
  cfg.h = 1.0 / 64;
  cfg.dt = 1e-6;
  cfg.t_end = 1e-3;
  return cfg;
}

}  // namespace

TEST_SUITE("solver2d") {

TEST_CASE("conserves mass, bounds the field, grows the heat content") {
  Solve2dConfig cfg = base_config(make_square(1.0));
  cfg.sample_times = {2e-4, 5e-4};
  const auto r = solve_2d(cfg);

  CHECK(r.domain_volume == doctest::Approx(1.0).epsilon(1e-14));
  REQUIRE(r.samples.size() == 3);
  const double mass0 = r.samples.front().mass;
  double prev_n = 0.0;
  for (const auto& s : r.samples) {
    CHECK(s.mass == doctest::Approx(mass0).epsilon(1e-10));
    CHECK(s.heat_content >= prev_n);
    prev_n = s.heat_content;
  }
  CHECK(prev_n > 0.0);
  for (double v : r.u) {
    CHECK(v >= -1e-10);
    CHECK(v <= 1.0 + 1e-10);
  }
}

TEST_CASE("outer walls are invisible at short times") {
  Solve2dConfig cfg = base_config(make_square(1.0));
  cfg.h = 1.0 / 32;
  const double n4 = solve_2d(cfg).samples.back().heat_content;
  cfg.container_factor = 8.0;
  const double n8 = solve_2d(cfg).samples.back().heat_content;
  CHECK(std::fabs(n8 - n4) <= 1e-6 * n4);
}

TEST_CASE("staged interface coupling agrees with the monolithic sweeps") {
  Solve2dConfig cfg = base_config(make_square(1.0));
  cfg.medium = {0.04, 1.0};
  cfg.lambda = 5.0;
  cfg.h = 1.0 / 32;
  cfg.t_end = 2e-4;
  cfg.coupling = Coupling::monolithic;
  const auto mono = solve_2d(cfg);
  cfg.coupling = Coupling::picard;
  const auto pic = solve_2d(cfg);
  REQUIRE(mono.u.size() == pic.u.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < mono.u.size(); ++i) {
    worst = std::max(worst, std::fabs(mono.u[i] - pic.u[i]));
  }
  CHECK(worst <= 1e-6);
  CHECK(pic.picard_iters_max >= 1);
  CHECK(mono.picard_iters_max == 0);
}

TEST_CASE("heat loss localizes near the boundary") {
  Solve2dConfig cfg = base_config(make_square(1.0));
  const auto r = solve_2d(cfg);
  const auto near = localization_check(r, cfg.geometry, 0.1);
  const auto far = localization_check(r, cfg.geometry, 0.2);
  CHECK(far.far_volume < near.far_volume);
  CHECK(far.far_volume == doctest::Approx(0.36).epsilon(0.1));
  CHECK(far.far_defect < near.far_defect);
  CHECK(far.far_defect <= 1e-3 * far.far_volume);
}

TEST_CASE("heat content converges at second order on an aligned square") {
  auto run = [](double h) {
    Solve2dConfig cfg = base_config(make_square(1.0));
    cfg.h = h;
    cfg.dt = 2e-6;
    cfg.ramp = 0.0;  // fixed step so the refinement isolates the mesh error
    cfg.t_end = 4e-4;
    return solve_2d(cfg).samples.back().heat_content;
  };
  const double n1 = run(1.0 / 32);
  const double n2 = run(1.0 / 64);
  const double n3 = run(1.0 / 128);
  const double order = std::log2(std::fabs(n1 - n2) / std::fabs(n2 - n3));
  CHECK(order >= 1.7);
}

TEST_CASE("heat content converges at first order on a circle") {
  auto run = [](double h) {
    Solve2dConfig cfg = base_config(make_circle(0.5));
    cfg.h = h;
    cfg.dt = 2e-6;
    cfg.ramp = 0.0;
    cfg.t_end = 4e-4;
    return solve_2d(cfg).samples.back().heat_content;
  };
  const double n1 = run(1.0 / 32);
  const double n2 = run(1.0 / 64);
  const double n3 = run(1.0 / 128);
  const double order = std::log2(std::fabs(n1 - n2) / std::fabs(n2 - n3));
  CHECK(order >= 0.75);
}

TEST_CASE("coverage is exact when the boundary lies on mesh faces") {
  auto check_exact = [](DomainGeometry geom, double area) {
    Solve2dConfig cfg = base_config(std::move(geom));
    cfg.t_end = 1e-5;
    cfg.dt = 1e-6;
    const auto r = solve_2d(cfg);
    double covered = 0.0;
    for (std::size_t i = 0; i < r.coverage.size(); ++i) {
      const double c = r.coverage[i];
      CHECK((c == 0.0 || c == 1.0));
      CHECK(static_cast<double>(r.inside[i]) == c);
      covered += c;
    }
    CHECK(covered * r.h * r.h == doctest::Approx(area).epsilon(1e-13));
  };
  check_exact(make_square(1.0), 1.0);
  check_exact(make_minkowski_prefractal(1), 1.0);
}

TEST_CASE("snapshots carry the grid and its layout") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "heatlab_snap_test";
  fs::create_directories(dir);
  const std::string prefix = (dir / "state").string();

  Solve2dConfig cfg = base_config(make_square(1.0));
  cfg.h = 1.0 / 16;
  cfg.t_end = 1e-5;
  cfg.dt = 1e-6;
  cfg.snapshot_times = {1e-5};
  cfg.snapshot_prefix = prefix;
  const auto r = solve_2d(cfg);

  const fs::path raw = prefix + "000.f64";
  const fs::path meta = prefix + "000.json";
  REQUIRE(fs::exists(raw));
  REQUIRE(fs::exists(meta));
  CHECK(fs::file_size(raw) ==
        static_cast<std::uintmax_t>(r.nx) * r.ny * sizeof(double));
  std::ifstream in(meta);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  CHECK(text.find("row-major-float64") != std::string::npos);
  CHECK(text.find("\"nx\"") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("rejects containers that crowd the domain") {
  Solve2dConfig cfg = base_config(make_square(1.0));
  cfg.container_factor = 1.5;
  CHECK_THROWS_AS(solve_2d(cfg), std::domain_error);
}

}  // TEST_SUITE
