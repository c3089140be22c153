#include <catch2/catch_amalgamated.hpp>

#include <rkframe/frame.hpp>
#include <rkframe/seqgen.hpp>

#include <cmath>

using namespace rkframe;
using Catch::Approx;

namespace {

PointSeq two_point_seq() {
  return make_seq(Space::disc(), {pt(0.0), pt(std::sqrt(3.0) / 2.0)});
}

OptimizerConfig quick(int restarts = 6, int iters = 800, int res = 256) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  cfg.max_iters = iters;
  cfg.tol = 1e-11;
  cfg.grid_resolution = res;
  cfg.seed = 4;
  return cfg;
}

}  // namespace

TEST_CASE("optimizer config validation") {
  OptimizerConfig bad;
  bad.restarts = 0;
  CHECK_THROWS_AS(check_optimizer_config(bad), config_error);
  bad = {};
  bad.tol = 0.0;
  CHECK_THROWS_AS(check_optimizer_config(bad), config_error);
  bad = {};
  bad.step_init = -1.0;
  CHECK_THROWS_AS(check_optimizer_config(bad), config_error);
  CHECK_THROWS_AS(frame_bounds(Space::disc(), 2.0, make_seq(Space::disc(), {}), quick()),
                  config_error);
}

TEST_CASE("single kernel: both bounds collapse to its norm") {
  // for one point the objective is constant on the sphere, so lower == upper
  // == the grid p'-norm of the normalized kernel; at p = 2 that norm is 1
  PointSeq seq = make_seq(Space::disc(), {pt(0.3)});
  for (double p : {2.0, 3.0, 4.0}) {
    double pp = conjugate_exponent(p);
    FrameReport r = frame_bounds(Space::disc(), p, seq, quick(2, 200, 128));
    QuadratureGrid grid = build_grid(Space::disc(), 128);
    double ref = norm_on_grid(grid, pp, [&](const Point& z) {
      return eval_normalized_kernel(Space::disc(), pp, seq.points[0], z);
    });
    CHECK(r.lower == Approx(ref).epsilon(1e-9));
    CHECK(r.upper == Approx(ref).epsilon(1e-9));
    CHECK(r.converged);
  }
  FrameReport r2 = frame_bounds(Space::disc(), 2.0, seq, quick(2, 200, 128));
  CHECK(r2.lower == Approx(1.0).epsilon(1e-6));
  CHECK(r2.upper == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("two-point frame bounds match the spectrum at p=2") {
  FrameReport r = frame_bounds(Space::disc(), 2.0, two_point_seq(), quick());
  REQUIRE(r.spectral_lower.has_value());
  REQUIRE(r.spectral_upper.has_value());
  CHECK(*r.spectral_lower == Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(*r.spectral_upper == Approx(std::sqrt(1.5)).epsilon(1e-12));
  CHECK(r.lower == Approx(std::sqrt(0.5)).epsilon(1e-4));
  CHECK(r.upper == Approx(std::sqrt(1.5)).epsilon(1e-4));
  CHECK(r.method == "optimized");
}

TEST_CASE("optimizer matches the spectrum on a random p=2 instance") {
  PointSeq seq = random_separated(Space::disc(), 4, 0.3, 15);
  FrameReport r = frame_bounds(Space::disc(), 2.0, seq, quick(6, 1500, 512));
  REQUIRE(r.spectral_lower.has_value());
  CHECK(r.lower == Approx(*r.spectral_lower).epsilon(1e-3));
  CHECK(r.upper == Approx(*r.spectral_upper).epsilon(1e-3));
}

TEST_CASE("p=4 bounds bracket a random search") {
  // the optimizer reports inner estimates; random probing must not beat it
  const double p = 4.0, pp = conjugate_exponent(p);
  PointSeq seq = two_point_seq();
  OptimizerConfig cfg = quick(8, 1500, 256);
  FrameReport r = frame_bounds(Space::disc(), p, seq, cfg);

  QuadratureGrid grid = build_grid(Space::disc(), 256);
  Eigen::MatrixXcd K = kernel_matrix(seq, pp, grid);
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(grid.weights.data(),
                                                        grid.weights.size());
  rkframe::detail::rng gen(99);
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  for (int t = 0; t < 100000; ++t) {
    Eigen::VectorXcd mu(2);
    mu << gen.normal_complex(), gen.normal_complex();
    double nrm = rkframe::detail::lp_norm(mu, pp);
    if (nrm == 0) continue;
    mu /= nrm;
    Eigen::VectorXcd v = K * mu;
    long double acc = 0;
    for (Eigen::Index j = 0; j < v.size(); ++j)
      acc += w(j) * static_cast<long double>(std::pow(std::abs(v(j)), pp));
    double F = static_cast<double>(std::pow(acc, 1.0L / static_cast<long double>(pp)));
    lo = std::min(lo, F);
    hi = std::max(hi, F);
  }
  CHECK(hi <= r.upper + 1e-3);
  CHECK(lo >= r.lower - 1e-3);
  CHECK(r.lower <= r.upper);
}

TEST_CASE("frame bounds are deterministic and monotone in restarts") {
  PointSeq seq = random_separated(Space::disc(), 5, 0.3, 8);
  FrameReport a = frame_bounds(Space::disc(), 3.0, seq, quick(4, 300, 128));
  FrameReport b = frame_bounds(Space::disc(), 3.0, seq, quick(4, 300, 128));
  CHECK(a.lower == b.lower);
  CHECK(a.upper == b.upper);
  CHECK(a.iterations == b.iterations);
  FrameReport wide = frame_bounds(Space::disc(), 3.0, seq, quick(8, 300, 128));
  CHECK(wide.upper >= a.upper);  // restart starts are nested in the budget
  CHECK(wide.lower <= a.lower);
}

TEST_CASE("grammian lower bound closed forms") {
  PointSeq single = make_seq(Space::disc(), {pt(0.45)});
  CHECK(grammian_lower_bound(Space::disc(), 2.0, single, quick(2, 100, 0)) ==
        Approx(1.0).epsilon(1e-9));
  CHECK(grammian_lower_bound(Space::disc(), 3.0, single, quick(2, 100, 0)) ==
        Approx(1.0).epsilon(1e-9));

  // p=2 reduces to the smallest singular value, 0.5 for the two-point set
  CHECK(grammian_lower_bound(Space::disc(), 2.0, two_point_seq(), quick(6, 1500, 0)) ==
        Approx(0.5).epsilon(1e-6));
}

TEST_CASE("grammian lower bound brackets a random search at p=3") {
  const double p = 3.0, pp = conjugate_exponent(p);
  PointSeq seq = random_separated(Space::disc(), 3, 0.35, 12);
  double opt = grammian_lower_bound(Space::disc(), p, seq, quick(8, 1500, 0));
  GramMatrix g = build_gram(Space::disc(), p, seq);
  Eigen::MatrixXcd K = g.entries.transpose();
  rkframe::detail::rng gen(5);
  double lo = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 20000; ++t) {
    Eigen::VectorXcd mu(3);
    mu << gen.normal_complex(), gen.normal_complex(), gen.normal_complex();
    double nrm = rkframe::detail::lp_norm(mu, pp);
    if (nrm == 0) continue;
    mu /= nrm;
    lo = std::min(lo, rkframe::detail::lp_norm(K * mu, pp));
  }
  CHECK(opt <= lo + 1e-9);  // optimizer finds at least as small a value
  CHECK(opt >= 0);
}
