#include <catch2/catch_amalgamated.hpp>

#include <rkframe/detail/rng.hpp>
#include <rkframe/quadrature.hpp>
#include <rkframe/spaces.hpp>

using namespace rkframe;
using Catch::Approx;

TEST_CASE("space constructors validate arguments") {
  CHECK_THROWS_AS(Space::polydisc(0), config_error);
  CHECK_THROWS_AS(Space::ball(-1), config_error);
  CHECK_THROWS_AS(Space::bergman(1, -1), config_error);
  CHECK_THROWS_AS(Space::bergman(0, 2), config_error);
  CHECK(Space::disc().dim() == 1);
  CHECK(Space::polydisc(3).dim() == 3);
  CHECK(Space::bergman(2, 1).k == 1);
}

TEST_CASE("kernel power per space") {
  CHECK(Space::disc().kernel_power() == 1);
  CHECK(Space::ball(2).kernel_power() == 2);
  CHECK(Space::ball(4).kernel_power() == 4);
  CHECK(Space::bergman(1, 0).kernel_power() == 2);
  CHECK(Space::bergman(2, 1).kernel_power() == 4);
  CHECK_THROWS_AS(Space::polydisc(2).kernel_power(), unsupported_space);
}

TEST_CASE("space names and equality") {
  CHECK(Space::disc().name() == "HardyDisc");
  CHECK(Space::polydisc(2).name() == "HardyPolydisc(2)");
  CHECK(Space::ball(3).name() == "HardyBall(3)");
  CHECK(Space::bergman(1, 2).name() == "BergmanBall(1,2)");
  CHECK(Space::disc() == Space::disc());
  CHECK(Space::ball(1) != Space::disc());
  CHECK(Space::bergman(1, 0) != Space::bergman(1, 1));
}

TEST_CASE("domain membership") {
  CHECK(point_in_domain(Space::disc(), pt(0.0)));
  CHECK_FALSE(point_in_domain(Space::ball(2), pt(0.8, 0.7)));  // |a|^2 = 1.13
  CHECK(point_in_domain(Space::polydisc(2), pt(0.9, 0.95)));
  CHECK_FALSE(point_in_domain(Space::polydisc(2), pt(0.9, 1.0)));
  CHECK_FALSE(point_in_domain(Space::disc(), pt(cplx(1.0, 0.0))));
  CHECK(point_in_domain(Space::bergman(2, 1), pt(0.5, 0.5)));
  CHECK_THROWS_AS(point_in_domain(Space::ball(2), pt(0.5)), dimension_mismatch);
}

TEST_CASE("closure membership admits boundary nodes") {
  CHECK(point_on_closure(Space::disc(), pt(cplx(1.0, 0.0))));
  CHECK(point_on_closure(Space::ball(2), pt(cplx(0.6, 0.0), cplx(0.8, 0.0))));
  CHECK_FALSE(point_on_closure(Space::disc(), pt(cplx(1.1, 0.0))));
  CHECK_FALSE(point_on_closure(Space::polydisc(2), pt(0.5, 1.1)));
}

TEST_CASE("pseudohyperbolic distance on the disc") {
  const Space d = Space::disc();
  CHECK(pseudohyperbolic_distance(d, pt(0.0), pt(0.5)) == Approx(0.5));
  CHECK(pseudohyperbolic_distance(d, pt(0.5), pt(0.5)) == Approx(0.0).margin(1e-15));
  CHECK(pseudohyperbolic_distance(d, pt(0.5), pt(-0.5)) == Approx(0.8));
}

TEST_CASE("pseudohyperbolic distance is symmetric and bounded") {
  const Space d = Space::disc();
  detail::rng gen(42);
  auto draw = [&] { return std::polar(0.9 * gen.uniform(), detail::two_pi * gen.uniform()); };
  for (int i = 0; i < 50; ++i) {
    Point a = pt(draw()), b = pt(draw());
    double ab = pseudohyperbolic_distance(d, a, b);
    double ba = pseudohyperbolic_distance(d, b, a);
    CHECK(ab == Approx(ba).margin(1e-15));
    CHECK(ab >= 0.0);
    CHECK(ab < 1.0);
  }
}

TEST_CASE("polydisc distance is the max over coordinates") {
  const Space p2 = Space::polydisc(2);
  const Space d = Space::disc();
  Point a = pt(cplx(0.3, 0.1), cplx(-0.2, 0.4));
  Point b = pt(cplx(-0.5, 0.0), cplx(0.1, 0.1));
  double d1 = pseudohyperbolic_distance(d, pt(a[0]), pt(b[0]));
  double d2 = pseudohyperbolic_distance(d, pt(a[1]), pt(b[1]));
  CHECK(pseudohyperbolic_distance(p2, a, b) == Approx(std::max(d1, d2)));
}

TEST_CASE("one-dimensional ball distance matches the disc formula") {
  const Space b1 = Space::ball(1);
  const Space d = Space::disc();
  Point a = pt(cplx(0.3, -0.4)), b = pt(cplx(-0.1, 0.7));
  CHECK(pseudohyperbolic_distance(b1, a, b) ==
        Approx(pseudohyperbolic_distance(d, a, b)).epsilon(1e-14));
}

TEST_CASE("ball distance closed form") {
  const Space b2 = Space::ball(2);
  Point a = pt(cplx(0.5, 0.0), cplx(0.0, 0.3));
  Point b = pt(cplx(-0.1, 0.2), cplx(0.4, 0.0));
  double na = sq_norm(a), nb = sq_norm(b);
  double den = std::norm(cplx(1.0, 0.0) - herm_dot(a, b));
  double expect = std::sqrt(1.0 - (1.0 - na) * (1.0 - nb) / den);
  CHECK(pseudohyperbolic_distance(b2, a, b) == Approx(expect).epsilon(1e-14));
  CHECK(pseudohyperbolic_distance(b2, a, a) == Approx(0.0).margin(1e-12));
}

TEST_CASE("make_seq validates points") {
  const Space d = Space::disc();
  CHECK_THROWS_AS(make_seq(d, {pt(0.5), pt(0.5)}), config_error);
  CHECK_THROWS_AS(make_seq(d, {pt(cplx(1.0, 0.0))}), outside_domain);
  CHECK_THROWS_AS(make_seq(d, {pt(0.1), pt(0.2)}, {"only one label"}), config_error);
  PointSeq s = make_seq(d, {pt(0.1), pt(0.2)}, {"a", "b"});
  CHECK(s.size() == 2);
  CHECK(s.labels[1] == "b");
  PointSeq empty = make_seq(d, {});
  CHECK(empty.size() == 0);
}
