#include <catch2/catch_amalgamated.hpp>

#include <rkframe/detail/rng.hpp>
#include <rkframe/kernels.hpp>
#include <rkframe/seqgen.hpp>

using namespace rkframe;
using Catch::Approx;

TEST_CASE("conjugate exponent") {
  CHECK(conjugate_exponent(2.0) == Approx(2.0));
  CHECK(conjugate_exponent(4.0) == Approx(4.0 / 3.0));
  CHECK(conjugate_exponent(1.5) == Approx(3.0));
  CHECK_THROWS_AS(conjugate_exponent(1.0), unsupported_exponent);
  CHECK_THROWS_AS(conjugate_exponent(0.5), unsupported_exponent);
  CHECK_THROWS_AS(conjugate_exponent(std::numeric_limits<double>::infinity()),
                  unsupported_exponent);
  CHECK_THROWS_AS(conjugate_exponent(std::nan("")), unsupported_exponent);
}

TEST_CASE("kernel closed forms") {
  CHECK(eval_kernel(Space::disc(), pt(0.5), pt(0.5)).real() == Approx(4.0 / 3.0));
  CHECK(eval_kernel(Space::polydisc(2), pt(0.5, 0.5), pt(0.5, 0.5)).real() ==
        Approx(16.0 / 9.0));
  // k_0 is the constant 1 on the ball
  CHECK(eval_kernel(Space::ball(2), pt(0.0, 0.0), pt(cplx(0.3, 0.2), cplx(-0.1, 0.5)))
            .real() == Approx(1.0));
  CHECK(eval_kernel(Space::bergman(1, 0), pt(0.5), pt(0.5)).real() == Approx(16.0 / 9.0));
}

TEST_CASE("kernel argument validation") {
  CHECK_THROWS_AS(eval_kernel(Space::disc(), pt(cplx(1.0, 0.0)), pt(0.0)),
                  outside_domain);
  CHECK_THROWS_AS(eval_kernel(Space::disc(), pt(0.5), pt(cplx(1.5, 0.0))),
                  outside_domain);
  // boundary evaluation points are fine
  CHECK_NOTHROW(eval_kernel(Space::disc(), pt(0.5), pt(cplx(0.0, 1.0))));
  CHECK_THROWS_AS(eval_kernel(Space::ball(2), pt(0.1), pt(0.1, 0.1)),
                  dimension_mismatch);
}

TEST_CASE("kernel hermitian symmetry") {
  detail::rng gen(7);
  for (const Space& sp : {Space::disc(), Space::polydisc(2), Space::ball(2),
                          Space::bergman(2, 1)}) {
    for (int i = 0; i < 20; ++i) {
      Point a = detail::random_interior(sp, gen);
      Point z = detail::random_interior(sp, gen);
      cplx lhs = eval_kernel(sp, a, z);
      cplx rhs = std::conj(eval_kernel(sp, z, a));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
    }
  }
}

TEST_CASE("chi closed forms") {
  CHECK(chi(Space::disc(), pt(0.0)) == Approx(1.0));
  CHECK(chi(Space::disc(), pt(0.9)) == Approx(0.19));
  CHECK(chi(Space::ball(2), pt(0.5, 0.0)) == Approx(9.0 / 16.0));
  CHECK(chi(Space::bergman(1, 0), pt(0.0)) == Approx(1.0));
  CHECK(chi(Space::bergman(1, 1), pt(0.6)) == Approx(0.64 * 0.64 * 0.64));
  CHECK(chi(Space::polydisc(2), pt(0.5, 0.9)) == Approx(0.75 * 0.19));
}

TEST_CASE("chi inverts the diagonal kernel value") {
  detail::rng gen(11);
  for (const Space& sp : {Space::disc(), Space::polydisc(3), Space::ball(2),
                          Space::bergman(1, 2)}) {
    for (int i = 0; i < 10; ++i) {
      Point a = detail::random_interior(sp, gen);
      CHECK(chi(sp, a) * eval_kernel(sp, a, a).real() == Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("normalized kernel values") {
  CHECK(eval_normalized_kernel(Space::disc(), 2.0, pt(0.0), pt(0.3)).real() ==
        Approx(1.0));
  double r = std::sqrt(3.0) / 2.0;
  CHECK(eval_normalized_kernel(Space::disc(), 2.0, pt(r), pt(0.0)).real() ==
        Approx(0.5));
  // p = 4: chi^{3/4} k_a at the diagonal collapses to (16/9)^{1/4}
  CHECK(eval_normalized_kernel(Space::ball(2), 4.0, pt(0.5, 0.0), pt(0.5, 0.0)).real() ==
        Approx(std::pow(16.0 / 9.0, 0.25)));
}

TEST_CASE("gram entry closed forms") {
  double r = std::sqrt(3.0) / 2.0;
  CHECK(gram_entry(Space::disc(), 2.0, pt(0.0), pt(r)).real() == Approx(0.5));
  CHECK(gram_entry(Space::disc(), 2.0, pt(0.5), pt(-0.5)).real() == Approx(0.6));
}

TEST_CASE("gram entry has unit diagonal for every exponent") {
  detail::rng gen(3);
  for (const Space& sp : {Space::disc(), Space::polydisc(2), Space::ball(3),
                          Space::bergman(2, 0)}) {
    for (double p : {2.0, 3.0, 4.5}) {
      Point a = detail::random_interior(sp, gen);
      cplx g = gram_entry(sp, p, a, a);
      CHECK(g.real() == Approx(1.0).epsilon(1e-12));
      CHECK(g.imag() == Approx(0.0).margin(1e-12));
    }
  }
}

TEST_CASE("kernel combinations") {
  PointSeq seq = make_seq(Space::disc(), {pt(0.2), pt(-0.4)});
  CHECK_THROWS_AS(make_combo(seq, 2.0, {cplx(1, 0)}), config_error);
  CHECK_THROWS_AS(make_combo(seq, 1.0, {cplx(1, 0), cplx(0, 1)}), unsupported_exponent);
  KernelCoeffs f = make_combo(seq, 3.0, {cplx(1, 1), cplx(0, -2)});
  Point z = pt(cplx(0.1, 0.3));
  cplx expect = cplx(1, 1) * eval_normalized_kernel(Space::disc(), 3.0, pt(0.2), z) +
                cplx(0, -2) * eval_normalized_kernel(Space::disc(), 3.0, pt(-0.4), z);
  CHECK(std::abs(eval_combo(f, z) - expect) < 1e-14);
}
