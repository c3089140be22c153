#include <catch2/catch_amalgamated.hpp>

#include <rkframe/detail/rng.hpp>
#include <rkframe/quadrature.hpp>
#include <rkframe/seqgen.hpp>

#include <cmath>

using namespace rkframe;
using Catch::Approx;

TEST_CASE("grid construction basics") {
  QuadratureGrid g = build_grid(Space::disc(), 8);
  REQUIRE(g.size() == 8);
  for (std::size_t j = 0; j < g.size(); ++j) {
    CHECK(g.weights[j] == Approx(0.125));
    CHECK(std::abs(g.nodes[j][0]) == Approx(1.0));
  }
  CHECK(build_grid(Space::polydisc(2), 16).size() == 256);
  CHECK_THROWS_AS(build_grid(Space::disc(), 3), config_error);
  CHECK_THROWS_AS(build_grid(Space::polydisc(6), 512), resource_limit);
}

TEST_CASE("grid weights sum to one") {
  for (const Space& sp : {Space::disc(), Space::polydisc(2), Space::ball(2),
                          Space::ball(3), Space::bergman(1, 1), Space::bergman(2, 1)}) {
    QuadratureGrid g = build_grid(sp, 16);
    long double s = 0;
    for (double w : g.weights) {
      CHECK(w > 0);
      s += w;
    }
    CHECK(static_cast<double>(s) == Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("constants have unit norm in every space") {
  for (const Space& sp : {Space::disc(), Space::polydisc(2), Space::ball(2),
                          Space::bergman(1, 0), Space::bergman(2, 1)}) {
    PointSeq seq = make_seq(sp, {Point(static_cast<std::size_t>(sp.dim()), cplx(0, 0))});
    for (double p : {2.0, 3.0}) {
      KernelCoeffs one = make_combo(seq, p, {cplx(1, 0)});  // k_0 == 1 normalized
      QuadratureGrid g = build_grid(sp, 16);
      for (double q : {1.0, 2.0, 4.0})
        CHECK(space_norm(one, g, q) == Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("normalized kernel has unit two-norm on the disc") {
  PointSeq seq = make_seq(Space::disc(), {pt(0.6)});
  KernelCoeffs f = make_combo(seq, 2.0, {cplx(1, 0)});
  QuadratureGrid g = build_grid(Space::disc(), 512);
  CHECK(space_norm(f, g, 2.0) == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("unnormalized kernel norm matches the closed form") {
  // coeff chi^{-1/2} undoes the normalization; ||k_a||_2 = (1-|a|^2)^{-1/2}
  PointSeq seq = make_seq(Space::disc(), {pt(0.6)});
  double scale = 1.0 / std::sqrt(chi(Space::disc(), pt(0.6)));
  KernelCoeffs f = make_combo(seq, 2.0, {cplx(scale, 0)});
  QuadratureGrid g = build_grid(Space::disc(), 1024);
  CHECK(space_norm(f, g, 2.0) == Approx(1.25).epsilon(1e-6));
}

TEST_CASE("monomial moments on the disc boundary") {
  QuadratureGrid g = build_grid(Space::disc(), 64);
  for (int m = 0; m <= 10; ++m) {
    double nrm = norm_on_grid(g, 2.0, [m](const Point& z) {
      return detail::pow_int(z[0], m);
    });
    CHECK(nrm == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("monomial moments on the sphere") {
  // integral over S^3 of |z1|^{2m} is 1/(m+1); of |z1 z2|^2 is 1/6
  QuadratureGrid g = build_grid(Space::ball(2), 48);
  for (int m = 0; m <= 8; ++m) {
    double nrm = norm_on_grid(g, 2.0, [m](const Point& z) {
      return detail::pow_int(z[0], m);
    });
    CHECK(nrm * nrm == Approx(1.0 / (m + 1)).epsilon(1e-10));
  }
  double mixed = norm_on_grid(g, 2.0, [](const Point& z) { return z[0] * z[1]; });
  CHECK(mixed * mixed == Approx(1.0 / 6.0).epsilon(1e-10));
}

TEST_CASE("monomial moments on weighted bergman balls") {
  // ||z^m||^2 = (k+1) m! k! / (m+k+1)! on the disc with weight (1-|z|^2)^k
  QuadratureGrid g1 = build_grid(Space::bergman(1, 0), 64);
  QuadratureGrid g2 = build_grid(Space::bergman(1, 1), 64);
  for (int m = 0; m <= 8; ++m) {
    double n0 = norm_on_grid(g1, 2.0, [m](const Point& z) {
      return detail::pow_int(z[0], m);
    });
    CHECK(n0 * n0 == Approx(1.0 / (m + 1)).epsilon(1e-10));
    double n1 = norm_on_grid(g2, 2.0, [m](const Point& z) {
      return detail::pow_int(z[0], m);
    });
    CHECK(n1 * n1 == Approx(2.0 / ((m + 1) * (m + 2))).epsilon(1e-10));
  }
  // first moment of |z1|^2 on BergmanBall(2,1): E[u] E[t] with u ~ Beta(2,2),
  // t ~ Beta(1,1), so 1/2 * 1/2 = 1/4
  QuadratureGrid g3 = build_grid(Space::bergman(2, 1), 32);
  double n3 = norm_on_grid(g3, 2.0, [](const Point& z) { return z[0]; });
  CHECK(n3 * n3 == Approx(0.25).epsilon(1e-10));
}

TEST_CASE("norm_on_grid rejects bad exponents") {
  QuadratureGrid g = build_grid(Space::disc(), 8);
  CHECK_THROWS_AS(norm_on_grid(g, 0.5, [](const Point&) { return 1.0; }),
                  unsupported_exponent);
}

TEST_CASE("space_norm checks the grid space") {
  PointSeq seq = make_seq(Space::disc(), {pt(0.2)});
  KernelCoeffs f = make_combo(seq, 2.0, {cplx(1, 0)});
  QuadratureGrid g = build_grid(Space::ball(2), 16);
  CHECK_THROWS_AS(space_norm(f, g, 2.0), space_mismatch);
}

TEST_CASE("kernel matrix columns agree with pointwise evaluation") {
  PointSeq seq = make_seq(Space::disc(), {pt(0.3), pt(cplx(-0.2, 0.5))});
  QuadratureGrid g = build_grid(Space::disc(), 16);
  Eigen::MatrixXcd K = kernel_matrix(seq, 3.0, g);
  REQUIRE(K.rows() == 16);
  REQUIRE(K.cols() == 2);
  for (int j : {0, 5, 11}) {
    for (int a : {0, 1}) {
      cplx direct = eval_normalized_kernel(Space::disc(), 3.0, seq.points[a],
                                           g.nodes[static_cast<std::size_t>(j)]);
      CHECK(std::abs(K(j, a) - direct) < 1e-14);
    }
  }
}

TEST_CASE("gradient of the zero combination vanishes") {
  PointSeq seq = make_seq(Space::disc(), {pt(0.3), pt(-0.1)});
  KernelCoeffs f = make_combo(seq, 2.0, {cplx(0, 0), cplx(0, 0)});
  QuadratureGrid g = build_grid(Space::disc(), 32);
  for (cplx gi : norm_gradient(f, g, 3.0)) CHECK(std::abs(gi) == 0.0);
}

TEST_CASE("gradient of a single positive coefficient is one") {
  PointSeq seq = make_seq(Space::disc(), {pt(0.0)});
  KernelCoeffs f = make_combo(seq, 2.0, {cplx(2.0, 0)});
  QuadratureGrid g = build_grid(Space::disc(), 32);
  std::vector<cplx> grad = norm_gradient(f, g, 3.0);
  CHECK(grad[0].real() == Approx(1.0).epsilon(1e-12));
  CHECK(grad[0].imag() == Approx(0.0).margin(1e-12));
}

namespace {

double fd_rel_error(const Space& sp, double p, double q, const PointSeq& seq,
                    std::vector<cplx> coeffs, int res) {
  QuadratureGrid g = build_grid(sp, res);
  KernelCoeffs f = make_combo(seq, p, coeffs);
  std::vector<cplx> grad = norm_gradient(f, g, q);
  const double h = 1e-6;
  double worst = 0, scale = 0;
  for (std::size_t a = 0; a < coeffs.size(); ++a) scale = std::max(scale, std::abs(grad[a]));
  for (std::size_t a = 0; a < coeffs.size(); ++a) {
    for (int part = 0; part < 2; ++part) {
      cplx step = part == 0 ? cplx(h, 0) : cplx(0, h);
      std::vector<cplx> up = coeffs, dn = coeffs;
      up[a] += step;
      dn[a] -= step;
      double fu = space_norm(make_combo(seq, p, up), g, q);
      double fd = space_norm(make_combo(seq, p, dn), g, q);
      double fdiff = (fu - fd) / (2 * h);
      double analytic = part == 0 ? grad[a].real() : grad[a].imag();
      worst = std::max(worst, std::abs(analytic - fdiff));
    }
  }
  return worst / std::max(scale, 1e-12);
}

}  // namespace

TEST_CASE("gradient matches central finite differences") {
  detail::rng gen(19);
  PointSeq seq = random_separated(Space::disc(), 3, 0.3, 5);
  std::vector<cplx> c;
  for (int i = 0; i < 3; ++i) c.push_back(gen.normal_complex());
  CHECK(fd_rel_error(Space::disc(), 2.0, 3.0, seq, c, 128) < 1e-5);

  PointSeq seq2 = random_separated(Space::ball(2), 2, 0.3, 9);
  std::vector<cplx> c2{gen.normal_complex(), gen.normal_complex()};
  CHECK(fd_rel_error(Space::ball(2), 2.5, 2.5, seq2, c2, 16) < 1e-5);
}
