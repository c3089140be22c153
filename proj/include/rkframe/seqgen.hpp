#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "detail/rng.hpp"
#include "quadrature.hpp"

namespace rkframe {

// Disc lattice: ring m sits at radius 1 - sigma^{-m} and carries
// ceil(angular_density * 2pi * sigma^m) equally spaced points, so the count
// per ring scales with the pseudohyperbolic circumference. Rings are
// staggered against each other; seed != 0 adds a small deterministic angular
// jitter that preserves within-ring ordering.
struct LatticeParams {
  double sigma = 2.0;            // radial ratio, > 1
  double angular_density = 1.0;  // points per unit pseudohyperbolic length, > 0
  int rings = 1;
  std::uint64_t seed = 0;  // 0: jitter off
};

inline PointSeq seip_lattice(const LatticeParams& params) {
  if (!(params.sigma > 1.0))
    throw config_error("seip_lattice: sigma must exceed 1");
  if (!(params.angular_density > 0))
    throw config_error("seip_lattice: angular_density must be positive");
  if (params.rings < 1) throw config_error("seip_lattice: rings must be >= 1");
  std::vector<Point> pts;
  for (int m = 1; m <= params.rings; ++m) {
    double rm = 1.0 - std::pow(params.sigma, -static_cast<double>(m));
    if (!(rm < 1.0))
      throw saturation_error("seip_lattice: ring radius 1 - sigma^-" +
                             std::to_string(m) + " saturates binary64");
    double raw = params.angular_density * detail::two_pi *
                 std::pow(params.sigma, static_cast<double>(m));
    if (raw > 2e6 || pts.size() > 200000)
      throw resource_limit("seip_lattice: point count too large");
    long cnt = std::max(1L, static_cast<long>(std::ceil(raw)));
    double stagger = std::fmod(static_cast<double>(m) * 0.381966011250105, 1.0);
    detail::rng gen(detail::mix_seed(params.seed, static_cast<std::uint64_t>(m)));
    for (long j = 0; j < cnt; ++j) {
      double frac = (static_cast<double>(j) + stagger) / static_cast<double>(cnt);
      if (params.seed != 0)
        frac += (gen.uniform() - 0.5) * 0.5 / static_cast<double>(cnt);
      pts.push_back(Point{std::polar(rm, detail::two_pi * frac)});
    }
  }
  return make_seq(Space::disc(), std::move(pts));
}

// Finite-truncation estimate of the upper uniform density: max over sampled
// centers z and ladder radii r of sum_{1/2 < rho(z,a) < r} log(1/rho(z,a))
// over log(1/(1-r)). An estimate of the r -> 1 limsup, not the limit itself.
struct DensityEstimate {
  double value = 0.0;
  std::vector<double> r_ladder;
  int sup_centers = 0;
};

inline DensityEstimate density_estimate(const PointSeq& seq,
                                        std::vector<double> r_ladder = {0.9, 0.99,
                                                                        0.999},
                                        int centers = 64, std::uint64_t seed = 1) {
  if (seq.space.kind != space_kind::hardy_disc)
    throw unsupported_space("density_estimate: disc sequences only");
  if (centers < 1) throw config_error("density_estimate: centers must be >= 1");
  for (double r : r_ladder)
    if (!(r > 0.5 && r < 1.0))
      throw config_error("density_estimate: ladder radii must lie in (1/2, 1)");
  DensityEstimate out;
  out.r_ladder = std::move(r_ladder);
  out.sup_centers = centers;
  if (seq.size() == 0) return out;

  std::vector<cplx> cs{cplx(0, 0)};  // origin plus seeded draws in |z| <= 1/2
  detail::rng gen(detail::mix_seed(seed, 0));
  while (cs.size() < static_cast<std::size_t>(centers)) {
    double rr = 0.5 * std::sqrt(gen.uniform());
    cs.push_back(std::polar(rr, detail::two_pi * gen.uniform()));
  }
  for (const cplx& c : cs) {
    for (double r : out.r_ladder) {
      long double num = 0;
      for (const Point& a : seq.points) {
        double rho = pseudohyperbolic_distance(seq.space, Point{c}, a);
        if (rho > 0.5 && rho < r) num += std::log(1.0 / rho);
      }
      double val = static_cast<double>(num) / std::log(1.0 / (1.0 - r));
      out.value = std::max(out.value, val);
    }
  }
  return out;
}

// Points 1 - base^k, k = 1..count, on the positive real axis. Throws once
// 1 - base^k stops being representable below 1 (or collides with the previous
// point), which for base = 1/2 happens at k = 54.
inline PointSeq radial_geometric(int count, double base) {
  if (count < 1) throw config_error("radial_geometric: count must be >= 1");
  if (!(base > 0.0 && base < 1.0))
    throw config_error("radial_geometric: base must lie in (0,1)");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  double gap = 1.0, prev = -1.0;
  for (int k = 1; k <= count; ++k) {
    gap *= base;
    double r = 1.0 - gap;
    if (!(r < 1.0) || r <= prev)
      throw saturation_error("radial_geometric: 1 - base^" + std::to_string(k) +
                             " saturates binary64; reduce count");
    pts.push_back(Point{cplx(r, 0)});
    prev = r;
  }
  return make_seq(Space::disc(), std::move(pts));
}

// a -> (a, a) into the bidisc; the polydisc max-metric restricted to the
// diagonal reproduces the one-variable pseudohyperbolic distances exactly.
inline PointSeq diagonal_embed(const PointSeq& seq) {
  if (seq.space.kind != space_kind::hardy_disc)
    throw space_mismatch("diagonal_embed: expects a HardyDisc sequence");
  PointSeq out;
  out.space = Space::polydisc(2);
  out.labels = seq.labels;
  out.points.reserve(seq.size());
  for (const Point& a : seq.points) out.points.push_back(Point{a[0], a[0]});
  return out;
}

namespace detail {

// Uniform draw over the domain scaled to modulus <= 0.95, keeping test
// corpora away from the extreme boundary.
inline Point random_interior(const Space& space, rng& gen) {
  const double cap = 0.95;
  auto disc_coord = [&] {
    double r = cap * std::sqrt(gen.uniform());
    return std::polar(r, two_pi * gen.uniform());
  };
  if (!space.ball_type()) {
    Point z(static_cast<std::size_t>(space.n));
    for (auto& c : z) c = disc_coord();
    return z;
  }
  if (space.n == 1) return Point{disc_coord()};
  Point z(static_cast<std::size_t>(space.n));
  double nrm2 = 0;
  do {
    nrm2 = 0;
    for (auto& c : z) {
      c = gen.normal_complex();
      nrm2 += std::norm(c);
    }
  } while (nrm2 == 0);
  double r = cap * std::pow(gen.uniform(), 1.0 / (2.0 * space.n));
  double scale = r / std::sqrt(nrm2);
  for (auto& c : z) c *= scale;
  return z;
}

}  // namespace detail

// Rejection sampling of count points with pairwise pseudohyperbolic
// separation >= min_sep; gives up after 10000 attempts per point.
inline PointSeq random_separated(const Space& space, int count, double min_sep,
                                 std::uint64_t seed) {
  if (count < 1) throw config_error("random_separated: count must be >= 1");
  if (!(min_sep > 0.0 && min_sep < 1.0))
    throw config_error("random_separated: min_sep must lie in (0,1)");
  detail::rng gen(detail::mix_seed(seed, 0));
  std::vector<Point> pts;
  long attempts = 0;
  const long budget = 10000L * count;
  while (pts.size() < static_cast<std::size_t>(count)) {
    if (++attempts > budget)
      throw saturation_error(
          "random_separated: attempt budget (10000 per point) exhausted; reduce "
          "count or min_sep");
    Point z = detail::random_interior(space, gen);
    bool ok = true;
    for (const Point& p : pts)
      if (pseudohyperbolic_distance(space, z, p) < min_sep) {
        ok = false;
        break;
      }
    if (ok) pts.push_back(std::move(z));
  }
  return make_seq(space, std::move(pts));
}

}  // namespace rkframe
