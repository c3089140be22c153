#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace rkframe {

using cplx = std::complex<double>;
using Point = std::vector<cplx>;

enum class space_kind { hardy_disc, hardy_polydisc, hardy_ball, bergman_ball };

// Domain plus function-space descriptor. n is the complex dimension of the
// domain; k is the radial weight power and applies to bergman_ball only
// (volume measure proportional to (1 - |z|^2)^k, normalized to mass one).
struct Space {
  space_kind kind = space_kind::hardy_disc;
  int n = 1;
  int k = 0;

  static Space disc() { return Space{space_kind::hardy_disc, 1, 0}; }

  static Space polydisc(int n) {
    if (n < 1) throw config_error("polydisc dimension must be >= 1");
    return Space{space_kind::hardy_polydisc, n, 0};
  }

  static Space ball(int n) {
    if (n < 1) throw config_error("ball dimension must be >= 1");
    return Space{space_kind::hardy_ball, n, 0};
  }

  static Space bergman(int n, int k) {
    if (n < 1) throw config_error("ball dimension must be >= 1");
    if (k < 0) throw config_error("bergman weight power must be >= 0");
    return Space{space_kind::bergman_ball, n, k};
  }

  int dim() const { return n; }

  // Euclidean-ball domain (as opposed to the product domain of the polydisc).
  bool ball_type() const { return kind != space_kind::hardy_polydisc; }

  // Exponent d of the kernel (1 - <z,a>)^{-d} for ball-type spaces.
  int kernel_power() const {
    switch (kind) {
      case space_kind::hardy_disc: return 1;
      case space_kind::hardy_ball: return n;
      case space_kind::bergman_ball: return n + k + 1;
      case space_kind::hardy_polydisc: break;
    }
    throw unsupported_space("kernel_power: polydisc kernel is a product, not a single power");
  }

  std::string name() const {
    switch (kind) {
      case space_kind::hardy_disc: return "HardyDisc";
      case space_kind::hardy_polydisc: return "HardyPolydisc(" + std::to_string(n) + ")";
      case space_kind::hardy_ball: return "HardyBall(" + std::to_string(n) + ")";
      case space_kind::bergman_ball:
        return "BergmanBall(" + std::to_string(n) + "," + std::to_string(k) + ")";
    }
    return "?";
  }

  friend bool operator==(const Space& a, const Space& b) {
    return a.kind == b.kind && a.n == b.n && a.k == b.k;
  }
  friend bool operator!=(const Space& a, const Space& b) { return !(a == b); }
};

inline void check_dim(const Space& space, const Point& z, const char* where) {
  if (static_cast<int>(z.size()) != space.dim())
    throw dimension_mismatch(space.dim(), static_cast<int>(z.size()), where);
}

inline double sq_norm(const Point& z) {
  double s = 0;
  for (const cplx& c : z) s += std::norm(c);
  return s;
}

// <z,w> = sum_j z_j * conj(w_j)
inline cplx herm_dot(const Point& z, const Point& w) {
  cplx s = 0;
  for (std::size_t j = 0; j < z.size(); ++j) s += z[j] * std::conj(w[j]);
  return s;
}

// Strict interior membership.
inline bool point_in_domain(const Space& space, const Point& z) {
  check_dim(space, z, "point_in_domain");
  if (space.kind == space_kind::hardy_polydisc) {
    return std::all_of(z.begin(), z.end(),
                       [](const cplx& c) { return std::norm(c) < 1.0; });
  }
  return sq_norm(z) < 1.0;
}

inline void require_interior(const Space& space, const Point& z, const char* where) {
  if (!point_in_domain(space, z))
    throw outside_domain(std::string(where) + ": point outside the open domain of " +
                         space.name());
}

// Membership in the closed domain up to a small tolerance; kernel evaluation
// accepts boundary nodes.
inline bool point_on_closure(const Space& space, const Point& z, double tol = 1e-12) {
  check_dim(space, z, "point_on_closure");
  if (space.kind == space_kind::hardy_polydisc) {
    return std::all_of(z.begin(), z.end(), [tol](const cplx& c) {
      return std::abs(c) <= 1.0 + tol;
    });
  }
  return std::sqrt(sq_norm(z)) <= 1.0 + tol;
}

namespace detail {

inline double disc_rho(cplx a, cplx b) {
  cplx den = 1.0 - std::conj(a) * b;
  if (std::abs(den) == 0.0) throw kernel_singularity("pseudohyperbolic distance: 1 - conj(a)b = 0");
  return std::abs((a - b) / den);
}

// |phi_a(b)|^2 = 1 - (1-|a|^2)(1-|b|^2)/|1-<a,b>|^2 for the ball involution.
inline double ball_rho(const Point& a, const Point& b) {
  double na = sq_norm(a), nb = sq_norm(b);
  cplx den = 1.0 - herm_dot(a, b);
  double d2 = std::norm(den);
  if (d2 == 0.0) throw kernel_singularity("pseudohyperbolic distance: 1 - <a,b> = 0");
  double r2 = 1.0 - (1.0 - na) * (1.0 - nb) / d2;
  return std::sqrt(std::clamp(r2, 0.0, 1.0));
}

}  // namespace detail

// Pseudohyperbolic distance. Disc: |(a-b)/(1-conj(a)b)|. Ball (Hardy or
// Bergman): modulus of the involutive automorphism swapping the points.
// Polydisc: max over coordinates of the one-variable distance.
inline double pseudohyperbolic_distance(const Space& space, const Point& a, const Point& b) {
  check_dim(space, a, "pseudohyperbolic_distance (first argument)");
  check_dim(space, b, "pseudohyperbolic_distance (second argument)");
  switch (space.kind) {
    case space_kind::hardy_disc:
      return detail::disc_rho(a[0], b[0]);
    case space_kind::hardy_polydisc: {
      double m = 0;
      for (int j = 0; j < space.n; ++j) m = std::max(m, detail::disc_rho(a[j], b[j]));
      return m;
    }
    case space_kind::hardy_ball:
    case space_kind::bergman_ball:
      return detail::ball_rho(a, b);
  }
  throw unsupported_space("pseudohyperbolic_distance");
}

// Finite sequence of pairwise-distinct interior points.
struct PointSeq {
  Space space;
  std::vector<Point> points;
  std::vector<std::string> labels;  // empty, or one label per point

  std::size_t size() const { return points.size(); }
};

inline PointSeq make_seq(const Space& space, std::vector<Point> points,
                         std::vector<std::string> labels = {}) {
  for (const Point& p : points) require_interior(space, p, "make_seq");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j])
        throw config_error("make_seq: duplicate points at indices " + std::to_string(i) +
                           " and " + std::to_string(j));
  if (!labels.empty() && labels.size() != points.size())
    throw config_error("make_seq: label count does not match point count");
  return PointSeq{space, std::move(points), std::move(labels)};
}

// Convenience for one-dimensional domains.
inline Point pt(cplx z) { return Point{z}; }
inline Point pt(cplx z, cplx w) { return Point{z, w}; }

}  // namespace rkframe
