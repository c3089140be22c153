#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <vector>

#include "detail/gauss.hpp"
#include "kernels.hpp"

namespace rkframe {

// Nodes and weights of a normalized measure: boundary measure for Hardy
// spaces (torus T^n, sphere S^{2n-1}), weighted volume for Bergman balls.
// Weights are positive and sum to 1, so constants have unit norm everywhere.
struct QuadratureGrid {
  Space space;
  int resolution = 0;                // requested resolution parameter
  std::vector<int> axis_resolution;  // realized per-axis node counts
  std::vector<Point> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

// Default resolution parameter per space, chosen so that kernel combinations
// with moduli away from the boundary integrate to ~1e-8 while keeping node
// counts workable. Callers with near-boundary points should raise it.
inline int default_grid_resolution(const Space& space) {
  switch (space.kind) {
    case space_kind::hardy_disc: return 512;
    case space_kind::hardy_polydisc: return space.n <= 2 ? 128 : 32;
    case space_kind::hardy_ball:
      // node count grows like res^n * (res/4)^(n-1); stay well under the cap
      return space.n <= 2 ? 64 : (space.n == 3 ? 24 : 8);
    case space_kind::bergman_ball:
      return space.n == 1 ? 512 : (space.n == 2 ? 48 : 12);
  }
  return 128;
}

namespace detail {

constexpr double two_pi = 6.283185307179586476925286766559;

struct weighted_nodes {
  std::vector<Point> nodes;
  std::vector<double> weights;
};

// Sphere S^{2n-1} with normalized surface measure, built recursively from the
// slice decomposition: z = (sqrt(t) e^{i theta}, sqrt(1-t) w) with w on
// S^{2n-3} and t distributed with density (n-1)(1-t)^{n-2} dt on [0,1].
// Angular axes carry `ares` uniform nodes, latitude axes `lres` Gauss nodes
// with the density folded into the weight.
inline weighted_nodes sphere_grid(int n, int ares, int lres) {
  weighted_nodes out;
  if (n == 1) {
    out.nodes.reserve(ares);
    for (int j = 0; j < ares; ++j) {
      double th = two_pi * j / ares;
      out.nodes.push_back(Point{cplx(std::cos(th), std::sin(th))});
      out.weights.push_back(1.0 / ares);
    }
    return out;
  }
  weighted_nodes sub = sphere_grid(n - 1, ares, lres);
  gauss_rule t_rule = gauss_legendre01(lres);
  out.nodes.reserve(static_cast<std::size_t>(ares) * lres * sub.nodes.size());
  for (int it = 0; it < lres; ++it) {
    double t = t_rule.nodes[it];
    double wt = t_rule.weights[it] * (n - 1) * std::pow(1.0 - t, n - 2);
    double rt = std::sqrt(t), rs = std::sqrt(1.0 - t);
    for (int j = 0; j < ares; ++j) {
      double th = two_pi * j / ares;
      cplx first = rt * cplx(std::cos(th), std::sin(th));
      for (std::size_t s = 0; s < sub.nodes.size(); ++s) {
        Point z;
        z.reserve(n);
        z.push_back(first);
        for (const cplx& c : sub.nodes[s]) z.push_back(rs * c);
        out.nodes.push_back(std::move(z));
        out.weights.push_back(wt * sub.weights[s] / ares);
      }
    }
  }
  return out;
}

inline void normalize_weights(std::vector<double>& w) {
  long double s = 0;
  for (double x : w) s += x;
  if (!(s > 0)) throw numerical_error("quadrature weights do not sum to a positive value");
  for (double& x : w) x = static_cast<double>(x / s);
}

}  // namespace detail

// Deterministic grid. Realized axis counts (all recorded in axis_resolution):
//   HardyDisc        resolution angles.
//   HardyPolydisc(n) resolution angles per axis, resolution^n nodes.
//   HardyBall(n)     n angular axes at resolution, n-1 latitude axes at
//                    max(4, resolution/4) Gauss-Legendre nodes.
//   BergmanBall(n,k) radial axis with max(4, resolution/8) Gauss-Jacobi nodes
//                    for the weight u^{n-1}(1-u)^k in u = r^2, tensored with
//                    the HardyBall(n) sphere grid at the same resolution.
inline QuadratureGrid build_grid(const Space& space, int resolution) {
  if (resolution < 4)
    throw config_error("build_grid: resolution must be >= 4, got " +
                       std::to_string(resolution));
  QuadratureGrid g;
  g.space = space;
  g.resolution = resolution;
  switch (space.kind) {
    case space_kind::hardy_disc: {
      detail::weighted_nodes wn = detail::sphere_grid(1, resolution, 0);
      g.nodes = std::move(wn.nodes);
      g.weights = std::move(wn.weights);
      g.axis_resolution = {resolution};
      break;
    }
    case space_kind::hardy_polydisc: {
      double ln = space.n * std::log(static_cast<double>(resolution));
      if (ln > std::log(3e7)) throw resource_limit("build_grid: polydisc grid too large");
      std::size_t total = 1;
      for (int j = 0; j < space.n; ++j) total *= resolution;
      g.nodes.reserve(total);
      g.weights.assign(total, 1.0 / static_cast<double>(total));
      std::vector<int> idx(space.n, 0);
      for (std::size_t c = 0; c < total; ++c) {
        Point z(space.n);
        for (int j = 0; j < space.n; ++j) {
          double th = detail::two_pi * idx[j] / resolution;
          z[j] = cplx(std::cos(th), std::sin(th));
        }
        g.nodes.push_back(std::move(z));
        for (int j = space.n - 1; j >= 0; --j) {
          if (++idx[j] < resolution) break;
          idx[j] = 0;
        }
      }
      g.axis_resolution.assign(space.n, resolution);
      break;
    }
    case space_kind::hardy_ball: {
      int lres = std::max(4, resolution / 4);
      double ln = space.n * std::log(static_cast<double>(resolution)) +
                  (space.n - 1) * std::log(static_cast<double>(lres));
      if (ln > std::log(3e7)) throw resource_limit("build_grid: sphere grid too large");
      detail::weighted_nodes wn = detail::sphere_grid(space.n, resolution, lres);
      g.nodes = std::move(wn.nodes);
      g.weights = std::move(wn.weights);
      g.axis_resolution.assign(space.n, resolution);
      for (int j = 0; j < space.n - 1; ++j) g.axis_resolution.push_back(lres);
      break;
    }
    case space_kind::bergman_ball: {
      int lres = std::max(4, resolution / 4);
      int rres = std::max(4, resolution / 8);
      double ln = space.n * std::log(static_cast<double>(resolution)) +
                  (space.n - 1) * std::log(static_cast<double>(lres)) +
                  std::log(static_cast<double>(rres));
      if (ln > std::log(3e7))
        throw resource_limit("build_grid: bergman grid too large");
      detail::weighted_nodes sph = detail::sphere_grid(space.n, resolution, lres);
      detail::gauss_rule rad =
          detail::gauss_jacobi01(rres, static_cast<double>(space.k),
                                 static_cast<double>(space.n - 1));
      g.nodes.reserve(sph.nodes.size() * rres);
      for (int ir = 0; ir < rres; ++ir) {
        double r = std::sqrt(rad.nodes[ir]);
        for (std::size_t s = 0; s < sph.nodes.size(); ++s) {
          Point z = sph.nodes[s];
          for (cplx& c : z) c *= r;
          g.nodes.push_back(std::move(z));
          g.weights.push_back(rad.weights[ir] * sph.weights[s]);
        }
      }
      g.axis_resolution.assign(space.n, resolution);
      for (int j = 0; j < space.n - 1; ++j) g.axis_resolution.push_back(lres);
      g.axis_resolution.push_back(rres);
      break;
    }
  }
  detail::normalize_weights(g.weights);
  return g;
}

// (sum_j w_j |eval(node_j)|^q)^{1/q} for a caller-supplied evaluation; the
// shared path for kernel combinations and for test functions (monomials).
// Fixed summation order keeps results byte-reproducible.
template <class F>
double norm_on_grid(const QuadratureGrid& grid, double q, F&& eval) {
  if (!(q >= 1.0) || !std::isfinite(q))
    throw unsupported_exponent("norm exponent must satisfy 1 <= q < infinity");
  long double acc = 0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    double m = std::abs(eval(grid.nodes[j]));
    acc += grid.weights[j] * static_cast<long double>(std::pow(m, q));
  }
  return static_cast<double>(std::pow(static_cast<long double>(acc), 1.0L / q));
}

inline void check_grid_space(const KernelCoeffs& f, const QuadratureGrid& grid,
                             const char* where) {
  if (!(f.seq.space == grid.space))
    throw space_mismatch(std::string(where) + ": combination lives on " +
                         f.seq.space.name() + " but grid on " + grid.space.name());
}

inline double space_norm(const KernelCoeffs& f, const QuadratureGrid& grid, double q) {
  check_grid_space(f, grid, "space_norm");
  return norm_on_grid(grid, q, [&](const Point& z) { return eval_combo(f, z); });
}

// Matrix K with K(j,a) = k_{a,exponent}(node_j); the evaluation path shared by
// the optimizer so that objective and gradient see identical values.
inline Eigen::MatrixXcd kernel_matrix(const PointSeq& seq, double exponent,
                                      const QuadratureGrid& grid) {
  if (!(seq.space == grid.space))
    throw space_mismatch("kernel_matrix: sequence and grid spaces differ");
  Eigen::MatrixXcd K(grid.size(), seq.size());
  for (std::size_t a = 0; a < seq.size(); ++a) {
    double scale = std::pow(chi(seq.space, seq.points[a]),
                            1.0 / conjugate_exponent(exponent));
    for (std::size_t j = 0; j < grid.size(); ++j)
      K(j, a) = scale * eval_kernel(seq.space, seq.points[a], grid.nodes[j]);
  }
  return K;
}

// Gradient of space_norm with respect to the coefficients, packed as
// g_a = dN/dRe(c_a) + i dN/dIm(c_a); equivalently twice the Wirtinger
// derivative dN/d(conj c_a). The real directional derivative along a complex
// step delta is Re(conj(g) . delta). Nodes where |f| < 1e-14 contribute zero
// (subgradient choice at the zero set, relevant for q < 2).
inline std::vector<cplx> norm_gradient(const KernelCoeffs& f, const QuadratureGrid& grid,
                                       double q) {
  if (!(q > 1.0) || !std::isfinite(q))
    throw unsupported_exponent("norm_gradient: exponent must satisfy 1 < q < infinity");
  check_grid_space(f, grid, "norm_gradient");
  const std::size_t n = f.size(), m = grid.size();
  std::vector<cplx> values(m);
  long double acc = 0;
  for (std::size_t j = 0; j < m; ++j) {
    values[j] = eval_combo(f, grid.nodes[j]);
    acc += grid.weights[j] * static_cast<long double>(std::pow(std::abs(values[j]), q));
  }
  double nrm = static_cast<double>(std::pow(static_cast<long double>(acc), 1.0L / q));
  std::vector<cplx> g(n, cplx(0, 0));
  if (nrm == 0.0) return g;
  double outer = std::pow(nrm, 1.0 - q);
  for (std::size_t a = 0; a < n; ++a) {
    cplx s = 0;
    for (std::size_t j = 0; j < m; ++j) {
      double mod = std::abs(values[j]);
      if (mod < 1e-14) continue;
      cplx K = eval_normalized_kernel(f.seq.space, f.exponent, f.seq.points[a],
                                      grid.nodes[j]);
      s += grid.weights[j] * std::pow(mod, q - 2.0) * values[j] * std::conj(K);
    }
    g[a] = outer * s;
  }
  return g;
}

}  // namespace rkframe
