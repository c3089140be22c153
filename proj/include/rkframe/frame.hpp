#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "gram.hpp"

namespace rkframe {

struct OptimizerConfig {
  int restarts = 32;
  int max_iters = 2000;
  double step_init = 1.0;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  int grid_resolution = 0;  // 0: per-space default, see default_grid_resolution
};

inline void check_optimizer_config(const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) throw config_error("optimizer: restarts must be >= 1");
  if (cfg.max_iters < 1) throw config_error("optimizer: max_iters must be >= 1");
  if (!(cfg.step_init > 0)) throw config_error("optimizer: step_init must be positive");
  if (!(cfg.tol > 0)) throw config_error("optimizer: tol must be positive");
}

namespace detail {

inline double lp_norm(const Eigen::VectorXcd& v, double p) {
  long double acc = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    acc += static_cast<long double>(std::pow(std::abs(v(i)), p));
  return static_cast<double>(std::pow(static_cast<long double>(acc), 1.0L / p));
}

// F(mu) = (sum_j w_j |(K mu)_j|^q)^{1/q}; gradient packed as in norm_gradient.
struct sphere_objective {
  const Eigen::MatrixXcd& K;
  const Eigen::VectorXd& w;
  double q;

  double value(const Eigen::VectorXcd& mu, Eigen::VectorXcd* grad) const {
    Eigen::VectorXcd v = K * mu;
    long double acc = 0;
    for (Eigen::Index j = 0; j < v.size(); ++j)
      acc += w(j) * static_cast<long double>(std::pow(std::abs(v(j)), q));
    double F = static_cast<double>(std::pow(static_cast<long double>(acc), 1.0L / q));
    if (grad) {
      if (F == 0.0) {
        grad->setZero(K.cols());
      } else {
        Eigen::VectorXcd u(v.size());
        for (Eigen::Index j = 0; j < v.size(); ++j) {
          double mod = std::abs(v(j));
          u(j) = mod < 1e-14 ? cplx(0, 0) : w(j) * std::pow(mod, q - 2.0) * v(j);
        }
        *grad = std::pow(F, 1.0 - q) * (K.adjoint() * u);
      }
    }
    return F;
  }
};

struct opt_result {
  double value = 0;
  long iterations = 0;
  bool converged = false;
};

// Projected gradient on the l^{sphere_p} unit sphere: step along the gradient
// of the normalized objective F(mu)/||mu||, renormalize, backtracking line
// search (factor 0.5, sufficient decrease 0.3), stop when the relative
// objective change drops below tol. The radial part of the raw gradient is
// removed first; renormalization cancels it anyway, and keeping it would let
// the line search stall far from a constrained stationary point. The decrease
// constant is deliberately strong: a loose Armijo bar accepts overshooting
// steps that zigzag across the valley instead of contracting. Restart 0
// starts at the uniform vector, the rest at seeded Gaussians; restart r
// depends only on (seed, r) so enlarging the restart budget refines
// monotonically.
inline opt_result optimize_sphere(const sphere_objective& obj, double sphere_p,
                                  const OptimizerConfig& cfg, bool maximize) {
  const Eigen::Index n = obj.K.cols();
  // gradient of ||mu||_{sphere_p} at a unit vector, packed like the objective
  auto sphere_grad = [&](const Eigen::VectorXcd& m) {
    Eigen::VectorXcd s(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      double mod = std::abs(m(i));
      s(i) = mod < 1e-14 ? cplx(0, 0) : std::pow(mod, sphere_p - 2.0) * m(i);
    }
    return s;
  };
  opt_result out;
  out.converged = true;
  double best = maximize ? -std::numeric_limits<double>::infinity()
                         : std::numeric_limits<double>::infinity();
  for (int r = 0; r < cfg.restarts; ++r) {
    Eigen::VectorXcd mu(n);
    if (r == 0) {
      mu.setConstant(cplx(1.0, 0.0));
    } else {
      rng gen(mix_seed(cfg.seed, static_cast<std::uint64_t>(r)));
      for (Eigen::Index i = 0; i < n; ++i) mu(i) = gen.normal_complex();
    }
    double nrm = lp_norm(mu, sphere_p);
    if (nrm == 0.0) {
      mu.setConstant(cplx(1.0, 0.0));
      nrm = lp_norm(mu, sphere_p);
    }
    mu /= nrm;

    Eigen::VectorXcd g(n);
    double F = obj.value(mu, &g);
    bool conv = false;
    for (int it = 0; it < cfg.max_iters; ++it) {
      Eigen::VectorXcd gr = g - F * sphere_grad(mu);
      Eigen::VectorXcd d = maximize ? gr : Eigen::VectorXcd(-gr);
      double dn2 = d.squaredNorm();
      if (dn2 == 0.0) {
        conv = true;
        break;
      }
      double t = cfg.step_init;
      double Ft = F;
      Eigen::VectorXcd trial;
      bool accepted = false;
      while (t > cfg.step_init * 1e-18) {
        trial = mu + t * d;
        double tn = lp_norm(trial, sphere_p);
        if (tn > 0) {
          trial /= tn;
          Ft = obj.value(trial, nullptr);
          double improve = maximize ? Ft - F : F - Ft;
          if (improve >= 0.3 * t * dn2) {
            accepted = true;
            break;
          }
        }
        t *= 0.5;
      }
      if (!accepted) {  // no usable step: stationary up to line-search precision
        conv = true;
        break;
      }
      ++out.iterations;
      mu = trial;
      double Fold = F;
      F = obj.value(mu, &g);
      if (std::abs(F - Fold) <= cfg.tol * std::max(1.0, std::abs(F))) {
        conv = true;
        break;
      }
    }
    out.converged = out.converged && conv;
    best = maximize ? std::max(best, F) : std::min(best, F);
  }
  out.value = best;
  return out;
}

}  // namespace detail

// Hilbertian (upper) and besselian (lower) constants of {k_{a,p'}} acting on
// l^{p'}: extrema of ||sum mu_a k_{a,p'}||_{p'} over the l^{p'} unit sphere,
// estimated by multi-restart projected gradient over a quadrature grid. At
// p = 2 the exact spectral values are attached for cross-checking.
inline FrameReport frame_bounds(const Space& space, double p, const PointSeq& seq,
                                const OptimizerConfig& cfg = {}) {
  check_optimizer_config(cfg);
  if (seq.size() == 0) throw config_error("frame_bounds: empty sequence");
  double pp = conjugate_exponent(p);
  int res = cfg.grid_resolution > 0 ? cfg.grid_resolution : default_grid_resolution(space);
  QuadratureGrid grid = build_grid(space, res);
  Eigen::MatrixXcd K = kernel_matrix(seq, pp, grid);
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(grid.weights.data(),
                                                        grid.weights.size());
  detail::sphere_objective obj{K, w, pp};
  detail::opt_result hi = detail::optimize_sphere(obj, pp, cfg, true);
  detail::opt_result lo = detail::optimize_sphere(obj, pp, cfg, false);

  FrameReport rep;
  rep.lower = lo.value;
  rep.upper = hi.value;
  rep.method = "optimized";
  rep.restarts_used = cfg.restarts;
  rep.iterations = hi.iterations + lo.iterations;
  rep.converged = hi.converged && lo.converged;
  if (p == 2.0) {
    FrameReport spec = spectral_bounds(build_gram(space, 2.0, seq));
    rep.spectral_lower = spec.lower;
    rep.spectral_upper = spec.upper;
  }
  return rep;
}

// inf over the l^{p'} unit sphere of ||G mu||_{p'}, where the Gram matrix acts
// by (G mu)_b = sum_a mu_a G_{a,b}. Exact finite-dimensional gradients, no
// quadrature. At p = 2 this equals sigma_min(G) = lambda_min(G); for other p
// the problem is nonconvex and the value is the best found over restarts.
inline double grammian_lower_bound(const Space& space, double p, const PointSeq& seq,
                                   const OptimizerConfig& cfg = {}) {
  check_optimizer_config(cfg);
  GramMatrix g = build_gram(space, p, seq);
  double pp = conjugate_exponent(p);
  Eigen::MatrixXcd K = g.entries.transpose();
  Eigen::VectorXd w = Eigen::VectorXd::Ones(K.rows());
  detail::sphere_objective obj{K, w, pp};
  return detail::optimize_sphere(obj, pp, cfg, false).value;
}

}  // namespace rkframe
