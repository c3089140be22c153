#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "detail/rng.hpp"
#include "quadrature.hpp"

namespace rkframe {

struct GramMatrix {
  Space space;
  double exponent = 2.0;
  PointSeq seq;
  Eigen::MatrixXcd entries;  // entries(i,j) = gram_entry(space, p, a_i, a_j)

  std::size_t size() const { return seq.size(); }
};

inline GramMatrix build_gram(const Space& space, double p, const PointSeq& seq) {
  check_exponent(p);
  if (!(seq.space == space))
    throw space_mismatch("build_gram: sequence lives on " + seq.space.name());
  const std::size_t n = seq.size();
  if (n == 0) throw config_error("build_gram: empty sequence");
  GramMatrix g{space, p, seq, Eigen::MatrixXcd(n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      g.entries(i, j) = gram_entry(space, p, seq.points[i], seq.points[j]);
  return g;
}

// Besselian/hilbertian constants report. method "eigen2" marks the exact
// p=2 spectral route, "optimized" the projected-gradient route; optimized
// values are inner estimates (reported upper <= true upper, reported
// lower >= true lower). The spectral_* fields carry the p=2 cross-check
// when an optimized run had one available.
struct FrameReport {
  double lower = 0.0;
  double upper = 0.0;
  std::string method;
  int restarts_used = 0;
  long iterations = 0;
  bool converged = false;
  std::optional<double> spectral_lower;
  std::optional<double> spectral_upper;
};

namespace detail {

inline Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numerical_error("hermitian eigendecomposition failed");
  return es.eigenvalues();
}

}  // namespace detail

// Extreme eigenvalues of a p=2 Gram matrix (Hermitian PSD up to rounding).
inline std::pair<double, double> gram_spectrum(const GramMatrix& g) {
  if (g.exponent != 2.0)
    throw unsupported_exponent(
        "gram_spectrum: spectral route requires p = 2; use the frame module otherwise");
  Eigen::VectorXd ev = detail::hermitian_eigenvalues(g.entries);
  return {ev(0), ev(ev.size() - 1)};
}

// Exact frame constants of {k_{a,2}}: lower = sqrt(lambda_min), upper =
// sqrt(lambda_max), since ||sum mu_a k_{a,2}||^2 is the Gram quadratic form.
inline FrameReport spectral_bounds(const GramMatrix& g) {
  auto [lmin, lmax] = gram_spectrum(g);
  FrameReport r;
  r.lower = std::sqrt(std::max(lmin, 0.0));
  r.upper = std::sqrt(std::max(lmax, 0.0));
  r.method = "eigen2";
  r.converged = true;
  return r;
}

// Finite-section dual system: rho_a = sum_c coeffs(c,a) k_{c,p}, determined by
// biorthogonality <rho_a, k_{b,p'}> = delta_ab. With the pairing matrix
// M(c,b) = <k_{c,p}, k_{b,p'}> this is coeffs = (M^T)^{-1}.
struct DualSystem {
  Space space;
  double exponent = 2.0;
  PointSeq seq;
  Eigen::MatrixXcd coeffs;
  Eigen::MatrixXcd pairing;        // M above; kept for exact pairing algebra
  std::vector<double> rho_norms;   // H^p norms of the rho_a, by quadrature
  double condition = 0.0;          // SVD condition number of M
};

// Analysis pairings <f, k_{b,p'}> for f = sum_c gamma_c k_{c,p}: exact
// finite-rank algebra, no quadrature.
inline std::vector<cplx> restriction_pairings(const DualSystem& ds,
                                              const std::vector<cplx>& gamma) {
  if (gamma.size() != ds.seq.size())
    throw config_error("restriction_pairings: coefficient length mismatch");
  Eigen::Map<const Eigen::VectorXcd> g(gamma.data(), gamma.size());
  Eigen::VectorXcd lam = ds.pairing.transpose() * g;
  return std::vector<cplx>(lam.data(), lam.data() + lam.size());
}

inline DualSystem dual_system(const Space& space, double p, const PointSeq& seq,
                              int grid_resolution = 0) {
  double pp = conjugate_exponent(p);
  const std::size_t n = seq.size();
  if (n == 0) throw config_error("dual_system: empty sequence");
  Eigen::MatrixXcd M = build_gram(space, pp, seq).entries;

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  double smax = svd.singularValues()(0);
  double smin = svd.singularValues()(svd.singularValues().size() - 1);
  double cond = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(cond <= 1e12)) throw degenerate_configuration(cond);

  DualSystem ds;
  ds.space = space;
  ds.exponent = p;
  ds.seq = seq;
  ds.pairing = M;
  ds.coeffs = Eigen::PartialPivLU<Eigen::MatrixXcd>(M.transpose())
                  .solve(Eigen::MatrixXcd::Identity(n, n));
  ds.condition = cond;

  int res = grid_resolution > 0 ? grid_resolution : default_grid_resolution(space);
  QuadratureGrid grid = build_grid(space, res);
  Eigen::MatrixXcd K = kernel_matrix(seq, p, grid);
  Eigen::MatrixXcd V = K * ds.coeffs;  // column a = rho_a at the nodes
  ds.rho_norms.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    long double acc = 0;
    for (std::size_t j = 0; j < grid.size(); ++j)
      acc += grid.weights[j] * static_cast<long double>(std::pow(std::abs(V(j, a)), p));
    ds.rho_norms[a] = static_cast<double>(std::pow(static_cast<long double>(acc), 1.0L / p));
  }
  return ds;
}

// E(lambda) = sum_a lambda_a rho_a as a kernel combination (coefficients
// coeffs * lambda in the k_{c,p} basis).
inline KernelCoeffs extension_combo(const DualSystem& ds, const std::vector<cplx>& lambda) {
  if (lambda.size() != ds.seq.size())
    throw config_error("extension_combo: target length does not match sequence size");
  Eigen::Map<const Eigen::VectorXcd> lam(lambda.data(), lambda.size());
  Eigen::VectorXcd c = ds.coeffs * lam;
  return make_combo(ds.seq, ds.exponent, std::vector<cplx>(c.data(), c.data() + c.size()));
}

inline cplx apply_extension(const DualSystem& ds, const std::vector<cplx>& lambda,
                            const Point& z) {
  return eval_combo(extension_combo(ds, lambda), z);
}

// Lower estimate of the l^p -> H^p norm of E: max of ||E(lambda)||_p over the
// canonical basis and `trials` seeded random unit-l^p vectors. Trial t depends
// only on (seed, t), so the estimate is nondecreasing in trials.
inline double extension_norm_estimate(const DualSystem& ds, const QuadratureGrid& grid,
                                      int trials, std::uint64_t seed) {
  if (trials < 1) throw config_error("extension_norm_estimate: trials must be >= 1");
  if (!(grid.space == ds.space))
    throw space_mismatch("extension_norm_estimate: grid space mismatch");
  const std::size_t n = ds.seq.size();
  const double p = ds.exponent;
  Eigen::MatrixXcd V = kernel_matrix(ds.seq, p, grid) * ds.coeffs;

  auto norm_of = [&](const Eigen::VectorXcd& lam) {
    Eigen::VectorXcd vals = V * lam;
    long double acc = 0;
    for (std::size_t j = 0; j < grid.size(); ++j)
      acc += grid.weights[j] * static_cast<long double>(std::pow(std::abs(vals(j)), p));
    return static_cast<double>(std::pow(static_cast<long double>(acc), 1.0L / p));
  };

  double best = 0;
  for (std::size_t a = 0; a < n; ++a)
    best = std::max(best, norm_of(Eigen::VectorXcd::Unit(n, a)));
  for (int t = 0; t < trials; ++t) {
    detail::rng gen(detail::mix_seed(seed, static_cast<std::uint64_t>(t)));
    Eigen::VectorXcd lam(n);
    for (std::size_t a = 0; a < n; ++a) lam(a) = gen.normal_complex();
    long double s = 0;
    for (std::size_t a = 0; a < n; ++a)
      s += static_cast<long double>(std::pow(std::abs(lam(a)), p));
    double nrm = static_cast<double>(std::pow(static_cast<long double>(s), 1.0L / p));
    if (nrm == 0.0) continue;
    lam /= nrm;
    best = std::max(best, norm_of(lam));
  }
  return best;
}

struct MinNormResult {
  KernelCoeffs interpolant;
  double norm = 0.0;
};

// Minimal H^2-norm solution of <f, k_{a,2}> = lambda_a; lies in span{k_{a,2}}
// with coefficients solving the (transposed) Gram system, norm^2 = lambda^H c.
inline MinNormResult min_norm_interpolant(const Space& space, const PointSeq& seq,
                                          const std::vector<cplx>& lambda) {
  if (lambda.size() != seq.size())
    throw config_error("min_norm_interpolant: target length does not match sequence size");
  GramMatrix g = build_gram(space, 2.0, seq);
  auto [lmin, lmax] = gram_spectrum(g);
  if (!(lmin > lmax * 1e-12)) {
    double cond = lmin > 0 ? lmax / lmin : std::numeric_limits<double>::infinity();
    throw degenerate_configuration(cond);
  }
  Eigen::Map<const Eigen::VectorXcd> lam(lambda.data(), lambda.size());
  Eigen::MatrixXcd gt = g.entries.transpose();
  Eigen::VectorXcd c = Eigen::LDLT<Eigen::MatrixXcd>(gt).solve(lam);
  double norm2 = std::max(0.0, (lam.adjoint() * c)(0).real());
  return MinNormResult{
      make_combo(seq, 2.0, std::vector<cplx>(c.data(), c.data() + c.size())),
      std::sqrt(norm2)};
}

}  // namespace rkframe
