#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "spaces.hpp"

namespace rkframe {

// Conjugate exponent p' = p/(p-1). Exponents live in (1, inf).
inline double conjugate_exponent(double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw unsupported_exponent("exponent must satisfy 1 < p < infinity, got " +
                               std::to_string(p));
  return p / (p - 1.0);
}

inline void check_exponent(double p) { (void)conjugate_exponent(p); }

namespace detail {

// z^d for integer d >= 0 by binary powering.
inline cplx pow_int(cplx z, int d) {
  cplx r = 1.0;
  while (d > 0) {
    if (d & 1) r *= z;
    z *= z;
    d >>= 1;
  }
  return r;
}

}  // namespace detail

// Reproducing kernel k_a(z). Polydisc: product of 1/(1 - conj(a_j) z_j).
// Ball-type: 1/(1 - <z,a>)^d with d = kernel_power() (n for the Hardy ball,
// n+k+1 for the weighted Bergman ball). a interior, z closed domain.
inline cplx eval_kernel(const Space& space, const Point& a, const Point& z) {
  require_interior(space, a, "eval_kernel (kernel point)");
  if (!point_on_closure(space, z))
    throw outside_domain("eval_kernel: evaluation point outside the closed domain of " +
                         space.name());
  if (space.kind == space_kind::hardy_polydisc) {
    cplx prod = 1.0;
    for (int j = 0; j < space.n; ++j) {
      cplx w = 1.0 - std::conj(a[j]) * z[j];
      if (std::abs(w) < 1e-300) throw kernel_singularity("eval_kernel: pole reached");
      prod *= 1.0 / w;
    }
    return prod;
  }
  cplx w = 1.0 - herm_dot(z, a);
  if (std::abs(w) < 1e-300) throw kernel_singularity("eval_kernel: pole reached");
  return detail::pow_int(1.0 / w, space.kernel_power());
}

// chi_a = 1/k_a(a) = ||k_a||_2^{-2}. Closed forms: product of (1-|a_j|^2) on
// the polydisc, (1-|a|^2)^n on the Hardy ball, (1-|a|^2)^{n+k+1} on the
// weighted Bergman ball.
inline double chi(const Space& space, const Point& a) {
  require_interior(space, a, "chi");
  if (space.kind == space_kind::hardy_polydisc) {
    double prod = 1.0;
    for (int j = 0; j < space.n; ++j) prod *= 1.0 - std::norm(a[j]);
    return prod;
  }
  double base = 1.0 - sq_norm(a);
  double r = 1.0;
  for (int i = 0; i < space.kernel_power(); ++i) r *= base;
  return r;
}

// Normalized kernel k_{a,p} = chi_a^{1/p'} k_a. The scaling makes the p=2
// family unit-norm exactly; for other p it is the natural substitute.
inline cplx eval_normalized_kernel(const Space& space, double p, const Point& a,
                                   const Point& z) {
  double pp = conjugate_exponent(p);
  return std::pow(chi(space, a), 1.0 / pp) * eval_kernel(space, a, z);
}

// Gram entry G_{a,b} = <k_{a,p'}, k_{b,p}> = chi_a^{1/p} chi_b^{1/p'} k_a(b),
// using the H^2 pairing and the reproducing identity <k_a, k_b> = k_a(b).
inline cplx gram_entry(const Space& space, double p, const Point& a, const Point& b) {
  double pp = conjugate_exponent(p);
  return std::pow(chi(space, a), 1.0 / p) * std::pow(chi(space, b), 1.0 / pp) *
         eval_kernel(space, a, b);
}

// Finite combination sum_a coeffs[a] * k_{a,exponent} over seq.
struct KernelCoeffs {
  PointSeq seq;
  double exponent = 2.0;
  std::vector<cplx> coeffs;

  std::size_t size() const { return coeffs.size(); }
};

inline KernelCoeffs make_combo(PointSeq seq, double exponent, std::vector<cplx> coeffs) {
  check_exponent(exponent);
  if (coeffs.size() != seq.size())
    throw config_error("make_combo: coefficient count does not match point count");
  return KernelCoeffs{std::move(seq), exponent, std::move(coeffs)};
}

inline cplx eval_combo(const KernelCoeffs& f, const Point& z) {
  cplx s = 0;
  for (std::size_t a = 0; a < f.size(); ++a)
    s += f.coeffs[a] *
         eval_normalized_kernel(f.seq.space, f.exponent, f.seq.points[a], z);
  return s;
}

}  // namespace rkframe
