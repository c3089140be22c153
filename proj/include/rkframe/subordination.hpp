#pragma once

#include <cmath>
#include <utility>

#include "carleson.hpp"
#include "gram.hpp"

namespace rkframe {

// Zero-padding embedding of the weighted Bergman ball A_k^p(B_n) into the
// Hardy space of the ball in n + k + 1 variables. Both kernels are
// 1/(1 - <z, a>)^{n+k+1}, so kernels, chi weights, and Gram matrices agree
// exactly under the embedding.
struct LiftMap {
  Space source;
  Space target;
};

inline LiftMap make_lift(int n, int k) {
  return LiftMap{Space::bergman(n, k), Space::ball(n + k + 1)};
}

inline LiftMap make_lift(const Space& source) {
  if (source.kind != space_kind::bergman_ball)
    throw unsupported_space("make_lift: source must be a weighted Bergman ball");
  return make_lift(source.n, source.k);
}

inline Point embed_point(const LiftMap& lift, const Point& a) {
  require_interior(lift.source, a, "embed_point");
  Point out = a;
  out.resize(static_cast<std::size_t>(lift.target.dim()), cplx(0, 0));
  return out;
}

inline PointSeq embed_seq(const LiftMap& lift, const PointSeq& seq) {
  if (!(seq.space == lift.source))
    throw space_mismatch("embed_seq: sequence lives on " + seq.space.name() +
                         " but lift source is " + lift.source.name());
  PointSeq out;
  out.space = lift.target;
  out.labels = seq.labels;
  out.points.reserve(seq.size());
  for (const Point& a : seq.points) out.points.push_back(embed_point(lift, a));
  return out;
}

// |k_a(z) on the source  -  k_{embed(a)}(embed(z)) on the target|; identical
// closed forms, so this measures floating-point agreement only.
inline double kernel_agreement_check(const LiftMap& lift, const Point& a,
                                     const Point& z) {
  cplx src = eval_kernel(lift.source, a, z);
  cplx tgt = eval_kernel(lift.target, embed_point(lift, a), embed_point(lift, z));
  return std::abs(src - tgt);
}

inline KernelCoeffs embed_combo(const LiftMap& lift, const KernelCoeffs& f) {
  return KernelCoeffs{embed_seq(lift, f.seq), f.exponent, f.coeffs};
}

// ||f tilde||_q on the target sphere grid over ||f||_q on the source
// weighted-volume grid, both measures normalized to mass 1. res = 0 picks the
// per-space default resolution on each side.
inline double lift_norm_ratio(const LiftMap& lift, const KernelCoeffs& f, double q,
                              int res = 0) {
  if (!(f.seq.space == lift.source))
    throw space_mismatch("lift_norm_ratio: combination lives on " + f.seq.space.name() +
                         " but lift source is " + lift.source.name());
  if (!(q >= 1.0)) throw unsupported_exponent("lift_norm_ratio: need q >= 1");
  QuadratureGrid src_grid =
      build_grid(lift.source, res > 0 ? res : default_grid_resolution(lift.source));
  QuadratureGrid tgt_grid =
      build_grid(lift.target, res > 0 ? res : default_grid_resolution(lift.target));
  double src_norm = space_norm(f, src_grid, q);
  double tgt_norm = space_norm(embed_combo(lift, f), tgt_grid, q);
  if (!(src_norm > 0))
    throw numerical_error("lift_norm_ratio: source norm vanished on the grid");
  return tgt_norm / src_norm;
}

// Box constants of the atomic measure on both sides of the lift: the source
// family uses Koranyi boxes with the Bergman capacity h^{n+k+1}, the target
// the Hardy-ball capacity h^{n+k+1} in n + k + 1 variables, so the exponents
// match by construction.
inline std::pair<CarlesonReport, CarlesonReport> lift_carleson_check(
    const LiftMap& lift, const PointSeq& seq, int depth) {
  if (!(seq.space == lift.source))
    throw space_mismatch("lift_carleson_check: sequence lives on " + seq.space.name() +
                         " but lift source is " + lift.source.name());
  CarlesonReport src = box_constant(seq, depth);
  CarlesonReport tgt = box_constant(embed_seq(lift, seq), depth);
  return {src, tgt};
}

}  // namespace rkframe
