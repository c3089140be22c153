// Computes frame bounds and a separation constant for a radial disc sequence.
#include <rkframe/carleson.hpp>
#include <rkframe/frame.hpp>
#include <rkframe/seqgen.hpp>

#include <cstdio>

int main() {
  using namespace rkframe;

  PointSeq seq = radial_geometric(5, 0.5);
  std::printf("sequence: %zu points in %s\n", seq.size(), seq.space.name().c_str());
  for (std::size_t j = 0; j < seq.size(); ++j) {
    std::printf("  %-4s r = %.6f\n", seq.labels[j].c_str(), seq.points[j][0].real());
  }

  std::printf("separation delta = %.6f\n", delta_product(seq));

  OptimizerConfig cfg;
  cfg.restarts = 4;
  cfg.max_iters = 800;
  cfg.tol = 1e-10;
  cfg.grid_resolution = 256;

  for (double p : {2.0, 4.0}) {
    FrameReport rep = frame_bounds(seq.space, p, seq, cfg);
    std::printf("p = %g  frame bounds [%.6f, %.6f]  (%s, %d restarts)\n", p, rep.lower,
                rep.upper, rep.converged ? "converged" : "not converged",
                rep.restarts_used);
    if (rep.spectral_lower && rep.spectral_upper) {
      std::printf("        spectral check [%.6f, %.6f]\n", *rep.spectral_lower,
                  *rep.spectral_upper);
    }
  }

  CarlesonReport box = box_constant(seq, 8);
  std::printf("box constant (depth 8) = %.6f\n", box.box_constant);
  return 0;
}
