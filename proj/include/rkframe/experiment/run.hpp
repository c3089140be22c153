#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "../carleson.hpp"
#include "../subordination.hpp"
#include "report.hpp"

namespace rkframe::experiment {

inline constexpr const char* density_convention =
    "Seip threshold convention: a separated disc sequence is A^p interpolating "
    "iff its upper uniform density D+ is below 1/p; estimates here are finite "
    "truncations of D+.";

namespace detail {

inline json complex_json(const cplx& z) {
  return json::array({fmt17(z.real()), fmt17(z.imag())});
}

inline json point_json(const Point& p) {
  json j = json::array();
  for (const cplx& c : p) j.push_back(complex_json(c));
  return j;
}

inline Table points_table(const PointSeq& seq) {
  Table t;
  t.name = "points";
  t.columns = {"index"};
  for (int d = 0; d < seq.space.dim(); ++d)
    t.columns.push_back("z" + std::to_string(d + 1));
  bool labeled = !seq.labels.empty();
  if (labeled) t.columns.push_back("label");
  for (std::size_t i = 0; i < seq.size(); ++i) {
    std::vector<std::string> row{std::to_string(i)};
    for (const cplx& c : seq.points[i]) row.push_back(complex_cell(c));
    if (labeled) row.push_back(seq.labels[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline json carleson_json(const CarlesonReport& rep) {
  json j;
  if (rep.delta) j["delta"] = fmt17(*rep.delta);
  j["box_constant"] = fmt17(rep.box_constant);
  j["box_family_depth"] = rep.box_family_depth;
  json wb;
  wb["center"] = point_json(rep.worst_box.center);
  wb["size"] = fmt17(rep.worst_box.size);
  wb["capacity"] = fmt17(rep.worst_box.capacity);
  wb["levels"] = rep.worst_box.levels;
  j["worst_box"] = std::move(wb);
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

inline json frame_json(const FrameReport& rep) {
  json j;
  j["lower"] = fmt17(rep.lower);
  j["upper"] = fmt17(rep.upper);
  j["method"] = rep.method;
  j["restarts_used"] = rep.restarts_used;
  j["iterations"] = rep.iterations;
  j["converged"] = rep.converged;
  if (rep.spectral_lower) j["spectral_lower"] = fmt17(*rep.spectral_lower);
  if (rep.spectral_upper) j["spectral_upper"] = fmt17(*rep.spectral_upper);
  return j;
}

}  // namespace detail

inline ExperimentReport run_gram(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  PointSeq seq = build_sequence(cfg.sequence, cfg.space);
  GramMatrix g = build_gram(cfg.space, cfg.exponent, seq);
  rep.results["space"] = cfg.space.name();
  rep.results["N"] = seq.size();
  rep.results["exponent"] = fmt17(cfg.exponent);
  if (cfg.exponent == 2.0) {
    auto [lmin, lmax] = gram_spectrum(g);
    rep.results["lambda_min"] = fmt17(lmin);
    rep.results["lambda_max"] = fmt17(lmax);
  }
  rep.tables.push_back(detail::points_table(seq));
  Table t;
  t.name = "gram";
  t.columns = {"index"};
  for (std::size_t b = 0; b < seq.size(); ++b)
    t.columns.push_back("g" + std::to_string(b));
  for (std::size_t a = 0; a < seq.size(); ++a) {
    std::vector<std::string> row{std::to_string(a)};
    for (std::size_t b = 0; b < seq.size(); ++b)
      row.push_back(complex_cell(g.entries(static_cast<Eigen::Index>(a),
                                           static_cast<Eigen::Index>(b))));
    t.rows.push_back(std::move(row));
  }
  rep.tables.push_back(std::move(t));
  return rep;
}

inline ExperimentReport run_frame(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  PointSeq seq = build_sequence(cfg.sequence, cfg.space);
  FrameReport fr = frame_bounds(cfg.space, cfg.exponent, seq, cfg.optimizer);
  double glb = grammian_lower_bound(cfg.space, cfg.exponent, seq, cfg.optimizer);
  rep.results["space"] = cfg.space.name();
  rep.results["N"] = seq.size();
  rep.results["exponent"] = fmt17(cfg.exponent);
  rep.results["frame"] = detail::frame_json(fr);
  rep.results["grammian_lower_bound"] = fmt17(glb);
  if (!fr.converged)
    rep.warnings.push_back("frame optimizer stopped at max_iters before reaching tol");
  rep.tables.push_back(detail::points_table(seq));
  Table t;
  t.name = "frame";
  t.columns = {"N", "exponent", "lower", "upper", "grammian_lower", "method",
               "converged"};
  t.rows.push_back({std::to_string(seq.size()), fmt17(cfg.exponent), fmt17(fr.lower),
                    fmt17(fr.upper), fmt17(glb), fr.method,
                    fr.converged ? "true" : "false"});
  rep.tables.push_back(std::move(t));
  return rep;
}

inline ExperimentReport run_dual(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  PointSeq seq = build_sequence(cfg.sequence, cfg.space);
  DualSystem ds = dual_system(cfg.space, cfg.exponent, seq, cfg.quadrature_resolution);
  Eigen::MatrixXcd biorth = ds.pairing.transpose() * ds.coeffs;
  biorth -= Eigen::MatrixXcd::Identity(biorth.rows(), biorth.cols());
  double residual = biorth.cwiseAbs().maxCoeff();
  int res = cfg.quadrature_resolution > 0 ? cfg.quadrature_resolution
                                          : default_grid_resolution(cfg.space);
  QuadratureGrid grid = build_grid(cfg.space, res);
  double ext = extension_norm_estimate(ds, grid, 200, cfg.seed);
  rep.results["space"] = cfg.space.name();
  rep.results["N"] = seq.size();
  rep.results["exponent"] = fmt17(cfg.exponent);
  rep.results["condition"] = fmt17(ds.condition);
  rep.results["biorthogonality_residual"] = fmt17(residual);
  rep.results["extension_norm_estimate"] = fmt17(ext);
  rep.results["rho_norm_max"] =
      fmt17(*std::max_element(ds.rho_norms.begin(), ds.rho_norms.end()));
  rep.tables.push_back(detail::points_table(seq));
  Table t;
  t.name = "dual";
  t.columns = {"index", "rho_norm"};
  for (std::size_t a = 0; a < ds.rho_norms.size(); ++a)
    t.rows.push_back({std::to_string(a), fmt17(ds.rho_norms[a])});
  rep.tables.push_back(std::move(t));
  return rep;
}

inline ExperimentReport run_carleson(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  PointSeq seq = build_sequence(cfg.sequence, cfg.space);
  CarlesonReport cr = box_constant(seq, cfg.depth);
  rep.results["space"] = cfg.space.name();
  rep.results["N"] = seq.size();
  rep.results["carleson"] = detail::carleson_json(cr);
  rep.tables.push_back(detail::points_table(seq));
  Table t;
  t.name = "carleson";
  t.columns = {"N", "delta", "box_constant", "depth", "worst_box_size",
               "worst_box_capacity"};
  t.rows.push_back({std::to_string(seq.size()), cr.delta ? fmt17(*cr.delta) : "",
                    fmt17(cr.box_constant), std::to_string(cr.box_family_depth),
                    fmt17(cr.worst_box.size), fmt17(cr.worst_box.capacity)});
  rep.tables.push_back(std::move(t));
  return rep;
}

inline ExperimentReport run_lift(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  LiftMap lift = make_lift(cfg.space);
  PointSeq seq = build_sequence(cfg.sequence, cfg.space);

  double agree = 0;
  rkframe::detail::rng gen(rkframe::detail::mix_seed(cfg.seed, 0x11f7));
  for (int i = 0; i < 200; ++i) {
    Point a = rkframe::detail::random_interior(lift.source, gen);
    Point z = rkframe::detail::random_interior(lift.source, gen);
    agree = std::max(agree, kernel_agreement_check(lift, a, z));
  }

  PointSeq embedded = embed_seq(lift, seq);
  Eigen::MatrixXcd gsrc = build_gram(lift.source, cfg.exponent, seq).entries;
  Eigen::MatrixXcd gtgt = build_gram(lift.target, cfg.exponent, embedded).entries;
  double gram_residual = (gsrc - gtgt).cwiseAbs().maxCoeff();

  std::vector<cplx> coeffs(seq.size(),
                           cplx(1.0 / std::sqrt(static_cast<double>(seq.size())), 0));
  KernelCoeffs combo = make_combo(seq, cfg.exponent, coeffs);
  double ratio = lift_norm_ratio(lift, combo, cfg.exponent, cfg.quadrature_resolution);

  auto [csrc, ctgt] = lift_carleson_check(lift, seq, cfg.depth);

  rep.results["source"] = lift.source.name();
  rep.results["target"] = lift.target.name();
  rep.results["N"] = seq.size();
  rep.results["exponent"] = fmt17(cfg.exponent);
  rep.results["kernel_agreement_max"] = fmt17(agree);
  rep.results["gram_residual"] = fmt17(gram_residual);
  rep.results["norm_ratio"] = fmt17(ratio);
  rep.results["carleson_source"] = detail::carleson_json(csrc);
  rep.results["carleson_target"] = detail::carleson_json(ctgt);
  rep.tables.push_back(detail::points_table(seq));
  Table t;
  t.name = "lift";
  t.columns = {"N", "kernel_agreement_max", "gram_residual", "norm_ratio",
               "box_constant_source", "box_constant_target"};
  t.rows.push_back({std::to_string(seq.size()), fmt17(agree), fmt17(gram_residual),
                    fmt17(ratio), fmt17(csrc.box_constant), fmt17(ctgt.box_constant)});
  rep.tables.push_back(std::move(t));
  return rep;
}

inline ExperimentReport run_seqgen(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  PointSeq seq = build_sequence(cfg.sequence, cfg.space);
  rep.results["space"] = cfg.space.name();
  rep.results["N"] = seq.size();
  if (cfg.space.kind == space_kind::hardy_disc && seq.size() > 0) {
    DensityEstimate d = density_estimate(seq, {0.9, 0.99, 0.999}, 64, cfg.seed);
    json dj;
    dj["value"] = fmt17(d.value);
    json rl = json::array();
    for (double r : d.r_ladder) rl.push_back(fmt17(r));
    dj["r_ladder"] = std::move(rl);
    dj["sup_centers"] = d.sup_centers;
    dj["convention"] = density_convention;
    rep.results["density"] = std::move(dj);
    rep.results["delta"] = fmt17(delta_product(seq));
  }
  rep.tables.push_back(detail::points_table(seq));
  return rep;
}

namespace detail {

struct calibration_outcome {
  LatticeParams params;  // calibrated density, rings possibly extended
  PointSeq seq;
  DensityEstimate density;
  std::vector<std::pair<double, double>> trace;
};

// Bisection (geometric midpoints) on angular_density until the finite-N
// density estimate of the generated lattice lands in (lo, hi). Rings are
// extended as needed so the lattice can supply need_points points.
inline calibration_outcome calibrate_lattice(const LatticeParams& base,
                                             int need_points, double lo, double hi,
                                             std::uint64_t seed) {
  calibration_outcome out;
  if (!(lo < hi))
    throw calibration_error("density window is empty at the configured margins", {});
  auto eval = [&](double ad) {
    LatticeParams P = base;
    P.angular_density = ad;
    PointSeq s = seip_lattice(P);
    while (s.size() < static_cast<std::size_t>(need_points) && P.rings < 30) {
      ++P.rings;
      s = seip_lattice(P);
    }
    if (s.size() < static_cast<std::size_t>(need_points))
      throw calibration_error(
          "lattice cannot supply " + std::to_string(need_points) + " points", out.trace);
    DensityEstimate d = density_estimate(s, {0.9, 0.99, 0.999}, 64, seed);
    out.trace.emplace_back(ad, d.value);
    out.params = P;
    out.seq = std::move(s);
    out.density = d;
    return d.value;
  };

  double ad_lo = base.angular_density, ad_hi = base.angular_density;
  double d_lo = eval(ad_lo);
  if (d_lo > lo) {  // walk down until below the window (or inside it)
    while (d_lo >= hi && ad_lo > 1e-9) {
      ad_lo /= 4;
      d_lo = eval(ad_lo);
    }
    if (d_lo > lo && d_lo < hi) {
      return out;
    }
    if (d_lo >= hi)
      throw calibration_error("density stays above the window as angular_density -> 0",
                              out.trace);
  }
  double d_hi = d_lo;
  ad_hi = ad_lo;
  while (d_hi <= lo && ad_hi < 1e6) {
    ad_hi *= 4;
    d_hi = eval(ad_hi);
  }
  if (d_hi > lo && d_hi < hi) return out;
  if (d_hi <= lo)
    throw calibration_error("density stays below the window at huge angular_density",
                            out.trace);
  for (int it = 0; it < 80; ++it) {
    double mid = std::sqrt(ad_lo * ad_hi);
    double d_mid = eval(mid);
    if (d_mid > lo && d_mid < hi) return out;
    if (d_mid >= hi)
      ad_hi = mid;
    else
      ad_lo = mid;
    if (ad_hi / ad_lo < 1.0 + 1e-12) break;
  }
  throw calibration_error("bisection exhausted without landing in the density window",
                          out.trace);
}

}  // namespace detail

// End-to-end pipeline: calibrate a disc lattice so its density estimate lies
// in (1/q + 0.05, 1/p - 0.05), push truncations into the chosen target space,
// and tabulate frame bounds at p and q, the p = 2 spectrum, and Carleson
// diagnostics along the ladder. The verdict reports the trend of the
// q-exponent bounds between the first and last rungs.
inline ExperimentReport run_babenko(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  const double p = cfg.exponent, q = cfg.exponent_q;
  const double lo = 1.0 / q + 0.05, hi = 1.0 / p - 0.05;
  const int n_max = cfg.ladder.back();

  detail::calibration_outcome cal = detail::calibrate_lattice(
      cfg.sequence.lattice, n_max, lo, hi, cfg.seed);

  Space target_space = Space::disc();
  if (cfg.target == "bergman_disc") target_space = Space::bergman(1, 0);
  if (cfg.target == "hardy_ball") target_space = Space::ball(2);
  if (cfg.target == "hardy_bidisc") target_space = Space::polydisc(2);

  auto map_point = [&](const Point& a) {
    if (cfg.target == "hardy_ball") return Point{a[0], cplx(0, 0)};
    if (cfg.target == "hardy_bidisc") return Point{a[0], a[0]};
    return a;
  };

  Table ladder;
  ladder.name = "ladder";
  ladder.columns = {"N",          "lower_p",    "upper_p", "lower_q", "upper_q",
                    "lambda_min", "lambda_max", "box_constant", "delta", "density"};
  double first_lower_q = 0, last_lower_q = 0, first_upper_q = 0, last_upper_q = 0;
  for (std::size_t ni = 0; ni < cfg.ladder.size(); ++ni) {
    int N = cfg.ladder[ni];
    std::vector<Point> disc_pts(cal.seq.points.begin(), cal.seq.points.begin() + N);
    PointSeq disc_seq = make_seq(Space::disc(), disc_pts);
    std::vector<Point> tgt_pts;
    tgt_pts.reserve(disc_pts.size());
    for (const Point& a : disc_pts) tgt_pts.push_back(map_point(a));
    PointSeq tgt_seq = make_seq(target_space, std::move(tgt_pts));

    FrameReport fq = frame_bounds(target_space, q, tgt_seq, cfg.optimizer);
    FrameReport fp = frame_bounds(target_space, p, tgt_seq, cfg.optimizer);
    auto [lmin, lmax] = gram_spectrum(build_gram(target_space, 2.0, tgt_seq));
    CarlesonReport cb = box_constant(tgt_seq, cfg.depth);
    double delta = delta_product(disc_seq);
    double dens = density_estimate(disc_seq, {0.9, 0.99, 0.999}, 64, cfg.seed).value;

    if (!fq.converged)
      rep.warnings.push_back("frame optimizer not converged at N=" + std::to_string(N) +
                             " exponent=" + fmt17(q));
    if (!fp.converged)
      rep.warnings.push_back("frame optimizer not converged at N=" + std::to_string(N) +
                             " exponent=" + fmt17(p));
    if (ni == 0) {
      first_lower_q = fq.lower;
      first_upper_q = fq.upper;
    }
    if (ni + 1 == cfg.ladder.size()) {
      last_lower_q = fq.lower;
      last_upper_q = fq.upper;
    }
    ladder.rows.push_back({std::to_string(N), fmt17(fp.lower), fmt17(fp.upper),
                           fmt17(fq.lower), fmt17(fq.upper), fmt17(lmin), fmt17(lmax),
                           fmt17(cb.box_constant), fmt17(delta), fmt17(dens)});
  }

  std::string verdict;
  if (cfg.ladder.size() == 1)
    verdict = "inconclusive (single N)";
  else if (last_lower_q <= 0.5 * first_lower_q && last_upper_q <= 1.5 * first_upper_q)
    verdict = "q-hilbertian retained, q-besselian decaying";
  else
    verdict = "trend not confirmed at this truncation";

  rep.results["target"] = target_space.name();
  rep.results["exponent_p"] = fmt17(p);
  rep.results["exponent_q"] = fmt17(q);
  rep.results["density_window"] = json::array({fmt17(lo), fmt17(hi)});
  rep.results["calibrated_angular_density"] = fmt17(cal.params.angular_density);
  rep.results["lattice_rings"] = cal.params.rings;
  rep.results["lattice_points"] = cal.seq.size();
  json dj;
  dj["value"] = fmt17(cal.density.value);
  json rl = json::array();
  for (double r : cal.density.r_ladder) rl.push_back(fmt17(r));
  dj["r_ladder"] = std::move(rl);
  dj["sup_centers"] = cal.density.sup_centers;
  dj["convention"] = density_convention;
  rep.results["density"] = std::move(dj);
  rep.results["verdict"] = verdict;
  rep.results["lower_q_first"] = fmt17(first_lower_q);
  rep.results["lower_q_last"] = fmt17(last_lower_q);
  rep.results["upper_q_first"] = fmt17(first_upper_q);
  rep.results["upper_q_last"] = fmt17(last_upper_q);

  std::vector<Point> head(cal.seq.points.begin(), cal.seq.points.begin() + n_max);
  rep.tables.push_back(detail::points_table(make_seq(Space::disc(), head)));
  rep.tables.push_back(std::move(ladder));
  return rep;
}

// Dispatch plus the config echo every report carries.
inline ExperimentReport run_command(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  switch (cfg.command) {
    case command_kind::gram: rep = run_gram(cfg); break;
    case command_kind::frame: rep = run_frame(cfg); break;
    case command_kind::dual: rep = run_dual(cfg); break;
    case command_kind::carleson: rep = run_carleson(cfg); break;
    case command_kind::lift: rep = run_lift(cfg); break;
    case command_kind::babenko: rep = run_babenko(cfg); break;
    case command_kind::seqgen: rep = run_seqgen(cfg); break;
  }
  rep.config = config_echo(cfg);
  return rep;
}

}  // namespace rkframe::experiment
