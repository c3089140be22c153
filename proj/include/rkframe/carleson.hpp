#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "detail/rng.hpp"
#include "kernels.hpp"
#include "quadrature.hpp"

namespace rkframe {

// The worst box of a family: its center (origin for the full-domain box at
// level 0), linear scale (2^-l per dyadic level, 1 for the full domain), the
// capacity used as denominator, and the dyadic level per axis.
struct BoxDescriptor {
  Point center;
  double size = 1.0;
  double capacity = 1.0;
  std::vector<int> levels;
};

struct CarlesonReport {
  std::optional<double> delta;  // disc only: inf_b prod_{a != b} rho(a, b)
  double box_constant = 0.0;
  int box_family_depth = 0;
  BoxDescriptor worst_box;
  std::string note;
};

// inf over b of prod_{a != b} |(a-b)/(1 - conj(a) b)|; empty products give 1,
// so singletons (and the empty sequence) return 1.
inline double delta_product(const PointSeq& seq) {
  if (seq.space.kind != space_kind::hardy_disc)
    throw unsupported_space("delta_product: defined for HardyDisc only");
  double inf = 1.0;
  for (std::size_t b = 0; b < seq.size(); ++b) {
    long double prod = 1.0L;
    for (std::size_t a = 0; a < seq.size(); ++a) {
      if (a == b) continue;
      prod *= pseudohyperbolic_distance(seq.space, seq.points[a], seq.points[b]);
    }
    inf = std::min(inf, static_cast<double>(prod));
  }
  return inf;
}

// Atom weights of the measure sum_a chi_a delta_a, so that
// sum_a |<f, k_{a,p'}>|^p = integral of |f|^p against the measure.
inline std::vector<double> carleson_measure_weights(const PointSeq& seq) {
  std::vector<double> w;
  w.reserve(seq.size());
  for (const Point& a : seq.points) w.push_back(chi(seq.space, a));
  return w;
}

namespace detail {

struct box_hit {
  double ratio;
  BoxDescriptor box;
};

inline void take_max(std::optional<box_hit>& best, double ratio, BoxDescriptor box) {
  if (!best || ratio > best->ratio) best = box_hit{ratio, std::move(box)};
}

// Disc: level l has the 2^l dyadic arcs Q of length 2pi 2^-l; the box is
// {z : 1 - 2^-l <= |z| < 1, arg z in Q} with capacity 2^-l. A point belongs
// to every level it is deep enough for, so admissible levels are enumerated
// per point and masses accumulated per (level, arc index).
inline std::optional<box_hit> disc_boxes(const PointSeq& seq,
                                         const std::vector<double>& w, int depth) {
  std::map<std::pair<int, std::uint64_t>, double> mass;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const cplx z = seq.points[i][0];
    double r = std::abs(z);
    double arg01 = std::arg(z) / (two_pi);
    if (arg01 < 0) arg01 += 1.0;
    if (arg01 >= 1.0) arg01 = 0.0;
    for (int l = 1; l <= depth; ++l) {
      double h = std::ldexp(1.0, -l);
      if (r < 1.0 - h) break;
      auto idx = static_cast<std::uint64_t>(arg01 * std::ldexp(1.0, l));
      mass[{l, idx}] += w[i];
    }
  }
  std::optional<box_hit> best;
  for (const auto& [key, m] : mass) {
    auto [l, idx] = key;
    double cap = std::ldexp(1.0, -l);
    double theta = two_pi * (static_cast<double>(idx) + 0.5) * cap;
    BoxDescriptor box;
    box.center = Point{std::polar(1.0, theta)};
    box.size = cap;
    box.capacity = cap;
    box.levels = {l};
    take_max(best, m / cap, std::move(box));
  }
  return best;
}

// Ball (Hardy or weighted Bergman): Koranyi box T(zeta, h) = {z : |1 - <z,
// zeta>| < h} with capacity h^power at h = 2^-l. Koranyi balls of radius h
// cover the sphere with about h^-n centers, so each level uses a fixed
// seeded direction net of 16 h^-n boundary points (capped at 1e5). The net
// depends only on (n, level), keeping families nested across depths and
// reports reproducible; being a finite net, the max stays a lower estimate.
inline std::optional<box_hit> ball_boxes(const PointSeq& seq,
                                         const std::vector<double>& w, int depth) {
  const int power = seq.space.kernel_power();
  std::optional<box_hit> best;
  for (int l = 1; l <= depth; ++l) {
    double h = std::ldexp(1.0, -l);
    double ideal = 16.0 * std::pow(h, -seq.space.n);
    auto count = static_cast<std::size_t>(std::min(ideal, 1e5));
    rng gen(mix_seed(0xb0c5, static_cast<std::uint64_t>(l) * 64 +
                                 static_cast<std::uint64_t>(seq.space.n)));
    double cap = std::pow(h, power);
    Point zeta(static_cast<std::size_t>(seq.space.n));
    for (std::size_t i = 0; i < count; ++i) {
      double nrm2 = 0;
      do {
        nrm2 = 0;
        for (auto& c : zeta) {
          c = gen.normal_complex();
          nrm2 += std::norm(c);
        }
      } while (nrm2 == 0);
      double inv = 1.0 / std::sqrt(nrm2);
      for (auto& c : zeta) c *= inv;
      double m = 0;
      for (std::size_t j = 0; j < seq.size(); ++j)
        if (std::abs(1.0 - herm_dot(seq.points[j], zeta)) < h) m += w[j];
      if (m == 0) continue;
      BoxDescriptor box;
      box.center = zeta;
      box.size = h;
      box.capacity = cap;
      box.levels = {l};
      take_max(best, m / cap, std::move(box));
    }
  }
  return best;
}

// Polydisc: product boxes with an independent dyadic level per axis (level 0
// meaning the whole disc on that axis), capacity prod 2^-l_j. Admissible
// level tuples are enumerated per point into a flat map.
inline std::optional<box_hit> polydisc_boxes(const PointSeq& seq,
                                             const std::vector<double>& w, int depth) {
  const int n = seq.space.n;
  struct axis_info {
    int max_level;
    std::vector<std::uint64_t> idx;  // arc index at level l (index l-1)
  };
  std::map<std::vector<std::uint64_t>, double> mass;  // key: per-axis (level, idx) packed
  std::vector<std::uint64_t> key(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < seq.size(); ++i) {
    std::vector<axis_info> ax(static_cast<std::size_t>(n));
    std::size_t tuples = 1;
    for (int j = 0; j < n; ++j) {
      const cplx z = seq.points[i][static_cast<std::size_t>(j)];
      double r = std::abs(z);
      double arg01 = std::arg(z) / (two_pi);
      if (arg01 < 0) arg01 += 1.0;
      if (arg01 >= 1.0) arg01 = 0.0;
      int ml = 0;
      while (ml < depth && r >= 1.0 - std::ldexp(1.0, -(ml + 1))) ++ml;
      ax[static_cast<std::size_t>(j)].max_level = ml;
      for (int l = 1; l <= ml; ++l)
        ax[static_cast<std::size_t>(j)].idx.push_back(
            static_cast<std::uint64_t>(arg01 * std::ldexp(1.0, l)));
      tuples *= static_cast<std::size_t>(ml) + 1;
    }
    if (tuples * std::max<std::size_t>(seq.size(), 1) > std::size_t{20000000})
      throw resource_limit("box_constant: polydisc level-tuple enumeration too large");
    std::vector<int> lv(static_cast<std::size_t>(n), 0);
    while (true) {
      for (int j = 0; j < n; ++j) {
        int l = lv[static_cast<std::size_t>(j)];
        std::uint64_t idx =
            l == 0 ? 0 : ax[static_cast<std::size_t>(j)].idx[static_cast<std::size_t>(l - 1)];
        key[static_cast<std::size_t>(j)] =
            (static_cast<std::uint64_t>(l) << 58) | idx;
      }
      mass[key] += w[i];
      int j = 0;
      while (j < n) {
        if (++lv[static_cast<std::size_t>(j)] <= ax[static_cast<std::size_t>(j)].max_level)
          break;
        lv[static_cast<std::size_t>(j)] = 0;
        ++j;
      }
      if (j == n) break;
    }
  }
  std::optional<box_hit> best;
  for (const auto& [k, m] : mass) {
    bool all_zero = true;
    double cap = 1.0;
    BoxDescriptor box;
    box.center.resize(static_cast<std::size_t>(n), cplx(0, 0));
    box.size = 0.0;
    for (int j = 0; j < n; ++j) {
      int l = static_cast<int>(k[static_cast<std::size_t>(j)] >> 58);
      auto idx = k[static_cast<std::size_t>(j)] & ((std::uint64_t{1} << 58) - 1);
      box.levels.push_back(l);
      if (l == 0) {
        box.size = std::max(box.size, 1.0);
        continue;
      }
      all_zero = false;
      double hl = std::ldexp(1.0, -l);
      cap *= hl;
      box.size = std::max(box.size, hl);
      double theta = two_pi * (static_cast<double>(idx) + 0.5) * hl;
      box.center[static_cast<std::size_t>(j)] = std::polar(1.0, theta);
    }
    if (all_zero) continue;  // the all-axes-full tuple is the level-0 box, handled once
    box.capacity = cap;
    take_max(best, m / cap, std::move(box));
  }
  return best;
}

}  // namespace detail

// Max over a nested dyadic box family (level 0 = the full domain, capacity 1,
// then levels 1..depth) of the atomic mass inside the box divided by its
// capacity. A finite-family max, hence a lower estimate of the true geometric
// constant. The polydisc family only tests product boxes, a necessary-only
// proxy for the genuine multi-parameter condition; the report says so.
inline CarlesonReport box_constant(const PointSeq& seq, int depth) {
  if (depth < 1) throw config_error("box_constant: depth must be >= 1");
  if (depth > 30) throw resource_limit("box_constant: depth capped at 30");
  std::vector<double> w = carleson_measure_weights(seq);
  double total = 0;
  for (double x : w) total += x;

  CarlesonReport rep;
  rep.box_family_depth = depth;
  rep.worst_box.center.assign(static_cast<std::size_t>(seq.space.dim()), cplx(0, 0));
  rep.worst_box.size = 1.0;
  rep.worst_box.capacity = 1.0;
  rep.worst_box.levels.assign(
      seq.space.kind == space_kind::hardy_polydisc ? static_cast<std::size_t>(seq.space.n)
                                                   : std::size_t{1},
      0);
  rep.box_constant = total;  // level-0 box: whole domain over capacity 1

  std::optional<detail::box_hit> hit;
  switch (seq.space.kind) {
    case space_kind::hardy_disc:
      rep.delta = delta_product(seq);
      hit = detail::disc_boxes(seq, w, depth);
      break;
    case space_kind::hardy_polydisc:
      rep.note =
          "polydisc family tests product boxes only: a necessary-but-not-sufficient "
          "proxy for the multi-parameter box condition";
      hit = detail::polydisc_boxes(seq, w, depth);
      break;
    case space_kind::hardy_ball:
    case space_kind::bergman_ball:
      hit = detail::ball_boxes(seq, w, depth);
      break;
  }
  if (hit && hit->ratio > rep.box_constant) {
    rep.box_constant = hit->ratio;
    rep.worst_box = hit->box;
  }
  return rep;
}

}  // namespace rkframe
