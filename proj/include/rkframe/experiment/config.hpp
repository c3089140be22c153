#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdio>
#include <initializer_list>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "../frame.hpp"
#include "../seqgen.hpp"

namespace rkframe::experiment {

using json = nlohmann::ordered_json;

// 17 significant digits round-trip binary64 exactly; every number in emitted
// documents goes through this so reports are byte-stable.
inline std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Config values may be JSON numbers or the decimal strings a previous report
// echoed; both parse to the same binary64.
inline double parse_num(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw config_error(where + ": cannot parse number from \"" + s + "\"");
    }
    if (used != s.size())
      throw config_error(where + ": trailing characters in number \"" + s + "\"");
    return v;
  }
  throw config_error(where + ": expected a number");
}

inline long long parse_int(const json& j, const std::string& where) {
  double v = parse_num(j, where);
  auto n = static_cast<long long>(v);
  if (static_cast<double>(n) != v)
    throw config_error(where + ": expected an integer");
  return n;
}

inline std::uint64_t parse_seed(const json& j, const std::string& where) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    auto v = j.get<long long>();
    if (v < 0) throw config_error(where + ": seed must be nonnegative");
    return static_cast<std::uint64_t>(v);
  }
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    try {
      std::size_t used = 0;
      std::uint64_t v = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw config_error(where + ": cannot parse seed from \"" + s + "\"");
    }
  }
  throw config_error(where + ": expected a nonnegative integer");
}

// Unknown fields are configuration errors everywhere, so typos cannot
// silently fall back to defaults.
inline void check_fields(const json& j, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  if (!j.is_object()) throw config_error(where + ": expected an object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (std::string_view a : allowed)
      if (item.key() == a) {
        ok = true;
        break;
      }
    if (!ok) throw config_error(where + ": unknown field \"" + item.key() + "\"");
  }
}

inline Space parse_space(const json& j, const std::string& where) {
  check_fields(j, {"kind", "n", "k"}, where);
  if (!j.contains("kind")) throw config_error(where + ": missing \"kind\"");
  std::string kind = j.at("kind").get<std::string>();
  auto geti = [&](const char* key, long long dflt) {
    return j.contains(key) ? parse_int(j.at(key), where + "." + key) : dflt;
  };
  int n = static_cast<int>(geti("n", 1));
  int k = static_cast<int>(geti("k", 0));
  if (kind == "hardy_disc") {
    if (j.contains("n") && n != 1)
      throw config_error(where + ": hardy_disc is one-dimensional");
    if (j.contains("k")) throw config_error(where + ": hardy_disc takes no weight");
    return Space::disc();
  }
  if (kind == "hardy_polydisc") {
    if (j.contains("k")) throw config_error(where + ": hardy_polydisc takes no weight");
    return Space::polydisc(n);
  }
  if (kind == "hardy_ball") {
    if (j.contains("k")) throw config_error(where + ": hardy_ball takes no weight");
    return Space::ball(n);
  }
  if (kind == "bergman_ball") return Space::bergman(n, k);
  throw config_error(where + ": unknown space kind \"" + kind + "\"");
}

inline json space_to_json(const Space& s) {
  json j;
  switch (s.kind) {
    case space_kind::hardy_disc:
      j["kind"] = "hardy_disc";
      break;
    case space_kind::hardy_polydisc:
      j["kind"] = "hardy_polydisc";
      j["n"] = s.n;
      break;
    case space_kind::hardy_ball:
      j["kind"] = "hardy_ball";
      j["n"] = s.n;
      break;
    case space_kind::bergman_ball:
      j["kind"] = "bergman_ball";
      j["n"] = s.n;
      j["k"] = s.k;
      break;
  }
  return j;
}

// Point sequences come either inline ("points": list of points, one [re, im]
// pair per coordinate) or from a generator. diagonal_embed wraps another
// disc-valued spec.
struct SequenceSpec {
  std::string kind;  // points | lattice | radial_geometric | random_separated | diagonal_embed
  std::vector<Point> points;
  std::vector<std::string> labels;
  LatticeParams lattice;
  int count = 1;
  double base = 0.5;
  double min_sep = 0.25;
  std::uint64_t seed = 1;
  std::shared_ptr<SequenceSpec> inner;
};

inline SequenceSpec parse_sequence(const json& j, const std::string& where) {
  if (!j.is_object()) throw config_error(where + ": expected an object");
  if (!j.contains("kind")) throw config_error(where + ": missing \"kind\"");
  SequenceSpec spec;
  spec.kind = j.at("kind").get<std::string>();
  if (spec.kind == "points") {
    check_fields(j, {"kind", "points", "labels"}, where);
    if (!j.contains("points")) throw config_error(where + ": missing \"points\"");
    const json& pts = j.at("points");
    if (!pts.is_array()) throw config_error(where + ".points: expected an array");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const json& pj = pts[i];
      std::string pw = where + ".points[" + std::to_string(i) + "]";
      if (!pj.is_array() || pj.empty())
        throw config_error(pw + ": expected a nonempty array of [re, im] pairs");
      Point p;
      for (std::size_t c = 0; c < pj.size(); ++c) {
        const json& cj = pj[c];
        if (!cj.is_array() || cj.size() != 2)
          throw config_error(pw + ": coordinate " + std::to_string(c) +
                             " must be an [re, im] pair");
        p.emplace_back(parse_num(cj[0], pw), parse_num(cj[1], pw));
      }
      spec.points.push_back(std::move(p));
    }
    if (j.contains("labels")) {
      const json& lj = j.at("labels");
      if (!lj.is_array()) throw config_error(where + ".labels: expected an array");
      for (const json& s : lj) spec.labels.push_back(s.get<std::string>());
      if (spec.labels.size() != spec.points.size())
        throw config_error(where + ": label count does not match point count");
    }
    return spec;
  }
  if (spec.kind == "lattice") {
    check_fields(j, {"kind", "sigma", "angular_density", "rings", "jitter_seed"}, where);
    if (j.contains("sigma"))
      spec.lattice.sigma = parse_num(j.at("sigma"), where + ".sigma");
    if (j.contains("angular_density"))
      spec.lattice.angular_density =
          parse_num(j.at("angular_density"), where + ".angular_density");
    if (j.contains("rings"))
      spec.lattice.rings = static_cast<int>(parse_int(j.at("rings"), where + ".rings"));
    if (j.contains("jitter_seed"))
      spec.lattice.seed = parse_seed(j.at("jitter_seed"), where + ".jitter_seed");
    return spec;
  }
  if (spec.kind == "radial_geometric") {
    check_fields(j, {"kind", "count", "base"}, where);
    if (!j.contains("count")) throw config_error(where + ": missing \"count\"");
    spec.count = static_cast<int>(parse_int(j.at("count"), where + ".count"));
    if (j.contains("base")) spec.base = parse_num(j.at("base"), where + ".base");
    return spec;
  }
  if (spec.kind == "random_separated") {
    check_fields(j, {"kind", "count", "min_sep", "seed"}, where);
    if (!j.contains("count")) throw config_error(where + ": missing \"count\"");
    spec.count = static_cast<int>(parse_int(j.at("count"), where + ".count"));
    if (j.contains("min_sep"))
      spec.min_sep = parse_num(j.at("min_sep"), where + ".min_sep");
    if (j.contains("seed")) spec.seed = parse_seed(j.at("seed"), where + ".seed");
    return spec;
  }
  if (spec.kind == "diagonal_embed") {
    check_fields(j, {"kind", "inner"}, where);
    if (!j.contains("inner")) throw config_error(where + ": missing \"inner\"");
    spec.inner = std::make_shared<SequenceSpec>(
        parse_sequence(j.at("inner"), where + ".inner"));
    return spec;
  }
  throw config_error(where + ": unknown sequence kind \"" + spec.kind + "\"");
}

inline json sequence_to_json(const SequenceSpec& spec) {
  json j;
  j["kind"] = spec.kind;
  if (spec.kind == "points") {
    json pts = json::array();
    for (const Point& p : spec.points) {
      json pj = json::array();
      for (const cplx& c : p)
        pj.push_back(json::array({fmt17(c.real()), fmt17(c.imag())}));
      pts.push_back(std::move(pj));
    }
    j["points"] = std::move(pts);
    if (!spec.labels.empty()) j["labels"] = spec.labels;
  } else if (spec.kind == "lattice") {
    j["sigma"] = fmt17(spec.lattice.sigma);
    j["angular_density"] = fmt17(spec.lattice.angular_density);
    j["rings"] = spec.lattice.rings;
    j["jitter_seed"] = std::to_string(spec.lattice.seed);
  } else if (spec.kind == "radial_geometric") {
    j["count"] = spec.count;
    j["base"] = fmt17(spec.base);
  } else if (spec.kind == "random_separated") {
    j["count"] = spec.count;
    j["min_sep"] = fmt17(spec.min_sep);
    j["seed"] = std::to_string(spec.seed);
  } else if (spec.kind == "diagonal_embed" && spec.inner) {
    j["inner"] = sequence_to_json(*spec.inner);
  }
  return j;
}

enum class command_kind { gram, frame, dual, carleson, lift, babenko, seqgen };

inline command_kind parse_command(const std::string& s) {
  if (s == "gram") return command_kind::gram;
  if (s == "frame") return command_kind::frame;
  if (s == "dual") return command_kind::dual;
  if (s == "carleson") return command_kind::carleson;
  if (s == "lift") return command_kind::lift;
  if (s == "babenko") return command_kind::babenko;
  if (s == "seqgen") return command_kind::seqgen;
  throw config_error("unknown command \"" + s + "\"");
}

inline std::string command_name(command_kind c) {
  switch (c) {
    case command_kind::gram: return "gram";
    case command_kind::frame: return "frame";
    case command_kind::dual: return "dual";
    case command_kind::carleson: return "carleson";
    case command_kind::lift: return "lift";
    case command_kind::babenko: return "babenko";
    case command_kind::seqgen: return "seqgen";
  }
  return "?";
}

struct ExperimentConfig {
  command_kind command = command_kind::gram;
  Space space;
  double exponent = 2.0;
  double exponent_q = 0.0;  // babenko only
  SequenceSpec sequence;
  OptimizerConfig optimizer;
  int quadrature_resolution = 0;  // 0: per-space default
  int depth = 4;
  std::vector<int> ladder;    // babenko only
  std::string target;         // babenko only
  std::uint64_t seed = 1;
};

inline OptimizerConfig parse_optimizer(const json& j, const std::string& where) {
  check_fields(j, {"restarts", "max_iters", "step_init", "tol", "grid_resolution"},
               where);
  OptimizerConfig cfg;
  if (j.contains("restarts"))
    cfg.restarts = static_cast<int>(parse_int(j.at("restarts"), where + ".restarts"));
  if (j.contains("max_iters"))
    cfg.max_iters = static_cast<int>(parse_int(j.at("max_iters"), where + ".max_iters"));
  if (j.contains("step_init"))
    cfg.step_init = parse_num(j.at("step_init"), where + ".step_init");
  if (j.contains("tol")) cfg.tol = parse_num(j.at("tol"), where + ".tol");
  if (j.contains("grid_resolution"))
    cfg.grid_resolution = static_cast<int>(
        parse_int(j.at("grid_resolution"), where + ".grid_resolution"));
  check_optimizer_config(cfg);
  if (cfg.grid_resolution != 0 && cfg.grid_resolution < 4)
    throw config_error(where + ": grid_resolution must be 0 (auto) or >= 4");
  return cfg;
}

inline json optimizer_to_json(const OptimizerConfig& cfg) {
  json j;
  j["restarts"] = cfg.restarts;
  j["max_iters"] = cfg.max_iters;
  j["step_init"] = fmt17(cfg.step_init);
  j["tol"] = fmt17(cfg.tol);
  j["grid_resolution"] = cfg.grid_resolution;
  return j;
}

// Strict parse of a whole config document: per-command field whitelists,
// required fields, range checks. The optimizer seed is the top-level seed.
inline ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw config_error("config: expected a JSON object");
  if (!doc.contains("command")) throw config_error("config: missing \"command\"");
  ExperimentConfig cfg;
  cfg.command = parse_command(doc.at("command").get<std::string>());

  auto allow = [&](std::initializer_list<std::string_view> fields) {
    check_fields(doc, fields, "config(" + command_name(cfg.command) + ")");
  };
  switch (cfg.command) {
    case command_kind::gram:
      allow({"command", "space", "exponent", "sequence", "seed"});
      break;
    case command_kind::frame:
      allow({"command", "space", "exponent", "sequence", "optimizer", "seed"});
      break;
    case command_kind::dual:
      allow({"command", "space", "exponent", "sequence", "quadrature_resolution",
             "seed"});
      break;
    case command_kind::carleson:
      allow({"command", "space", "sequence", "depth", "seed"});
      break;
    case command_kind::lift:
      allow({"command", "space", "exponent", "sequence", "depth",
             "quadrature_resolution", "seed"});
      break;
    case command_kind::babenko:
      allow({"command", "exponent", "exponent_q", "sequence", "optimizer", "ladder",
             "target", "depth", "seed"});
      break;
    case command_kind::seqgen:
      allow({"command", "space", "sequence", "seed"});
      break;
  }

  bool space_required = cfg.command != command_kind::babenko &&
                        cfg.command != command_kind::seqgen;
  if (doc.contains("space")) {
    if (cfg.command == command_kind::babenko)
      throw config_error("config(babenko): space is fixed by the target field");
    cfg.space = parse_space(doc.at("space"), "config.space");
  } else if (space_required) {
    throw config_error("config: missing \"space\"");
  } else {
    cfg.space = Space::disc();
  }

  if (!doc.contains("sequence")) throw config_error("config: missing \"sequence\"");
  cfg.sequence = parse_sequence(doc.at("sequence"), "config.sequence");

  if (doc.contains("exponent"))
    cfg.exponent = parse_num(doc.at("exponent"), "config.exponent");
  check_exponent(cfg.exponent);
  if (doc.contains("seed")) cfg.seed = parse_seed(doc.at("seed"), "config.seed");
  if (doc.contains("quadrature_resolution")) {
    cfg.quadrature_resolution = static_cast<int>(
        parse_int(doc.at("quadrature_resolution"), "config.quadrature_resolution"));
    if (cfg.quadrature_resolution != 0 && cfg.quadrature_resolution < 4)
      throw config_error("config: quadrature_resolution must be 0 (auto) or >= 4");
  }
  if (doc.contains("depth")) {
    cfg.depth = static_cast<int>(parse_int(doc.at("depth"), "config.depth"));
    if (cfg.depth < 1 || cfg.depth > 30)
      throw config_error("config: depth must lie in [1, 30]");
  }
  if (doc.contains("optimizer"))
    cfg.optimizer = parse_optimizer(doc.at("optimizer"), "config.optimizer");
  cfg.optimizer.seed = cfg.seed;

  if (cfg.command == command_kind::babenko) {
    if (!doc.contains("exponent_q")) throw config_error("config(babenko): missing \"exponent_q\"");
    cfg.exponent_q = parse_num(doc.at("exponent_q"), "config.exponent_q");
    check_exponent(cfg.exponent_q);
    if (!(cfg.exponent > 2.0 && cfg.exponent_q > cfg.exponent))
      throw config_error("config(babenko): need exponent_q > exponent > 2");
    if (!doc.contains("ladder")) throw config_error("config(babenko): missing \"ladder\"");
    const json& lj = doc.at("ladder");
    if (!lj.is_array() || lj.empty())
      throw config_error("config(babenko): ladder must be a nonempty array");
    for (std::size_t i = 0; i < lj.size(); ++i) {
      int n = static_cast<int>(parse_int(lj[i], "config.ladder"));
      if (n < 1 || (!cfg.ladder.empty() && n <= cfg.ladder.back()))
        throw config_error("config(babenko): ladder must be strictly increasing and positive");
      cfg.ladder.push_back(n);
    }
    if (!doc.contains("target")) throw config_error("config(babenko): missing \"target\"");
    cfg.target = doc.at("target").get<std::string>();
    if (cfg.target != "bergman_disc" && cfg.target != "hardy_ball" &&
        cfg.target != "hardy_bidisc")
      throw config_error("config(babenko): target must be bergman_disc, hardy_ball, or hardy_bidisc");
    if (cfg.sequence.kind != "lattice")
      throw config_error("config(babenko): sequence kind must be \"lattice\"");
  }
  if (cfg.command == command_kind::lift && cfg.space.kind != space_kind::bergman_ball)
    throw config_error("config(lift): space must be a bergman_ball");
  return cfg;
}

// Normalized echo with every field resolved; reparsing it reproduces cfg.
inline json config_echo(const ExperimentConfig& cfg) {
  json j;
  j["command"] = command_name(cfg.command);
  switch (cfg.command) {
    case command_kind::gram:
      j["space"] = space_to_json(cfg.space);
      j["exponent"] = fmt17(cfg.exponent);
      j["sequence"] = sequence_to_json(cfg.sequence);
      break;
    case command_kind::frame:
      j["space"] = space_to_json(cfg.space);
      j["exponent"] = fmt17(cfg.exponent);
      j["sequence"] = sequence_to_json(cfg.sequence);
      j["optimizer"] = optimizer_to_json(cfg.optimizer);
      break;
    case command_kind::dual:
      j["space"] = space_to_json(cfg.space);
      j["exponent"] = fmt17(cfg.exponent);
      j["sequence"] = sequence_to_json(cfg.sequence);
      j["quadrature_resolution"] = cfg.quadrature_resolution;
      break;
    case command_kind::carleson:
      j["space"] = space_to_json(cfg.space);
      j["sequence"] = sequence_to_json(cfg.sequence);
      j["depth"] = cfg.depth;
      break;
    case command_kind::lift:
      j["space"] = space_to_json(cfg.space);
      j["exponent"] = fmt17(cfg.exponent);
      j["sequence"] = sequence_to_json(cfg.sequence);
      j["depth"] = cfg.depth;
      j["quadrature_resolution"] = cfg.quadrature_resolution;
      break;
    case command_kind::babenko:
      j["exponent"] = fmt17(cfg.exponent);
      j["exponent_q"] = fmt17(cfg.exponent_q);
      j["sequence"] = sequence_to_json(cfg.sequence);
      j["optimizer"] = optimizer_to_json(cfg.optimizer);
      j["ladder"] = cfg.ladder;
      j["target"] = cfg.target;
      j["depth"] = cfg.depth;
      break;
    case command_kind::seqgen:
      j["space"] = space_to_json(cfg.space);
      j["sequence"] = sequence_to_json(cfg.sequence);
      break;
  }
  j["seed"] = std::to_string(cfg.seed);
  return j;
}

// Generators produce disc points; they are re-homed into cfg-selected spaces
// of the same dimension (the points are validated as interior on the way in).
inline PointSeq build_sequence(const SequenceSpec& spec, const Space& space) {
  auto rehome = [&](PointSeq s) {
    if (s.space == space) return s;
    if (s.space.dim() != space.dim())
      throw config_error("sequence: generator produces dimension " +
                         std::to_string(s.space.dim()) + " but space " +
                         space.name() + " has dimension " +
                         std::to_string(space.dim()));
    return make_seq(space, std::move(s.points), std::move(s.labels));
  };
  if (spec.kind == "points") return make_seq(space, spec.points, spec.labels);
  if (spec.kind == "lattice") return rehome(seip_lattice(spec.lattice));
  if (spec.kind == "radial_geometric")
    return rehome(radial_geometric(spec.count, spec.base));
  if (spec.kind == "random_separated")
    return random_separated(space, spec.count, spec.min_sep, spec.seed);
  if (spec.kind == "diagonal_embed") {
    if (!spec.inner) throw config_error("sequence: diagonal_embed needs inner spec");
    PointSeq base = build_sequence(*spec.inner, Space::disc());
    return rehome(diagonal_embed(base));
  }
  throw config_error("sequence: unknown kind \"" + spec.kind + "\"");
}

}  // namespace rkframe::experiment
