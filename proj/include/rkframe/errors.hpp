#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rkframe {

// Base of everything thrown by this library.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid caller-supplied structure: bad space parameters, malformed configs,
// duplicate points, out-of-range exponents or resolutions.
struct config_error : error {
  using error::error;
};

struct dimension_mismatch : config_error {
  int expected;
  int given;
  dimension_mismatch(int expected_, int given_, const std::string& where)
      : config_error("dimension mismatch in " + where + ": expected " +
                     std::to_string(expected_) + " coordinate(s), given " +
                     std::to_string(given_)),
        expected(expected_),
        given(given_) {}
};

struct outside_domain : config_error {
  using config_error::config_error;
};

struct space_mismatch : config_error {
  using config_error::config_error;
};

struct unsupported_exponent : config_error {
  using config_error::config_error;
};

struct unsupported_space : config_error {
  using config_error::config_error;
};

// Guards against runaway enumeration (box family depth, node counts).
struct resource_limit : config_error {
  using config_error::config_error;
};

// Rejection sampling ran out of attempts.
struct saturation_error : config_error {
  using config_error::config_error;
};

// Numerical degeneracy: near-singular linear systems, kernel poles.
struct numerical_error : error {
  using error::error;
};

struct kernel_singularity : numerical_error {
  using numerical_error::numerical_error;
};

struct degenerate_configuration : numerical_error {
  double condition;
  explicit degenerate_configuration(double cond)
      : numerical_error("degenerate configuration: pairing matrix condition " +
                        std::to_string(cond) + " exceeds 1e12"),
        condition(cond) {}
};

// Parameter search failed to land in the requested window. Carries the
// sweep trace (parameter, measured value) for diagnosis.
struct calibration_error : error {
  std::vector<std::pair<double, double>> trace;
  calibration_error(const std::string& msg,
                    std::vector<std::pair<double, double>> trace_)
      : error(msg), trace(std::move(trace_)) {}
};

struct io_error : error {
  using error::error;
};

}  // namespace rkframe
