#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "../errors.hpp"

namespace rkframe::detail {

struct gauss_rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Golub-Welsch: nodes are the eigenvalues of the symmetric tridiagonal matrix
// built from the three-term recurrence p_{i+1} = (x - a_i) p_i - b_i p_{i-1},
// weights mu0 times the squared first components of the eigenvectors.
inline gauss_rule golub_welsch(const std::vector<double>& a, const std::vector<double>& b,
                               double mu0) {
  const int m = static_cast<int>(a.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) J(i, i) = a[i];
  for (int i = 1; i < m; ++i) {
    double off = std::sqrt(b[i]);
    J(i, i - 1) = off;
    J(i - 1, i) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  if (es.info() != Eigen::Success)
    throw numerical_error("golub_welsch: eigendecomposition failed");
  gauss_rule r;
  r.nodes.resize(m);
  r.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    r.nodes[i] = es.eigenvalues()(i);
    double v0 = es.eigenvectors()(0, i);
    r.weights[i] = mu0 * v0 * v0;
  }
  return r;
}

// Jacobi rule on [-1,1] with weight (1-x)^alpha (1+x)^beta.
inline gauss_rule gauss_jacobi(int m, double alpha, double beta) {
  if (m < 1) throw config_error("gauss_jacobi: need at least one node");
  std::vector<double> a(m), b(m, 0.0);
  double ab = alpha + beta;
  a[0] = (beta - alpha) / (ab + 2.0);
  for (int i = 1; i < m; ++i) {
    double d = 2.0 * i + ab;
    a[i] = (beta * beta - alpha * alpha) / (d * (d + 2.0));
  }
  if (m > 1) b[1] = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
  for (int i = 2; i < m; ++i) {
    double d = 2.0 * i + ab;
    b[i] = 4.0 * i * (i + alpha) * (i + beta) * (i + ab) /
           (d * d * (d + 1.0) * (d - 1.0));
  }
  double mu0 = std::pow(2.0, ab + 1.0) * std::exp(std::lgamma(alpha + 1.0) +
                                                  std::lgamma(beta + 1.0) -
                                                  std::lgamma(ab + 2.0));
  return golub_welsch(a, b, mu0);
}

// Legendre rule mapped to [0,1] with unit weight; total mass 1.
inline gauss_rule gauss_legendre01(int m) {
  gauss_rule r = gauss_jacobi(m, 0.0, 0.0);
  for (double& x : r.nodes) x = 0.5 * (x + 1.0);
  for (double& w : r.weights) w *= 0.5;
  return r;
}

// Rule on [0,1] with weight u^{beta_pow} (1-u)^{alpha_pow}; total mass equals
// the Beta integral B(beta_pow+1, alpha_pow+1).
inline gauss_rule gauss_jacobi01(int m, double alpha_pow, double beta_pow) {
  gauss_rule r = gauss_jacobi(m, alpha_pow, beta_pow);
  double scale = std::pow(2.0, -(alpha_pow + beta_pow + 1.0));
  for (double& x : r.nodes) x = 0.5 * (x + 1.0);
  for (double& w : r.weights) w *= scale;
  return r;
}

}  // namespace rkframe::detail
