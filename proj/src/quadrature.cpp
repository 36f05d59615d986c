#include "fracldg/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace fracldg {

namespace {

// Golub-Welsch for the Jacobi weight (1-t)^a (1+t)^b on [-1,1]: nodes are the
// eigenvalues of the recurrence tridiagonal, weights mu0 * q0^2.
void gauss_jacobi_m11(int n, double a, double b, std::vector<double>& nodes,
                      std::vector<double>& weights) {
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  const double mu0 = std::pow(2.0, a + b + 1) * std::exp(std::lgamma(a + 1.0) +
                         std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
  for (int i = 0; i < n; ++i) {
    const double k = i;
    double alpha;
    if (i == 0) {
      alpha = (b - a) / (a + b + 2.0);
    } else {
      alpha = (b * b - a * a) /
              ((2.0 * k + a + b) * (2.0 * k + a + b + 2.0));
    }
    jac(i, i) = alpha;
    if (i + 1 < n) {
      const double m = k + 1.0;
      double beta;
      if (i == 0) {
        beta = 4.0 * (a + 1.0) * (b + 1.0) /
               ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0));
      } else {
        beta = 4.0 * m * (m + a) * (m + b) * (m + a + b) /
               (std::pow(2.0 * m + a + b, 2) * (2.0 * m + a + b + 1.0) *
                (2.0 * m + a + b - 1.0));
      }
      jac(i, i + 1) = jac(i + 1, i) = std::sqrt(beta);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = es.eigenvalues()(i);
    const double q0 = es.eigenvectors()(0, i);
    weights[i] = mu0 * q0 * q0;
  }
}

}  // namespace

IntervalRule gauss_legendre_01(int n) {
  if (n < 1) throw QuadratureError("gauss_legendre_01: need n >= 1");
  IntervalRule rule;
  rule.degree = 2 * n - 1;
  gauss_jacobi_m11(n, 0.0, 0.0, rule.nodes, rule.weights);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = 0.5 * (rule.nodes[i] + 1.0);
    rule.weights[i] *= 0.5;
  }
  return rule;
}

IntervalRule gauss_jacobi_01(int n, double alpha) {
  if (n < 1) throw QuadratureError("gauss_jacobi_01: need n >= 1");
  if (alpha <= -1.0) throw QuadratureError("gauss_jacobi_01: need alpha > -1");
  IntervalRule rule;
  rule.degree = 2 * n - 1;
  // x^alpha on [0,1] maps to ((1+t)/2)^alpha on [-1,1].
  gauss_jacobi_m11(n, 0.0, alpha, rule.nodes, rule.weights);
  const double scale = std::pow(2.0, -alpha - 1.0);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = 0.5 * (rule.nodes[i] + 1.0);
    rule.weights[i] *= scale;
  }
  return rule;
}

TriangleRule triangle_rule_points(int n) {
  if (n < 1) throw QuadratureError("triangle_rule_points: need n >= 1");
  // Collapsed-square construction: x = 1-u, y = v*u with u carrying the
  // Jacobi weight u^1; exact for total degree 2n-1.
  const IntervalRule radial = gauss_jacobi_01(n, 1.0);
  const IntervalRule lateral = gauss_legendre_01(n);
  TriangleRule rule;
  rule.degree = 2 * n - 1;
  rule.nodes.reserve(n * n);
  rule.weights.reserve(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double u = radial.nodes[i];
      const double v = lateral.nodes[j];
      rule.nodes.push_back({1.0 - u, v * u});
      rule.weights.push_back(radial.weights[i] * lateral.weights[j]);
    }
  }
  return rule;
}

TriangleRule triangle_rule(int degree) {
  if (degree < 0 || degree > 20)
    throw QuadratureError("triangle_rule: supported degrees are 0..20");
  return triangle_rule_points(degree / 2 + 1);
}

IntervalRule edge_rule(int degree) {
  if (degree < 0 || degree > 20)
    throw QuadratureError("edge_rule: supported degrees are 0..20");
  return gauss_legendre_01(degree / 2 + 1);
}

}  // namespace fracldg
