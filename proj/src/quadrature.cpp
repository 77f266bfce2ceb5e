#include "wirecov/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "wirecov/errors.hpp"

namespace wirecov {

double jacobi_weight_integral(double a, double b) {
  return std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                  std::lgamma(a + b + 2.0));
}

QuadratureRule gauss_jacobi(std::size_t n, double a, double b) {
  if (n == 0 || !(a > -1.0) || !(b > -1.0)) throw ValidationError("gauss_jacobi needs n > 0 and a, b > -1");
  // Symmetric tridiagonal Jacobi matrix of the monic recurrence for
  // (1-s)^a (1+s)^b; eigenvalues are the nodes.
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
  const double ab = a + b;
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    if (k == 0) {
      diag(0) = (b - a) / (ab + 2.0);
    } else {
      const double s = 2.0 * kk + ab;
      diag(static_cast<long>(k)) = (b * b - a * a) / (s * (s + 2.0));
    }
  }
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + ab;
    double v;
    if (k == 1) {
      v = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      v = 4.0 * kk * (kk + a) * (kk + b) * (kk + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(static_cast<long>(k - 1)) = std::sqrt(v);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  if (n == 1) {
    Eigen::MatrixXd m(1, 1);
    m(0, 0) = diag(0);
    solver.compute(m);
  } else {
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  }
  if (solver.info() != Eigen::Success) throw ValidationError("Golub-Welsch eigen solve failed");
  const double mu0 = jacobi_weight_integral(a, b);
  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, static_cast<long>(i));
    rule.nodes[i] = solver.eigenvalues()(static_cast<long>(i));
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

}  // namespace wirecov
