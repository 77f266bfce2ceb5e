#pragma once

#include <vector>

namespace wirecov {

/// Nodes and weights on [-1, 1] for ∫ (1-s)^a (1+s)^b f(s) ds ≈ Σ w_i f(s_i).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = 0.0;
  double b = 0.0;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss–Jacobi rule with n nodes, a, b > -1 (Golub–Welsch).
QuadratureRule gauss_jacobi(std::size_t n, double a, double b);

inline QuadratureRule gauss_legendre(std::size_t n) { return gauss_jacobi(n, 0.0, 0.0); }

/// ∫_{-1}^{1} (1-s)^a (1+s)^b ds = 2^{a+b+1} B(a+1, b+1)
double jacobi_weight_integral(double a, double b);

}  // namespace wirecov
