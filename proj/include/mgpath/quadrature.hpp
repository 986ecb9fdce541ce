#pragma once

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

namespace mgpath {

/// Nodes and weights of an n-point Gauss rule.
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Gauss-Legendre rule on [-1, 1] (Golub-Welsch).
QuadratureRule gauss_legendre(std::size_t n);

/// Gauss-Hermite rule for the standard normal weight: sum w_k f(z_k)
/// approximates E[f(Z)], Z ~ N(0, 1). Weights sum to 1.
QuadratureRule gauss_hermite_normal(std::size_t n);

/// Composite Gauss-Legendre integral of `f` over [a, b] with `panels` equal
/// panels of `order` points each.
double integrate(const std::function<double(double)>& f, double a, double b,
                 std::size_t panels = 64, std::size_t order = 16);

}  // namespace mgpath
