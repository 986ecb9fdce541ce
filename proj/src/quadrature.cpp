#include "mgpath/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace mgpath {
namespace {

// Eigen-decomposition of the symmetric Jacobi matrix with off-diagonal `beta`;
// mu0 is the total mass of the weight function.
QuadratureRule golub_welsch(const Eigen::VectorXd& beta, double mu0) {
  const Eigen::Index n = beta.size() + 1;
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    jacobi(k, k + 1) = beta(k);
    jacobi(k + 1, k) = beta(k);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  QuadratureRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = mu0 * solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

}  // namespace

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
  static std::mutex mutex;
  static std::map<std::size_t, QuadratureRule> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  Eigen::VectorXd beta(static_cast<Eigen::Index>(n) - 1);
  for (Eigen::Index k = 1; k < static_cast<Eigen::Index>(n); ++k) {
    const double kk = static_cast<double>(k);
    beta(k - 1) = kk / std::sqrt(4.0 * kk * kk - 1.0);
  }
  return cache[n] = golub_welsch(beta, 2.0);
}

QuadratureRule gauss_hermite_normal(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_hermite_normal: n must be positive");
  // Probabilists' Hermite recurrence: beta_k = sqrt(k).
  Eigen::VectorXd beta(static_cast<Eigen::Index>(n) - 1);
  for (Eigen::Index k = 1; k < static_cast<Eigen::Index>(n); ++k) beta(k - 1) = std::sqrt(static_cast<double>(k));
  QuadratureRule rule = golub_welsch(beta, 1.0);
  rule.weights /= rule.weights.sum();
  return rule;
}

double integrate(const std::function<double(double)>& f, double a, double b, std::size_t panels,
                 std::size_t order) {
  const QuadratureRule rule = gauss_legendre(order);
  const double h = (b - a) / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + (static_cast<double>(p) + 0.5) * h;
    double panel = 0.0;
    for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) panel += rule.weights(k) * f(mid + 0.5 * h * rule.nodes(k));
    total += 0.5 * h * panel;
  }
  return total;
}

}  // namespace mgpath
