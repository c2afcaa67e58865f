/// \file quadrature.cpp
/// \brief Golub-Welsch Gauss rules and conical product simplex rules.

#include "stis/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace stis {

namespace {

// Gauss-Jacobi on [-1,1] for (1-x)^alpha (1+x)^beta via the Jacobi matrix.
Rule1D golub_welsch(int n, double alpha, double beta) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  const double ab = alpha + beta;
  for (int i = 0; i < n; ++i) {
    const double two_n = 2.0 * i + ab;
    J(i, i) = (i == 0) ? (beta - alpha) / (ab + 2.0)
                       : (beta * beta - alpha * alpha) / (two_n * (two_n + 2.0));
    if (i + 1 < n) {
      const double k = i + 1;
      const double t = 2.0 * k + ab;
      const double b = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
                       (t * t * (t + 1.0) * (t - 1.0));
      J(i, i + 1) = J(i + 1, i) = std::sqrt(b);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const double mu0 = std::pow(2.0, ab + 1.0) * std::tgamma(alpha + 1.0) *
                     std::tgamma(beta + 1.0) / std::tgamma(ab + 2.0);
  Rule1D r;
  for (int i = 0; i < n; ++i) {
    const double v = es.eigenvectors()(0, i);
    r.points.push_back(es.eigenvalues()[i]);
    r.weights.push_back(mu0 * v * v);
  }
  return r;
}

void check_degree(int degree) {
  if (degree < 0 || degree > kMaxQuadratureDegree)
    throw Error("unsupported quadrature degree " + std::to_string(degree) +
                " (supported range 0.." + std::to_string(kMaxQuadratureDegree) + ")");
}

}  // namespace

Rule1D gauss_legendre(int n) { return gauss_jacobi(n, 0); }

Rule1D gauss_jacobi(int n, int alpha) {
  if (n < 1) throw Error("Gauss rule needs at least one point");
  Rule1D r = golub_welsch(n, alpha, 0.0);
  const double scale = std::pow(2.0, -(alpha + 1.0));
  for (int i = 0; i < n; ++i) {
    r.points[i] = 0.5 * (1.0 + r.points[i]);
    r.weights[i] *= scale;
  }
  return r;
}

const Rule1D& gauss_rule_for_degree(int degree) {
  check_degree(degree);
  static std::mutex mtx;
  static std::map<int, std::unique_ptr<Rule1D>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto& slot = cache[degree];
  if (!slot) slot = std::make_unique<Rule1D>(gauss_legendre(degree / 2 + 1));
  return *slot;
}

template <int D>
const SimplexRule<D>& simplex_rule(int degree) {
  check_degree(degree);
  static std::mutex mtx;
  static std::map<int, std::unique_ptr<SimplexRule<D>>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto& slot = cache[degree];
  if (slot) return *slot;

  const int n = degree / 2 + 1;
  std::array<Rule1D, D> axes;
  for (int k = 0; k < D; ++k) axes[k] = gauss_jacobi(n, D - 1 - k);

  auto rule = std::make_unique<SimplexRule<D>>();
  std::array<int, D> idx{};
  while (true) {
    Point<D> x;
    double w = 1.0, rest = 1.0;
    for (int k = 0; k < D; ++k) {
      const double xi = axes[k].points[idx[k]];
      x[k] = rest * xi;
      rest *= (1.0 - xi);
      w *= axes[k].weights[idx[k]];
    }
    rule->points.push_back(x);
    rule->weights.push_back(w);
    int k = D - 1;
    while (k >= 0 && ++idx[k] == n) idx[k--] = 0;
    if (k < 0) break;
  }
  slot = std::move(rule);
  return *slot;
}

template const SimplexRule<1>& simplex_rule<1>(int);
template const SimplexRule<2>& simplex_rule<2>(int);
template const SimplexRule<3>& simplex_rule<3>(int);
template const SimplexRule<4>& simplex_rule<4>(int);

}  // namespace stis
