#include "stis/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace stis;

namespace {

// Exact integral of x^a y^b z^c over the reference simplex: a! b! c! / (a+b+c+D)!.
double monomial_integral(const std::vector<int>& e) {
  double num = 1.0;
  int sum = 0;
  for (int k : e) {
    num *= std::tgamma(k + 1.0);
    sum += k;
  }
  return num / std::tgamma(sum + e.size() + 1.0);
}

}  // namespace

TEST_CASE("Gauss-Legendre exactness on [0,1]") {
  for (int n = 1; n <= 8; ++n) {
    auto r = gauss_legendre(n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.points[i], p);
      CHECK(s == doctest::Approx(1.0 / (p + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("Radau-type Gauss-Jacobi nodes") {
  CHECK(gauss_jacobi(1, 1).points[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  auto r = gauss_jacobi(2, 1);
  CHECK(r.points[0] == doctest::Approx((4 - std::sqrt(6.0)) / 10).epsilon(1e-13));
  CHECK(r.points[1] == doctest::Approx((4 + std::sqrt(6.0)) / 10).epsilon(1e-13));
}

TEST_CASE("simplex rules are exact and positive") {
  for (int deg = 0; deg <= 10; ++deg) {
    const auto& r2 = simplex_rule<2>(deg);
    for (double w : r2.weights) CHECK(w > 0.0);
    for (int a = 0; a <= deg; ++a)
      for (int b = 0; a + b <= deg; ++b) {
        double s = 0.0;
        for (std::size_t q = 0; q < r2.points.size(); ++q)
          s += r2.weights[q] * std::pow(r2.points[q][0], a) * std::pow(r2.points[q][1], b);
        CHECK(s == doctest::Approx(monomial_integral({a, b})).epsilon(1e-12));
      }
  }
  for (int deg : {0, 3, 6}) {
    const auto& r4 = simplex_rule<4>(deg);
    for (int a = 0; a <= deg; ++a)
      for (int b = 0; a + b <= deg; ++b)
        for (int c = 0; a + b + c <= deg; ++c) {
          const int t = deg - a - b - c;
          double s = 0.0;
          for (std::size_t q = 0; q < r4.points.size(); ++q) {
            const auto& p = r4.points[q];
            s += r4.weights[q] * std::pow(p[0], a) * std::pow(p[1], b) * std::pow(p[2], c) *
                 std::pow(p[3], t);
          }
          CHECK(s == doctest::Approx(monomial_integral({a, b, c, t})).epsilon(1e-12));
        }
  }
}

TEST_CASE("unsupported degree names the supported range") {
  try {
    simplex_rule<3>(kMaxQuadratureDegree + 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("0..40") != std::string::npos);
  }
}
