#include <doctest.h>

#include <cmath>

#include "levycum/cumulants.hpp"
#include "test_oracles.hpp"

using levycum::MultiIndex;
using levycum::UnivariateCumulants;

TEST_CASE("inverse Gaussian cumulants") {
  CHECK(levycum::ig_cumulant(1, 1, 1) == 1.0);
  CHECK(levycum::ig_cumulant(1, 1, 3) == 3.0);                       // 3!! = 3
  CHECK(levycum::ig_cumulant(2, 0.5, 2) == doctest::Approx(16.0));   // 2 * 1 / 0.5^3
  CHECK(levycum::ig_cumulant(1, 1, 4) == doctest::Approx(15.0));     // 5!! = 15
  CHECK_THROWS_AS(levycum::ig_cumulant(0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(levycum::ig_cumulant(1, -1, 1), std::invalid_argument);
}

TEST_CASE("ig_scale realizes cumulant homogeneity") {
  SUBCASE("identity scaling") {
    auto [a, b] = levycum::ig_scale(1.7, 0.4, 1.0);
    CHECK(a == doctest::Approx(1.7));
    CHECK(b == doctest::Approx(0.4));
  }
  SUBCASE("worked example") {
    auto [a, b] = levycum::ig_scale(1.0, 1.0, 4.0);
    CHECK(a == doctest::Approx(2.0));
    CHECK(b == doctest::Approx(0.5));
    CHECK(levycum::ig_cumulant(a, b, 2) == doctest::Approx(16.0));  // 4^2 * c_2(IG(1,1))
  }
  SUBCASE("algebraic inversion to unit first parameter") {
    const double a0 = 2.1;
    const double alpha = 1.0 / (a0 * a0);  // so a0 sqrt(alpha) = 1
    auto [a, b] = levycum::ig_scale(a0, 1.0, alpha);
    CHECK(a == doctest::Approx(1.0));
    (void)b;
  }
  SUBCASE("c_k(alpha X) = alpha^k c_k(X) for k <= 8") {
    const double a0 = 0.8, b0 = 1.3, alpha = 2.6;
    auto [a, b] = levycum::ig_scale(a0, b0, alpha);
    for (int k = 1; k <= 8; ++k) {
      const double scaled = levycum::ig_cumulant(a, b, k);
      const double direct = std::pow(alpha, k) * levycum::ig_cumulant(a0, b0, k);
      CHECK(scaled == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("IG additivity in the first parameter at fixed b") {
  const double a1 = 0.6, a2 = 1.9, b = 0.7;
  for (int k = 1; k <= 8; ++k) {
    const double sum = levycum::ig_cumulant(a1, b, k) + levycum::ig_cumulant(a2, b, k);
    CHECK(sum == doctest::Approx(levycum::ig_cumulant(a1 + a2, b, k)).epsilon(1e-12));
  }
}

TEST_CASE("univariate cumulant providers") {
  const auto gaussian = UnivariateCumulants::gaussian(0.3, 1.4);
  CHECK(gaussian.cumulant(1) == 0.3);
  CHECK(gaussian.cumulant(2) == 1.4);
  for (int k = 3; k <= 10; ++k) CHECK(gaussian.cumulant(k) == 0.0);

  const auto zero = UnivariateCumulants::zero();
  for (int k = 1; k <= 10; ++k) CHECK(zero.cumulant(k) == 0.0);
  CHECK(zero.is_gaussian());

  const auto table = UnivariateCumulants::table({5.0, -1.0});
  CHECK(table.cumulant(1) == 5.0);
  CHECK(table.cumulant(2) == -1.0);
  CHECK_THROWS_AS(table.cumulant(3), std::invalid_argument);

  const auto ig = UnivariateCumulants::inverse_gaussian(1.2, 0.8);
  CHECK(ig.cumulant(2) == doctest::Approx(levycum::ig_cumulant(1.2, 0.8, 2)));
  CHECK_THROWS_AS(UnivariateCumulants::inverse_gaussian(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ig.gaussian_mean(), std::invalid_argument);
}

TEST_CASE("joint cumulant providers") {
  const auto base1 = UnivariateCumulants::inverse_gaussian(1.0, 1.0);
  const auto base2 = UnivariateCumulants::inverse_gaussian(2.0, 0.5);

  SUBCASE("independent components vanish on genuinely mixed indices") {
    const auto provider = levycum::JointCumulantProvider::independent({base1, base2});
    for (const auto& j : testing_oracles::all_indices(2, 5)) {
      if (j.support_size() >= 2)
        CHECK(provider.cumulant(j) == 0.0);
    }
    CHECK(provider.cumulant(MultiIndex{3, 0}) == doctest::Approx(base1.cumulant(3)));
    CHECK(provider.cumulant(MultiIndex{0, 2}) == doctest::Approx(base2.cumulant(2)));
  }

  SUBCASE("comonotone reads the base at the total order") {
    const auto provider = levycum::JointCumulantProvider::comonotone(base1, 3);
    CHECK(provider.cumulant(MultiIndex{1, 1, 0}) == doctest::Approx(base1.cumulant(2)));
    CHECK(provider.cumulant(MultiIndex{2, 1, 1}) == doctest::Approx(base1.cumulant(4)));
  }

  SUBCASE("tabulated errors on missing data") {
    std::map<MultiIndex, double> values{{MultiIndex{1, 0}, 2.0}};
    const auto provider = levycum::JointCumulantProvider::tabulated(2, values);
    CHECK(provider.cumulant(MultiIndex{1, 0}) == 2.0);
    CHECK_THROWS_AS(provider.cumulant(MultiIndex{0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(provider.cumulant(MultiIndex{0, 0}), std::invalid_argument);
  }
}

TEST_CASE("inner coefficients") {
  Eigen::MatrixXd A(2, 1);
  A << 1.0, 1.0;

  SUBCASE("Brownian worked examples") {
    CHECK(levycum::brownian_inner_coefficient(MultiIndex{1, 0}, 0, A, 0.3, 2.0) ==
          doctest::Approx(0.3));
    CHECK(levycum::brownian_inner_coefficient(MultiIndex{1, 1}, 0, A, 0.3, 2.0) ==
          doctest::Approx(2.0));
    CHECK(levycum::brownian_inner_coefficient(MultiIndex{3, 0}, 0, A, 0.3, 2.0) == 0.0);
    CHECK(levycum::brownian_inner_coefficient(MultiIndex{0, 2}, 0, A, 0.3, 2.0) ==
          doctest::Approx(2.0));
    CHECK_THROWS_AS(levycum::brownian_inner_coefficient(MultiIndex{0, 0}, 0, A, 0.3, 2.0),
                    std::invalid_argument);
  }

  SUBCASE("generic coefficient matches the Gaussian closed form up to order 3") {
    Eigen::MatrixXd M(3, 2);
    M << 0.4, -1.2, 0.9, 0.3, -0.5, 2.0;
    const auto base = UnivariateCumulants::gaussian(0.7, 1.9);
    for (int k = 0; k < 2; ++k)
      for (const auto& column : testing_oracles::all_indices(3, 3)) {
        const double generic = levycum::generic_inner_coefficient(column, k, M, base);
        const double brownian = levycum::brownian_inner_coefficient(column, k, M, 0.7, 1.9);
        CHECK(generic == doctest::Approx(brownian).epsilon(1e-14));
      }
  }

  SUBCASE("generic worked example") {
    Eigen::MatrixXd M(2, 1);
    M << 1.0, 2.0;
    const auto base = UnivariateCumulants::table({0.0, 0.0, 5.0});
    CHECK(levycum::generic_inner_coefficient(MultiIndex{2, 1}, 0, M, base) ==
          doctest::Approx(10.0));  // 5 * 1^2 * 2
  }

  SUBCASE("support off the column gives zero") {
    Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(2, 2);
    const auto base = UnivariateCumulants::table({1.0});
    CHECK(levycum::generic_inner_coefficient(MultiIndex{0, 1}, 0, identity, base) == 0.0);
  }
}
