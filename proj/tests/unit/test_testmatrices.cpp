#include "helpers.hpp"

#include "rtsgs/diagnostics.hpp"
#include "rtsgs/testmatrices.hpp"

#include <doctest.h>

#include <algorithm>

using namespace rtsgs;

TEST_CASE("ill-conditioned generator values") {
  const auto [X, Y] = gen_ill_conditioned(50, 10);
  CHECK(X(0, 0) == 0.0);
  CHECK(Y(0, 0) == doctest::Approx(1.0 / 1.2).epsilon(1e-15));
  // direct evaluation at an interior grid point
  const double x = 17.0 / 49.0, y = 4.0 / 9.0;
  CHECK(X(17, 4) == doctest::Approx(std::sin(x + y) / (std::cos(100.0 * (y - x)) + 1.1)).epsilon(1e-15));
  CHECK(Y(17, 4) == doctest::Approx(std::cos(x + y) / (std::sin(200.0 * (y - x)) + 1.2)).epsilon(1e-15));
  const auto again = gen_ill_conditioned(50, 10);
  CHECK((again.first - X).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(gen_ill_conditioned(5, 6), std::invalid_argument);
}

TEST_CASE("gaussian pair statistics and determinism") {
  const auto [X, Y] = gen_gaussian_pair(10000, 500, 2);
  CHECK(std::abs(X.mean()) <= 0.01);
  CHECK(std::abs(Y.mean()) <= 0.01);
  const double var = (X.array() - X.mean()).square().mean();
  CHECK(var == doctest::Approx(1.0).epsilon(0.01));
  const double k = cond2(X);
  CHECK(k >= 1.3);
  CHECK(k <= 1.9);
  const auto again = gen_gaussian_pair(10000, 500, 2);
  CHECK((again.first - X).cwiseAbs().maxCoeff() == 0.0);
  CHECK((again.second - Y).cwiseAbs().maxCoeff() == 0.0);
  CHECK((X - Y).norm() > 0.0);
  CHECK_THROWS_AS(gen_gaussian_pair(5, 6, 1), std::invalid_argument);
}

TEST_CASE("decaying spectrum") {
  const auto spec = decaying_spectrum(100);
  CHECK(spec.eigenvalues(0) == doctest::Approx(0.95));
  CHECK(spec.eigenvalues(14) == doctest::Approx(std::pow(0.95, 15)));
  CHECK(spec.eigenvalues(20) == doctest::Approx(std::pow(0.99, 6) * std::pow(0.95, 15)));
  CHECK(spec.cond_X == 100.0);
}

TEST_CASE("prescribed spectrum is recovered") {
  for (Index n : {20, 120}) {
    const auto spec = decaying_spectrum(n);
    const MatrixD A = gen_prescribed_spectrum(spec, 7);
    const VectorC ev = Eigen::EigenSolver<MatrixD>(A, false).eigenvalues();
    std::vector<double> got;
    for (Index i = 0; i < n; ++i) {
      CHECK(std::abs(ev(i).imag()) <= 1e-8);
      got.push_back(ev(i).real());
    }
    std::vector<double> want(spec.eigenvalues.data(), spec.eigenvalues.data() + n);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-8 * std::abs(want[i]) + 1e-12);
  }
}

TEST_CASE("similarity transform conditioning") {
  const auto sim = gen_similarity(80, 100.0, 3);
  CHECK(cond2(sim.X) == doctest::Approx(100.0).epsilon(0.01));
  SpectrumSpec spec;
  spec.n = 30;
  spec.eigenvalues = VectorD::LinSpaced(30, -2.0, 1.5);
  spec.cond_X = 1.0;
  const MatrixD A = gen_prescribed_spectrum(spec, 4);
  CHECK(Eigen::JacobiSVD<MatrixD>(A).singularValues()(0) == doctest::Approx(2.0).epsilon(1e-10));
  spec.cond_X = 0.5;
  CHECK_THROWS_AS(gen_prescribed_spectrum(spec, 4), std::invalid_argument);
}

TEST_CASE("random orthogonal") {
  const MatrixD U = random_orthogonal(40, 5);
  CHECK((U.transpose() * U - MatrixD::Identity(40, 40)).norm() <= 1e-13);
}

TEST_CASE("sketched orthogonal inner product experiment") {
  const auto cells = sketched_orthogonal_ip_experiment(300, {25, 50}, 20, {SketchKind::Identity, SketchKind::Gaussian,
                                                                          SketchKind::SparseSign}, 9);
  REQUIRE(cells.size() == 6);
  for (const auto& c : cells) {
    CHECK(c.values.size() == 20);
    if (c.kind == SketchKind::Identity) {
      CHECK(c.mean <= 1e-15);
      CHECK(c.count_below(1e-15) == 20);
    } else {
      CHECK(c.min > 0.0);
      CHECK(c.mean <= 1.0);
    }
  }
  const auto again = sketched_orthogonal_ip_experiment(300, {25, 50}, 20, {SketchKind::Identity, SketchKind::Gaussian,
                                                                           SketchKind::SparseSign}, 9);
  for (std::size_t i = 0; i < cells.size(); ++i) CHECK(cells[i].values == again[i].values);

  const auto self = sketched_orthogonal_ip_experiment(2000, {50}, 1000, {SketchKind::Gaussian}, 3);
  CHECK(self[0].self_count_below(0.1) == 0);
  CHECK_THROWS_AS(sketched_orthogonal_ip_experiment(100, {200}, 5, {SketchKind::Gaussian}, 1), std::invalid_argument);
  CHECK_THROWS_AS(sketched_orthogonal_ip_experiment(100, {20}, 0, {SketchKind::Gaussian}, 1), std::invalid_argument);
  CHECK(default_fig1_grid().size() == 40);
}
