#include <doctest.h>

#include <cmath>

#include "berezin/rng.hpp"
#include "berezin/space.hpp"
#include "oracles.hpp"

using namespace berezin;

TEST_CASE("make_space validates dimensions") {
  const SpaceSpec h = make_space(SpaceKind::Hardy, 2);
  CHECK(h.kind == SpaceKind::Hardy);
  CHECK(h.dim == 2);
  const SpaceSpec b = make_space(SpaceKind::Bergman, 128);
  CHECK(b.kind == SpaceKind::Bergman);
  CHECK(b.dim == 128);
  CHECK_THROWS_AS(make_space(SpaceKind::Hardy, 1), ConfigError);
  CHECK_THROWS_AS(make_space(SpaceKind::Hardy, 64, 1.5), ConfigError);
}

TEST_CASE("kernel vector at the origin is e_0") {
  for (SpaceKind kind : {SpaceKind::Hardy, SpaceKind::Bergman}) {
    const SpaceSpec space = make_space(kind, 7);
    const KernelVector k = kernel_vector(space, 0.0);
    CHECK(k.coeffs(0) == Complex{1.0, 0.0});
    for (int i = 1; i < 7; ++i) CHECK(k.coeffs(i) == Complex{0.0, 0.0});
    CHECK(k.norm_sq == 1.0);
  }
}

TEST_CASE("Hardy kernel at 0.5, dim 2") {
  const SpaceSpec space = make_space(SpaceKind::Hardy, 2);
  const KernelVector k = kernel_vector(space, 0.5);
  CHECK(k.coeffs(0).real() == doctest::Approx(1.0));
  CHECK(k.coeffs(1).real() == doctest::Approx(0.5));
  CHECK(k.norm_sq == doctest::Approx(1.25));
}

TEST_CASE("Bergman kernel at 0.5, dim 3") {
  const SpaceSpec space = make_space(SpaceKind::Bergman, 3);
  const KernelVector k = kernel_vector(space, 0.5);
  CHECK(k.coeffs(0).real() == doctest::Approx(1.0));
  CHECK(k.coeffs(1).real() == doctest::Approx(std::sqrt(2.0) * 0.5));
  CHECK(k.coeffs(2).real() == doctest::Approx(std::sqrt(3.0) * 0.25));
}

TEST_CASE("kernel evaluation rejects points outside the admissible disk") {
  const SpaceSpec space = make_space(SpaceKind::Hardy, 4);
  CHECK_THROWS_AS(kernel_vector(space, Complex{1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(kernel_vector(space, Complex{0.8, 0.8}), DomainError);
  CHECK_THROWS_AS(kernel_vector(space, Complex{0.9999, 0.0}), DomainError);  // beyond cap
}

TEST_CASE("normalize") {
  const SpaceSpec space = make_space(SpaceKind::Hardy, 2);
  SUBCASE("already unit") {
    const KernelVector k = normalize(kernel_vector(space, 0.0));
    CHECK(k.coeffs(0) == Complex{1.0, 0.0});
    CHECK(k.normalized);
  }
  SUBCASE("divides by sqrt(1.25)") {
    const KernelVector k = normalize(kernel_vector(space, 0.5));
    CHECK(k.coeffs(0).real() == doctest::Approx(0.8944271909999159).epsilon(1e-12));
    CHECK(k.coeffs(1).real() == doctest::Approx(0.4472135954999579).epsilon(1e-12));
    CHECK(std::abs(k.coeffs.squaredNorm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("normalized Hardy kernel approaches sqrt(1-r^2) r^n for large dim") {
  const SpaceSpec space = make_space(SpaceKind::Hardy, 128);
  for (double r : {0.3, 0.6, 0.9}) {
    const KernelVector k = normalize(kernel_vector(space, r));
    const double front = std::sqrt(1.0 - r * r);
    double rn = 1.0;
    for (int n = 0; n < space.dim; ++n) {
      CHECK(std::abs(k.coeffs(n).real() - front * rn) <= 1e-10);
      rn *= r;
    }
  }
}

TEST_CASE("inner product basics") {
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(3), e1 = Eigen::VectorXcd::Zero(3);
  e0(0) = 1.0;
  e1(1) = 1.0;
  CHECK(inner_product(e0, e0) == Complex{1.0, 0.0});
  CHECK(inner_product(e0, e1) == Complex{0.0, 0.0});
  Eigen::VectorXcd bad = Eigen::VectorXcd::Zero(2);
  CHECK_THROWS_AS(inner_product(e0, bad), UsageError);
}

TEST_CASE("inner product is conjugate-linear in the second slot") {
  Eigen::VectorXcd u(2), v(2);
  u << Complex{1.0, 2.0}, Complex{0.5, -1.0};
  v << Complex{-1.0, 0.5}, Complex{2.0, 2.0};
  const Complex c{0.3, -0.7};
  const Complex lhs = inner_product(u, c * v);
  const Complex rhs = std::conj(c) * inner_product(u, v);
  CHECK(std::abs(lhs - rhs) <= 1e-15);
}

TEST_CASE("normalized kernels have unit norm for random points") {
  Rng rng(2024);
  for (SpaceKind kind : {SpaceKind::Hardy, SpaceKind::Bergman}) {
    const SpaceSpec space = make_space(kind, 32);
    for (int t = 0; t < 25; ++t) {
      const Complex lambda = rng.phase() * rng.uniform(0.0, 0.99);
      const KernelVector k = normalize(kernel_vector(space, lambda));
      CHECK(std::abs(inner_product(k.coeffs, k.coeffs).real() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("reproducing property: 50 random polynomials against 50 random points") {
  Rng rng(7);
  for (SpaceKind kind : {SpaceKind::Hardy, SpaceKind::Bergman}) {
    const SpaceSpec space = make_space(kind, 24);
    std::vector<Eigen::VectorXcd> polys;
    for (int t = 0; t < 50; ++t) {
      Eigen::VectorXcd f(space.dim);
      for (int i = 0; i < space.dim; ++i) f(i) = rng.cgaussian();
      polys.push_back(std::move(f));
    }
    for (int t = 0; t < 50; ++t) {
      const Complex lambda = rng.phase() * rng.uniform(0.0, 0.95);
      const KernelVector k = kernel_vector(space, lambda);
      for (const Eigen::VectorXcd& f : polys) {
        const Complex via_kernel = inner_product(f, k.coeffs);
        const Complex direct = evaluate_poly(space, f, lambda);
        CHECK(std::abs(via_kernel - direct) <= 1e-9 * (1.0 + std::abs(direct)));
      }
    }
  }
}

TEST_CASE("Hardy kernel norm matches the geometric closed form") {
  const SpaceSpec space = make_space(SpaceKind::Hardy, 48);
  Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    const double r = rng.uniform(0.0, 0.99);
    const KernelVector k = kernel_vector(space, rng.phase() * r);
    const double expected = oracle::hardy_norm_sq(r, space.dim);
    CHECK(std::abs(k.norm_sq - expected) <= 1e-10 * expected);
  }
}

TEST_CASE("Bergman kernel norm matches the closed form") {
  const SpaceSpec space = make_space(SpaceKind::Bergman, 48);
  Rng rng(13);
  for (int t = 0; t < 40; ++t) {
    const double r = rng.uniform(0.0, 0.95);
    const KernelVector k = kernel_vector(space, rng.phase() * r);
    const double expected = oracle::bergman_norm_sq(r, space.dim);
    CHECK(std::abs(k.norm_sq - expected) <= 1e-10 * expected);
  }
}

TEST_CASE("kernel conjugation symmetry") {
  Rng rng(17);
  for (SpaceKind kind : {SpaceKind::Hardy, SpaceKind::Bergman}) {
    const SpaceSpec space = make_space(kind, 20);
    for (int t = 0; t < 20; ++t) {
      const Complex lambda = rng.phase() * rng.uniform(0.0, 0.99);
      const KernelVector k = kernel_vector(space, lambda);
      const KernelVector kc = kernel_vector(space, std::conj(lambda));
      for (int n = 0; n < space.dim; ++n)
        CHECK(kc.coeffs(n) == std::conj(k.coeffs(n)));
    }
  }
}
