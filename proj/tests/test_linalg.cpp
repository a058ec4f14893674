#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qcoh/complex.hpp"
#include "qcoh/fp.hpp"
#include "qcoh/linalg.hpp"
#include "qcoh/rational.hpp"

using qcoh::Complex;
using qcoh::Fp;
using qcoh::Matrix;
using qcoh::Rational;
using qcoh::Vector;

TEST_CASE("rank over exact fields") {
  Matrix<Fp<2>> id2 = Matrix<Fp<2>>::Identity(2, 2);
  REQUIRE(qcoh::rank(id2) == 2);

  Matrix<Rational> z = Matrix<Rational>::Zero(3, 4);
  REQUIRE(qcoh::rank(z) == 0);

  Matrix<Rational> m(2, 2);
  m << Rational(1), Rational(2), Rational(2), Rational(4);
  REQUIRE(qcoh::rank(m) == 1);

  Matrix<Rational> empty(0, 0);
  REQUIRE(qcoh::rank(empty) == 0);
}

TEST_CASE("kernel_basis") {
  Matrix<Rational> id3 = Matrix<Rational>::Identity(3, 3);
  REQUIRE(qcoh::kernel_basis(id3).cols() == 0);

  Matrix<Fp<2>> zmap = Matrix<Fp<2>>::Zero(1, 3);
  REQUIRE(qcoh::kernel_basis(zmap).cols() == 3);

  Matrix<Fp<2>> m(1, 2);
  m << Fp<2>(1), Fp<2>(1);
  Matrix<Fp<2>> k = qcoh::kernel_basis(m);
  REQUIRE(k.cols() == 1);
  REQUIRE(k(0, 0) == Fp<2>(1));
  REQUIRE(k(1, 0) == Fp<2>(1));
}

TEST_CASE("solve") {
  Matrix<Rational> id2 = Matrix<Rational>::Identity(2, 2);
  Vector<Rational> b(2);
  b << Rational(3), Rational(-5);
  auto x = qcoh::solve(id2, b);
  REQUIRE(x.has_value());
  REQUIRE(*x == b);

  Matrix<Rational> zero = Matrix<Rational>::Zero(2, 2);
  REQUIRE_FALSE(qcoh::solve(zero, b).has_value());

  Matrix<Rational> two(1, 1);
  two << Rational(2);
  Vector<Rational> one(1);
  one << Rational(1);
  auto half = qcoh::solve(two, one);
  REQUIRE(half.has_value());
  REQUIRE((*half)(0) == Rational(1, 2));

  Vector<Rational> wrong(3);
  wrong << Rational(1), Rational(1), Rational(1);
  REQUIRE_THROWS_AS(qcoh::solve(id2, wrong), std::invalid_argument);
}

TEST_CASE("cohomology of small complexes") {
  // 0 -> k -> 0
  Complex<Rational> single;
  single.dims = {1};
  REQUIRE(qcoh::cohomology_dim(single, 0) == 1);
  REQUIRE(qcoh::cohomology_dim(single, 1) == 0);

  // 0 -> k -> k -> 0 with identity differential: exact
  Complex<Rational> exact;
  exact.dims = {1, 1};
  exact.diff = {Matrix<Rational>::Identity(1, 1)};
  REQUIRE(qcoh::cohomology_dim(exact, 0) == 0);
  REQUIRE(qcoh::cohomology_dim(exact, 1) == 0);

  // k --0--> k --0--> k: middle cohomology is everything
  Complex<Fp<3>> zeros;
  zeros.dims = {1, 1, 1};
  zeros.diff = {Matrix<Fp<3>>::Zero(1, 1), Matrix<Fp<3>>::Zero(1, 1)};
  REQUIRE(qcoh::cohomology_dim(zeros, 1) == 1);

  // malformed: d o d != 0
  Complex<Rational> bad;
  bad.dims = {1, 1, 1};
  bad.diff = {Matrix<Rational>::Identity(1, 1), Matrix<Rational>::Identity(1, 1)};
  REQUIRE_THROWS_AS(qcoh::cohomology_dim(bad, 1), std::invalid_argument);
}

template <class S, class Rng>
static Matrix<S> random_matrix(int rows, int cols, int spread, Rng& rng) {
  std::uniform_int_distribution<int> dist(-spread, spread);
  Matrix<S> m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = S(dist(rng));
  return m;
}

TEMPLATE_TEST_CASE("rank-nullity and kernel validity on random matrices", "",
                   qcoh::Fp<2>, qcoh::Fp<3>, qcoh::Fp<5>) {
  using S = TestType;
  std::mt19937 rng(20260819);
  std::uniform_int_distribution<int> shape(0, 5);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = shape(rng), cols = shape(rng);
    Matrix<S> m = random_matrix<S>(rows, cols, 6, rng);
    Matrix<S> k = qcoh::kernel_basis(m);
    REQUIRE(qcoh::rank(m) + k.cols() == cols);
    if (rows > 0 && k.cols() > 0) {
      Matrix<S> prod = m * k;
      for (Eigen::Index r = 0; r < prod.rows(); ++r)
        for (Eigen::Index c = 0; c < prod.cols(); ++c) REQUIRE(prod(r, c) == S(0));
    }
    // kernel basis columns are independent
    REQUIRE(qcoh::rank(k) == k.cols());
  }
}

TEST_CASE("solve returns exact solutions on random solvable systems") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> shape(1, 5);
  for (int trial = 0; trial < 40; ++trial) {
    const int rows = shape(rng), cols = shape(rng);
    Matrix<Rational> m = random_matrix<Rational>(rows, cols, 4, rng);
    Vector<Rational> target = random_matrix<Rational>(cols, 1, 3, rng);
    Vector<Rational> b = m * target;  // guaranteed consistent
    auto x = qcoh::solve(m, b);
    REQUIRE(x.has_value());
    REQUIRE(m * *x == b);
  }
}

TEST_CASE("rational arithmetic keeps fractions reduced") {
  Rational q = Rational(2, 4);
  REQUIRE(boost::multiprecision::numerator(q) == 1);
  REQUIRE(boost::multiprecision::denominator(q) == 2);
  Rational s = Rational(1, 6) + Rational(1, 3);
  REQUIRE(boost::multiprecision::numerator(s) == 1);
  REQUIRE(boost::multiprecision::denominator(s) == 2);
}

TEST_CASE("cohomology of exact complexes vanishes at interior indices") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int trial = 0; trial < 25; ++trial) {
    // Build an exact 3-term complex 0 -> A --i--> A (+) B --p--> B -> 0.
    const int a = dim(rng), b = dim(rng);
    Complex<Fp<5>> c;
    c.dims = {a, a + b, b};
    Matrix<Fp<5>> inc = Matrix<Fp<5>>::Zero(a + b, a);
    inc.topRows(a) = Matrix<Fp<5>>::Identity(a, a);
    Matrix<Fp<5>> proj = Matrix<Fp<5>>::Zero(b, a + b);
    proj.rightCols(b) = Matrix<Fp<5>>::Identity(b, b);
    c.diff = {inc, proj};
    REQUIRE(qcoh::cohomology_dim(c, 1) == 0);
  }
}
