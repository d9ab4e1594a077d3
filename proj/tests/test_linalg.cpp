#include <catch2/catch_amalgamated.hpp>

#include "shv/matrix.hpp"

using namespace shv;

static Matrix mk(FieldConfig f, int r, int c, std::initializer_list<long> xs) {
  Matrix m(f, r, c);
  auto it = xs.begin();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = Scalar(f, *it++);
  return m;
}

TEST_CASE("rational scalar arithmetic") {
  FieldConfig q = rationals();
  Scalar a(q, 2), b(q, 3);
  CHECK((a / b).str() == "2/3");
  CHECK(((a / b) * b) == a);
  CHECK((a - a).isZero());
  CHECK_THROWS(Scalar(q, 0).inverse());
}

TEST_CASE("prime field arithmetic") {
  FieldConfig f5 = primeField(5);
  Scalar a(f5, 7);
  CHECK(a == Scalar(f5, 2));
  CHECK((a.inverse() * a) == Scalar(f5, 1));
  CHECK(Scalar(f5, 3).inverse() == Scalar(f5, 2));
  CHECK_THROWS(primeField(6));
}

TEST_CASE("rank and rref pivoting") {
  FieldConfig q = rationals();
  Matrix m = mk(q, 3, 3, {1, 2, 3, 2, 4, 6, 1, 1, 1});
  CHECK(m.rank() == 2);
  CHECK(Matrix::identity(q, 4).rank() == 4);
  Matrix z(q, 3, 2);
  CHECK(z.rank() == 0);
}

TEST_CASE("kernel basis") {
  FieldConfig q = rationals();
  Matrix m = mk(q, 2, 3, {1, 0, 1, 0, 1, 1});
  Matrix k = m.kernelBasis();
  REQUIRE(k.cols() == 1);
  CHECK((m * k).isZero());
}

TEST_CASE("solve") {
  FieldConfig q = rationals();
  Matrix a = mk(q, 2, 2, {1, 2, 3, 4});
  Matrix b = mk(q, 2, 1, {5, 6});
  auto x = a.solve(b);
  REQUIRE(x.has_value());
  CHECK(a * *x == b);
  Matrix sing = mk(q, 2, 2, {1, 1, 1, 1});
  CHECK_FALSE(sing.solve(mk(q, 2, 1, {0, 1})).has_value());
}

TEST_CASE("kron matches bilinearity") {
  FieldConfig q = rationals();
  Matrix a = mk(q, 2, 2, {1, 2, 3, 4});
  Matrix b = mk(q, 2, 2, {0, 1, 1, 0});
  Matrix ab = a.kron(b);
  CHECK(ab.rows() == 4);
  CHECK(ab.at(0, 1) == Scalar(q, 1));
  CHECK(ab.at(0, 0).isZero());
  // (A kron B)(x kron y) = Ax kron By
  Matrix x = mk(q, 2, 1, {1, -1});
  Matrix y = mk(q, 2, 1, {2, 5});
  CHECK(ab * x.kron(y) == (a * x).kron(b * y));
}

TEST_CASE("rank over F_2 differs from rational rank") {
  Matrix m2 = mk(primeField(2), 2, 2, {1, 1, 1, 1});
  CHECK(m2.rank() == 1);
  Matrix m2b = mk(primeField(2), 2, 2, {1, 1, 1, 0});
  CHECK(m2b.rank() == 2);
}
