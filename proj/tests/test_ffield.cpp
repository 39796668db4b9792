#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"
#include "stabring/ffield.hpp"

using namespace stabring;

namespace {

Matrix from_imat(const FieldSpec& f, const oracle::IMat& a) {
  Matrix m(f, a.size(), a.empty() ? 0 : a[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m.at(i, j) = f.from_int(a[i][j]);
  return m;
}

Matrix jordan_block(const FieldSpec& f, std::size_t n) {
  Matrix t(f, n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) t.at(i + 1, i) = 1;
  return t;
}

}  // namespace

TEST_CASE("prime field construction validates primality") {
  CHECK_NOTHROW(ff_make(2, 1, {}));
  CHECK_NOTHROW(ff_make(3, 1, {}));
  CHECK_NOTHROW(ff_make(7, 1, {}));
  CHECK_THROWS_MATCHES(ff_make(4, 1, {}), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.kind() == errc::not_prime;
                       }));
  CHECK_THROWS_MATCHES(ff_make(1, 1, {}), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.kind() == errc::not_prime;
                       }));
  CHECK_THROWS_MATCHES(ff_make(2, 1, {1, 1}), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.kind() == errc::degree_mismatch;
                       }));
}

TEST_CASE("prime field arithmetic matches integer arithmetic mod p") {
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    FieldSpec f = ff_make(p, 1, {});
    REQUIRE(f.size() == p);
    for (unsigned a = 0; a < p; ++a)
      for (unsigned b = 0; b < p; ++b) {
        CHECK(f.add(a, b) == (a + b) % p);
        CHECK(f.mul(a, b) == (a * b) % p);
        CHECK(f.sub(a, b) == (a + p - b) % p);
      }
    for (unsigned a = 1; a < p; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  }
}

TEST_CASE("GF(4) modulus is irreducible by the root check") {
  // x^2 + x + 1 has no root in GF(2): independent evaluation
  for (long long x : {0, 1}) CHECK((x * x + x + 1) % 2 == 1);
  FieldSpec f4 = ff_make(2, 2, {1, 1, 1});
  REQUIRE(f4.size() == 4);

  // reducible moduli are rejected: x^2 and (x+1)^2 = x^2+1 over GF(2)
  CHECK_THROWS_MATCHES(ff_make(2, 2, {0, 0, 1}), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.kind() == errc::reducible_modulus;
                       }));
  CHECK_THROWS_MATCHES(ff_make(2, 2, {1, 0, 1}), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.kind() == errc::reducible_modulus;
                       }));
  // degree and monicity are enforced
  CHECK_THROWS_MATCHES(ff_make(2, 2, {1, 1}), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.kind() == errc::degree_mismatch;
                       }));
  CHECK_THROWS_MATCHES(ff_make(3, 2, {1, 1, 2}), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.kind() == errc::degree_mismatch;
                       }));
  // x^4 + x^2 + 1 = (x^2+x+1)^2 over GF(2): caught by the quadratic factor scan
  CHECK_THROWS_MATCHES(ff_make(2, 4, {1, 0, 1, 0, 1}), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.kind() == errc::reducible_modulus;
                       }));
  CHECK_NOTHROW(ff_make(2, 4, {1, 1, 0, 0, 1}));
}

TEST_CASE("extension field axioms hold exhaustively") {
  for (FieldSpec f : {ff_make(2, 2, {1, 1, 1}), ff_make(3, 2, {1, 0, 1}), ff_make(2, 3, {1, 1, 0, 1})}) {
    const std::uint32_t q = f.size();
    for (std::uint32_t a = 0; a < q; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a) CHECK(f.mul(a, f.inv(a)) == 1);
      for (std::uint32_t b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (std::uint32_t c = 0; c < q; ++c) {
          CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("Frobenius is additive") {
  for (FieldSpec f : {ff_make(2, 2, {1, 1, 1}), ff_make(3, 2, {1, 0, 1}), ff_make(2, 3, {1, 1, 0, 1}),
                      ff_make(5, 2, {2, 0, 1})}) {
    const unsigned p = f.p();
    for (std::uint32_t x = 0; x < f.size(); ++x)
      for (std::uint32_t y = 0; y < f.size(); ++y)
        CHECK(f.pow(f.add(x, y), p) == f.add(f.pow(x, p), f.pow(y, p)));
  }
}

TEST_CASE("scalar coefficient round trip") {
  FieldSpec f9 = ff_make(3, 2, {1, 0, 1});
  for (std::uint32_t a = 0; a < 9; ++a) {
    auto c = f9.coeffs(a);
    REQUIRE(c.size() == 2);
    std::vector<long long> ll(c.begin(), c.end());
    CHECK(f9.from_coeffs(ll) == a);
  }
  CHECK(f9.from_coeffs({-1, 4}) == f9.from_coeffs({2, 1}));
}

TEST_CASE("matrix rank on pinned inputs") {
  FieldSpec f2 = ff_make(2, 1, {});
  CHECK(mat_rank(Matrix(f2, 3, 3)) == 0);
  CHECK(mat_rank(Matrix::identity(ff_make(5, 1, {}), 4)) == 4);
  for (unsigned q : {2u, 3u, 4u, 9u}) {
    FieldSpec f = ff_make(q <= 4 ? 2 : 3, 1, {});
    CHECK(mat_rank(jordan_block(f, q)) == q - 1);
  }
}

TEST_CASE("rank equals rank of transpose and matches the oracle") {
  oracle::Rng rng(0xabcdef12u);
  for (long long p : {2, 3, 5}) {
    FieldSpec f = ff_make((unsigned)p, 1, {});
    for (int trial = 0; trial < 20; ++trial) {
      int rows = 1 + (int)rng.below(8), cols = 1 + (int)rng.below(8);
      oracle::IMat a = oracle::random_mat(rng, rows, cols, p);
      Matrix m = from_imat(f, a);
      std::size_t rk = mat_rank(m);
      CHECK(rk == (std::size_t)oracle::rank(a, p));
      CHECK(rk == mat_rank(m.transpose()));
      CHECK(rk + mat_nullspace(m).cols() == m.cols());
    }
  }
}

TEST_CASE("solve: identity and zero systems") {
  FieldSpec f3 = ff_make(3, 1, {});
  oracle::Rng rng(7);
  Matrix b = from_imat(f3, oracle::random_mat(rng, 4, 2, 3));
  auto r = mat_solve(Matrix::identity(f3, 4), b);
  REQUIRE(r.feasible);
  CHECK(r.particular == b);
  CHECK(r.nullspace.cols() == 0);

  auto z = mat_solve(Matrix(f3, 3, 3), Matrix(f3, 3, 1));
  REQUIRE(z.feasible);
  CHECK(z.particular.is_zero());
  CHECK(z.nullspace.cols() == 3);
}

TEST_CASE("solve: random consistent systems have zero residual") {
  oracle::Rng rng(0x5eed);
  for (long long p : {2, 3, 5}) {
    FieldSpec f = ff_make((unsigned)p, 1, {});
    for (int trial = 0; trial < 15; ++trial) {
      Matrix a = from_imat(f, oracle::random_mat(rng, 5, 7, p));
      Matrix x0 = from_imat(f, oracle::random_mat(rng, 7, 2, p));
      Matrix b = a * x0;
      auto r = mat_solve(a, b);
      REQUIRE(r.feasible);
      CHECK((a * r.particular - b).is_zero());
      // every kernel column really is in the kernel
      if (r.nullspace.cols() > 0) CHECK((a * r.nullspace).is_zero());
      CHECK(r.nullspace.cols() == a.cols() - r.rank_a);
    }
  }
}

TEST_CASE("solve: infeasibility is proven by rank comparison") {
  FieldSpec f2 = ff_make(2, 1, {});
  // x + y = 0 and x + y = 1 simultaneously
  Matrix a(f2, 2, 2);
  a.at(0, 0) = a.at(0, 1) = a.at(1, 0) = a.at(1, 1) = 1;
  Matrix b(f2, 2, 1);
  b.at(1, 0) = 1;
  auto r = mat_solve(a, b);
  CHECK_FALSE(r.feasible);
  CHECK(r.rank_a < r.rank_aug);
}

TEST_CASE("solve feasibility agrees with exhaustive search on tiny systems") {
  FieldSpec f2 = ff_make(2, 1, {});
  oracle::Rng rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    Matrix a = from_imat(f2, oracle::random_mat(rng, 2, 3, 2));
    Matrix b = from_imat(f2, oracle::random_mat(rng, 2, 1, 2));
    bool any = false;
    for (int mask = 0; mask < 8 && !any; ++mask) {
      Matrix x(f2, 3, 1);
      for (int k = 0; k < 3; ++k) x.at(k, 0) = (mask >> k) & 1;
      any = (a * x - b).is_zero();
    }
    CHECK(mat_solve(a, b).feasible == any);
  }
}

TEST_CASE("inverse round trip and singularity") {
  oracle::Rng rng(0x1234);
  for (long long p : {2, 3, 5}) {
    FieldSpec f = ff_make((unsigned)p, 1, {});
    for (int trial = 0; trial < 10; ++trial) {
      int n = 1 + (int)rng.below(6);
      Matrix a = from_imat(f, oracle::random_invertible(rng, n, p));
      CHECK((a * mat_inverse(a)).is_identity());
    }
  }
  FieldSpec f3 = ff_make(3, 1, {});
  Matrix sing(f3, 2, 2);
  sing.at(0, 0) = 1;
  sing.at(1, 0) = 2;  // second column zero
  CHECK_THROWS_MATCHES(mat_inverse(sing), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.kind() == errc::singular;
                       }));
}

TEST_CASE("kronecker product uses left-factor-major indexing") {
  oracle::Rng rng(99);
  FieldSpec f5 = ff_make(5, 1, {});
  Matrix a = from_imat(f5, oracle::random_mat(rng, 2, 3, 5));
  Matrix b = from_imat(f5, oracle::random_mat(rng, 3, 2, 5));
  Matrix k = a.kron(b);
  REQUIRE(k.rows() == 6);
  REQUIRE(k.cols() == 6);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t t = 0; t < 2; ++t)
          CHECK(k.at(i * 3 + s, j * 2 + t) == f5.mul(a.at(i, j), b.at(s, t)));
  // mixed-product property (A kron B)(C kron D) = AC kron BD
  Matrix c = from_imat(f5, oracle::random_mat(rng, 3, 2, 5));
  Matrix d = from_imat(f5, oracle::random_mat(rng, 2, 4, 5));
  CHECK(a.kron(b) * c.kron(d) == (a * c).kron(b * d));
}

TEST_CASE("rref is idempotent and deterministic") {
  oracle::Rng rng(1729);
  FieldSpec f3 = ff_make(3, 1, {});
  for (int trial = 0; trial < 10; ++trial) {
    Matrix a = from_imat(f3, oracle::random_mat(rng, 4, 6, 3));
    Matrix r1 = mat_rref(a);
    CHECK(mat_rref(r1) == r1);
    CHECK(mat_rref(a) == r1);
  }
}

TEST_CASE("extension field matrix arithmetic stays exact") {
  FieldSpec f4 = ff_make(2, 2, {1, 1, 1});
  // multiplication table sanity inside a matrix product: x * (x+1) = 1
  Matrix a(f4, 1, 1), b(f4, 1, 1);
  a.at(0, 0) = 2;  // x
  b.at(0, 0) = 3;  // x + 1
  CHECK((a * b).at(0, 0) == 1);
  Matrix j = jordan_block(f4, 3);
  CHECK(mat_rank(j) == 2);
  CHECK(j.pow(3).is_zero());
}
