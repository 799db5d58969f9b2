#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "syzlab/exact/field.hpp"
#include "syzlab/exact/linalg.hpp"
#include "syzlab/exact/wedge.hpp"

using namespace syz::exact;

TEST_CASE("prime field validation") {
  CHECK_THROWS_AS(PrimeField(2), FieldError);
  CHECK_THROWS_AS(PrimeField(3), FieldError);
  CHECK_THROWS_AS(PrimeField(15), FieldError);
  CHECK_THROWS_AS(PrimeField(2147483659u), FieldError);
  CHECK(PrimeField().characteristic() == 10007);
  CHECK_NOTHROW(PrimeField(2147483647u));
}

TEST_CASE("syzygy characteristic guard") {
  CHECK_THROWS_AS(check_syzygy_characteristic(5, 3), FieldError);   // 5 | 5
  CHECK_THROWS_AS(check_syzygy_characteristic(5, 4), FieldError);   // 5 | 5
  CHECK_NOTHROW(check_syzygy_characteristic(5, 1));
  CHECK_NOTHROW(check_syzygy_characteristic(0, 4));
  CHECK_NOTHROW(check_syzygy_characteristic(10007, 4));
}

TEST_CASE("field axioms on random triples") {
  PrimeField f(10007);
  std::mt19937_64 rng(7);
  for (int it = 0; it < 1000; ++it) {
    const auto a = f.from_int(static_cast<std::int64_t>(rng() % 10007));
    const auto b = f.from_int(static_cast<std::int64_t>(rng() % 10007));
    const auto c = f.from_int(static_cast<std::int64_t>(rng() % 10007));
    CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    CHECK(f.sub(f.add(a, b), b) == a);
    if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
  }
  Rationals q;
  for (int it = 0; it < 200; ++it) {
    const auto a = q.div(q.from_int(static_cast<std::int64_t>(rng() % 2001) - 1000), q.from_int(1 + rng() % 97));
    const auto b = q.div(q.from_int(static_cast<std::int64_t>(rng() % 2001) - 1000), q.from_int(1 + rng() % 97));
    CHECK(q.sub(q.add(a, b), b) == a);
    if (!q.is_zero(a)) CHECK(q.mul(a, q.inv(a)) == 1);
  }
}

TEST_CASE("square roots") {
  PrimeField f(10007);
  for (std::uint32_t a = 0; a < 300; ++a) {
    std::uint32_t r = 0;
    if (f.sqrt(a, r)) CHECK(f.mul(r, r) == a);
  }
  std::uint32_t r = 0;
  CHECK(f.sqrt(f.mul(1234, 1234), r));
}

TEST_CASE("scalar field mismatch") {
  const auto a = Scalar<PrimeField>::from_int(PrimeField(101), 3);
  const auto b = Scalar<PrimeField>::from_int(PrimeField(103), 3);
  CHECK_THROWS_WITH_AS(a + b, "field mismatch", FieldMismatch);
  CHECK((a * a).value() == 9);
  const auto m1 = Matrix<PrimeField>::identity(PrimeField(101), 2);
  const auto m2 = Matrix<PrimeField>::identity(PrimeField(103), 2);
  CHECK_THROWS_WITH_AS(m1 * m2, "field mismatch", FieldMismatch);
  CHECK_THROWS_AS(kronecker(m1, m2), FieldMismatch);
}

TEST_CASE("rank basics") {
  PrimeField f;
  CHECK(rank(Matrix<PrimeField>::identity(f, 3)) == 3);
  CHECK(rank(Matrix<PrimeField>(f, 4, 6)) == 0);
  CHECK(rank(Matrix<PrimeField>(f, 0, 5)) == 0);
}

TEST_CASE("rank agrees with naive oracle") {
  std::mt19937_64 rng(101);
  PrimeField f(101);
  for (int it = 0; it < 50; ++it) {
    const auto a = it % 2 ? oracle::random_dense(rng, 20, 20, 101, 0.3)
                          : oracle::random_low_rank(rng, 20, 20, 1 + rng() % 20, 101);
    const auto m = oracle::to_matrix(f, a);
    const auto r = rank(m);
    CHECK(r == oracle::naive_rank(a, 101));
    CHECK(rank(m.transpose()) == r);
  }
}

TEST_CASE("rank on block-sparse and very sparse matrices") {
  std::mt19937_64 rng(5);
  PrimeField f(101);
  for (int it = 0; it < 30; ++it) {
    const auto a = oracle::random_dense(rng, 40, 35, 101, 0.04);
    CHECK(rank(oracle::to_matrix(f, a)) == oracle::naive_rank(a, 101));
  }
}

TEST_CASE("kernel basis") {
  PrimeField f5(5);
  const auto row = Matrix<PrimeField>::from_ints(f5, {{1, 1}});
  const auto k = kernel_basis(row);
  REQUIRE(k.cols() == 1);
  CHECK(k.at(0, 0) == 4);
  CHECK(k.at(1, 0) == 1);
  CHECK(kernel_basis(Matrix<PrimeField>::identity(f5, 4)).cols() == 0);

  std::mt19937_64 rng(15);
  PrimeField f(101);
  for (int it = 0; it < 25; ++it) {
    const auto a = it % 3 ? oracle::random_low_rank(rng, 15, 25, rng() % 16, 101) : oracle::random_dense(rng, 15, 25, 101, 0.1);
    const auto m = oracle::to_matrix(f, a);
    const auto kb = kernel_basis(m);
    const auto r = oracle::naive_rank(a, 101);
    CHECK(kb.cols() == 25 - r);
    CHECK((m * kb).is_zero());
    CHECK(rank(kb) == kb.cols());
    CHECK(kernel_basis(m) == kb);
  }
}

TEST_CASE("storage does not change results") {
  std::mt19937_64 rng(3);
  PrimeField f(101);
  const auto a = oracle::random_dense(rng, 30, 30, 101, 0.05);
  const auto sparse = oracle::to_matrix(f, a);
  std::vector<SparseVec<PrimeField>> cols = sparse.columns();
  // pad to a dense-looking but equal matrix via sum with a zero dense matrix
  const auto dense = sparse + Matrix<PrimeField>::from_dense(f, 30, 30, std::vector<std::uint32_t>(900, 0));
  CHECK(dense == sparse);
  CHECK(rank(dense) == rank(sparse));
  CHECK(kernel_basis(dense) == kernel_basis(sparse));
}

TEST_CASE("kronecker") {
  PrimeField f(31);
  CHECK(kronecker(Matrix<PrimeField>::identity(f, 2), Matrix<PrimeField>::identity(f, 3)) == Matrix<PrimeField>::identity(f, 6));
  std::mt19937_64 rng(31);
  for (int it = 0; it < 20; ++it) {
    const auto a = oracle::to_matrix(f, oracle::random_low_rank(rng, 3, 4, rng() % 4, 31));
    const auto b = oracle::to_matrix(f, oracle::random_low_rank(rng, 2, 5, rng() % 3, 31));
    CHECK(rank(kronecker(a, b)) == rank(a) * rank(b));
    CHECK(kronecker(a, Matrix<PrimeField>(f, 2, 5)).is_zero());
  }
}

TEST_CASE("linear solver") {
  std::mt19937_64 rng(9);
  PrimeField f(101);
  for (int it = 0; it < 20; ++it) {
    const auto m = oracle::to_matrix(f, oracle::random_low_rank(rng, 12, 8, 1 + rng() % 8, 101));
    LinearSolver<PrimeField> solver(m);
    CHECK(solver.rank() == rank(m));
    // b = m * x for random x is solvable and reproduces b
    std::vector<std::uint32_t> x(8);
    for (auto& v : x) v = static_cast<std::uint32_t>(rng() % 101);
    SparseVec<PrimeField> b;
    for (std::size_t i = 0; i < 12; ++i) {
      std::uint32_t acc = 0;
      for (std::size_t j = 0; j < 8; ++j) acc = f.add(acc, f.mul(m.at(i, j), x[j]));
      if (acc) b.push_back({static_cast<std::uint32_t>(i), acc});
    }
    const auto sol = solver.solve(b);
    REQUIRE(sol.has_value());
    for (std::size_t i = 0; i < 12; ++i) {
      std::uint32_t acc = 0;
      for (std::size_t j = 0; j < 8; ++j) acc = f.add(acc, f.mul(m.at(i, j), (*sol)[j]));
      std::uint32_t want = 0;
      for (const auto& e : b)
        if (e.first == i) want = e.second;
      CHECK(acc == want);
    }
    CHECK(in_column_span(m, b));
  }
  const auto m = Matrix<PrimeField>::from_ints(f, {{1, 0}, {0, 0}});
  LinearSolver<PrimeField> s(m);
  CHECK_FALSE(s.solve({{1, 1}}).has_value());
}

TEST_CASE("rationals linear algebra") {
  Rationals q;
  const auto m = Matrix<Rationals>::from_ints(q, {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(m) == 2);
  const auto k = kernel_basis(m);
  CHECK(k.cols() == 1);
  CHECK((m * k).is_zero());
}

TEST_CASE("wedge index") {
  WedgeIndex w(5, 2);
  CHECK(w.size() == 10);
  CHECK(WedgeIndex(4, 0).size() == 1);
  CHECK(WedgeIndex(3, 5).size() == 0);
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(w.index_of(w.tuple(i)) == i);
  for (std::size_t i = 1; i < w.size(); ++i) {
    const auto a = w.tuple(i - 1), b = w.tuple(i);
    CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
  }
  WedgeIndex w3(7, 3);
  CHECK(w3.size() == 35);
  for (std::size_t i = 0; i < w3.size(); ++i) CHECK(w3.index_of(w3.tuple(i)) == i);
}

TEST_CASE("wedge map") {
  PrimeField f(101);
  std::mt19937_64 rng(44);
  const auto a = oracle::random_dense(rng, 4, 4, 101);
  const auto m = oracle::to_matrix(f, a);
  CHECK(wedge_map(1, m) == m);
  const auto w2 = wedge_map(2, m);
  WedgeIndex idx(4, 2);
  for (std::size_t I = 0; I < idx.size(); ++I) {
    for (std::size_t J = 0; J < idx.size(); ++J) {
      const auto ti = idx.tuple(I), tj = idx.tuple(J);
      oracle::Dense minor{{a[tj[0]][ti[0]], a[tj[0]][ti[1]]}, {a[tj[1]][ti[0]], a[tj[1]][ti[1]]}};
      CHECK(w2.at(J, I) == oracle::leibniz_det(minor, 101));
    }
  }
  const auto c = Matrix<PrimeField>::identity(f, 4).scaled(7);
  const auto top = wedge_map(4, c);
  REQUIRE(top.rows() == 1);
  CHECK(top.at(0, 0) == f.pow(7, 4));
  const auto beyond = wedge_map(5, c);
  CHECK(beyond.rows() == 0);
  CHECK(beyond.cols() == 0);
  // functoriality: wedge(fg) = wedge(f) wedge(g)
  const auto b = oracle::to_matrix(f, oracle::random_dense(rng, 4, 4, 101));
  CHECK(wedge_map(3, m * b) == wedge_map(3, m) * wedge_map(3, b));
}
