#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "hh/detail/sha256.hpp"
#include "hh/fields.hpp"
#include "hh/linalg.hpp"
#include "hh/matrix.hpp"
#include "reference.hpp"

using namespace hh;

namespace {

std::vector<std::vector<long long>> random_grid(std::mt19937_64& rng, int rows, int cols,
                                                long long lo, long long hi) {
  std::uniform_int_distribution<long long> d(lo, hi);
  std::vector<std::vector<long long>> g(static_cast<std::size_t>(rows),
                                        std::vector<long long>(static_cast<std::size_t>(cols)));
  for (auto& row : g)
    for (auto& x : row) x = d(rng);
  return g;
}

template <typename F>
DenseMatrix<F> dense_from_grid(F field, const std::vector<std::vector<long long>>& g) {
  DenseMatrix<F> m(field, static_cast<int>(g.size()), static_cast<int>(g[0].size()));
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g[i].size(); ++j)
      m.set(static_cast<int>(i), static_cast<int>(j), field.from_int(g[i][j]));
  return m;
}

Gf2Matrix gf2_from_grid(const std::vector<std::vector<long long>>& g) {
  Gf2Matrix m({}, static_cast<int>(g.size()), static_cast<int>(g[0].size()));
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g[i].size(); ++j)
      m.set(static_cast<int>(i), static_cast<int>(j), static_cast<int>(g[i][j] & 1));
  return m;
}

template <typename Mat>
bool is_zero_matrix(const Mat& m) {
  auto field = m.field();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!field.is_zero(m.get(i, j))) return false;
  return true;
}

}  // namespace

TEST_CASE("field spec parsing") {
  CHECK(FieldSpec::parse("gf2").kind == FieldSpec::Kind::gf2);
  CHECK(FieldSpec::parse("q").kind == FieldSpec::Kind::rational);
  auto f = FieldSpec::parse("gfp:13");
  CHECK(f.kind == FieldSpec::Kind::gfp);
  CHECK(f.p == 13);
  CHECK(f.to_string() == "gfp:13");
  CHECK(f.file_token() == "gfp13");
  CHECK(FieldSpec::parse("gfp:65521").p == 65521);  // largest prime below 2^16
  CHECK_THROWS_AS(FieldSpec::parse("gfp:65537"), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::parse("gfp:9"), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::parse("gfp:1"), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::parse("gf3"), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::parse(""), std::invalid_argument);
  CHECK(FieldSpec::parse("gfp:2") == FieldSpec::gfp(2));
  CHECK(!(FieldSpec::gf2() == FieldSpec::gfp(2)));  // distinct code paths on purpose
}

TEST_CASE("prime field scalar arithmetic") {
  Gfp f(7);
  for (std::uint32_t a = 1; a < 7; ++a) {
    CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.add(a, f.neg(a)) == 0);
  }
  CHECK(f.from_int(-1) == 6);
  CHECK(f.from_int(15) == 1);
  CHECK_THROWS_AS(f.inv(0), std::domain_error);

  Gfp big(65521);
  for (std::uint32_t a : {2u, 1000u, 65520u}) CHECK(big.mul(a, big.inv(a)) == 1);

  Rational q;
  CHECK(q.inv(q.from_int(-4)) == Rational::Value(-1) / 4);
  CHECK_THROWS_AS(q.inv(q.zero()), std::domain_error);
}

TEST_CASE("packed GF(2) matrix entry and row ops") {
  Gf2Matrix m({}, 3, 130);  // spans three words per row
  m.set(0, 0, 1);
  m.set(0, 129, 1);
  m.set(1, 64, 1);
  CHECK(m.get(0, 129) == 1);
  CHECK(m.get(0, 128) == 0);
  CHECK(m.row_first_set(0) == 0);
  CHECK(m.row_first_set(0, 1) == 129);
  CHECK(m.row_first_set(1) == 64);
  CHECK(m.row_first_set(2) == -1);
  m.row_axpy(1, 0, 1);
  CHECK(m.get(1, 0) == 1);
  CHECK(m.get(1, 64) == 1);
  CHECK(m.get(1, 129) == 1);
  m.row_swap(1, 2);
  CHECK(m.get(1, 64) == 0);
  CHECK(m.get(2, 64) == 1);
  auto t = m.transpose();
  CHECK(t.rows() == 130);
  CHECK(t.get(129, 0) == 1);
  CHECK(t.get(0, 2) == 1);
}

TEST_CASE("rank: packed GF(2) agrees with the naive mod-2 reference") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 40; ++t) {
    int rows = 1 + static_cast<int>(rng() % 64), cols = 1 + static_cast<int>(rng() % 64);
    auto g = random_grid(rng, rows, cols, 0, 1);
    CHECK(rank(gf2_from_grid(g)) == refimpl::rank_mod(g, 2));
  }
}

TEST_CASE("rank: dense GF(p) agrees with the naive reference") {
  std::mt19937_64 rng(102);
  for (int t = 0; t < 30; ++t) {
    int rows = 1 + static_cast<int>(rng() % 20), cols = 1 + static_cast<int>(rng() % 20);
    auto g = random_grid(rng, rows, cols, -10, 10);
    CHECK(rank(dense_from_grid(Gfp(5), g)) == refimpl::rank_mod(g, 5));
    CHECK(rank(dense_from_grid(Gfp(3), g)) == refimpl::rank_mod(g, 3));
  }
}

TEST_CASE("rank: rational elimination agrees with fraction-free Bareiss") {
  std::mt19937_64 rng(103);
  for (int t = 0; t < 25; ++t) {
    int rows = 1 + static_cast<int>(rng() % 15), cols = 1 + static_cast<int>(rng() % 15);
    auto g = random_grid(rng, rows, cols, -6, 6);
    std::vector<std::vector<refimpl::Int>> gi(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) gi[i].assign(g[i].begin(), g[i].end());
    std::vector<std::vector<refimpl::Rat>> gr(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) gr[i].assign(g[i].begin(), g[i].end());
    int expected = refimpl::bareiss_rank(gi);
    CHECK(refimpl::rank_rat(gr) == expected);
    CHECK(rank(dense_from_grid(Rational{}, g)) == expected);
    // ranks over prime fields can only drop (torsion), never exceed the Q-rank
    CHECK(rank(dense_from_grid(Gfp(2), g)) <= expected);
    CHECK(rank(dense_from_grid(Gfp(3), g)) <= expected);
  }
}

TEST_CASE("kernel basis spans the null space") {
  std::mt19937_64 rng(104);
  for (int t = 0; t < 20; ++t) {
    int rows = 1 + static_cast<int>(rng() % 12), cols = 1 + static_cast<int>(rng() % 12);
    auto g = random_grid(rng, rows, cols, -4, 4);

    auto check_kernel = [&](auto m) {
      int r = rank(m);
      auto k = kernel_basis(m);
      CHECK(k.cols() == m.cols() - r);
      CHECK(is_zero_matrix(matrix_product(m, k)));
      CHECK(rank(k) == k.cols());
    };
    check_kernel(dense_from_grid(Gfp(5), g));
    check_kernel(dense_from_grid(Rational{}, g));
    check_kernel(gf2_from_grid(g));
  }
}

TEST_CASE("solve finds solutions exactly when consistent") {
  std::mt19937_64 rng(105);
  Gfp f(11);
  for (int t = 0; t < 25; ++t) {
    int rows = 1 + static_cast<int>(rng() % 10), cols = 1 + static_cast<int>(rng() % 10);
    auto m = dense_from_grid(f, random_grid(rng, rows, cols, -8, 8));
    std::vector<Gfp::Value> x0(static_cast<std::size_t>(cols));
    for (auto& v : x0) v = f.from_int(static_cast<long long>(rng() % 11));
    auto b = matrix_apply(m, x0);
    auto x = solve(m, b);
    REQUIRE(x.has_value());
    CHECK(matrix_apply(m, *x) == b);
  }
  // inconsistent system: 0 = 1
  DenseMatrix<Gfp> z(f, 2, 2);
  z.set(0, 0, 1);
  std::vector<Gfp::Value> b{0, 1};
  CHECK(!solve(z, b).has_value());
  CHECK_THROWS_AS(solve(z, std::vector<Gfp::Value>{1}), std::invalid_argument);
}

TEST_CASE("solver factorization matches one-shot solves") {
  std::mt19937_64 rng(106);
  for (int t = 0; t < 10; ++t) {
    int rows = 2 + static_cast<int>(rng() % 30), cols = 2 + static_cast<int>(rng() % 30);
    auto g = random_grid(rng, rows, cols, 0, 1);
    Gf2Matrix m = gf2_from_grid(g);
    Solver<Gf2Matrix> s(m);
    CHECK(s.rank() == rank(m));
    for (int q = 0; q < 8; ++q) {
      std::vector<int> b(static_cast<std::size_t>(rows));
      for (auto& v : b) v = static_cast<int>(rng() & 1);
      auto via_solver = s.solve(b);
      auto one_shot = solve(m, b);
      CHECK(via_solver.has_value() == one_shot.has_value());
      if (via_solver) CHECK(matrix_apply(m, *via_solver) == b);
    }
  }
}

TEST_CASE("reduce_columns_tracked: reduced = m * ops with invertible ops") {
  std::mt19937_64 rng(107);
  auto run = [&](auto field, long long lo, long long hi) {
    for (int t = 0; t < 12; ++t) {
      int rows = 1 + static_cast<int>(rng() % 10), cols = 1 + static_cast<int>(rng() % 10);
      auto g = random_grid(rng, rows, cols, lo, hi);
      auto m = dense_from_grid(field, g);
      auto red = reduce_columns_tracked(m);
      CHECK(red.reduced == matrix_product(m, red.ops));
      CHECK(rank(red.ops) == cols);
      CHECK(red.rank == rank(m));
      // column echelon: zero columns trail, pivot rows strictly increase
      int last_pivot = -1;
      for (int j = 0; j < red.rank; ++j) {
        int pivot = -1;
        for (int i = 0; i < rows; ++i)
          if (!field.is_zero(red.reduced.get(i, j))) {
            pivot = i;
            break;
          }
        REQUIRE(pivot > last_pivot);
        last_pivot = pivot;
      }
      for (int j = red.rank; j < cols; ++j)
        for (int i = 0; i < rows; ++i) CHECK(field.is_zero(red.reduced.get(i, j)));
    }
  };
  run(Gfp(7), -9, 9);
  run(Rational{}, -5, 5);

  for (int t = 0; t < 12; ++t) {
    int rows = 1 + static_cast<int>(rng() % 40), cols = 1 + static_cast<int>(rng() % 40);
    auto g = random_grid(rng, rows, cols, 0, 1);
    auto m = gf2_from_grid(g);
    auto red = reduce_columns_tracked(m);
    CHECK(red.reduced == matrix_product(m, red.ops));
    CHECK(rank(red.ops) == cols);
    CHECK(red.rank == rank(m));
  }
}

TEST_CASE("packed and dense mod-2 matrix products agree") {
  std::mt19937_64 rng(108);
  for (int t = 0; t < 10; ++t) {
    int n = 1 + static_cast<int>(rng() % 20), k = 1 + static_cast<int>(rng() % 20),
        c = 1 + static_cast<int>(rng() % 20);
    auto ga = random_grid(rng, n, k, 0, 1), gb = random_grid(rng, k, c, 0, 1);
    auto packed = matrix_product(gf2_from_grid(ga), gf2_from_grid(gb));
    auto dense = matrix_product(dense_from_grid(Gfp(2), ga), dense_from_grid(Gfp(2), gb));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < c; ++j)
        CHECK(static_cast<std::uint32_t>(packed.get(i, j)) == dense.get(i, j));

    std::vector<int> x(static_cast<std::size_t>(c));
    for (auto& v : x) v = static_cast<int>(rng() & 1);
    auto y = matrix_apply(packed, x);  // packed fast path
    std::vector<Gfp::Value> xd(x.begin(), x.end());
    auto yd = matrix_apply(dense_from_grid(Gfp(2), ga), matrix_apply(dense_from_grid(Gfp(2), gb), xd));
    for (std::size_t i = 0; i < y.size(); ++i) CHECK(static_cast<Gfp::Value>(y[i]) == yd[i]);
  }
}

TEST_CASE("sha256 known vectors") {
  CHECK(detail::sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(detail::sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(detail::sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}
