#include "mertens/reduction.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <random>

using namespace mertens;

namespace {

bool is_identity(const std::vector<std::vector<mpz_class>>& u) {
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = 0; j < u.size(); ++j)
      if (u[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

void check_transform(const LatticeBasis& original, const LatticeBasis& reduced,
                     const TransformationLog& log) {
  size_t m = original.m(), n = original.n();
  REQUIRE(log.unimodular.size() == m);
  mpz_class det = bareiss_determinant(log.unimodular);
  CHECK((det == 1 || det == -1));
  for (size_t i = 0; i < m; ++i) {
    for (size_t col = 0; col < n; ++col) {
      mpz_class s = 0;
      for (size_t k = 0; k < m; ++k) s += log.unimodular[i][k] * original.rows[k][col];
      REQUIRE(s == reduced.rows[i][col]);
    }
  }
}

void check_size_reduced(const LatticeBasis& b, double bound = 0.5 + 0x1p-10) {
  GramSchmidtData g = gram_schmidt(b, 2 * default_gso_precision(b));
  for (size_t i = 0; i < b.m(); ++i)
    for (size_t j = 0; j < i; ++j) REQUIRE(std::abs(g.mu[i][j].to_double()) <= bound);
}

void check_lovasz(const LatticeBasis& b, double delta) {
  GramSchmidtData g = gram_schmidt(b, 2 * default_gso_precision(b));
  for (size_t k = 1; k < b.m(); ++k) {
    double mu = g.mu[k][k - 1].to_double();
    double lhs = g.bstar_norms_sq[k].to_double() + mu * mu * g.bstar_norms_sq[k - 1].to_double();
    REQUIRE(lhs >= delta * g.bstar_norms_sq[k - 1].to_double() * (1 - 1e-9));
  }
}

}  // namespace

TEST_CASE("size_reduce hand examples") {
  // already reduced: unchanged, U = I
  LatticeBasis b = LatticeBasis::from_ints({{5, 0}, {1, 7}});
  auto [red, log] = size_reduce(b);
  CHECK(red == b);
  CHECK(is_identity(log.unimodular));

  // mu = 3/2: subtract 2 copies -> b2 = (0, -1), |mu| = 1/2 after
  b = LatticeBasis::from_ints({{1, 1}, {2, 1}});
  std::tie(red, log) = size_reduce(b);
  CHECK(red.rows[1] == std::vector<mpz_class>{0, -1});
  check_transform(b, red, log);
  GramSchmidtData g = gram_schmidt(red);
  CHECK(std::abs(g.mu[1][0].to_double()) == 0.5);
}

TEST_CASE("size_reduce property on random bases") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 25; ++t) {
    LatticeBasis b = oracles::random_square_basis(rng, 10, -40, 40);
    auto [red, log] = size_reduce(b);
    check_transform(b, red, log);
    check_size_reduced(red);
  }
}

TEST_CASE("lll basics") {
  ReductionParams params;
  auto [red, log] = lll(LatticeBasis::identity(4), params);
  CHECK(red == LatticeBasis::identity(4));

  LatticeBasis b = LatticeBasis::from_ints({{1, 1}, {0, 2}});
  std::tie(red, log) = lll(b, params);
  check_transform(b, red, log);
  check_size_reduced(red);
  check_lovasz(red, params.delta);
  CHECK(red.row_norm_sq(0) <= 2);
  CHECK(determinant_exact(red) == determinant_exact(b));
}

TEST_CASE("lll finds the shortest vector in dim 2") {
  LatticeBasis b = LatticeBasis::from_ints({{5, 0}, {3, 1}});
  auto [red, log] = lll(b);
  oracles::SvpOracle oracle(b);
  CHECK(red.row_norm_sq(0) == oracle.shortest());
  check_transform(b, red, log);
}

TEST_CASE("lll invariants on random bases") {
  std::mt19937_64 rng(22);
  ReductionParams params;
  for (int t = 0; t < 30; ++t) {
    size_t m = 2 + t % 14;
    LatticeBasis b = oracles::random_square_basis(rng, m, -25, 25);
    auto [red, log] = lll(b, params);
    check_transform(b, red, log);
    check_size_reduced(red);
    check_lovasz(red, params.delta);
    CHECK(determinant_exact(red) == determinant_exact(b));
  }
}

TEST_CASE("bkz beta=2 behaves like lll") {
  std::mt19937_64 rng(23);
  LatticeBasis b = oracles::random_square_basis(rng, 8, -30, 30);
  ReductionParams params;
  params.beta_start = 2;
  params.beta_end = 2;
  BkzResult res = bkz_progressive(b, params);
  check_transform(b, res.basis, res.transform);
  check_size_reduced(res.basis);
  check_lovasz(res.basis, params.delta);
  CHECK(res.tours.size() == 1);
}

TEST_CASE("bkz reaches the shortest vector on random dim-12 bases") {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 5; ++t) {
    LatticeBasis b = oracles::random_square_basis(rng, 12, -15, 15);
    ReductionParams params;
    params.beta_start = 2;
    params.beta_end = 12;
    BkzResult res = bkz_progressive(b, params);
    check_transform(b, res.basis, res.transform);
    oracles::SvpOracle oracle(b);
    CHECK(res.basis.row_norm_sq(0) == oracle.shortest());
    // ||b_1|| never increases across tours
    for (size_t i = 1; i < res.tours.size(); ++i)
      CHECK(res.tours[i].b1_norm_sq <= res.tours[i - 1].b1_norm_sq);
    CHECK(determinant_exact(res.basis) == determinant_exact(b));
  }
}

TEST_CASE("parameter validation") {
  LatticeBasis b = LatticeBasis::identity(4);
  ReductionParams params;
  params.delta = 1.5;
  CHECK_THROWS_AS(lll(b, params), Error);
  params = ReductionParams{};
  params.beta_start = 5;
  params.beta_end = 3;
  CHECK_THROWS_AS(bkz_progressive(b, params), Error);
  params = ReductionParams{};
  params.beta_end = 10;
  CHECK_THROWS_WITH_AS(bkz_progressive(b, params), doctest::Contains("beta_end"), Error);
}

TEST_CASE("per-block SVP timeout skips blocks but keeps the tour valid") {
  std::mt19937_64 rng(25);
  LatticeBasis b = oracles::random_square_basis(rng, 14, -30, 30);
  ReductionParams params;
  params.beta_start = 6;
  params.beta_end = 12;
  params.svp_node_cap = 2;  // effectively disables the oracle
  BkzResult res = bkz_progressive(b, params);
  check_transform(b, res.basis, res.transform);
  check_size_reduced(res.basis);
  CHECK(determinant_exact(res.basis) == determinant_exact(b));
  for (size_t i = 1; i < res.tours.size(); ++i)
    CHECK(res.tours[i].b1_norm_sq <= res.tours[i - 1].b1_norm_sq);
}
