#include "mertens/lattice.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <random>
#include <sstream>

using namespace mertens;

TEST_CASE("gram-schmidt on simple bases") {
  GramSchmidtData g = gram_schmidt(LatticeBasis::identity(3));
  for (int i = 0; i < 3; ++i) {
    CHECK(g.bstar_norms_sq[i].to_double() == 1.0);
    for (int j = 0; j < i; ++j) CHECK(g.mu[i][j].to_double() == 0.0);
  }

  g = gram_schmidt(LatticeBasis::from_ints({{1, 1}, {1, 0}}));
  CHECK(g.bstar_norms_sq[0].to_double() == 2.0);
  CHECK(g.mu[1][0].to_double() == 0.5);
  CHECK(g.bstar_norms_sq[1].to_double() == 0.5);

  g = gram_schmidt(LatticeBasis::from_ints({{2, 0}, {1, 3}}));
  CHECK(g.mu[1][0].to_double() == 0.5);
  CHECK(g.bstar_norms_sq[0].to_double() == 4.0);
  CHECK(g.bstar_norms_sq[1].to_double() == 9.0);
}

TEST_CASE("gram-schmidt rejects dependent rows") {
  CHECK_THROWS_WITH_AS(gram_schmidt(LatticeBasis::from_ints({{1, 2}, {2, 4}})),
                       doctest::Contains("rank deficiency"), Error);
}

TEST_CASE("gso identity on random bases") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    size_t m = 2 + trial % 19;
    LatticeBasis b = oracles::random_square_basis(rng, m, -30, 30);
    GramSchmidtData g = gram_schmidt(b);
    auto gram = gram_matrix(b);
    // <b_i, b_j> = sum_k mu_ik mu_jk ||b_k*||^2
    for (size_t i = 0; i < m; ++i) {
      for (size_t j = 0; j <= i; ++j) {
        double expect = mpz_class(gram[i][j]).get_d();
        double got = 0;
        for (size_t k = 0; k <= j; ++k)
          got += g.mu[i][k].to_double() * g.mu[j][k].to_double() *
                 g.bstar_norms_sq[k].to_double();
        REQUIRE(got == doctest::Approx(expect).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("gso recomputation at doubled precision agrees") {
  std::mt19937_64 rng(8);
  LatticeBasis b = oracles::random_square_basis(rng, 12, -50, 50);
  GramSchmidtData g1 = gram_schmidt(b, 128);
  GramSchmidtData g2 = gram_schmidt(b, 256);
  for (size_t i = 0; i < 12; ++i) {
    double rel = std::abs(g1.bstar_norms_sq[i].to_double() / g2.bstar_norms_sq[i].to_double() - 1);
    CHECK(rel < 1e-18);
  }
}

TEST_CASE("determinant basics") {
  CHECK(determinant_exact(LatticeBasis::identity(4)) == 1);
  CHECK(determinant_exact(LatticeBasis::from_ints({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}})) == 30);
  // row swaps flip the sign but |det| is reported
  CHECK(determinant_exact(LatticeBasis::from_ints({{0, 1}, {1, 0}})) == 1);
  // non-square: sqrt of the Gram determinant
  Real d = determinant(LatticeBasis::from_ints({{3, 0, 4}}));
  CHECK(d.to_double() == doctest::Approx(5.0));
}

TEST_CASE("profile") {
  BasisProfile p = profile(LatticeBasis::identity(5));
  for (double ln : p.log_norms) CHECK(ln == 0.0);
  CHECK(p.normalized_first == 0.0);

  p = profile(LatticeBasis::from_ints({{4, 0}, {0, 1}}));
  CHECK(p.log_norms[0] == doctest::Approx(2.0));
  CHECK(p.log_norms[1] == doctest::Approx(0.0));
  CHECK(p.normalized_first == doctest::Approx(1.0));
}

TEST_CASE("profile log_det equals log2 determinant") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    LatticeBasis b = oracles::random_square_basis(rng, 3 + trial % 10, -20, 20);
    BasisProfile p = profile(b);
    double want = log2(determinant(b), 64).to_double();
    CHECK(std::abs(p.log_det - want) <= std::abs(want) * 1e-6 + 1e-6);
  }
}

TEST_CASE("basis serialization round trip") {
  std::mt19937_64 rng(10);
  LatticeBasis b = oracles::random_square_basis(rng, 7, -1000000, 1000000);
  std::stringstream ss;
  dump_basis(ss, b);
  LatticeBasis redo = load_basis(ss, "<memory>");
  CHECK(redo == b);

  std::stringstream bad("2 3\n1 2 3\n4 5\n");
  CHECK_THROWS_AS(load_basis(bad, "<memory>"), Error);
  std::stringstream bad2("3 2\n1 2\n3 4\n5 6\n");
  CHECK_THROWS_WITH_AS(load_basis(bad2, "<memory>"), doctest::Contains("bad dimensions"), Error);
}
