#include <doctest.h>

#include <cmath>

#include "epsolve/arnoldi.hpp"
#include "epsolve/diagnostics.hpp"
#include "epsolve/errors.hpp"
#include "oracles.hpp"

using namespace epsolve;

namespace {

SparseMatrix identity_csr(std::size_t n) {
  std::vector<SparseMatrix::Triplet> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return SparseMatrix::from_triplets(n, std::move(t));
}

double frobenius_of(const SparseMatrix& a) {
  double acc = 0.0;
  for (double v : a.values()) acc += v * v;
  return std::sqrt(acc);
}

// max |(A V_k - V_{k+1} H)_{ij}|
double relation_defect(const SparseMatrix& a, const ArnoldiState& st, std::size_t k) {
  double worst = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    Vector av = matvec(a, st.basis[j]);
    for (std::size_t i = 0; i < st.h_cols[j].size(); ++i)
      axpy(-st.h_cols[j][i], st.basis[i], av);
    for (double v : av) worst = std::max(worst, std::abs(v));
  }
  return worst;
}

double basis_orthogonality(const ArnoldiState& st) {
  double worst = 0.0;
  for (std::size_t i = 0; i < st.basis.size(); ++i)
    for (std::size_t j = 0; j < st.basis.size(); ++j) {
      const double d = dot(st.basis[i], st.basis[j]) - (i == j ? 1.0 : 0.0);
      worst = std::max(worst, std::abs(d));
    }
  return worst;
}

}  // namespace

TEST_CASE("arnoldi_start: normalization and trivial signal") {
  auto st = arnoldi_start({0.0, 3.0, 0.0});
  REQUIRE(st.has_value());
  CHECK(st->basis[0] == Vector{0.0, 1.0, 0.0});

  CHECK_FALSE(arnoldi_start({0.0, 0.0}).has_value());

  auto rng = oracles::make_rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    Vector r0(8);
    for (double& v : r0) v = oracles::uniform(rng, -5.0, 5.0);
    auto s = arnoldi_start(r0);
    REQUIRE(s.has_value());
    CHECK(norm2(s->basis[0]) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("arnoldi_step: identity operator breaks down at step 1") {
  auto a = identity_csr(4);
  // r0 with an exactly representable normalization (norm 2), so the
  // exact-zero breakdown comparison fires
  auto st = arnoldi_start(Vector{1.0, 1.0, 1.0, 1.0});
  REQUIRE(st.has_value());
  arnoldi_step(*st, a, false);
  CHECK(st->h_cols[0][0] == 1.0);
  CHECK(st->h_subdiag(0) == 0.0);
  CHECK(st->breakdown);
  CHECK_THROWS_AS(arnoldi_step(*st, a, false), contract_error);

  // general r0: normalization rounds, K_2 still degenerates numerically
  auto st2 = arnoldi_start(Vector{1.0, 2.0, 0.0, -1.0});
  REQUIRE(st2.has_value());
  arnoldi_step(*st2, a, false);
  CHECK(st2->h_cols[0][0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(st2->h_subdiag(0) <= 1e-14);
}

TEST_CASE("arnoldi_step: rotation-like operator, one hand-computed step") {
  auto a = SparseMatrix::from_triplets(2, {{0, 1, -1.0}, {1, 0, 1.0}});
  auto st = arnoldi_start(Vector{1.0, 0.0});
  REQUIRE(st.has_value());
  arnoldi_step(*st, a, false);
  CHECK(st->h_cols[0][0] == 0.0);                       // h_11
  CHECK(st->h_subdiag(0) == doctest::Approx(1.0));      // h_21
  CHECK(std::abs(st->basis[1][1]) == doctest::Approx(1.0));  // v_2 = +-e_2
  CHECK(std::abs(st->basis[1][0]) <= 1e-15);
}

TEST_CASE("arnoldi on symmetric operators produces tridiagonal H") {
  auto rng = oracles::make_rng(20);
  auto a = oracles::random_sparse(20, 0.3, rng, /*symmetric=*/true);
  auto st = arnoldi_start(Vector(20, 1.0));
  REQUIRE(st.has_value());
  const std::size_t k = 12;
  for (std::size_t j = 0; j < k; ++j) arnoldi_step(*st, a, true);
  const DenseMatrix h = st->hessenberg(k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i + 1 < j; ++i)  // above the first superdiagonal
      CHECK(std::abs(h(i, j)) <= 1e-12);
}

TEST_CASE("arnoldi relation and orthogonality invariants") {
  auto rng = oracles::make_rng(300);
  auto a = oracles::random_sparse(60, 0.1, rng);
  const double anorm = frobenius_of(a);
  for (const bool reorth : {false, true}) {
    auto st = arnoldi_start(Vector(60, 1.0));
    REQUIRE(st.has_value());
    for (int j = 0; j < 30 && !st->breakdown; ++j) arnoldi_step(*st, a, reorth);
    CHECK(relation_defect(a, *st, st->steps()) <= 1e-12 * anorm);
    for (const Vector& v : st->basis)
      CHECK(norm2(v) == doctest::Approx(1.0).epsilon(1e-12));
    if (reorth) CHECK(basis_orthogonality(*st) <= 1e-12);
    CHECK(st->h_subdiag(st->steps() - 1) >= 0.0);
  }
}

TEST_CASE("frobenius identity holds while the basis is orthonormal") {
  auto rng = oracles::make_rng(17);
  auto a = oracles::random_sparse(40, 0.2, rng);
  auto st = arnoldi_start(Vector(40, 1.0));
  REQUIRE(st.has_value());
  std::vector<Vector> av;
  for (int j = 0; j < 20; ++j) {
    av.push_back(matvec(a, st->basis[j]));
    arnoldi_step(*st, a, true);
  }
  CHECK(frobenius_identity_check(st->hessenberg(20), av) <= 1e-10);
}

TEST_CASE("lanczos matches arnoldi coefficients on symmetric operators") {
  auto rng = oracles::make_rng(9);
  auto a = oracles::random_sparse(15, 0.4, rng, /*symmetric=*/true);
  Vector r0(15);
  for (double& v : r0) v = oracles::uniform(rng, -1.0, 1.0);

  auto arn = arnoldi_start(r0);
  auto lan = lanczos_start(r0);
  REQUIRE(arn.has_value());
  REQUIRE(lan.has_value());
  for (int j = 0; j < 5; ++j) {
    arnoldi_step(*arn, a, false);
    lanczos_step(*lan, a);
  }
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(lan->alpha[j] == doctest::Approx(arn->h_cols[j][j]).epsilon(1e-10));
    CHECK(lan->beta[j] == doctest::Approx(arn->h_subdiag(j)).epsilon(1e-10));
  }
}

TEST_CASE("lanczos: diag(1,2) hand values") {
  auto a = SparseMatrix::from_triplets(2, {{0, 0, 1.0}, {1, 1, 2.0}});
  const double inv = 1.0 / std::sqrt(2.0);
  auto st = lanczos_start(Vector{inv, inv});
  REQUIRE(st.has_value());
  lanczos_step(*st, a);
  CHECK(st->alpha[0] == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(st->beta[0] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("lanczos: eigenvector start breaks down immediately") {
  auto a = SparseMatrix::from_triplets(2, {{0, 0, 1.0}, {1, 1, 2.0}});
  auto st = lanczos_start(Vector{1.0, 0.0});
  REQUIRE(st.has_value());
  lanczos_step(*st, a);
  CHECK(st->beta[0] == 0.0);
  CHECK(st->breakdown);
  CHECK_THROWS_AS(lanczos_step(*st, a), contract_error);
}
