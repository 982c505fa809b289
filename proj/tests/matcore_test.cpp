// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rica/errors.hpp"
#include "rica/matcore/dense_matrix.hpp"
#include "rica/matcore/lu.hpp"
#include "rica/matcore/parallel.hpp"
#include "rica/matcore/pca.hpp"
#include "rica/matcore/rng.hpp"
#include "rica/matcore/sym_eig.hpp"
#include "support/oracles.hpp"

using rica::DenseMatrix;
using rica::Error;
using rica::ErrorCode;
using rica::RngStream;

namespace {

DenseMatrix random_matrix(std::size_t r, std::size_t c, RngStream& rng,
                          double lo = -1.0, double hi = 1.0) {
  DenseMatrix m(r, c);
  for (double& v : m.data()) v = rng.uniform(lo, hi);
  return m;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  REQUIRE(a.same_shape(b));
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::fabs(a.data()[i] - b.data()[i]));
  }
  return m;
}

}  // namespace

TEST_CASE("dense matrix construction and predicates") {
  DenseMatrix eye = DenseMatrix::identity(3);
  CHECK(eye(0, 0) == 1.0);
  CHECK(eye(0, 1) == 0.0);

  DenseMatrix m = DenseMatrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
  CHECK(m.rows() == 2);
  CHECK(m(1, 0) == 3.0);

  DenseMatrix col = DenseMatrix::column({5.0, 6.0});
  CHECK(col.rows() == 2);
  CHECK(col.cols() == 1);

  CHECK(m.all_finite());
  m(0, 0) = std::nan("");
  CHECK_FALSE(m.all_finite());

  CHECK_THROWS_AS(DenseMatrix::from_rows({{1.0}, {1.0, 2.0}}), Error);
}

TEST_CASE("matmul matches hand-computed products") {
  DenseMatrix a = DenseMatrix::from_rows({{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}});
  DenseMatrix b =
      DenseMatrix::from_rows({{7.0, 8.0}, {9.0, 10.0}, {11.0, 12.0}});
  DenseMatrix c = matmul(a, b);
  CHECK(c(0, 0) == doctest::Approx(58.0));
  CHECK(c(0, 1) == doctest::Approx(64.0));
  CHECK(c(1, 0) == doctest::Approx(139.0));
  CHECK(c(1, 1) == doctest::Approx(154.0));
}

TEST_CASE("gemm_nt agrees with transpose-then-multiply") {
  RngStream rng(7, rica::stream_id::generic(1));
  DenseMatrix a = random_matrix(5, 4, rng);
  DenseMatrix b = random_matrix(6, 4, rng);
  CHECK(max_abs_diff(matmul_nt(a, b), matmul(a, transpose(b))) < 1e-13);
}

TEST_CASE("gemm_tn accumulates a^T b") {
  RngStream rng(8, rica::stream_id::generic(1));
  DenseMatrix a = random_matrix(5, 3, rng);
  DenseMatrix b = random_matrix(5, 4, rng);
  DenseMatrix c(3, 4, 0.0);
  gemm_tn_acc(c, a, b);
  CHECK(max_abs_diff(c, matmul(transpose(a), b)) < 1e-13);
  // accumulation adds on top
  gemm_tn_acc(c, a, b);
  DenseMatrix twice = matmul(transpose(a), b);
  rica::scale(twice, 2.0);
  CHECK(max_abs_diff(c, twice) < 1e-13);
}

TEST_CASE("matvec, broadcast and column sums") {
  DenseMatrix a = DenseMatrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
  std::vector<double> y = matvec(a, {1.0, 1.0});
  CHECK(y[0] == doctest::Approx(3.0));
  CHECK(y[1] == doctest::Approx(7.0));

  DenseMatrix r = DenseMatrix::column({10.0, 20.0});
  rica::add_row_broadcast(a, r);
  CHECK(a(0, 0) == doctest::Approx(11.0));
  CHECK(a(1, 1) == doctest::Approx(24.0));

  DenseMatrix sums(2, 1, 0.0);
  rica::col_sum_acc(sums, a);
  CHECK(sums(0, 0) == doctest::Approx(11.0 + 13.0));
  CHECK(sums(1, 0) == doctest::Approx(22.0 + 24.0));
}

TEST_CASE("transpose is an involution") {
  RngStream rng(9, rica::stream_id::generic(1));
  DenseMatrix a = random_matrix(4, 7, rng);
  CHECK(max_abs_diff(transpose(transpose(a)), a) == 0.0);
}

TEST_CASE("lu: determinants of known matrices") {
  CHECK(rica::lu_factor(DenseMatrix::identity(4)).log_abs_det() ==
        doctest::Approx(0.0));
  CHECK(rica::lu_factor(DenseMatrix::identity(4)).det_sign() == 1.0);

  DenseMatrix d = DenseMatrix::from_rows({{2.0, 0.0}, {0.0, 3.0}});
  CHECK(rica::lu_factor(d).log_abs_det() == doctest::Approx(std::log(6.0)));

  // a pure row swap has determinant -1
  DenseMatrix p = DenseMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  auto f = rica::lu_factor(p);
  CHECK(f.log_abs_det() == doctest::Approx(0.0));
  CHECK(f.det_sign() == -1.0);
}

TEST_CASE("lu vs cofactor-expansion determinant oracle") {
  RngStream rng(11, rica::stream_id::generic(2));
  for (int rep = 0; rep < 10; ++rep) {
    DenseMatrix a = random_matrix(5, 5, rng);
    const double expected = testsupport::brute_det(a);
    auto f = rica::lu_factor(a);
    const double got = f.det_sign() * std::exp(f.log_abs_det());
    CHECK(got == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("lu solve and inverse") {
  RngStream rng(12, rica::stream_id::generic(2));
  DenseMatrix a = random_matrix(6, 6, rng);
  for (std::size_t i = 0; i < 6; ++i) a(i, i) += 3.0;  // well-conditioned
  auto f = rica::lu_factor(a);

  std::vector<double> b{1.0, -2.0, 0.5, 3.0, 0.0, -1.0};
  std::vector<double> x = f.solve(b);
  std::vector<double> ax = matvec(a, x);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(ax[i] == doctest::Approx(b[i]).epsilon(1e-10));
  }

  DenseMatrix inv = f.inverse();
  CHECK(max_abs_diff(matmul(a, inv), DenseMatrix::identity(6)) < 1e-10);

  // adjugate oracle on a smaller instance
  DenseMatrix s = random_matrix(4, 4, rng);
  for (std::size_t i = 0; i < 4; ++i) s(i, i) += 2.0;
  CHECK(max_abs_diff(rica::lu_factor(s).inverse(),
                     testsupport::adjugate_inverse(s)) < 1e-10);
}

TEST_CASE("lu rejects singular and malformed input") {
  CHECK_THROWS_WITH_AS(rica::lu_factor(DenseMatrix(3, 3, 0.0)),
                       doctest::Contains("SingularMatrix"), Error);
  DenseMatrix dup = DenseMatrix::from_rows({{1.0, 2.0}, {1.0, 2.0}});
  try {
    rica::lu_factor(dup);
    FAIL("expected SingularMatrix");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularMatrix);
  }
  CHECK_THROWS_AS(rica::lu_factor(DenseMatrix(2, 3, 1.0)), Error);
  DenseMatrix nan = DenseMatrix::identity(2);
  nan(0, 1) = std::nan("");
  CHECK_THROWS_AS(rica::lu_factor(nan), Error);
}

TEST_CASE("rng: streams are deterministic and resumable") {
  RngStream a(42, 7);
  RngStream b(42, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  // advance, snapshot, resume
  for (int i = 0; i < 13; ++i) a.uniform();
  RngStream resumed = RngStream::restore(a.seed(), a.stream(), a.counter());
  for (int i = 0; i < 50; ++i) CHECK(a.next_u64() == resumed.next_u64());

  RngStream other(42, 8);
  int differ = 0;
  RngStream fresh(42, 7);
  for (int i = 0; i < 16; ++i) {
    if (fresh.next_u64() != other.next_u64()) ++differ;
  }
  CHECK(differ > 12);
}

TEST_CASE("rng: uniform and normal moments") {
  RngStream rng(1, rica::stream_id::generic(3));
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sq += u * u;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
  CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.02));

  sum = 0.0;
  sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(sum / n == doctest::Approx(0.0).scale(1.0).epsilon(0.01));
  CHECK(sq / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("rng: laplace draws have unit variance and heavy tails") {
  RngStream rng(2, rica::stream_id::generic(3));
  const int n = 200000;
  double sum = 0.0, sq = 0.0, quad = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = rng.laplace_unit();
    sum += v;
    sq += v * v;
    quad += v * v * v * v;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(mean == doctest::Approx(0.0).scale(1.0).epsilon(0.01));
  CHECK(var == doctest::Approx(1.0).epsilon(0.03));
  // Laplace excess kurtosis is 3
  const double kurt = (quad / n) / (var * var) - 3.0;
  CHECK(kurt == doctest::Approx(3.0).epsilon(0.25));
}

TEST_CASE("rng: logistic quantiles") {
  RngStream rng(3, rica::stream_id::generic(3));
  const int n = 100000;
  int below_zero = 0, below_log3 = 0;
  for (int i = 0; i < n; ++i) {
    const double v = rng.logistic(0.0, 1.0);
    if (v < 0.0) ++below_zero;
    if (v < std::log(3.0)) ++below_log3;  // CDF at log 3 is 0.75
  }
  CHECK(static_cast<double>(below_zero) / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(static_cast<double>(below_log3) / n ==
        doctest::Approx(0.75).epsilon(0.02));
}

TEST_CASE("rng: below() is bounded and balanced, shuffle permutes") {
  RngStream rng(4, rica::stream_id::generic(3));
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const std::uint64_t v = rng.below(7);
    REQUIRE(v < 7);
    ++counts[static_cast<std::size_t>(v)];
  }
  for (int c : counts) CHECK(std::abs(c - 10000) < 500);
  CHECK_THROWS_AS(rng.below(0), Error);

  std::vector<int> v(100);
  for (int i = 0; i < 100; ++i) v[static_cast<std::size_t>(i)] = i;
  std::vector<int> shuffled = v;
  rng.shuffle(shuffled);
  CHECK(shuffled != v);  // astronomically unlikely to be identity
  std::sort(shuffled.begin(), shuffled.end());
  CHECK(shuffled == v);
}

TEST_CASE("sym_eig: known spectra") {
  DenseMatrix d = DenseMatrix::from_rows(
      {{3.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 2.0}});
  auto e = rica::sym_eig(d);
  REQUIRE(e.eigenvalues.size() == 3);
  CHECK(e.eigenvalues[0] == doctest::Approx(3.0));
  CHECK(e.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(e.eigenvalues[2] == doctest::Approx(1.0));

  DenseMatrix m = DenseMatrix::from_rows({{2.0, 1.0}, {1.0, 2.0}});
  auto e2 = rica::sym_eig(m);
  CHECK(e2.eigenvalues[0] == doctest::Approx(3.0));
  CHECK(e2.eigenvalues[1] == doctest::Approx(1.0));
  // leading eigenvector is (1,1)/sqrt(2) up to sign
  const double r = e2.vectors(0, 0) / e2.vectors(1, 0);
  CHECK(r == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("sym_eig: reconstruction, orthonormality, trace and det") {
  RngStream rng(13, rica::stream_id::generic(4));
  DenseMatrix a = random_matrix(6, 6, rng);
  DenseMatrix c(6, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) c(i, j) = 0.5 * (a(i, j) + a(j, i));
  }
  auto e = rica::sym_eig(c);

  for (std::size_t j = 0; j + 1 < 6; ++j) {
    CHECK(e.eigenvalues[j] >= e.eigenvalues[j + 1]);
  }

  DenseMatrix lam(6, 6, 0.0);
  for (std::size_t j = 0; j < 6; ++j) lam(j, j) = e.eigenvalues[j];
  DenseMatrix rec = matmul(matmul(e.vectors, lam), transpose(e.vectors));
  CHECK(max_abs_diff(rec, c) < 1e-10);

  DenseMatrix vtv = matmul(transpose(e.vectors), e.vectors);
  CHECK(max_abs_diff(vtv, DenseMatrix::identity(6)) < 1e-10);

  double trace = 0.0, lam_sum = 0.0, lam_prod = 1.0;
  for (std::size_t j = 0; j < 6; ++j) {
    trace += c(j, j);
    lam_sum += e.eigenvalues[j];
    lam_prod *= e.eigenvalues[j];
  }
  CHECK(lam_sum == doctest::Approx(trace).epsilon(1e-10));
  CHECK(lam_prod == doctest::Approx(testsupport::brute_det(c)).epsilon(1e-8));
}

TEST_CASE("sym_eig rejects asymmetric input") {
  DenseMatrix m = DenseMatrix::from_rows({{1.0, 2.0}, {0.0, 1.0}});
  try {
    rica::sym_eig(m);
    FAIL("expected NotSymmetric");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSymmetric);
  }
}

TEST_CASE("pca: conventions and variance capture") {
  RngStream rng(14, rica::stream_id::generic(5));
  // anisotropic cloud: x = base noise, y strongly follows x, z independent
  const std::size_t n = 600;
  DenseMatrix data(n, 3);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = rng.normal();
    data(i, 0) = 3.0 * t + 0.1 * rng.normal() + 1.0;
    data(i, 1) = -2.0 * t + 0.1 * rng.normal() - 5.0;
    data(i, 2) = 0.5 * rng.normal() + 2.0;
  }
  auto pca = rica::pca_fit(data, 2);
  REQUIRE(pca.components.rows() == 2);
  REQUIRE(pca.components.cols() == 3);
  REQUIRE(pca.eigenvalues.size() == 3);
  REQUIRE(pca.loadings.rows() == n);

  // eigenvalues descending, all >= 0
  CHECK(pca.eigenvalues[0] >= pca.eigenvalues[1]);
  CHECK(pca.eigenvalues[1] >= pca.eigenvalues[2]);
  CHECK(pca.eigenvalues[2] >= -1e-12);

  // components are orthonormal rows
  DenseMatrix ppt = matmul_nt(pca.components, pca.components);
  CHECK(max_abs_diff(ppt, DenseMatrix::identity(2)) < 1e-10);

  // sign convention: largest-magnitude entry of each component is positive
  for (std::size_t j = 0; j < 2; ++j) {
    double best = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      if (std::fabs(pca.components(j, k)) > std::fabs(best)) {
        best = pca.components(j, k);
      }
    }
    CHECK(best > 0.0);
  }

  // per-component variance of the projected data equals the eigenvalue
  std::vector<double> col_mean(3, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < 3; ++k) col_mean[k] += data(i, k);
  }
  for (double& m : col_mean) m /= static_cast<double>(n);
  for (std::size_t j = 0; j < 2; ++j) {
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double proj = 0.0;
      for (std::size_t k = 0; k < 3; ++k) {
        proj += (data(i, k) - col_mean[k]) * pca.components(j, k);
      }
      var += proj * proj;
    }
    var /= static_cast<double>(n - 1);
    CHECK(var == doctest::Approx(pca.eigenvalues[j]).epsilon(1e-8));
  }

  // loadings have zero column means
  for (std::size_t j = 0; j < 2; ++j) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m += pca.loadings(i, j);
    CHECK(std::fabs(m / static_cast<double>(n)) < 1e-10);
  }

  // leading eigenvalue beats the variance along random directions
  for (int rep = 0; rep < 50; ++rep) {
    double dir[3];
    double norm = 0.0;
    for (double& d : dir) {
      d = rng.normal();
    }
    for (double d : dir) norm += d * d;
    norm = std::sqrt(norm);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double proj = 0.0;
      for (std::size_t k = 0; k < 3; ++k) {
        proj += (data(i, k) - col_mean[k]) * dir[k] / norm;
      }
      var += proj * proj;
    }
    var /= static_cast<double>(n - 1);
    CHECK(var <= pca.eigenvalues[0] * (1.0 + 1e-10));
  }
}

TEST_CASE("pca: k larger than dims is rejected") {
  DenseMatrix data(10, 2, 1.0);
  try {
    rica::pca_fit(data, 3);
    FAIL("expected KTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::KTooLarge);
  }
}

TEST_CASE("parallel_for touches every index exactly once") {
  std::vector<int> hits(1000, 0);
  rica::parallel_for(hits.size(), [&hits](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);

  CHECK_THROWS_AS(rica::parallel_for(
                      64,
                      [](std::size_t i) {
                        if (i == 37) throw Error(ErrorCode::InvalidArgument,
                                                 "boom");
                      }),
                  Error);
}
