#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nopave/counterexample.hpp"
#include "nopave/linalg.hpp"

#include <cmath>

using namespace nopave;

TEST_CASE("delta matches hand-computed values") {
  CHECK(delta_rational(2, 3, 1) == Rational(1, 2));
  CHECK(delta_rational(2, 3, 2) == Rational(3, 2));
  CHECK(delta_rational(3, 2, 2) == Rational(9, 10));
  CHECK(delta_rational(4, 1, 3) == Rational(1));
  CHECK(delta_rational(4, 2, 3) == Rational(16, 15));
  CHECK(delta(2, 3, 1) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("delta closed forms at r=2") {
  for (int n = 1; n <= 50; ++n) {
    CHECK(delta_rational(2, n, 1) == Rational(2, n + 1));
    CHECK(delta_rational(2, n, 2) == Rational(2 * n, n + 1));
  }
}

TEST_CASE("delta at n=1 is exactly one for every k") {
  for (int r = 2; r <= 8; ++r)
    for (int k = 1; k <= r; ++k) CHECK(delta_rational(r, 1, k) == Rational(1));
}

TEST_CASE("delta partial sums telescope") {
  for (int r = 2; r <= 6; ++r)
    for (int n = 1; n <= 6; ++n) {
      Rational running(0);
      for (int k = 1; k <= r; ++k) {
        running = running + delta_rational(r, n, k);
        CHECK(running == delta_partial_sum_rational(r, n, k));
      }
      CHECK(running == Rational(r));
      CHECK(delta_partial_sum_rational(r, n, 0) == Rational(0));
    }
}

TEST_CASE("delta rejects out-of-range k") {
  CHECK_THROWS_AS(delta_rational(2, 3, 0), std::out_of_range);
  CHECK_THROWS_AS(delta_rational(2, 3, 3), std::out_of_range);
  CHECK_THROWS_AS(delta_partial_sum_rational(2, 3, -1), std::out_of_range);
  CHECK_THROWS_AS(delta(3, 3, 4), std::out_of_range);
}

TEST_CASE("block scaling at r=2 matches the closed-form table") {
  // B_1 scales n-1 columns by sqrt(2) and the rest by sqrt(2/(n+1));
  // B_2 zeroes n-1 columns and scales the rest by sqrt(2n/(n+1)).
  const int n = 3;
  const FrameParams params(2, n);
  const ColumnScaling s1 = block_scaling(params, 1);
  const ColumnScaling s2 = block_scaling(params, 2);
  REQUIRE(s1.size() == 6);
  for (Index j = 0; j < n - 1; ++j)
    CHECK(s1[j] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  for (Index j = n - 1; j < 6; ++j)
    CHECK(s1[j] == doctest::Approx(std::sqrt(2.0 / (n + 1))).epsilon(1e-15));
  for (Index j = 0; j < n - 1; ++j) CHECK(s2[j] == 0.0);
  for (Index j = n - 1; j < 6; ++j)
    CHECK(s2[j] == doctest::Approx(std::sqrt(2.0 * n / (n + 1))).epsilon(1e-15));
}

TEST_CASE("last block's middle factor coincides with sqrt(delta_r)") {
  for (int r = 2; r <= 6; ++r)
    for (int n = 1; n <= 5; ++n) {
      const Rational head = Rational(r) - delta_partial_sum_rational(r, n, r - 1);
      CHECK(head == delta_rational(r, n, r));
    }
}

TEST_CASE("squared scalings of a column sum to r across blocks") {
  for (int r = 2; r <= 5; ++r)
    for (int n = 1; n <= 5; ++n) {
      const FrameParams params(r, n);
      RealVector sums = RealVector::Zero(params.cols());
      for (int k = 1; k <= r; ++k) {
        const ColumnScaling s = block_scaling(params, k);
        sums += s.cwiseProduct(s);
      }
      CHECK((sums.array() - static_cast<double>(r)).abs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("build_block rows square-sum to one") {
  for (int r = 2; r <= 5; ++r)
    for (int n = 1; n <= 4; ++n)
      for (int k = 1; k <= r; ++k) {
        const ComplexMatrix bk = build_block(FrameParams(r, n), k);
        CHECK((bk.rowwise().squaredNorm().array() - 1.0).abs().maxCoeff() <= 1e-10);
      }
}

TEST_CASE("build_stack bookkeeping") {
  const FrameParams params(3, 2);
  const auto frame = build_stack(params);
  CHECK(frame.rows() == 18);
  CHECK(frame.cols() == 6);
  REQUIRE(frame.row_blocks.size() == 3);
  CHECK(frame.row_blocks[0].first == 1);
  CHECK(frame.row_blocks[0].last == 6);
  CHECK(frame.row_blocks[2].first == 13);
  CHECK(frame.row_blocks[2].last == 18);
  CHECK(frame.block_of_row(1) == 1);
  CHECK(frame.block_of_row(6) == 1);
  CHECK(frame.block_of_row(7) == 2);
  CHECK(frame.block_of_row(18) == 3);
  CHECK_THROWS_AS(frame.block_of_row(0), std::out_of_range);
  CHECK_THROWS_AS(frame.block_of_row(19), std::out_of_range);

  // two width-(n-1) groups and the tail
  REQUIRE(frame.column_groups.size() == 3);
  CHECK(frame.column_groups[0].first == 1);
  CHECK(frame.column_groups[0].last == 1);
  CHECK(frame.column_groups[1].first == 2);
  CHECK(frame.column_groups[1].last == 2);
  CHECK(frame.column_groups[2].first == 3);
  CHECK(frame.column_groups[2].last == 6);

  REQUIRE(frame.deltas.size() == 3);
  CHECK(frame.deltas_exact[1] == delta_rational(3, 2, 2));
  CHECK(frame.deltas[1] == doctest::Approx(0.9).epsilon(1e-15));

  const ComplexVector f7 = frame.frame_vector(7);
  CHECK((f7.transpose() - frame.stacked.row(6)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(frame_vectors(frame).size() == 18);
}

TEST_CASE("column groups collapse at n=1") {
  const auto frame = build_stack(FrameParams(3, 1));
  REQUIRE(frame.column_groups.size() == 3);
  CHECK(frame.column_groups[0].size() == 0);
  CHECK(frame.column_groups[1].size() == 0);
  CHECK(frame.column_groups[2].first == 1);
  CHECK(frame.column_groups[2].last == 3);
}

TEST_CASE("rows of D_k vanish exactly on the zeroed column prefix") {
  const auto frame = build_stack(FrameParams(4, 3));
  for (int k = 1; k <= 4; ++k) {
    const IndexRange dk = frame.row_blocks[static_cast<std::size_t>(k - 1)];
    const Index prefix = static_cast<Index>(k - 1) * 2;
    for (Index row = dk.first; row <= dk.last; ++row)
      for (Index c = 0; c < prefix; ++c)
        CHECK(frame.stacked(row - 1, c) == Complex(0, 0));
  }
}

TEST_CASE("stack identities on a small grid") {
  for (int r = 2; r <= 4; ++r)
    for (int n = 1; n <= 4; ++n) {
      const auto frame = build_stack(FrameParams(r, n));
      const auto& b = frame.stacked;
      CHECK((b.rowwise().squaredNorm().array() - 1.0).abs().maxCoeff() <= 1e-9);
      CHECK((b.colwise().squaredNorm().array() - static_cast<double>(r))
                .abs()
                .maxCoeff() <= 1e-9);
      ComplexMatrix column_gram = b.adjoint() * b;
      column_gram.diagonal().setZero();
      CHECK(column_gram.cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("projection identities") {
  for (int r = 2; r <= 4; ++r)
    for (int n = 1; n <= 3; ++n) {
      const FrameParams params(r, n);
      const ComplexMatrix g = build_projection(params);
      CHECK(g.rows() == params.rows());
      CHECK(hermitian_deviation(g) <= 1e-10);
      CHECK((g * g - g).cwiseAbs().maxCoeff() <= 1e-8);
      CHECK((g.diagonal().real().array() - 1.0 / r).abs().maxCoeff() <= 1e-9);
      CHECK(std::abs(g.trace().real() - static_cast<double>(params.cols())) <= 1e-6);
      const auto frame = build_stack(params);
      CHECK((projection_of(frame) - g).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("frame params validation") {
  CHECK_THROWS_AS(FrameParams(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(FrameParams(2, 0), std::invalid_argument);
  const FrameParams params(2, 3);
  CHECK(params.rows() == 12);
  CHECK(params.cols() == 6);
}
