#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nopave/witness.hpp"
#include "test_util.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace nopave;

TEST_CASE("CoordinateProjection splits head and tail") {
  const CoordinateProjection p{2, 4};
  ComplexVector v(4);
  v << Complex(1, 2), Complex(3, 0), Complex(0, -1), Complex(4, 4);
  const ComplexVector head = p.keep(v);
  const ComplexVector tail = p.complement(v);
  CHECK(head(0) == v(0));
  CHECK(head(1) == v(1));
  CHECK(head(2) == Complex(0, 0));
  CHECK(tail(0) == Complex(0, 0));
  CHECK(tail(2) == v(2));
  CHECK(tail(3) == v(3));
  CHECK((head + tail - v).norm() == 0.0);
  ComplexVector wrong(3);
  wrong.setZero();
  CHECK_THROWS_AS(p.keep(wrong), std::invalid_argument);
  CHECK_THROWS_AS(p.complement(wrong), std::invalid_argument);
}

TEST_CASE("witness for the frozen (2,2) partition") {
  const auto frame = build_stack(FrameParams(2, 2));
  const Partition partition(2, {1, 1, 2, 2, 2, 2, 1, 1});
  const RieszWitness w = find_witness(frame, partition, 1);
  CHECK(w.k == 1);
  CHECK(w.j == 1);  // labels 1,1,2,2 inside D_1 tie; smallest label wins
  CHECK(w.support.indices() == std::vector<Index>{1, 2});
  REQUIRE(w.coefficients.size() == 2);
  CHECK(std::abs(w.coefficients.norm() - 1.0) <= 1e-12);
  CHECK(w.achieved == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(w.bound == frame.deltas[0]);
  CHECK(w.bound_exact == Rational(2, 3));
  // the single annihilated coordinate removes nothing from the plain rows'
  // combined mass, so the unscaled tail carries all of it
  CHECK(w.unscaled_tail_norm_sq == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(w.constraint_residual <= 1e-10);
  CHECK(w.zero_prefix_max == 0.0);

  const WitnessVerification v = verify_witness(frame, w);
  CHECK(v.ok);
  CHECK(v.failure.empty());
  CHECK(v.achieved_error <= 1e-12);
  CHECK(std::abs(v.coefficient_norm - 1.0) <= 1e-12);
}

TEST_CASE("witness with n = 1 picks a single row") {
  const auto frame = build_stack(FrameParams(2, 1));
  const RieszWitness w = find_witness(frame, Partition(2, {1, 2, 1, 2}), 1);
  CHECK(w.j == 1);
  CHECK(w.support.indices() == std::vector<Index>{1});
  REQUIRE(w.coefficients.size() == 1);
  CHECK(w.coefficients(0) == Complex(1, 0));
  CHECK(w.achieved == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w.bound == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(verify_witness(frame, w).ok);
}

TEST_CASE("witness exists and is sound for every partition and k") {
  for (int r : {2, 3})
    for (int n : {1, 2, 3}) {
      const auto frame = build_stack(FrameParams(r, n));
      for (std::uint64_t seed = 0; seed < 50; ++seed) {
        std::mt19937_64 gen(seed);
        const Partition partition = random_partition(frame.rows(), r, gen);
        for (int k = 1; k <= r - 1; ++k) {
          const RieszWitness w = find_witness(frame, partition, k);
          CHECK(w.k == k);
          CHECK(w.support.size() >= n);
          CHECK(std::abs(w.coefficients.norm() - 1.0) <= 1e-12);
          CHECK(w.achieved <= w.bound + 1e-8);
          CHECK(w.bound == doctest::Approx(delta(r, n, k)).epsilon(1e-12));
          // achieved = delta_k times the unscaled tail mass
          CHECK(std::abs(w.achieved - w.bound * w.unscaled_tail_norm_sq) <= 1e-10);
          CHECK(w.unscaled_tail_norm_sq <= 1.0 + 1e-10);
          CHECK(w.constraint_residual <= 1e-9);
          CHECK(w.zero_prefix_max <= 1e-12);
          const WitnessVerification v = verify_witness(frame, w);
          CHECK(v.ok);
          CHECK(v.achieved_error <= 1e-9);
        }
      }
    }
}

TEST_CASE("find_witness rejects k outside [1, r-1]") {
  const auto frame = build_stack(FrameParams(3, 2));
  const Partition partition(3, std::vector<int>(18, 1));
  CHECK_THROWS_AS(find_witness(frame, partition, 0), std::out_of_range);
  CHECK_THROWS_AS(find_witness(frame, partition, 3), std::out_of_range);
  CHECK_NOTHROW(find_witness(frame, partition, 2));
}

TEST_CASE("verify_witness flags tampered certificates") {
  const auto frame = build_stack(FrameParams(2, 2));
  const Partition partition(2, {1, 1, 2, 2, 2, 2, 1, 1});
  const RieszWitness good = find_witness(frame, partition, 1);
  REQUIRE(verify_witness(frame, good).ok);

  RieszWitness scaled = good;
  scaled.coefficients *= 2.0;
  const auto v1 = verify_witness(frame, scaled);
  CHECK_FALSE(v1.ok);
  CHECK(v1.failure == "coefficient vector is not unit norm");

  RieszWitness lied = good;
  lied.achieved += 0.1;
  const auto v2 = verify_witness(frame, lied);
  CHECK_FALSE(v2.ok);
  CHECK(v2.failure == "recomputed norm differs from the stored achieved value");

  RieszWitness displaced = good;
  displaced.support = IndexSet({5, 6}, frame.rows());  // rows of D_2, not D_1
  const auto v3 = verify_witness(frame, displaced);
  CHECK_FALSE(v3.ok);
  CHECK(v3.failure.find("outside row block") != std::string::npos);

  RieszWitness squeezed = good;
  squeezed.bound = good.achieved - 0.1;
  const auto v4 = verify_witness(frame, squeezed);
  CHECK_FALSE(v4.ok);
  CHECK(v4.failure == "recomputed norm exceeds the bound");

  RieszWitness mismatched = good;
  mismatched.support = IndexSet({1, 2, 3}, frame.rows());
  const auto v5 = verify_witness(frame, mismatched);
  CHECK_FALSE(v5.ok);
  CHECK(v5.failure == "support size differs from coefficient count");
}
