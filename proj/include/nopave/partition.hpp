#pragma once

#include "nopave/frame_analysis.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

namespace nopave {

/// Assignment of {1..size} to blocks labeled 1..arity; blocks may be empty.
struct Partition {
  int arity = 0;
  std::vector<int> assignment;  // assignment[i] is the block of index i+1

  Partition() = default;
  Partition(int arity, std::vector<int> assignment);

  Index size() const { return static_cast<Index>(assignment.size()); }

  /// 1-based member indices of every block, ascending within each block.
  std::vector<std::vector<Index>> blocks() const;
  std::vector<Index> block(int j) const;
  std::vector<Index> block_in_range(int j, const IndexRange& range) const;
};

/// Orders partitions by their assignment sequences.
bool lexicographically_less(const Partition& a, const Partition& b);

/// r^size, or nullopt when it exceeds cap.
std::optional<std::uint64_t> labeling_count(Index size, int r, std::uint64_t cap);

inline constexpr std::uint64_t kDefaultLabelingBudget = 10'000'000;

struct EnumerationOptions {
  std::uint64_t budget = kDefaultLabelingBudget;
  // Visit only labelings in restricted growth form (first occurrences of
  // labels appear in increasing order), one representative per partition
  // up to block relabeling.
  bool canonical = false;
};

/// Visits labelings of {1..size} into r blocks in lexicographic order and
/// returns the number visited. Throws BudgetExceededError when r^size
/// exceeds options.budget.
std::uint64_t enumerate_partitions(Index size, int r, const EnumerationOptions& options,
                                   const std::function<void(const Partition&)>& visit);

/// Visits the lexicographic rank range [begin, end) of the full labeling
/// space (no canonical filtering); ranks clamp to r^size. Lets callers split
/// the space into disjoint chunks and combine with merge_results.
std::uint64_t enumerate_partition_range(Index size, int r, std::uint64_t begin,
                                        std::uint64_t end,
                                        const std::function<void(const Partition&)>& visit);

/// Smallest block label whose intersection with row block D_k has at least
/// n elements; one always exists since the r blocks cover the rn rows of D_k.
int pigeonhole_block(const Partition& partition, const CounterexampleFrame& frame, int k);

/// min over nonempty blocks A_j of riesz_lower_bound(A_j).
double evaluate_partition(const CounterexampleFrame& frame, const Partition& partition);

/// For each k in 1..r-1: min over blocks j with |A_j within D_k| >= n of the
/// Riesz lower bound of that intersection.
std::vector<double> per_k_minima(const CounterexampleFrame& frame, const Partition& partition);

enum class SearchMethod { exhaustive, random_sampling, local_search };
std::string_view method_name(SearchMethod method);

struct SearchResult {
  Partition best_partition;
  double best_value = 0;                // max over tried partitions of evaluate_partition
  std::uint64_t partitions_evaluated = 0;
  SearchMethod method = SearchMethod::exhaustive;
  // per_k_violations[k-1] = max over tried partitions of per_k_minima[k-1];
  // each entry is <= delta_k + tolerance when the construction does its job.
  std::vector<double> per_k_violations;
  bool canonical = false;
  std::uint64_t total_labelings = 0;    // r^size; 0 when not enumerated
};

SearchResult exhaustive_search(const CounterexampleFrame& frame,
                               const EnumerationOptions& options = {});
SearchResult exhaustive_search_range(const CounterexampleFrame& frame,
                                     std::uint64_t begin, std::uint64_t end);
SearchResult random_search(const CounterexampleFrame& frame, std::uint64_t samples,
                           std::uint64_t seed);

struct LocalSearchOptions {
  int restarts = 1;
  int iters = 1;
  std::uint64_t seed = 0;
};

/// Hill climbing on single-index relabelings, accepting strictly improving
/// moves only; every proposal counts as tried. Restart t reseeds from
/// splitmix64(seed, t), so results are monotone in restarts for a fixed seed.
SearchResult local_search(const CounterexampleFrame& frame, const LocalSearchOptions& options);

/// Combines results of disjoint tries over the same frame: counts add,
/// per-k maxima join, the best partition wins by value then lexicographic
/// order. Deterministic regardless of argument order.
SearchResult merge_results(SearchResult a, const SearchResult& b);

// Seeded randomness used by the searches. mt19937_64 plus rejection sampling
// keeps the draw sequence identical across platforms.
namespace rng {

inline constexpr std::string_view kAlgorithm = "mt19937_64+rejection";

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t index);

/// Uniform draw from {0, ..., bound-1}, bound >= 1, via rejection.
std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound);

/// Uniform block label in {1..arity}.
int uniform_label(std::mt19937_64& gen, int arity);

}  // namespace rng

Partition random_partition(Index size, int arity, std::mt19937_64& gen);

}  // namespace nopave
