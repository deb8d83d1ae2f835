#include "nopave/partition.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace nopave {

Partition::Partition(int arity_, std::vector<int> assignment_)
    : arity(arity_), assignment(std::move(assignment_)) {
  if (arity < 1)
    throw std::invalid_argument("Partition: arity must be >= 1, got " +
                                std::to_string(arity));
  if (assignment.empty())
    throw std::invalid_argument("Partition: empty assignment");
  for (std::size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i] < 1 || assignment[i] > arity)
      throw std::invalid_argument("Partition: label " +
                                  std::to_string(assignment[i]) + " at index " +
                                  std::to_string(i + 1) + " outside [1, " +
                                  std::to_string(arity) + "]");
}

std::vector<std::vector<Index>> Partition::blocks() const {
  std::vector<std::vector<Index>> result(static_cast<std::size_t>(arity));
  for (std::size_t i = 0; i < assignment.size(); ++i)
    result[static_cast<std::size_t>(assignment[i] - 1)].push_back(
        static_cast<Index>(i + 1));
  return result;
}

std::vector<Index> Partition::block(int j) const {
  if (j < 1 || j > arity)
    throw std::out_of_range("Partition::block: label " + std::to_string(j) +
                            " outside [1, " + std::to_string(arity) + "]");
  std::vector<Index> result;
  for (std::size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i] == j) result.push_back(static_cast<Index>(i + 1));
  return result;
}

std::vector<Index> Partition::block_in_range(int j, const IndexRange& range) const {
  if (j < 1 || j > arity)
    throw std::out_of_range("Partition::block_in_range: label " +
                            std::to_string(j) + " outside [1, " +
                            std::to_string(arity) + "]");
  std::vector<Index> result;
  const Index lo = std::max<Index>(range.first, 1);
  const Index hi = std::min<Index>(range.last, size());
  for (Index i = lo; i <= hi; ++i)
    if (assignment[static_cast<std::size_t>(i - 1)] == j) result.push_back(i);
  return result;
}

bool lexicographically_less(const Partition& a, const Partition& b) {
  return std::lexicographical_compare(a.assignment.begin(), a.assignment.end(),
                                      b.assignment.begin(), b.assignment.end());
}

std::optional<std::uint64_t> labeling_count(Index size, int r, std::uint64_t cap) {
  if (size < 1) throw std::invalid_argument("labeling_count: size must be >= 1");
  if (r < 1) throw std::invalid_argument("labeling_count: r must be >= 1");
  const auto base = static_cast<std::uint64_t>(r);
  std::uint64_t count = 1;
  for (Index i = 0; i < size; ++i) {
    if (count > cap / base) return std::nullopt;
    count *= base;
  }
  return count;
}

namespace {

// Rightmost-position odometer; produces assignment sequences in ascending
// lexicographic order.
bool advance_full(std::vector<int>& labels, int r) {
  for (auto pos = static_cast<std::ptrdiff_t>(labels.size()) - 1; pos >= 0; --pos) {
    if (labels[static_cast<std::size_t>(pos)] < r) {
      ++labels[static_cast<std::size_t>(pos)];
      return true;
    }
    labels[static_cast<std::size_t>(pos)] = 1;
  }
  return false;
}

// Same, restricted to growth form: labels[i] <= 1 + max(labels[0..i-1]).
bool advance_canonical(std::vector<int>& labels, int r) {
  for (auto pos = static_cast<std::ptrdiff_t>(labels.size()) - 1; pos >= 1; --pos) {
    int prefix_max = 0;
    for (std::ptrdiff_t i = 0; i < pos; ++i)
      prefix_max = std::max(prefix_max, labels[static_cast<std::size_t>(i)]);
    const int bound = std::min(r, prefix_max + 1);
    if (labels[static_cast<std::size_t>(pos)] < bound) {
      ++labels[static_cast<std::size_t>(pos)];
      return true;
    }
    labels[static_cast<std::size_t>(pos)] = 1;
  }
  return false;
}

}  // namespace

std::uint64_t enumerate_partitions(Index size, int r, const EnumerationOptions& options,
                                   const std::function<void(const Partition&)>& visit) {
  const auto total = labeling_count(size, r, options.budget);
  if (!total)
    throw BudgetExceededError(
        "enumerating " + std::to_string(r) + "^" + std::to_string(size) +
        " labelings exceeds the budget of " + std::to_string(options.budget) +
        "; use random or local search");
  Partition p(r, std::vector<int>(static_cast<std::size_t>(size), 1));
  std::uint64_t visited = 0;
  do {
    ++visited;
    visit(p);
  } while (options.canonical ? advance_canonical(p.assignment, r)
                             : advance_full(p.assignment, r));
  return visited;
}

std::uint64_t enumerate_partition_range(Index size, int r, std::uint64_t begin,
                                        std::uint64_t end,
                                        const std::function<void(const Partition&)>& visit) {
  const auto total = labeling_count(size, r, std::numeric_limits<std::uint64_t>::max());
  if (!total)
    throw BudgetExceededError("enumerate_partition_range: labeling space exceeds 2^64");
  begin = std::min(begin, *total);
  end = std::min(end, *total);
  if (begin >= end) return 0;
  // Decode begin into odometer digits, most significant first.
  Partition p(r, std::vector<int>(static_cast<std::size_t>(size), 1));
  std::uint64_t rank = begin;
  for (auto pos = static_cast<std::ptrdiff_t>(size) - 1; pos >= 0; --pos) {
    p.assignment[static_cast<std::size_t>(pos)] =
        static_cast<int>(rank % static_cast<std::uint64_t>(r)) + 1;
    rank /= static_cast<std::uint64_t>(r);
  }
  std::uint64_t visited = 0;
  for (std::uint64_t i = begin; i < end; ++i) {
    ++visited;
    visit(p);
    if (i + 1 < end) advance_full(p.assignment, r);
  }
  return visited;
}

int pigeonhole_block(const Partition& partition, const CounterexampleFrame& frame, int k) {
  if (partition.size() != frame.rows())
    throw std::invalid_argument("pigeonhole_block: partition of " +
                                std::to_string(partition.size()) +
                                " indices, frame has " + std::to_string(frame.rows()) +
                                " rows");
  if (partition.arity != frame.params.r)
    throw std::invalid_argument("pigeonhole_block: arity " +
                                std::to_string(partition.arity) +
                                " differs from r = " + std::to_string(frame.params.r));
  if (k < 1 || k > frame.params.r)
    throw std::out_of_range("pigeonhole_block: k outside [1, r]");
  const IndexRange dk = frame.row_blocks[static_cast<std::size_t>(k - 1)];
  std::vector<Index> counts(static_cast<std::size_t>(partition.arity), 0);
  for (Index i = dk.first; i <= dk.last; ++i)
    ++counts[static_cast<std::size_t>(partition.assignment[static_cast<std::size_t>(i - 1)] - 1)];
  // |D_k| = rn split across r blocks: the largest count is >= n.
  int best = 1;
  for (int j = 2; j <= partition.arity; ++j)
    if (counts[static_cast<std::size_t>(j - 1)] > counts[static_cast<std::size_t>(best - 1)])
      best = j;
  if (counts[static_cast<std::size_t>(best - 1)] < frame.params.n)
    throw InternalError("pigeonhole_block: no block meets the pigeonhole size");
  return best;
}

double evaluate_partition(const CounterexampleFrame& frame, const Partition& partition) {
  if (partition.size() != frame.rows())
    throw std::invalid_argument("evaluate_partition: partition of " +
                                std::to_string(partition.size()) +
                                " indices, frame has " + std::to_string(frame.rows()) +
                                " rows");
  double value = std::numeric_limits<double>::infinity();
  for (const auto& members : partition.blocks()) {
    if (members.empty()) continue;
    value = std::min(value, riesz_lower_bound(frame, IndexSet(members, frame.rows())));
  }
  return value;
}

std::vector<double> per_k_minima(const CounterexampleFrame& frame, const Partition& partition) {
  const int r = frame.params.r, n = frame.params.n;
  std::vector<double> minima;
  minima.reserve(static_cast<std::size_t>(r - 1));
  for (int k = 1; k <= r - 1; ++k) {
    const IndexRange dk = frame.row_blocks[static_cast<std::size_t>(k - 1)];
    double best = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= partition.arity; ++j) {
      const auto members = partition.block_in_range(j, dk);
      if (static_cast<Index>(members.size()) < n) continue;
      best = std::min(best, riesz_lower_bound(frame, IndexSet(members, frame.rows())));
    }
    if (!std::isfinite(best))
      throw InternalError("per_k_minima: no pigeonhole-eligible block at k = " +
                          std::to_string(k));
    minima.push_back(best);
  }
  return minima;
}

std::string_view method_name(SearchMethod method) {
  switch (method) {
    case SearchMethod::exhaustive: return "exhaustive";
    case SearchMethod::random_sampling: return "random";
    case SearchMethod::local_search: return "local";
  }
  throw std::invalid_argument("method_name: unknown method");
}

namespace {

struct Accumulator {
  const CounterexampleFrame& frame;
  SearchResult result;

  Accumulator(const CounterexampleFrame& frame_, SearchMethod method)
      : frame(frame_) {
    result.method = method;
    result.best_value = -std::numeric_limits<double>::infinity();
    result.per_k_violations.assign(static_cast<std::size_t>(frame.params.r - 1),
                                   -std::numeric_limits<double>::infinity());
  }

  void consider(const Partition& p, double value) {
    ++result.partitions_evaluated;
    const auto minima = per_k_minima(frame, p);
    for (std::size_t k = 0; k < minima.size(); ++k)
      result.per_k_violations[k] = std::max(result.per_k_violations[k], minima[k]);
    if (value > result.best_value ||
        (value == result.best_value && lexicographically_less(p, result.best_partition))) {
      result.best_value = value;
      result.best_partition = p;
    }
  }

  void consider(const Partition& p) { consider(p, evaluate_partition(frame, p)); }
};

}  // namespace

SearchResult exhaustive_search(const CounterexampleFrame& frame,
                               const EnumerationOptions& options) {
  Accumulator acc(frame, SearchMethod::exhaustive);
  enumerate_partitions(frame.rows(), frame.params.r, options,
                       [&](const Partition& p) { acc.consider(p); });
  acc.result.canonical = options.canonical;
  acc.result.total_labelings =
      *labeling_count(frame.rows(), frame.params.r, options.budget);
  return acc.result;
}

SearchResult exhaustive_search_range(const CounterexampleFrame& frame,
                                     std::uint64_t begin, std::uint64_t end) {
  Accumulator acc(frame, SearchMethod::exhaustive);
  enumerate_partition_range(frame.rows(), frame.params.r, begin, end,
                            [&](const Partition& p) { acc.consider(p); });
  const auto total = labeling_count(frame.rows(), frame.params.r,
                                    std::numeric_limits<std::uint64_t>::max());
  acc.result.total_labelings = total ? *total : 0;
  return acc.result;
}

SearchResult random_search(const CounterexampleFrame& frame, std::uint64_t samples,
                           std::uint64_t seed) {
  if (samples < 1)
    throw std::invalid_argument("random_search: samples must be >= 1");
  std::mt19937_64 gen(seed);
  Accumulator acc(frame, SearchMethod::random_sampling);
  for (std::uint64_t s = 0; s < samples; ++s)
    acc.consider(random_partition(frame.rows(), frame.params.r, gen));
  return acc.result;
}

SearchResult local_search(const CounterexampleFrame& frame, const LocalSearchOptions& options) {
  if (options.restarts < 1)
    throw std::invalid_argument("local_search: restarts must be >= 1");
  if (options.iters < 1)
    throw std::invalid_argument("local_search: iters must be >= 1");
  const Index size = frame.rows();
  const int r = frame.params.r;
  Accumulator acc(frame, SearchMethod::local_search);
  for (int t = 0; t < options.restarts; ++t) {
    std::mt19937_64 gen(rng::splitmix64(options.seed, static_cast<std::uint64_t>(t)));
    Partition current = random_partition(size, r, gen);
    double current_value = evaluate_partition(frame, current);
    acc.consider(current, current_value);
    for (int it = 0; it < options.iters; ++it) {
      const auto idx = static_cast<std::size_t>(
          rng::uniform_below(gen, static_cast<std::uint64_t>(size)));
      // Uniform over the r-1 labels other than the current one.
      const int shift =
          1 + static_cast<int>(rng::uniform_below(gen, static_cast<std::uint64_t>(r - 1)));
      Partition candidate = current;
      candidate.assignment[idx] = (candidate.assignment[idx] + shift - 1) % r + 1;
      const double candidate_value = evaluate_partition(frame, candidate);
      acc.consider(candidate, candidate_value);
      if (candidate_value > current_value) {
        current = std::move(candidate);
        current_value = candidate_value;
      }
    }
  }
  return acc.result;
}

SearchResult merge_results(SearchResult a, const SearchResult& b) {
  if (a.per_k_violations.size() != b.per_k_violations.size())
    throw std::invalid_argument("merge_results: results come from different frames");
  a.partitions_evaluated += b.partitions_evaluated;
  for (std::size_t k = 0; k < a.per_k_violations.size(); ++k)
    a.per_k_violations[k] = std::max(a.per_k_violations[k], b.per_k_violations[k]);
  const bool take_b =
      b.best_value > a.best_value ||
      (b.best_value == a.best_value &&
       lexicographically_less(b.best_partition, a.best_partition));
  if (take_b) {
    a.best_value = b.best_value;
    a.best_partition = b.best_partition;
  }
  a.total_labelings = std::max(a.total_labelings, b.total_labelings);
  return a;
}

namespace rng {

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
  if (bound < 1) throw std::invalid_argument("uniform_below: bound must be >= 1");
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t draw = gen();
    if (draw < limit) return draw % bound;
  }
}

int uniform_label(std::mt19937_64& gen, int arity) {
  if (arity < 1) throw std::invalid_argument("uniform_label: arity must be >= 1");
  return 1 + static_cast<int>(uniform_below(gen, static_cast<std::uint64_t>(arity)));
}

}  // namespace rng

Partition random_partition(Index size, int arity, std::mt19937_64& gen) {
  std::vector<int> labels(static_cast<std::size_t>(size));
  for (auto& label : labels) label = rng::uniform_label(gen, arity);
  return Partition(arity, std::move(labels));
}

}  // namespace nopave
