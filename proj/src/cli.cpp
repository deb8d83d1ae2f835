#include "nopave/cli.hpp"

#include "nopave/io.hpp"
#include "nopave/linalg.hpp"
#include "nopave/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

namespace nopave::cli {

namespace {

using nlohmann::json;

std::string fd(double value) {
  return io::format_double(value, io::NumericMode::decimal);
}

// ---- check suites ----

struct Check {
  std::string name;
  double residual = 0;
  double tol = 0;
  bool pass = false;
  std::string note;  // appended verbatim when nonempty
};

Check residual_check(std::string name, double residual, double tol) {
  return {std::move(name), residual, tol, residual <= tol, ""};
}

bool print_checks(const std::string& title, const std::vector<Check>& checks,
                  std::ostream& out) {
  out << title << "\n";
  bool all = true;
  for (const auto& c : checks) {
    out << "check " << c.name << " residual=" << fd(c.residual)
        << " tol=" << fd(c.tol);
    if (!c.note.empty()) out << " " << c.note;
    out << (c.pass ? " PASS" : " FAIL") << "\n";
    all = all && c.pass;
  }
  out << "result " << (all ? "PASS" : "FAIL") << " (" << checks.size()
      << " checks)" << "\n";
  return all;
}

std::vector<Check> projection_checks(const ComplexMatrix& g, const FrameParams& params) {
  std::vector<Check> checks;
  checks.push_back(residual_check("projection_hermitian", hermitian_deviation(g), 1e-10));
  checks.push_back(residual_check("projection_idempotent",
                                  (g * g - g).cwiseAbs().maxCoeff(), 1e-8));
  const double inv_r = 1.0 / static_cast<double>(params.r);
  checks.push_back(residual_check("projection_diagonal",
                                  (g.diagonal().real().array() - inv_r).abs().maxCoeff(),
                                  1e-9));
  checks.push_back(residual_check(
      "projection_trace",
      std::abs(g.trace().real() - static_cast<double>(params.cols())), 1e-6));
  return checks;
}

std::vector<Check> stack_checks(const ComplexMatrix& b, const FrameParams& params) {
  std::vector<Check> checks;
  checks.push_back(residual_check(
      "row_square_sums", (b.rowwise().squaredNorm().array() - 1.0).abs().maxCoeff(),
      1e-9));
  checks.push_back(residual_check(
      "column_square_sums",
      (b.colwise().squaredNorm().array() - static_cast<double>(params.r)).abs().maxCoeff(),
      1e-9));
  ComplexMatrix gram_cols = b.adjoint() * b;
  gram_cols.diagonal().setZero();
  checks.push_back(
      residual_check("column_orthogonality", gram_cols.cwiseAbs().maxCoeff(), 1e-9));
  Rational sum(0);
  for (int k = 1; k <= params.r; ++k)
    sum = sum + delta_rational(params.r, params.n, k);
  Check delta_sum{"delta_sum_exact", sum == Rational(params.r) ? 0.0 : 1.0, 0.0,
                  sum == Rational(params.r),
                  "sum=" + sum.str() + " expected=" + std::to_string(params.r)};
  checks.push_back(delta_sum);
  const ComplexMatrix g = (b * b.adjoint()) / static_cast<double>(params.r);
  for (auto& c : projection_checks(g, params)) checks.push_back(std::move(c));
  return checks;
}

std::vector<Check> block_checks(const ComplexMatrix& bk, const FrameParams& params,
                                int k) {
  std::vector<Check> checks;
  checks.push_back(residual_check(
      "row_square_sums", (bk.rowwise().squaredNorm().array() - 1.0).abs().maxCoeff(),
      1e-10));
  const ColumnScaling factors = block_scaling(params, k);
  double worst = 0;
  for (Index j = 0; j < bk.cols(); ++j)
    worst = std::max(worst,
                     std::abs(bk.col(j).squaredNorm() - factors[j] * factors[j]));
  checks.push_back(residual_check("column_square_sums_match_scaling", worst, 1e-9));
  ComplexMatrix gram_cols = bk.adjoint() * bk;
  gram_cols.diagonal().setZero();
  checks.push_back(
      residual_check("column_orthogonality", gram_cols.cwiseAbs().maxCoeff(), 1e-9));
  return checks;
}

// ---- build ----

struct BuildArgs {
  int r = 2;
  int n = 1;
  std::string what = "stack";
  int k = 0;
  std::string out_path;
  bool hex = false;
  bool exact = false;
};

void print_delta_summary(const FrameParams& params, bool exact, std::ostream& out) {
  for (int k = 1; k <= params.r; ++k) {
    const Rational d = delta_rational(params.r, params.n, k);
    out << "delta_" << k << "=" << d.str();
    if (!exact) out << " (" << fd(d.value()) << ")";
    out << "\n";
  }
  out << "sum=" << delta_partial_sum_rational(params.r, params.n, params.r).str()
      << "\n";
}

int run_build(const BuildArgs& args, std::ostream& out) {
  const FrameParams params(args.r, args.n);
  io::MatrixFile file;
  file.numeric = args.hex ? io::NumericMode::hex : io::NumericMode::decimal;
  file.r = args.r;
  file.n = args.n;
  if (args.what == "stack") {
    file.matrix = build_stack(params).stacked;
    file.construction = "stack";
  } else if (args.what == "projection") {
    file.matrix = build_projection(params);
    file.construction = "projection";
  } else if (args.what == "block") {
    if (args.k < 1 || args.k > args.r)
      throw std::invalid_argument("build --what block needs --k in [1, r]");
    file.matrix = build_block(params, args.k);
    file.construction = "block";
    file.block_k = args.k;
  } else {
    throw std::invalid_argument("build: unknown --what '" + args.what + "'");
  }
  io::write_file(args.out_path, io::serialize(file));
  out << "wrote " << args.what << " r=" << args.r << " n=" << args.n << " ("
      << file.matrix.rows() << "x" << file.matrix.cols() << ") to "
      << args.out_path << "\n";
  print_delta_summary(params, args.exact, out);
  return kExitOk;
}

// ---- verify ----

struct VerifyArgs {
  std::string in_path;
  int r = 0;
  int n = 0;
};

int verify_matrix_file(const io::MatrixFile& file, std::ostream& out) {
  if (file.construction.empty() || !file.r || !file.n)
    throw std::invalid_argument(
        "verify: file carries no construction metadata (construction, r, n)");
  const FrameParams params(*file.r, *file.n);
  std::vector<Check> checks;
  std::string title;
  if (file.construction == "stack") {
    if (file.matrix.rows() != params.rows() || file.matrix.cols() != params.cols())
      throw std::invalid_argument("verify: stack dimensions do not match r, n");
    title = "verify stack r=" + std::to_string(params.r) +
            " n=" + std::to_string(params.n);
    checks = stack_checks(file.matrix, params);
  } else if (file.construction == "projection") {
    if (file.matrix.rows() != params.rows() || file.matrix.cols() != params.rows())
      throw std::invalid_argument("verify: projection dimensions do not match r, n");
    title = "verify projection r=" + std::to_string(params.r) +
            " n=" + std::to_string(params.n);
    checks = projection_checks(file.matrix, params);
  } else {
    if (!file.block_k)
      throw std::invalid_argument("verify: block file carries no block_k");
    if (file.matrix.rows() != params.cols() || file.matrix.cols() != params.cols())
      throw std::invalid_argument("verify: block dimensions do not match r, n");
    title = "verify block r=" + std::to_string(params.r) +
            " n=" + std::to_string(params.n) + " k=" + std::to_string(*file.block_k);
    checks = block_checks(file.matrix, params, *file.block_k);
  }
  return print_checks(title, checks, out) ? kExitOk : kExitCheckFailed;
}

int verify_certificate_file(const io::CertificateFile& file, std::ostream& out) {
  const auto frame = build_stack(file.params);
  const auto v = verify_witness(frame, file.witness);
  std::vector<Check> checks;
  checks.push_back(residual_check("coefficient_unit_norm",
                                  std::abs(v.coefficient_norm - 1.0), 1e-12));
  checks.push_back(residual_check("achieved_matches_recomputed", v.achieved_error, 1e-9));
  Check bound{"achieved_within_bound",
              std::max(0.0, v.recomputed - file.witness.bound), 1e-8,
              v.recomputed <= file.witness.bound + 1e-8,
              "recomputed=" + fd(v.recomputed) + " bound=" + file.witness.bound_exact.str()};
  checks.push_back(bound);
  const Rational expected =
      delta_rational(file.params.r, file.params.n, file.witness.k);
  Check stated{"bound_is_delta_k", file.witness.bound_exact == expected ? 0.0 : 1.0,
               0.0, file.witness.bound_exact == expected,
               "stated=" + file.witness.bound_exact.str() + " delta_k=" + expected.str()};
  checks.push_back(stated);
  Check overall{"witness_verification", v.ok ? 0.0 : 1.0, 0.0, v.ok,
                v.ok ? "" : v.failure};
  checks.push_back(overall);
  const std::string title = "verify certificate r=" + std::to_string(file.params.r) +
                            " n=" + std::to_string(file.params.n) +
                            " k=" + std::to_string(file.witness.k) +
                            " j=" + std::to_string(file.witness.j);
  return print_checks(title, checks, out) ? kExitOk : kExitCheckFailed;
}

int run_verify(const VerifyArgs& args, std::ostream& out) {
  if (!args.in_path.empty()) {
    const auto text = io::read_file(args.in_path);
    const auto kind = io::sniff_kind(text);
    if (kind == io::FileKind::matrix) return verify_matrix_file(io::parse_matrix(text), out);
    if (kind == io::FileKind::certificate)
      return verify_certificate_file(io::parse_certificate(text), out);
    throw std::invalid_argument("verify: partition files carry nothing to verify");
  }
  if (args.r == 0 || args.n == 0)
    throw std::invalid_argument("verify: pass --in FILE or both --r and --n");
  const FrameParams params(args.r, args.n);
  const auto frame = build_stack(params);
  const std::string title = "verify stack r=" + std::to_string(params.r) +
                            " n=" + std::to_string(params.n) + " (built in memory)";
  return print_checks(title, stack_checks(frame.stacked, params), out)
             ? kExitOk
             : kExitCheckFailed;
}

// ---- search ----

struct SearchArgs {
  int r = 2;
  int n = 1;
  std::string method = "exhaustive";
  std::uint64_t seed = 0;
  std::uint64_t samples = 1000;
  int restarts = 10;
  int iters = 100;
  std::uint64_t budget = kDefaultLabelingBudget;
  bool canonical = false;
  std::string format = "text";
  std::string out_path;
  std::string save_partition;
};

struct SearchReport {
  std::string text;
  bool all_pass = false;
};

std::string join_labels(const Partition& p, char sep) {
  std::string s;
  for (std::size_t i = 0; i < p.assignment.size(); ++i) {
    if (i > 0) s += sep;
    s += std::to_string(p.assignment[i]);
  }
  return s;
}

SearchReport render_search_report(const SearchArgs& args, const FrameParams& params,
                                  const SearchResult& result) {
  const double tol = 1e-8;
  std::vector<Rational> deltas;
  std::vector<bool> per_k_pass;
  bool all_pass = true;
  for (int k = 1; k <= params.r - 1; ++k) {
    deltas.push_back(delta_rational(params.r, params.n, k));
    const bool pass =
        result.per_k_violations[static_cast<std::size_t>(k - 1)] <=
        deltas.back().value() + tol;
    per_k_pass.push_back(pass);
    all_pass = all_pass && pass;
  }
  const double delta_1 = deltas.front().value();
  const bool overall = result.best_value <= delta_1 + tol;
  all_pass = all_pass && overall;

  SearchReport report;
  report.all_pass = all_pass;
  std::ostringstream out;
  if (args.format == "text") {
    out << "search r=" << params.r << " n=" << params.n
        << " method=" << method_name(result.method) << " seed=" << args.seed
        << " samples=" << args.samples << " restarts=" << args.restarts
        << " iters=" << args.iters << " budget=" << args.budget
        << " canonical=" << (result.canonical ? "true" : "false") << "\n";
    out << "rng=" << rng::kAlgorithm << " version=" << kVersion << "\n";
    out << "partitions_evaluated=" << result.partitions_evaluated;
    if (result.total_labelings > 0)
      out << " total_labelings=" << result.total_labelings;
    out << "\n";
    out << "best_value=" << fd(result.best_value) << "\n";
    out << "best_partition=" << join_labels(result.best_partition, ' ') << "\n";
    for (int k = 1; k <= params.r - 1; ++k) {
      const auto& d = deltas[static_cast<std::size_t>(k - 1)];
      out << "delta_" << k << "=" << d.str() << " (" << fd(d.value()) << ")"
          << " per_k_max_" << k << "="
          << fd(result.per_k_violations[static_cast<std::size_t>(k - 1)])
          << " bound_check="
          << (per_k_pass[static_cast<std::size_t>(k - 1)] ? "PASS" : "FAIL") << "\n";
    }
    out << "best_value <= delta_1 + 1e-8: " << (overall ? "PASS" : "FAIL") << "\n";
  } else if (args.format == "csv") {
    out << "command,version,rng,r,n,method,seed,samples,restarts,iters,budget,"
           "canonical,total_labelings,partitions_evaluated,best_value,best_partition";
    for (int k = 1; k <= params.r - 1; ++k)
      out << ",delta_" << k << ",per_k_max_" << k << ",pass_" << k;
    out << ",overall_pass\n";
    out << "search," << kVersion << "," << rng::kAlgorithm << "," << params.r << ","
        << params.n << "," << method_name(result.method) << "," << args.seed << ","
        << args.samples << "," << args.restarts << "," << args.iters << ","
        << args.budget << "," << (result.canonical ? "true" : "false") << ","
        << result.total_labelings << "," << result.partitions_evaluated << ","
        << fd(result.best_value) << "," << join_labels(result.best_partition, ' ');
    for (int k = 1; k <= params.r - 1; ++k)
      out << "," << fd(deltas[static_cast<std::size_t>(k - 1)].value()) << ","
          << fd(result.per_k_violations[static_cast<std::size_t>(k - 1)]) << ","
          << (per_k_pass[static_cast<std::size_t>(k - 1)] ? "PASS" : "FAIL");
    out << "," << (overall ? "PASS" : "FAIL") << "\n";
  } else {
    json header;
    header["command"] = "search";
    header["version"] = kVersion;
    header["rng"] = std::string(rng::kAlgorithm);
    header["r"] = params.r;
    header["n"] = params.n;
    header["method"] = std::string(method_name(result.method));
    header["seed"] = args.seed;
    header["samples"] = args.samples;
    header["restarts"] = args.restarts;
    header["iters"] = args.iters;
    header["budget"] = args.budget;
    header["canonical"] = result.canonical;
    json body;
    body["best_value"] = result.best_value;
    body["best_partition"] = result.best_partition.assignment;
    body["partitions_evaluated"] = result.partitions_evaluated;
    body["total_labelings"] = result.total_labelings;
    json bounds = json::array();
    for (int k = 1; k <= params.r - 1; ++k) {
      json entry;
      entry["k"] = k;
      entry["delta_exact"] = deltas[static_cast<std::size_t>(k - 1)].str();
      entry["delta"] = deltas[static_cast<std::size_t>(k - 1)].value();
      entry["per_k_max"] = result.per_k_violations[static_cast<std::size_t>(k - 1)];
      entry["pass"] = static_cast<bool>(per_k_pass[static_cast<std::size_t>(k - 1)]);
      bounds.push_back(entry);
    }
    body["bounds"] = bounds;
    body["overall_pass"] = overall;
    out << header.dump() << "\n" << body.dump() << "\n";
  }
  report.text = out.str();
  return report;
}

int run_search(const SearchArgs& args, std::ostream& out) {
  const FrameParams params(args.r, args.n);
  if (args.canonical && args.method != "exhaustive")
    throw std::invalid_argument("search: --canonical only applies to --method exhaustive");
  const auto frame = build_stack(params);
  SearchResult result;
  if (args.method == "exhaustive") {
    EnumerationOptions options;
    options.budget = args.budget;
    options.canonical = args.canonical;
    result = exhaustive_search(frame, options);
  } else if (args.method == "random") {
    result = random_search(frame, args.samples, args.seed);
  } else if (args.method == "local") {
    LocalSearchOptions options;
    options.restarts = args.restarts;
    options.iters = args.iters;
    options.seed = args.seed;
    result = local_search(frame, options);
  } else {
    throw std::invalid_argument("search: unknown --method '" + args.method + "'");
  }
  const auto report = render_search_report(args, params, result);
  out << report.text;
  if (!args.out_path.empty()) io::write_file(args.out_path, report.text);
  if (!args.save_partition.empty()) {
    io::PartitionFile pf;
    pf.partition = result.best_partition;
    pf.r = args.r;
    pf.n = args.n;
    io::write_file(args.save_partition, io::serialize(pf));
  }
  return report.all_pass ? kExitOk : kExitCheckFailed;
}

// ---- witness ----

struct WitnessArgs {
  int r = 2;
  int n = 1;
  int k = 1;
  std::uint64_t seed = 0;
  std::string partition_file;
  std::string out_path;
  bool hex = false;
};

int run_witness(const WitnessArgs& args, std::ostream& out) {
  const FrameParams params(args.r, args.n);
  if (args.k < 1 || args.k > args.r - 1)
    throw std::invalid_argument("witness: --k must lie in [1, r-1]; k = r has no bound");
  const auto frame = build_stack(params);
  Partition partition;
  std::string source;
  if (!args.partition_file.empty()) {
    const auto pf = io::parse_partition(io::read_file(args.partition_file));
    if (pf.partition.size() != frame.rows() || pf.partition.arity != params.r)
      throw std::invalid_argument(
          "witness: partition file does not partition the " +
          std::to_string(frame.rows()) + " rows into " + std::to_string(params.r) +
          " blocks");
    partition = pf.partition;
    source = "file:" + args.partition_file;
  } else {
    std::mt19937_64 gen(args.seed);
    partition = random_partition(frame.rows(), params.r, gen);
    source = "seed:" + std::to_string(args.seed);
  }
  const auto witness = find_witness(frame, partition, args.k);
  const auto verification = verify_witness(frame, witness);
  io::CertificateFile cert;
  cert.params = params;
  cert.partition = partition;
  cert.witness = witness;
  cert.partition_source = source;
  cert.verified = verification.ok;
  cert.numeric = args.hex ? io::NumericMode::hex : io::NumericMode::decimal;
  io::write_file(args.out_path, io::serialize(cert));
  out << "witness r=" << args.r << " n=" << args.n << " k=" << args.k
      << " source=" << source << "\n";
  out << "pigeonhole block j=" << witness.j
      << " support_size=" << witness.support.size() << "\n";
  out << "achieved=" << fd(witness.achieved) << " bound=" << witness.bound_exact.str()
      << " (" << fd(witness.bound) << ")\n";
  out << "verification " << (verification.ok ? "PASS" : "FAIL");
  if (!verification.ok) out << " (" << verification.failure << ")";
  out << "\n";
  out << "wrote certificate to " << args.out_path << "\n";
  return verification.ok ? kExitOk : kExitCheckFailed;
}

// ---- table ----

struct TableArgs {
  int r = 2;
  int n_max = 1;
  std::string format = "text";
  bool exact = false;
  std::string out_path;
};

int run_table(const TableArgs& args, std::ostream& out) {
  if (args.r < 2) throw std::invalid_argument("table: --r must be >= 2");
  if (args.n_max < 1) throw std::invalid_argument("table: --n must be >= 1");
  std::ostringstream body;
  if (args.format == "text") {
    body << "delta table r=" << args.r << " n=1.." << args.n_max << "\n";
    for (int n = 1; n <= args.n_max; ++n) {
      body << "n=" << n;
      for (int k = 1; k <= args.r; ++k) {
        const Rational d = delta_rational(args.r, n, k);
        body << " delta_" << k << "=" << d.str();
        if (!args.exact) body << " (" << fd(d.value()) << ")";
      }
      body << " sum=" << delta_partial_sum_rational(args.r, n, args.r).str() << "\n";
    }
  } else if (args.format == "csv") {
    body << "n";
    for (int k = 1; k <= args.r; ++k) {
      body << ",delta_" << k << "_exact";
      if (!args.exact) body << ",delta_" << k;
    }
    body << ",sum_exact\n";
    for (int n = 1; n <= args.n_max; ++n) {
      body << n;
      for (int k = 1; k <= args.r; ++k) {
        const Rational d = delta_rational(args.r, n, k);
        body << "," << d.str();
        if (!args.exact) body << "," << fd(d.value());
      }
      body << "," << delta_partial_sum_rational(args.r, n, args.r).str() << "\n";
    }
  } else {
    for (int n = 1; n <= args.n_max; ++n) {
      json line;
      line["r"] = args.r;
      line["n"] = n;
      json exact = json::array();
      json values = json::array();
      for (int k = 1; k <= args.r; ++k) {
        const Rational d = delta_rational(args.r, n, k);
        exact.push_back(d.str());
        values.push_back(d.value());
      }
      line["delta_exact"] = exact;
      if (!args.exact) line["delta"] = values;
      line["sum_exact"] = delta_partial_sum_rational(args.r, n, args.r).str();
      body << line.dump() << "\n";
    }
  }
  out << body.str();
  if (!args.out_path.empty()) io::write_file(args.out_path, body.str());
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"stacked DFT frames with constant-diagonal projections that defeat paving"};
  app.name("nopave");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  BuildArgs build_args;
  auto* build_cmd = app.add_subcommand("build", "construct the stack, a block, or the projection");
  build_cmd->add_option("--r", build_args.r, "number of stacked blocks, >= 2")->required();
  build_cmd->add_option("--n", build_args.n, "block size parameter, >= 1")->required();
  build_cmd->add_option("--what", build_args.what, "stack | projection | block")
      ->check(CLI::IsMember({"stack", "projection", "block"}))
      ->capture_default_str();
  build_cmd->add_option("--k", build_args.k, "block index for --what block, in [1, r]");
  build_cmd->add_option("--out", build_args.out_path, "output file")->required();
  build_cmd->add_flag("--hex", build_args.hex, "write hex float entries");
  build_cmd->add_flag("--exact", build_args.exact, "print delta values as rationals only");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "check construction identities or a certificate");
  verify_cmd->add_option("--in", verify_args.in_path, "matrix or certificate file");
  verify_cmd->add_option("--r", verify_args.r, "rebuild and verify in memory: blocks");
  verify_cmd->add_option("--n", verify_args.n, "rebuild and verify in memory: size");

  SearchArgs search_args;
  auto* search_cmd = app.add_subcommand("search", "look for a partition that beats the delta_1 bound");
  search_cmd->add_option("--r", search_args.r, "number of blocks, >= 2")->required();
  search_cmd->add_option("--n", search_args.n, "block size parameter, >= 1")->required();
  search_cmd->add_option("--method", search_args.method, "exhaustive | random | local")
      ->check(CLI::IsMember({"exhaustive", "random", "local"}))
      ->capture_default_str();
  search_cmd->add_option("--seed", search_args.seed, "RNG seed")->capture_default_str();
  search_cmd->add_option("--samples", search_args.samples, "random method: draws")
      ->capture_default_str();
  search_cmd->add_option("--restarts", search_args.restarts, "local method: restarts")
      ->capture_default_str();
  search_cmd->add_option("--iters", search_args.iters, "local method: moves per restart")
      ->capture_default_str();
  search_cmd->add_option("--budget", search_args.budget, "exhaustive method: labeling cap")
      ->capture_default_str();
  search_cmd->add_flag("--canonical", search_args.canonical,
                       "enumerate one labeling per partition class");
  search_cmd->add_option("--format", search_args.format, "text | csv | json-lines")
      ->check(CLI::IsMember({"text", "csv", "json-lines"}))
      ->capture_default_str();
  search_cmd->add_option("--out", search_args.out_path, "also write the report here");
  search_cmd->add_option("--save-partition", search_args.save_partition,
                         "write the best partition as a partition file");

  WitnessArgs witness_args;
  auto* witness_cmd = app.add_subcommand("witness", "produce a Riesz bound certificate");
  witness_cmd->add_option("--r", witness_args.r, "number of blocks, >= 2")->required();
  witness_cmd->add_option("--n", witness_args.n, "block size parameter, >= 1")->required();
  witness_cmd->add_option("--k", witness_args.k, "row block index, in [1, r-1]")->required();
  witness_cmd->add_option("--seed", witness_args.seed, "seed for a random partition")
      ->capture_default_str();
  witness_cmd->add_option("--partition-file", witness_args.partition_file,
                          "take the partition from this file instead");
  witness_cmd->add_option("--out", witness_args.out_path, "certificate file")->required();
  witness_cmd->add_flag("--hex", witness_args.hex, "write hex float entries");

  TableArgs table_args;
  auto* table_cmd = app.add_subcommand("table", "print the exact delta table for n = 1..N");
  table_cmd->add_option("--r", table_args.r, "number of blocks, >= 2")->required();
  table_cmd->add_option("--n", table_args.n_max, "largest n in the table")->required();
  table_cmd->add_option("--format", table_args.format, "text | csv | json-lines")
      ->check(CLI::IsMember({"text", "csv", "json-lines"}))
      ->capture_default_str();
  table_cmd->add_flag("--exact", table_args.exact, "rationals only, no float forms");
  table_cmd->add_option("--out", table_args.out_path, "also write the table here");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("nopave");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (build_cmd->parsed()) return run_build(build_args, out);
    if (verify_cmd->parsed()) return run_verify(verify_args, out);
    if (search_cmd->parsed()) return run_search(search_args, out);
    if (witness_cmd->parsed()) return run_witness(witness_args, out);
    if (table_cmd->parsed()) return run_table(table_args, out);
    err << "error: no subcommand\n";
    return kExitUsage;
  } catch (const BudgetExceededError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace nopave::cli
