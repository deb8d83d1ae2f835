#include "nopave/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <tuple>
#include <vector>

namespace nopave::io {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

std::vector<std::string_view> split_tokens(std::string_view line, std::size_t line_no) {
  std::vector<std::string_view> tokens;
  std::size_t start = 0;
  while (start <= line.size()) {
    const auto sp = line.find(' ', start);
    const auto token = sp == std::string_view::npos ? line.substr(start)
                                                    : line.substr(start, sp - start);
    if (token.empty()) fail(line_no, "empty token");
    tokens.push_back(token);
    if (sp == std::string_view::npos) break;
    start = sp + 1;
  }
  return tokens;
}

long long parse_int(std::string_view token, std::size_t line_no) {
  long long value = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
    fail(line_no, "bad integer '" + std::string(token) + "'");
  return value;
}

long long parse_int_header(const std::string& value, std::string_view key) {
  long long parsed = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size())
    throw ParseError("header key '" + std::string(key) + "': bad integer '" + value + "'");
  return parsed;
}

// Header lines "# key=value" up to the first body line, with strict key
// accounting: every key must be consumed exactly once by the caller.
class HeaderFields {
 public:
  explicit HeaderFields(std::string_view text) {
    const auto lines = split_lines(text);
    std::size_t i = 0;
    for (; i < lines.size(); ++i) {
      const auto line = lines[i];
      if (!line.starts_with("# ")) break;
      const auto rest = line.substr(2);
      const auto eq = rest.find('=');
      if (eq == std::string_view::npos || eq == 0)
        fail(i + 1, "header line is not '# key=value'");
      const auto key = rest.substr(0, eq);
      const auto value = rest.substr(eq + 1);
      if (value.empty()) fail(i + 1, "empty value for header key '" + std::string(key) + "'");
      for (const auto& [k, v, used] : entries_)
        if (k == key) fail(i + 1, "duplicate header key '" + std::string(key) + "'");
      entries_.emplace_back(std::string(key), std::string(value), false);
    }
    body_start_ = i + 1;
    body_.assign(lines.begin() + static_cast<std::ptrdiff_t>(i), lines.end());
  }

  std::string require(std::string_view key) {
    auto found = take(key);
    if (!found)
      throw ParseError("missing header key '" + std::string(key) + "'");
    return *found;
  }

  std::optional<std::string> take(std::string_view key) {
    for (auto& [k, v, used] : entries_)
      if (k == key && !used) {
        used = true;
        return v;
      }
    return std::nullopt;
  }

  long long require_int(std::string_view key) {
    return parse_int_header(require(key), key);
  }

  std::optional<int> take_int(std::string_view key) {
    auto found = take(key);
    if (!found) return std::nullopt;
    return static_cast<int>(parse_int_header(*found, key));
  }

  void finish() const {
    for (const auto& [k, v, used] : entries_)
      if (!used) throw ParseError("unknown header key '" + k + "'");
  }

  const std::vector<std::string_view>& body() const { return body_; }
  std::size_t body_line(std::size_t offset) const { return body_start_ + offset; }

 private:
  std::vector<std::tuple<std::string, std::string, bool>> entries_;
  std::vector<std::string_view> body_;
  std::size_t body_start_ = 1;
};

NumericMode parse_numeric_mode(const std::string& value) {
  if (value == "decimal") return NumericMode::decimal;
  if (value == "hex") return NumericMode::hex;
  throw ParseError("unknown numeric mode '" + value + "'");
}

void check_format_and_kind(HeaderFields& h, std::string_view kind) {
  const auto version = h.require("format_version");
  if (version != "1") throw ParseError("unsupported format_version '" + version + "'");
  const auto actual = h.require("kind");
  if (actual != kind)
    throw ParseError("expected kind=" + std::string(kind) + ", found kind=" + actual);
}

void append_header(std::string& out, std::string_view key, std::string_view value) {
  out += "# ";
  out += key;
  out += '=';
  out += value;
  out += '\n';
}

Partition parse_partition_line(std::string_view line, std::size_t line_no, int arity,
                               Index expected_size) {
  const auto tokens = split_tokens(line, line_no);
  if (tokens.empty() || tokens[0] != "partition")
    fail(line_no, "expected a 'partition' line");
  if (static_cast<Index>(tokens.size()) - 1 != expected_size)
    fail(line_no, "expected " + std::to_string(expected_size) + " labels, found " +
                      std::to_string(tokens.size() - 1));
  std::vector<int> labels;
  labels.reserve(tokens.size() - 1);
  for (std::size_t t = 1; t < tokens.size(); ++t)
    labels.push_back(static_cast<int>(parse_int(tokens[t], line_no)));
  try {
    return Partition(arity, std::move(labels));
  } catch (const std::invalid_argument& e) {
    fail(line_no, e.what());
  }
}

}  // namespace

std::string_view numeric_mode_name(NumericMode mode) {
  return mode == NumericMode::decimal ? "decimal" : "hex";
}

std::string format_double(double value, NumericMode mode) {
  if (!std::isfinite(value))
    throw std::invalid_argument("format_double: non-finite value");
  char buffer[64];
  const auto res = mode == NumericMode::decimal
                       ? std::to_chars(buffer, buffer + sizeof(buffer), value)
                       : std::to_chars(buffer, buffer + sizeof(buffer), value,
                                       std::chars_format::hex);
  return std::string(buffer, res.ptr);
}

double parse_double(std::string_view token, NumericMode mode) {
  double value = 0;
  const auto fmt = mode == NumericMode::decimal ? std::chars_format::general
                                                : std::chars_format::hex;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value, fmt);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw ParseError("bad number '" + std::string(token) + "'");
  if (!std::isfinite(value))
    throw ParseError("non-finite number '" + std::string(token) + "'");
  return value;
}

std::string format_complex(const Complex& value, NumericMode mode) {
  return format_double(value.real(), mode) + "," + format_double(value.imag(), mode);
}

Complex parse_complex(std::string_view token, NumericMode mode) {
  const auto comma = token.find(',');
  if (comma == std::string_view::npos)
    throw ParseError("complex entry '" + std::string(token) + "' has no comma");
  return {parse_double(token.substr(0, comma), mode),
          parse_double(token.substr(comma + 1), mode)};
}

std::string serialize(const MatrixFile& file) {
  const auto& m = file.matrix;
  if (m.rows() < 1 || m.cols() < 1)
    throw std::invalid_argument("serialize: empty matrix");
  if (!file.construction.empty() && file.construction != "stack" &&
      file.construction != "projection" && file.construction != "block")
    throw std::invalid_argument("serialize: unknown construction '" + file.construction + "'");
  std::string out;
  append_header(out, "format_version", "1");
  append_header(out, "kind", "matrix");
  append_header(out, "numeric", numeric_mode_name(file.numeric));
  append_header(out, "rows", std::to_string(m.rows()));
  append_header(out, "cols", std::to_string(m.cols()));
  if (!file.construction.empty()) append_header(out, "construction", file.construction);
  if (file.r) append_header(out, "r", std::to_string(*file.r));
  if (file.n) append_header(out, "n", std::to_string(*file.n));
  if (file.block_k) append_header(out, "block_k", std::to_string(*file.block_k));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ' ';
      out += format_complex(m(i, j), file.numeric);
    }
    out += '\n';
  }
  return out;
}

MatrixFile parse_matrix(std::string_view text) {
  HeaderFields h(text);
  check_format_and_kind(h, "matrix");
  MatrixFile file;
  file.numeric = parse_numeric_mode(h.require("numeric"));
  const auto rows = h.require_int("rows");
  const auto cols = h.require_int("cols");
  if (rows < 1 || cols < 1) throw ParseError("matrix dimensions must be >= 1");
  if (auto c = h.take("construction")) {
    if (*c != "stack" && *c != "projection" && *c != "block")
      throw ParseError("unknown construction '" + *c + "'");
    file.construction = *c;
  }
  file.r = h.take_int("r");
  file.n = h.take_int("n");
  file.block_k = h.take_int("block_k");
  h.finish();
  if (static_cast<long long>(h.body().size()) != rows)
    throw ParseError("expected " + std::to_string(rows) + " body lines, found " +
                     std::to_string(h.body().size()));
  file.matrix.resize(rows, cols);
  for (std::size_t i = 0; i < h.body().size(); ++i) {
    const auto line_no = h.body_line(i);
    const auto tokens = split_tokens(h.body()[i], line_no);
    if (static_cast<long long>(tokens.size()) != cols)
      fail(line_no, "expected " + std::to_string(cols) + " entries, found " +
                        std::to_string(tokens.size()));
    for (std::size_t j = 0; j < tokens.size(); ++j)
      file.matrix(static_cast<Index>(i), static_cast<Index>(j)) =
          parse_complex(tokens[j], file.numeric);
  }
  return file;
}

std::string serialize(const CertificateFile& file) {
  const auto& w = file.witness;
  const Index support_size = w.support.size();
  if (support_size < 1) throw std::invalid_argument("serialize: empty witness support");
  if (w.coefficients.size() != support_size)
    throw std::invalid_argument("serialize: coefficient count differs from support");
  if (file.partition.size() != file.params.rows())
    throw std::invalid_argument("serialize: partition size differs from frame rows");
  if (file.partition_source.empty() ||
      file.partition_source.find('\n') != std::string::npos)
    throw std::invalid_argument("serialize: bad partition_source");
  std::string out;
  append_header(out, "format_version", "1");
  append_header(out, "kind", "certificate");
  append_header(out, "numeric", numeric_mode_name(file.numeric));
  append_header(out, "r", std::to_string(file.params.r));
  append_header(out, "n", std::to_string(file.params.n));
  append_header(out, "k", std::to_string(w.k));
  append_header(out, "j", std::to_string(w.j));
  append_header(out, "support_size", std::to_string(support_size));
  append_header(out, "bound_exact", w.bound_exact.str());
  append_header(out, "bound", format_double(w.bound, file.numeric));
  append_header(out, "achieved", format_double(w.achieved, file.numeric));
  append_header(out, "unscaled_tail_norm_sq",
                format_double(w.unscaled_tail_norm_sq, file.numeric));
  append_header(out, "constraint_residual",
                format_double(w.constraint_residual, file.numeric));
  append_header(out, "zero_prefix_max", format_double(w.zero_prefix_max, file.numeric));
  append_header(out, "partition_source", file.partition_source);
  append_header(out, "verified", file.verified ? "true" : "false");
  out += "partition";
  for (int label : file.partition.assignment) out += " " + std::to_string(label);
  out += "\nsupport";
  for (Index row : w.support.indices()) out += " " + std::to_string(row);
  out += '\n';
  for (Index t = 0; t < support_size; ++t)
    out += "coeff " + format_complex(w.coefficients(t), file.numeric) + "\n";
  return out;
}

CertificateFile parse_certificate(std::string_view text) {
  HeaderFields h(text);
  check_format_and_kind(h, "certificate");
  CertificateFile file;
  file.numeric = parse_numeric_mode(h.require("numeric"));
  const int r = static_cast<int>(h.require_int("r"));
  const int n = static_cast<int>(h.require_int("n"));
  try {
    file.params = FrameParams(r, n);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  file.witness.k = static_cast<int>(h.require_int("k"));
  file.witness.j = static_cast<int>(h.require_int("j"));
  const auto support_size = h.require_int("support_size");
  if (support_size < 1) throw ParseError("support_size must be >= 1");
  try {
    file.witness.bound_exact = Rational::parse(h.require("bound_exact"));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("bound_exact: ") + e.what());
  }
  file.witness.bound = parse_double(h.require("bound"), file.numeric);
  file.witness.achieved = parse_double(h.require("achieved"), file.numeric);
  file.witness.unscaled_tail_norm_sq =
      parse_double(h.require("unscaled_tail_norm_sq"), file.numeric);
  file.witness.constraint_residual =
      parse_double(h.require("constraint_residual"), file.numeric);
  file.witness.zero_prefix_max =
      parse_double(h.require("zero_prefix_max"), file.numeric);
  file.partition_source = h.require("partition_source");
  const auto verified = h.require("verified");
  if (verified != "true" && verified != "false")
    throw ParseError("verified must be true or false");
  file.verified = verified == "true";
  h.finish();

  const auto& body = h.body();
  if (static_cast<long long>(body.size()) != 2 + support_size)
    throw ParseError("expected " + std::to_string(2 + support_size) +
                     " body lines, found " + std::to_string(body.size()));
  file.partition =
      parse_partition_line(body[0], h.body_line(0), r, file.params.rows());

  const auto support_line = h.body_line(1);
  const auto support_tokens = split_tokens(body[1], support_line);
  if (support_tokens.empty() || support_tokens[0] != "support")
    fail(support_line, "expected a 'support' line");
  if (static_cast<long long>(support_tokens.size()) - 1 != support_size)
    fail(support_line, "expected " + std::to_string(support_size) + " support rows");
  std::vector<Index> support;
  for (std::size_t t = 1; t < support_tokens.size(); ++t)
    support.push_back(parse_int(support_tokens[t], support_line));
  try {
    file.witness.support = IndexSet(std::move(support), file.params.rows());
  } catch (const std::exception& e) {
    fail(support_line, e.what());
  }

  file.witness.coefficients.resize(support_size);
  for (long long t = 0; t < support_size; ++t) {
    const auto line_no = h.body_line(static_cast<std::size_t>(2 + t));
    const auto tokens = split_tokens(body[static_cast<std::size_t>(2 + t)], line_no);
    if (tokens.size() != 2 || tokens[0] != "coeff")
      fail(line_no, "expected 'coeff re,im'");
    file.witness.coefficients(static_cast<Index>(t)) =
        parse_complex(tokens[1], file.numeric);
  }
  return file;
}

std::string serialize(const PartitionFile& file) {
  if (file.partition.size() < 1)
    throw std::invalid_argument("serialize: empty partition");
  std::string out;
  append_header(out, "format_version", "1");
  append_header(out, "kind", "partition");
  append_header(out, "arity", std::to_string(file.partition.arity));
  if (file.r) append_header(out, "r", std::to_string(*file.r));
  if (file.n) append_header(out, "n", std::to_string(*file.n));
  out += "partition";
  for (int label : file.partition.assignment) out += " " + std::to_string(label);
  out += '\n';
  return out;
}

PartitionFile parse_partition(std::string_view text) {
  HeaderFields h(text);
  check_format_and_kind(h, "partition");
  const int arity = static_cast<int>(h.require_int("arity"));
  if (arity < 1) throw ParseError("arity must be >= 1");
  PartitionFile file;
  file.r = h.take_int("r");
  file.n = h.take_int("n");
  h.finish();
  if (h.body().size() != 1)
    throw ParseError("expected exactly one body line, found " +
                     std::to_string(h.body().size()));
  const auto tokens = split_tokens(h.body()[0], h.body_line(0));
  if (tokens.empty() || tokens[0] != "partition")
    fail(h.body_line(0), "expected a 'partition' line");
  file.partition = parse_partition_line(h.body()[0], h.body_line(0), arity,
                                        static_cast<Index>(tokens.size()) - 1);
  return file;
}

std::string_view file_kind_name(FileKind kind) {
  switch (kind) {
    case FileKind::matrix: return "matrix";
    case FileKind::certificate: return "certificate";
    case FileKind::partition: return "partition";
  }
  throw std::invalid_argument("file_kind_name: unknown kind");
}

FileKind sniff_kind(std::string_view text) {
  for (const auto line : split_lines(text)) {
    if (!line.starts_with("# ")) break;
    if (line.starts_with("# kind=")) {
      const auto value = line.substr(7);
      if (value == "matrix") return FileKind::matrix;
      if (value == "certificate") return FileKind::certificate;
      if (value == "partition") return FileKind::partition;
      throw ParseError("unknown kind '" + std::string(value) + "'");
    }
  }
  throw ParseError("no kind header found");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed while reading '" + path.string() + "'");
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw IoError("failed while writing '" + path.string() + "'");
}

}  // namespace nopave::io
