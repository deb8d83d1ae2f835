#pragma once

#include "nopave/witness.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

// Line-oriented text files. A file is a run of "# key=value" header lines
// followed by a body; keys are emitted in a fixed order and parsed strictly
// (unknown or duplicate keys are errors), so serialize(parse(text)) is the
// identity on anything this module wrote. Numbers use std::to_chars shortest
// decimal form by default, or hex floats when numeric=hex; either way parsing
// recovers the exact bits. Complex entries are "re,im" pairs.
//
// kind=matrix       body: rows lines of cols entries, space separated
// kind=certificate  body: "partition <labels>", "support <rows>", coeff lines
// kind=partition    body: "partition <labels>"

namespace nopave::io {

enum class NumericMode { decimal, hex };

std::string_view numeric_mode_name(NumericMode mode);

/// Shortest round-trip representation (decimal) or hex-float form.
std::string format_double(double value, NumericMode mode);
/// Inverse of format_double; rejects partial parses and non-finite values.
double parse_double(std::string_view token, NumericMode mode);

std::string format_complex(const Complex& value, NumericMode mode);
Complex parse_complex(std::string_view token, NumericMode mode);

struct MatrixFile {
  ComplexMatrix matrix;
  NumericMode numeric = NumericMode::decimal;
  std::string construction;      // "stack", "projection", "block", or empty
  std::optional<int> r;
  std::optional<int> n;
  std::optional<int> block_k;
};

std::string serialize(const MatrixFile& file);
MatrixFile parse_matrix(std::string_view text);

struct CertificateFile {
  FrameParams params{2, 1};
  Partition partition;
  RieszWitness witness;
  std::string partition_source;  // "seed:<s>", "file:<path>", or "explicit"
  bool verified = false;
  NumericMode numeric = NumericMode::decimal;
};

std::string serialize(const CertificateFile& file);
CertificateFile parse_certificate(std::string_view text);

struct PartitionFile {
  Partition partition;
  std::optional<int> r;
  std::optional<int> n;
};

std::string serialize(const PartitionFile& file);
PartitionFile parse_partition(std::string_view text);

enum class FileKind { matrix, certificate, partition };
std::string_view file_kind_name(FileKind kind);

/// Reads just the kind= header.
FileKind sniff_kind(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace nopave::io
