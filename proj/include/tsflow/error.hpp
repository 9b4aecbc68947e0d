#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tsflow {

// Error codes are part of the external interface: they appear verbatim in
// validation reports, run bundles and HTTP error bodies.
enum class Errc {
  UnknownTerm,
  SyntaxError,
  StructureError,
  IoError,
  HeaderMismatch,
  EmptySeries,
  AllMissing,
  MissingValues,
  DegenerateSeries,
  WindowTooLarge,
  SeriesTooShort,
  NonPositiveValue,
  BadTimestamps,
  LagTooLarge,
  SingularRegression,
  SingularSystem,
  NonConvergence,
  UnconvergedModel,
  LengthMismatch,
  ZeroActual,
  MissingTraining,
  ZeroDenominator,
  BandTooNarrow,
  NonBinaryLabels,
  UnsupportedOperation,
  UnsupportedSource,
  InputError,
  TypeMismatch,
  NoSuchMetric,
  NotFound,
  Conflict,
  StorageError,
  InvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

// Malformed JSON; offset is the byte position reported by the JSON reader.
class SyntaxError : public Error {
public:
  SyntaxError(std::size_t offset, const std::string &message)
      : Error(Errc::SyntaxError, message), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

// Document shape violation at a JSON pointer into the source text.
class StructureError : public Error {
public:
  StructureError(std::string path, const std::string &reason)
      : Error(Errc::StructureError, reason), path_(std::move(path)) {}

  const std::string &path() const noexcept { return path_; }

private:
  std::string path_;
};

} // namespace tsflow
