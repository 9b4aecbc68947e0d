#include "tsflow/error.hpp"

namespace tsflow {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
  case Errc::UnknownTerm: return "UnknownTerm";
  case Errc::SyntaxError: return "SyntaxError";
  case Errc::StructureError: return "StructureError";
  case Errc::IoError: return "IoError";
  case Errc::HeaderMismatch: return "HeaderMismatch";
  case Errc::EmptySeries: return "EmptySeries";
  case Errc::AllMissing: return "AllMissing";
  case Errc::MissingValues: return "MissingValues";
  case Errc::DegenerateSeries: return "DegenerateSeries";
  case Errc::WindowTooLarge: return "WindowTooLarge";
  case Errc::SeriesTooShort: return "SeriesTooShort";
  case Errc::NonPositiveValue: return "NonPositiveValue";
  case Errc::BadTimestamps: return "BadTimestamps";
  case Errc::LagTooLarge: return "LagTooLarge";
  case Errc::SingularRegression: return "SingularRegression";
  case Errc::SingularSystem: return "SingularSystem";
  case Errc::NonConvergence: return "NonConvergence";
  case Errc::UnconvergedModel: return "UnconvergedModel";
  case Errc::LengthMismatch: return "LengthMismatch";
  case Errc::ZeroActual: return "ZeroActual";
  case Errc::MissingTraining: return "MissingTraining";
  case Errc::ZeroDenominator: return "ZeroDenominator";
  case Errc::BandTooNarrow: return "BandTooNarrow";
  case Errc::NonBinaryLabels: return "NonBinaryLabels";
  case Errc::UnsupportedOperation: return "UnsupportedOperation";
  case Errc::UnsupportedSource: return "UnsupportedSource";
  case Errc::InputError: return "InputError";
  case Errc::TypeMismatch: return "TypeMismatch";
  case Errc::NoSuchMetric: return "NoSuchMetric";
  case Errc::NotFound: return "NotFound";
  case Errc::Conflict: return "Conflict";
  case Errc::StorageError: return "StorageError";
  case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

} // namespace tsflow
