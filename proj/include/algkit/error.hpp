#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace algkit {

enum class ErrorKind {
  SyntaxError,
  UnknownSymbol,
  DivisionByZero,
  DescriptorMismatch,
  NoTowerPath,
  CharZero,
  InvalidDescriptor,
  IrreducibilityUnproven,
  AmbientMismatch,
  DimensionMismatch,
  NotAssociative,
  UnitFails,
  WrongCharacteristic,
  CertificateRejected,
  NotIdempotent,
  NotOrthogonal,
  NotComplete,
  NotPrimitive,
  UnsupportedShape,
  ActionAxiomFails,
  DualityFails,
  CyclicWithoutBound,
  NotBasic,
  NotHomogeneousEndpoints,
  ArrowMissing,
  NotCanonicalSet,
  RelationOutOfBound,
  EquivarianceFails,
  NotSplit,
  SectionMissing,
  BoundViolation,
  NotIsomorphic,
  UnknownExample,
  DocumentError,
  NotAModule,
};

std::string_view to_string(ErrorKind kind);

/// Every recoverable failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace algkit
