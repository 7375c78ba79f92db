#include "algkit/error.hpp"

namespace algkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorKind::NoTowerPath: return "NoTowerPath";
    case ErrorKind::CharZero: return "CharZero";
    case ErrorKind::InvalidDescriptor: return "InvalidDescriptor";
    case ErrorKind::IrreducibilityUnproven: return "IrreducibilityUnproven";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::UnitFails: return "UnitFails";
    case ErrorKind::WrongCharacteristic: return "WrongCharacteristic";
    case ErrorKind::CertificateRejected: return "CertificateRejected";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::UnsupportedShape: return "UnsupportedShape";
    case ErrorKind::ActionAxiomFails: return "ActionAxiomFails";
    case ErrorKind::DualityFails: return "DualityFails";
    case ErrorKind::CyclicWithoutBound: return "CyclicWithoutBound";
    case ErrorKind::NotBasic: return "NotBasic";
    case ErrorKind::NotHomogeneousEndpoints: return "NotHomogeneousEndpoints";
    case ErrorKind::ArrowMissing: return "ArrowMissing";
    case ErrorKind::NotCanonicalSet: return "NotCanonicalSet";
    case ErrorKind::RelationOutOfBound: return "RelationOutOfBound";
    case ErrorKind::EquivarianceFails: return "EquivarianceFails";
    case ErrorKind::NotSplit: return "NotSplit";
    case ErrorKind::SectionMissing: return "SectionMissing";
    case ErrorKind::BoundViolation: return "BoundViolation";
    case ErrorKind::NotIsomorphic: return "NotIsomorphic";
    case ErrorKind::UnknownExample: return "UnknownExample";
    case ErrorKind::DocumentError: return "DocumentError";
    case ErrorKind::NotAModule: return "NotAModule";
  }
  return "Error";
}

}  // namespace algkit
