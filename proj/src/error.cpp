#include "oddkh/error.hpp"

namespace oddkh {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::DuplicateName: return "DuplicateName";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::SamePartEdge: return "SamePartEdge";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::IoError: return "IoError";
    case Errc::NotSquare: return "NotSquare";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::TorsionDetected: return "TorsionDetected";
    case Errc::NotBipartite: return "NotBipartite";
    case Errc::StructureMismatch: return "StructureMismatch";
    case Errc::GiveUp: return "GiveUp";
    case Errc::NotIsolated: return "NotIsolated";
    case Errc::SignsNotOpposite: return "SignsNotOpposite";
    case Errc::NeighborhoodMixedParts: return "NeighborhoodMixedParts";
    case Errc::NotTwins: return "NotTwins";
    case Errc::PUViolation: return "PUViolation";
    case Errc::BadSigns: return "BadSigns";
    case Errc::BadNeighborhood: return "BadNeighborhood";
    case Errc::BadDirections: return "BadDirections";
    case Errc::NotPU: return "NotPU";
    case Errc::NotInverseConfiguration: return "NotInverseConfiguration";
    case Errc::NotAdjacent: return "NotAdjacent";
    case Errc::MoveFailed: return "MoveFailed";
    case Errc::SizeBound: return "SizeBound";
    case Errc::NotAFace: return "NotAFace";
    case Errc::Infeasible: return "Infeasible";
    case Errc::LemmaViolation: return "LemmaViolation";
    case Errc::CompositeMismatch: return "CompositeMismatch";
    case Errc::DSquaredNonzero: return "DSquaredNonzero";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace oddkh
