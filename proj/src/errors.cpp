#include "critgrass/errors.hpp"

namespace critgrass {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonBipartite: return "NonBipartite";
    case Errc::BoundaryDegree: return "BoundaryDegree";
    case Errc::BadRotation: return "BadRotation";
    case Errc::NonPlanarEmbedding: return "NonPlanarEmbedding";
    case Errc::StrandCycle: return "StrandCycle";
    case Errc::NoMatching: return "NoMatching";
    case Errc::PatternMismatch: return "PatternMismatch";
    case Errc::LimitNoMatching: return "LimitNoMatching";
    case Errc::OutOfBounds: return "OutOfBounds";
    case Errc::NotBijective: return "NotBijective";
    case Errc::BadSum: return "BadSum";
    case Errc::HasLoop: return "HasLoop";
    case Errc::IntervalTooLong: return "IntervalTooLong";
    case Errc::DegenerateIndices: return "DegenerateIndices";
    case Errc::Precondition: return "Precondition";
    case Errc::DisconnectedDiagram: return "DisconnectedDiagram";
    case Errc::TooLarge: return "TooLarge";
    case Errc::MissingData: return "MissingData";
    case Errc::StratumMismatch: return "StratumMismatch";
    case Errc::NotAChain: return "NotAChain";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::NotContracted: return "NotContracted";
    case Errc::PrunedNoMatching: return "PrunedNoMatching";
    case Errc::BranchUnavailable: return "BranchUnavailable";
    case Errc::PolygonInequalityViolated: return "PolygonInequalityViolated";
    case Errc::NotInHypersimplex: return "NotInHypersimplex";
    case Errc::Parse: return "Parse";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace critgrass
