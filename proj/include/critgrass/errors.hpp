#pragma once

#include <stdexcept>
#include <string>

namespace critgrass {

enum class Errc {
  NonBipartite,
  BoundaryDegree,
  BadRotation,
  NonPlanarEmbedding,
  StrandCycle,
  NoMatching,
  PatternMismatch,
  LimitNoMatching,
  OutOfBounds,
  NotBijective,
  BadSum,
  HasLoop,
  IntervalTooLong,
  DegenerateIndices,
  Precondition,
  DisconnectedDiagram,
  TooLarge,
  MissingData,
  StratumMismatch,
  NotAChain,
  NotAdmissible,
  NotContracted,
  PrunedNoMatching,
  BranchUnavailable,
  PolygonInequalityViolated,
  NotInHypersimplex,
  Parse,
  Internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& what) { throw Error(c, what); }

inline void require(bool ok, Errc c, const std::string& what) {
  if (!ok) fail(c, what);
}

}  // namespace critgrass
