#pragma once

#include <string>

#include "johnforge/isotropic.hpp"
#include "johnforge/loewner.hpp"
#include "johnforge/minimize.hpp"

namespace johnforge {

// Exit-code vocabulary shared by the CLI and the pipeline runner.
//   0 success, 1 parse/config error, 2 degenerate input,
//   3 solvability not Interior, 4 not coercive, 5 verification failure,
//   6 quadrature budget exceeded.
enum ExitCode {
  kExitOk = 0,
  kExitParse = 1,
  kExitDegenerate = 2,
  kExitSolvability = 3,
  kExitNotCoercive = 4,
  kExitVerification = 5,
  kExitQuadBudget = 6,
};

struct DecomposeOptions {
  ObjectiveF F = ObjectiveF::exp();
  double mvee_eps = 1e-7;
  double contact_tol = 1e-6;
  MinimizeConfig minimize;
  bool verbose = false;
};

struct DecomposeOutcome {
  int exit_code = kExitOk;
  std::string json;         // stdout payload (one JSON object)
  std::string diagnostics;  // stderr text (human-readable)

  LoewnerPosition position;
  ContactSet contacts;
  SolvabilityReport solvability;
  MinimizeResult minimize;
  IsotropicMeasure measure;
  VerificationReport verification;
};

/// to_loewner -> contact_points -> solvability_check -> minimize_Ic ->
/// extract_weights -> verify_john. Solvability/coercivity/verification
/// failures are reported through exit_code (3/4/5) with the witness or the
/// failing report serialized in `json`; structural errors (degenerate
/// hulls, bad bodies) propagate as exceptions.
DecomposeOutcome run_decompose(const ConvexBody& body,
                               const DecomposeOptions& opt = {});

}  // namespace johnforge
