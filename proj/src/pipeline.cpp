#include "johnforge/pipeline.hpp"

#include <sstream>

#include "johnforge/json_out.hpp"

namespace johnforge {

namespace {

std::string solvability_json(const SolvabilityReport& rep) {
  std::string s = "{\"schema\":\"john-forge/1\",\"solvability\":\"";
  s += rep.kind == SolvabilityKind::Interior
           ? "interior"
           : (rep.kind == SolvabilityKind::Boundary ? "boundary" : "outside");
  s += "\",\"t_star\":" + jsonout::num(rep.t_star);
  s += ",\"full_rank\":";
  s += rep.full_rank ? "true" : "false";
  if (rep.kind == SolvabilityKind::Outside && rep.witness.dim() > 0) {
    s += ",\"witness\":{\"M\":" + jsonout::mat(rep.witness.M);
    s += ",\"w\":" + jsonout::vec(rep.witness.w) + "}";
  }
  s += "}";
  return s;
}

}  // namespace

DecomposeOutcome run_decompose(const ConvexBody& body,
                               const DecomposeOptions& opt) {
  DecomposeOutcome out;
  std::ostringstream diag;

  out.position = to_loewner(body, opt.mvee_eps);
  if (opt.verbose) {
    diag << "position: A = " << out.position.A.reshaped().transpose()
         << ", v = " << out.position.v.transpose() << "\n";
  }

  out.contacts = contact_points(out.position.body, opt.contact_tol);
  if (out.contacts.full_sphere)
    throw InvalidInput(
        "decompose: contact set is the full sphere; the discrete pipeline "
        "needs a finite contact set");
  if (opt.verbose)
    diag << "contacts: " << out.contacts.points.size() << " points\n";

  out.solvability = solvability_check(out.contacts.points);
  if (opt.verbose) diag << "solvability: " << out.solvability.describe() << "\n";
  if (out.solvability.kind != SolvabilityKind::Interior) {
    out.exit_code = kExitSolvability;
    out.json = solvability_json(out.solvability);
    diag << "decompose: contact configuration is "
         << (out.solvability.kind == SolvabilityKind::Boundary ? "boundary"
                                                               : "outside")
         << "; no strictly positive isotropic weights exist\n";
    out.diagnostics = diag.str();
    return out;
  }

  DiscreteMeasureProblem prob(out.contacts.points, opt.F);
  out.minimize = minimize_Ic(prob, opt.minimize);
  if (opt.verbose)
    diag << "minimize: " << out.minimize.iterations
         << " iterations, grad norm " << out.minimize.grad_norm << "\n";
  if (out.minimize.status == MinimizeStatus::NotCoercive) {
    out.exit_code = kExitNotCoercive;
    out.json =
        "{\"schema\":\"john-forge/1\",\"error\":\"not_coercive\","
        "\"iterations\":" +
        std::to_string(out.minimize.iterations) + "}";
    diag << "decompose: objective not coercive (escaping ray)\n";
    out.diagnostics = diag.str();
    return out;
  }
  if (out.minimize.status == MinimizeStatus::MaxIter)
    throw MaxIterations("decompose: minimize_Ic hit the iteration cap");

  out.measure = extract_weights(prob, out.minimize.minimizer);
  out.verification = verify_john(out.measure);
  out.json = measure_report_json(out.measure, out.verification);
  if (!out.verification.pass) {
    out.exit_code = kExitVerification;
    diag << "decompose: verification failed (residual_iso "
         << out.verification.residual_iso << ", residual_center "
         << out.verification.residual_center << ")\n";
  }
  out.diagnostics = diag.str();
  return out;
}

}  // namespace johnforge
