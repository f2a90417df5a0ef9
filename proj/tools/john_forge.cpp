// john_forge: position convex bodies, extract John decompositions, and run
// the r-flow experiments. JSON on stdout, diagnostics on stderr.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "johnforge/flow.hpp"
#include "johnforge/json_out.hpp"
#include "johnforge/pipeline.hpp"

using namespace johnforge;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& json, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << json << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw InvalidInput("cannot open output file: " + out_path);
    out << json << "\n";
  }
}

// Points for mvee: either {"points": [[...],...]} or a body whose vertices
// are used.
Matrix load_points(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("points JSON parse error: ") + e.what());
  }
  if (j.contains("points")) {
    const auto& pr = j["points"];
    if (pr.empty()) throw InvalidInput("points JSON: empty list");
    Matrix P(static_cast<int>(pr.size()), static_cast<int>(pr[0].size()));
    for (size_t i = 0; i < pr.size(); ++i)
      for (size_t k = 0; k < pr[i].size(); ++k)
        P(static_cast<int>(i), static_cast<int>(k)) = pr[i][k].get<double>();
    return P;
  }
  return ConvexBody::from_json(text).vertices();
}

std::string position_json(const LoewnerPosition& pos) {
  std::string s = "{\"schema\":\"john-forge/1\",\"A\":" + jsonout::mat(pos.A);
  s += ",\"v\":" + jsonout::vec(pos.v);
  s += ",\"body\":" + pos.body.to_json() + "}";
  return s;
}

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

struct Args {
  std::string body_file;
  std::string F_name = "exp";
  double eps = 1e-7;
  double tol = 1e-6;
  std::vector<double> rs;
  long quad_budget = 1L << 27;
  bool verbose = false;
  std::string out_file;
};

int run(const std::string& cmd, const Args& a) {
  if (cmd == "mvee") {
    Matrix P = load_points(read_file(a.body_file));
    MveeResult mv = mvee(P, a.eps);
    emit(mv.ellipsoid.to_json(), a.out_file);
    return kExitOk;
  }

  ConvexBody body = ConvexBody::from_json(read_file(a.body_file));

  if (cmd == "position") {
    emit(position_json(to_loewner(body, a.eps)), a.out_file);
    return kExitOk;
  }
  if (cmd == "contacts") {
    LoewnerPosition pos = to_loewner(body, a.eps);
    emit(contact_points(pos.body, a.tol).to_json(), a.out_file);
    return kExitOk;
  }
  if (cmd == "check") {
    LoewnerPosition pos = to_loewner(body, a.eps);
    ContactSet cs = contact_points(pos.body, a.tol);
    if (cs.full_sphere)
      throw InvalidInput("check: contact set is the full sphere");
    SolvabilityReport rep = solvability_check(cs.points);
    emit(solvability_json(rep), a.out_file);
    return rep.kind == SolvabilityKind::Interior ? kExitOk : kExitSolvability;
  }
  if (cmd == "decompose" || cmd == "verify") {
    DecomposeOptions opt;
    opt.F = ObjectiveF::from_name(a.F_name);
    opt.mvee_eps = a.eps;
    opt.contact_tol = a.tol;
    opt.verbose = a.verbose;
    DecomposeOutcome out = run_decompose(body, opt);
    if (!out.diagnostics.empty()) std::cerr << out.diagnostics;
    if (cmd == "verify") {
      // verify = decompose, reporting only the verification block.
      if (out.exit_code == kExitOk || out.exit_code == kExitVerification) {
        std::string s =
            "{\"schema\":\"john-forge/1\",\"pass\":";
        s += out.verification.pass ? "true" : "false";
        s += ",\"lambda\":" + jsonout::num(out.verification.lambda);
        s += ",\"residual_iso\":" + jsonout::num(out.verification.residual_iso);
        s += ",\"residual_center\":" +
             jsonout::num(out.verification.residual_center);
        s += ",\"min_weight\":" + jsonout::num(out.verification.min_weight);
        s += "}";
        emit(s, a.out_file);
        return out.exit_code;
      }
    }
    emit(out.json, a.out_file);
    return out.exit_code;
  }
  if (cmd == "flow") {
    std::vector<double> rs = a.rs.empty()
                                 ? std::vector<double>{0.9, 0.95, 0.99}
                                 : a.rs;
    flow::FlowMinimizeConfig cfg;
    cfg.quad.max_nodes = a.quad_budget;
    std::string s = "{\"schema\":\"john-forge/1\",\"records\":[";
    double prev_dev = -1.0;
    bool decreasing = true;
    for (size_t i = 0; i < rs.size(); ++i) {
      flow::FlowResult fr = flow::minimize_Lr(body, rs[i], cfg);
      if (a.verbose)
        std::cerr << "r = " << rs[i] << ": " << fr.iterations
                  << " iterations, value " << fr.value << "\n";
      if (i) s += ",";
      s += fr.to_json();
      const double dev =
          (fr.A - Matrix::Identity(2, 2)).norm() + fr.v.norm();
      if (prev_dev >= 0 && dev > prev_dev) decreasing = false;
      prev_dev = dev;
    }
    s += "],\"summary\":{\"deviation_decreasing\":";
    s += decreasing ? "true" : "false";
    s += ",\"final_deviation\":" + jsonout::num(prev_dev) + "}}";
    emit(s, a.out_file);
    return kExitOk;
  }
  throw InvalidInput("unknown subcommand: " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"John/Loewner isotropic decomposition toolkit"};
  app.require_subcommand(1);
  Args a;
  std::string cmd;
  for (const char* name :
       {"mvee", "position", "contacts", "check", "decompose", "flow",
        "verify"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--body", a.body_file, "input JSON file")->required();
    sub->add_option("--F", a.F_name, "objective: exp|paperconv|shiftedsquare");
    sub->add_option("--eps", a.eps, "MVEE tolerance");
    sub->add_option("--tol", a.tol, "contact tolerance");
    sub->add_option("--rs", a.rs, "flow r values")->delimiter(',');
    sub->add_option("--quad-budget", a.quad_budget, "quadrature node budget");
    sub->add_flag("--verbose", a.verbose, "emit intermediate artifacts");
    sub->add_option("--out", a.out_file, "write JSON here instead of stdout");
    sub->callback([&cmd, name] { cmd = name; });
  }
  CLI11_PARSE(app, argc, argv);

  try {
    return run(cmd, a);
  } catch (const QuadratureBudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitQuadBudget;
  } catch (const DegenerateInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const DegenerateHull& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const TooFewContacts& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
}
