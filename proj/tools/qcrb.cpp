// Copyright 2026 The qcrb authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qcrb/io.hpp"
#include "qcrb/sim.hpp"

namespace {

using namespace qcrb;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_info(const std::string& model_path) {
  QuantumModel model = model_from_json(read_json_file(model_path));
  FisherData f = fisher(model);
  json out;
  out["dim"] = model.dim();
  out["nparams"] = model.nparams();
  if (!model.names.empty()) out["names"] = model.names;
  out["rho_eigenvalues"] = rvec_to_json(eig_hermitian(model.rho).eigenvalues);
  out["slds"] = json::array();
  for (const CMat& l : f.slds) out["slds"].push_back(cmat_to_json(l));
  out["J"] = rmat_to_json(f.J);
  out["lambda_min_J"] = min_eigenvalue(f.J);
  std::cout << dump17(out) << "\n";
  return 0;
}

int cmd_bound(const std::string& model_path, const std::string& weight_path,
              const std::string& method, const std::string& format, double tol,
              uint64_t seed, int max_rounds) {
  QuantumModel model = model_from_json(read_json_file(model_path));
  FisherData f = fisher(model);
  WeightForm w = weight_from_json(read_json_file(weight_path), model.nparams());
  const double sld_bound = (inv_sym_pd(f.J, "bound: J") * w.g).trace();

  const bool want_random = method == "random" || method == "both";
  const bool want_dual = method == "dual" || method == "both";

  json out;
  out["sld_bound"] = sld_bound;
  out["random"] = nullptr;
  out["dual"] = nullptr;
  out["gap"] = nullptr;

  BoundReport rb;
  if (want_random) {
    rb = random_bound_report(f, w);
    out["random"] = bound_report_to_json(rb);
  }

  bool dual_converged = true;
  DualSolveResult ds;
  if (want_dual) {
    DualOptions opts;
    opts.eps_feas = tol;
    opts.seed = seed;
    opts.max_rounds = max_rounds;
    ds = dual_bound(model, f, w, opts);
    dual_converged = ds.converged;
    json dj = certificate_to_json(ds.cert, ds.rounds);
    dj["converged"] = ds.converged;
    out["dual"] = dj;
  }
  if (want_random && want_dual) out["gap"] = rb.bound - ds.cert.spur;

  if (format == "csv") {
    std::cout << "sld_bound,random_bound,dual_spur,dual_margin,dual_rounds,gap\n";
    std::cout << fmt17(sld_bound) << ",";
    std::cout << (want_random ? fmt17(rb.bound) : "") << ",";
    std::cout << (want_dual ? fmt17(ds.cert.spur) : "") << ",";
    std::cout << (want_dual ? fmt17(ds.cert.feasibility_margin) : "") << ",";
    std::cout << (want_dual ? std::to_string(ds.rounds) : "") << ",";
    std::cout << (want_random && want_dual ? fmt17(rb.bound - ds.cert.spur) : "") << "\n";
  } else {
    std::cout << dump17(out) << "\n";
  }
  return dual_converged ? 0 : 2;
}

int cmd_check_random(const std::string& model_path, double tol) {
  QuantumModel model = model_from_json(read_json_file(model_path));
  FisherData f = fisher(model);
  RandomnessReport rep = check_randomness(model, f, tol);
  std::cout << dump17(randomness_to_json(rep)) << "\n";
  return 0;
}

int cmd_simulate(const std::string& model_path, const std::string& weight_path,
                 long long samples, uint64_t seed) {
  QuantumModel model = model_from_json(read_json_file(model_path));
  FisherData f = fisher(model);
  WeightForm w = weight_from_json(read_json_file(weight_path), model.nparams());
  RandomMeasurementPlan plan = build_plan(model, f, w);
  RMat exact = exact_covariance(plan, model.rho);
  SampleStats stats = sample(plan, model.rho, samples, seed);

  std::cout << "component_i,component_j,exact,empirical,stderr\n";
  for (int i = 0; i < plan.nparams(); ++i)
    for (int j = 0; j < plan.nparams(); ++j)
      std::cout << i << "," << j << "," << fmt17(exact(i, j)) << ","
                << fmt17(stats.cov(i, j)) << "," << fmt17(stats.std_err(i, j)) << "\n";
  return 0;
}

int cmd_limit(const std::string& model_path, const std::string& cov_path, double tol) {
  QuantumModel model = model_from_json(read_json_file(model_path));
  FisherData f = fisher(model);
  RMat v = cov_from_json(read_json_file(cov_path), model.nparams());

  LimitWitness lw = limit_membership(v, f.J, tol);
  json out;
  out["member"] = lw.member;
  out["W"] = rmat_to_json(lw.W);
  out["trace_W"] = lw.W.trace();
  if (model.nparams() == 2) {
    LimitWitness2 l2 = limit_membership_2param(v, f.J, tol);
    json two;
    two["member"] = l2.member;
    two["X"] = rmat_to_json(l2.X);
    two["det_X"] = l2.X(0, 0) * l2.X(1, 1) - l2.X(0, 1) * l2.X(1, 0);
    out["two_param"] = two;
  }
  std::cout << dump17(out) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Attainable quantum Cramer-Rao bounds: closed-form random-measurement "
               "optimum, LP dual certificates, and the randomness condition"};
  app.require_subcommand(1);

  std::string model_path, weight_path, cov_path;
  std::string method = "both", format = "json";
  double tol = 1e-8, rand_tol = 1e-10;
  std::uint64_t seed = 0;
  int max_rounds = 200;
  long long samples = 100000;

  CLI::App* info = app.add_subcommand("info", "Model summary: SLDs and Fisher matrix");
  info->add_option("--model", model_path, "model JSON file")->required();

  CLI::App* bound = app.add_subcommand("bound", "Lower bounds on the weighted variance");
  bound->add_option("--model", model_path, "model JSON file")->required();
  bound->add_option("--weight", weight_path, "weight JSON file")->required();
  bound->add_option("--method", method, "random|dual|both")
      ->check(CLI::IsMember({"random", "dual", "both"}));
  bound->add_option("--tol", tol, "dual feasibility tolerance");
  bound->add_option("--seed", seed, "random seed");
  bound->add_option("--max-rounds", max_rounds, "cutting plane round limit");
  bound->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  CLI::App* chk = app.add_subcommand("check-random", "Test the randomness condition");
  chk->add_option("--model", model_path, "model JSON file")->required();
  chk->add_option("--tol", rand_tol, "residual threshold");

  CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo run of the optimal plan");
  sim->add_option("--model", model_path, "model JSON file")->required();
  sim->add_option("--weight", weight_path, "weight JSON file")->required();
  sim->add_option("--samples", samples, "number of samples")->required();
  sim->add_option("--seed", seed, "random seed");

  CLI::App* limit = app.add_subcommand("limit", "Attainable-frontier membership of a covariance");
  limit->add_option("--model", model_path, "model JSON file")->required();
  limit->add_option("--cov", cov_path, "covariance JSON file")->required();
  limit->add_option("--tol", tol, "membership tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (info->parsed()) return cmd_info(model_path);
    if (bound->parsed())
      return cmd_bound(model_path, weight_path, method, format, tol, seed, max_rounds);
    if (chk->parsed()) return cmd_check_random(model_path, rand_tol);
    if (sim->parsed()) return cmd_simulate(model_path, weight_path, samples, seed);
    if (limit->parsed()) return cmd_limit(model_path, cov_path, tol);
  } catch (const qcrb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
