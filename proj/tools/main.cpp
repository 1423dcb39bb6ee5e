#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "fine/errors.hpp"

namespace cli = fine::cli;

int main(int argc, char** argv) {
  CLI::App app{"fine - tests CHSH inequalities on pair marginals and builds "
               "matching joint distributions"};
  app.require_subcommand(1);

  cli::GlobalOptions global;
  app.add_flag("--strict", global.strict,
               "tighten all tolerances tenfold (regression pinning)");
  double tol_flag = 0.0;
  auto* tol_opt = app.add_option(
      "--tolerance", tol_flag,
      "override the table validation tolerance (default 1e-10 or the file's "
      "declared value)");

  cli::CheckArgs check;
  auto* c_check = app.add_subcommand(
      "check", "evaluate the CHSH inequalities on a marginals file");
  c_check->add_option("file", check.file, "marginals JSON file")->required();
  std::string check_out;
  auto* check_out_opt = c_check->add_option("--out", check_out, "also write the report here");

  cli::ConstructArgs cons;
  auto* c_cons = app.add_subcommand(
      "construct", "build a joint distribution matching a marginals file");
  c_cons->add_option("file", cons.file, "marginals JSON file")->required();
  c_cons->add_option("--method", cons.method,
                     "algebraic | peres | maxent | lp (default algebraic)");
  std::string cons_out;
  auto* cons_out_opt = c_cons->add_option("--out", cons_out, "witness JSON file");
  c_cons->add_option("--samples", cons.samples, "Monte Carlo samples (peres)");
  c_cons->add_option("--seed", cons.seed, "Monte Carlo seed (peres)");
  c_cons->add_option("--max-iter", cons.max_iter, "solver iteration cap (maxent)");
  c_cons->add_option("--tol", cons.tol, "solver residual tolerance (maxent)");

  cli::BellArgs bell;
  auto* c_bell = app.add_subcommand(
      "bell", "three-variable case: check Bell inequalities and construct");
  c_bell->add_option("file", bell.file, "three-table marginals JSON file")
      ->required();
  c_bell->add_option("--method", bell.method, "algebraic | lp (default algebraic)");
  std::string bell_out;
  auto* bell_out_opt = c_bell->add_option("--out", bell_out, "witness JSON file");

  cli::QuantumGenArgs qg;
  auto* c_qg = app.add_subcommand(
      "quantum-gen", "generate a marginals file from a two-qubit state");
  c_qg->add_option("--state", qg.state,
                   "singlet | maximally-mixed | <density matrix JSON file>");
  std::string qg_angles, qg_vectors;
  auto* qg_angles_opt = c_qg->add_option(
      "--angles", qg_angles, "planar direction angles in degrees: a1,a2,a3,a4");
  auto* qg_vectors_opt = c_qg->add_option(
      "--vectors", qg_vectors, "twelve numbers: x1,y1,z1,...,z4");
  c_qg->add_flag("--zero-mean", qg.zero_mean,
                 "rotate the state so all four average spins vanish");
  c_qg->add_option("--out", qg.out, "marginals JSON file to write")->required();

  cli::PeresSimArgs ps;
  auto* c_ps = app.add_subcommand(
      "peres-sim", "fit the angular-momentum model and sample it");
  std::string ps_angles, ps_vectors;
  auto* ps_angles_opt = c_ps->add_option(
      "--angles", ps_angles, "target angles in radians: t13,t23,t24,t14");
  auto* ps_vectors_opt = c_ps->add_option(
      "--vectors", ps_vectors, "twelve numbers: x1,y1,z1,...,z4");
  c_ps->add_option("--samples", ps.samples, "Monte Carlo samples");
  c_ps->add_option("--seed", ps.seed, "Monte Carlo seed");
  std::string ps_out;
  auto* ps_out_opt = c_ps->add_option("--out", ps_out, "also write the report here");

  cli::MaxEntArgs me;
  auto* c_me = app.add_subcommand(
      "maxent", "fit the exponential-family ansatz to a marginals file");
  c_me->add_option("file", me.file, "marginals JSON file")->required();
  std::string me_out;
  auto* me_out_opt = c_me->add_option("--out", me_out, "witness JSON file");
  c_me->add_option("--max-iter", me.max_iter, "iteration cap (default 200)");
  c_me->add_option("--tol", me.tol, "residual tolerance (default 1e-10)");

  cli::OracleArgs oracle;
  auto* c_oracle = app.add_subcommand(
      "oracle", "decide feasibility by the phase-1 simplex oracle");
  c_oracle->add_option("file", oracle.file, "marginals JSON file")->required();
  std::string oracle_out;
  auto* oracle_out_opt = c_oracle->add_option("--out", oracle_out, "witness JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitError;
  }

  if (tol_opt->count() > 0) global.tolerance = tol_flag;
  if (check_out_opt->count() > 0) check.out = check_out;
  if (cons_out_opt->count() > 0) cons.out = cons_out;
  if (bell_out_opt->count() > 0) bell.out = bell_out;
  if (qg_angles_opt->count() > 0) qg.angles = qg_angles;
  if (qg_vectors_opt->count() > 0) qg.vectors = qg_vectors;
  if (ps_angles_opt->count() > 0) ps.angles = ps_angles;
  if (ps_vectors_opt->count() > 0) ps.vectors = ps_vectors;
  if (ps_out_opt->count() > 0) ps.out = ps_out;
  if (me_out_opt->count() > 0) me.out = me_out;
  if (oracle_out_opt->count() > 0) oracle.out = oracle_out;

  try {
    if (c_check->parsed()) return cli::run_check(global, check);
    if (c_cons->parsed()) return cli::run_construct(global, cons);
    if (c_bell->parsed()) return cli::run_bell(global, bell);
    if (c_qg->parsed()) return cli::run_quantum_gen(global, qg);
    if (c_ps->parsed()) return cli::run_peres_sim(global, ps);
    if (c_me->parsed()) return cli::run_maxent(global, me);
    if (c_oracle->parsed()) return cli::run_oracle(global, oracle);
  } catch (const fine::InfeasibleError& e) {
    std::cerr << "fine: infeasible: " << e.what() << "\n";
    return cli::kExitInfeasible;
  } catch (const fine::UnsupportedError& e) {
    std::cerr << "fine: unsupported: " << e.what() << "\n";
    return cli::kExitMethodFailure;
  } catch (const fine::NumericError& e) {
    std::cerr << "fine: numeric failure: " << e.what() << "\n";
    return cli::kExitMethodFailure;
  } catch (const fine::Error& e) {
    std::cerr << "fine: error: " << e.what() << "\n";
    return cli::kExitError;
  } catch (const std::exception& e) {
    std::cerr << "fine: error: " << e.what() << "\n";
    return cli::kExitError;
  }
  return cli::kExitError;
}
