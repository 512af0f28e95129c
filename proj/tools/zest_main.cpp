// zest: zero-error SDP toolkit for quantum channels.
//
// Subcommands: compute, family, sweep, verify-paper. Exit codes: 0 ok,
// 1 input error, 2 computation failure.

#include <iostream>

#include <CLI11.hpp>

#include "zest/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "zest: zero-error SDP quantities of quantum channels "
      "(Lovasz-type theta, no-signalling capacity and simulation cost, "
      "fractional packing)"};
  app.require_subcommand(1);

  zest::cli::ComputeArgs compute;
  auto* cmd_compute = app.add_subcommand(
      "compute", "Compute quantities of a channel file");
  cmd_compute->add_option("--channel", compute.channel_path,
                          "Channel file (JSON)")
      ->required();
  cmd_compute->add_option(
      "--quantity", compute.quantity,
      "theta|upsilon|sigma|aram|packing|all (default all)");
  cmd_compute->add_option("--format", compute.format, "csv|json");
  cmd_compute->add_option("--tol", compute.tol, "Solver tolerance");
  cmd_compute->add_option("--max-iters", compute.max_iters,
                          "Solver iteration cap");
  cmd_compute->add_option("--dump-sdp", compute.dump_sdp,
                          "Dump solved conic programs to <prefix>.<label>.sdp");

  zest::cli::FamilyArgs family;
  auto* cmd_family = app.add_subcommand(
      "family", "Emit a channel file of the qutrit family N(alpha)");
  cmd_family->add_option("--alpha", family.alpha, "Angle in (0, pi/4]")
      ->required();
  cmd_family->add_option("--emit,--out", family.emit,
                         "Output path (stdout when omitted)");

  zest::cli::SweepArgs sweep;
  auto* cmd_sweep = app.add_subcommand(
      "sweep", "Quantities over an alpha grid, CSV output");
  cmd_sweep->add_option("--from", sweep.from, "Grid start")->required();
  cmd_sweep->add_option("--to", sweep.to, "Grid end")->required();
  cmd_sweep->add_option("--steps", sweep.steps, "Grid points")->required();
  cmd_sweep->add_option("--out", sweep.out_path,
                        "CSV path (stdout when omitted)");
  cmd_sweep->add_option("--tol", sweep.tol, "Solver tolerance");
  cmd_sweep->add_option("--max-iters", sweep.max_iters,
                        "Solver iteration cap");

  zest::cli::VerifyPaperArgs verify;
  auto* cmd_verify = app.add_subcommand(
      "verify-paper",
      "Check every analytic certificate and solver cross-check");
  cmd_verify->add_option("--alphas", verify.alphas,
                         "Grid points (default pi/12 pi/8 pi/6 pi/5 pi/4)");
  cmd_verify->add_option("--tol", verify.tol, "Solver tolerance");
  cmd_verify->add_option("--max-iters", verify.max_iters,
                         "Solver iteration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? zest::cli::kExitInputError : zest::cli::kExitOk;
  }

  if (*cmd_compute)
    return zest::cli::run_compute(compute, std::cout, std::cerr);
  if (*cmd_family) return zest::cli::run_family(family, std::cout, std::cerr);
  if (*cmd_sweep) return zest::cli::run_sweep(sweep, std::cout, std::cerr);
  if (*cmd_verify)
    return zest::cli::run_verify_paper(verify, std::cout, std::cerr);
  return zest::cli::kExitInputError;
}
