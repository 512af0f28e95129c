#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zest::cli {

// Exit codes shared by all commands: 0 success, 1 input error,
// 2 computation failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitComputeError = 2;

struct ComputeArgs {
  std::string channel_path;
  std::string quantity = "all";  // theta|upsilon|sigma|aram|packing|all
  std::string format = "csv";    // csv|json
  double tol = 1e-8;
  int max_iters = 200;
  std::string dump_sdp;  // optional path prefix for problem dumps
};
int run_compute(const ComputeArgs& args, std::ostream& out, std::ostream& err);

struct FamilyArgs {
  double alpha = 0.0;
  std::string emit;  // output path; stdout when empty
};
int run_family(const FamilyArgs& args, std::ostream& out, std::ostream& err);

struct SweepArgs {
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
  std::string out_path;  // stdout when empty
  double tol = 1e-8;
  int max_iters = 200;
};
int run_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err);

struct VerifyPaperArgs {
  std::vector<double> alphas;  // default grid when empty
  double tol = 1e-8;
  int max_iters = 200;
};
int run_verify_paper(const VerifyPaperArgs& args, std::ostream& out,
                     std::ostream& err);

}  // namespace zest::cli
