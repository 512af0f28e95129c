#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "zest/channel_io.hpp"
#include "zest/cli.hpp"
#include "zest/quantities.hpp"

using namespace zest;
using linalg::Complex;
using linalg::ComplexMatrix;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("channel file round-trips bit-exactly") {
  const double alpha = 0.31830988618379069;  // deliberately awkward decimals
  const auto cf = io::nalpha_file(alpha);
  const auto back = io::parse_channel_json(io::channel_to_json(cf));
  CHECK(back.name == cf.name);
  CHECK(back.dim_in == 3);
  REQUIRE(back.kraus.has_value());
  REQUIRE(back.kraus->size() == cf.kraus->size());
  for (std::size_t k = 0; k < cf.kraus->size(); ++k) {
    const auto diff = (*back.kraus)[k] - (*cf.kraus)[k];
    CHECK(linalg::max_abs(diff) == 0.0);  // bit exact
  }
  CHECK(io::alpha_from_name(back.name) == alpha);
}

TEST_CASE("classical channel file") {
  io::ChannelFile cf;
  cf.name = "pentagon";
  cf.classical = channels::pentagon_matrix();
  cf.dim_in = 5;
  cf.dim_out = 5;
  const auto back = io::parse_channel_json(io::channel_to_json(cf));
  REQUIRE(back.classical.has_value());
  CHECK((*back.classical - *cf.classical).cwiseAbs().maxCoeff() == 0.0);
  CHECK(io::to_channel(back).kraus.size() == 10);
  CHECK_FALSE(io::alpha_from_name(back.name).has_value());
}

TEST_CASE("channel file validation") {
  CHECK_THROWS_AS(io::parse_channel_json("not json"), InputError);
  CHECK_THROWS_AS(io::parse_channel_json("{\"name\":\"x\"}"), InputError);
  CHECK_THROWS_AS(
      io::parse_channel_json(
          R"({"name":"x","dim_in":1,"dim_out":1,"kraus":[[[[1,0]]]],"classical":[[1]]})"),
      InputError);
  CHECK_THROWS_AS(
      io::parse_channel_json(
          R"({"name":"x","dim_in":2,"dim_out":1,"kraus":[[[[1,0]]]]})"),
      InputError);
  // Ragged rows.
  CHECK_THROWS_AS(
      io::parse_channel_json(
          R"({"name":"x","dim_in":2,"dim_out":2,"kraus":[[[[1,0],[0,0]],[[0,0]]]]})"),
      InputError);
  // Parses fine but fails channel validation.
  const auto cf = io::parse_channel_json(
      R"({"name":"x","dim_in":1,"dim_out":1,"kraus":[[[[0.5,0]]]]})");
  CHECK_THROWS_AS(io::to_channel(cf), CompletenessViolation);
}

TEST_CASE("double formatting is locale independent with 10 digits") {
  CHECK(io::format_double(2.5) == "2.5");
  CHECK(io::format_double(4.5000000049) == "4.500000005");
  CHECK(io::format_double(0.169925) == "0.169925");
  CHECK(io::format_double(-1.0 / 3.0) == "-0.3333333333");
}

TEST_CASE("csv schema") {
  io::ReportRow row;
  row.label = "ch";
  row.quantity = "theta";
  row.value = 4.5;
  row.log2_value = 2.169925001;
  row.iterations = 12;
  row.status = "Optimal";
  const std::string csv = io::rows_to_csv({row});
  std::istringstream is(csv);
  std::string header, line;
  std::getline(is, header);
  CHECK(header ==
        "label,alpha,quantity,value,log2_value,closed_form,abs_error,"
        "iterations,status");
  std::getline(is, line);
  CHECK(line == "ch,,theta,4.5,2.169925001,,,12,Optimal");
}

TEST_CASE("family then compute reproduces in-process values bit for bit") {
  const double alpha = 0.6;
  const auto path = temp_file("zest_roundtrip.json");
  std::ostringstream out, err;
  REQUIRE(cli::run_family({alpha, path.string()}, out, err) == cli::kExitOk);

  const auto cf = io::read_channel_file(path.string());
  const auto parsed = io::to_channel(cf);
  const auto direct = channels::family_nalpha(alpha);
  for (int k = 0; k < 2; ++k)
    CHECK(linalg::max_abs(parsed.kraus[k] - direct.kraus[k]) == 0.0);

  const double via_file = quantities::sigma(parsed, {}).value;
  const double in_process = quantities::sigma(direct, {}).value;
  CHECK(via_file == in_process);  // identical doubles
  std::filesystem::remove(path);
}

TEST_CASE("run_compute produces rows and exit codes") {
  const auto path = temp_file("zest_cli_pi4.json");
  std::ostringstream out, err;
  REQUIRE(cli::run_family({std::numbers::pi / 4.0, path.string()}, out, err) ==
          cli::kExitOk);

  cli::ComputeArgs args;
  args.channel_path = path.string();
  args.quantity = "sigma";
  std::ostringstream cout1, cerr1;
  CHECK(cli::run_compute(args, cout1, cerr1) == cli::kExitOk);
  CHECK(cout1.str().find("sigma") != std::string::npos);
  CHECK(cout1.str().find("Optimal") != std::string::npos);
  CHECK(cout1.str().find("closed_form") != std::string::npos);

  args.format = "json";
  std::ostringstream cout2, cerr2;
  CHECK(cli::run_compute(args, cout2, cerr2) == cli::kExitOk);
  CHECK(cout2.str().find("\"quantity\": \"sigma\"") != std::string::npos);

  // packing on a Kraus channel file is an input error.
  args.quantity = "packing";
  args.format = "csv";
  std::ostringstream cout3, cerr3;
  CHECK(cli::run_compute(args, cout3, cerr3) == cli::kExitInputError);

  args.quantity = "nonsense";
  std::ostringstream cout4, cerr4;
  CHECK(cli::run_compute(args, cout4, cerr4) == cli::kExitInputError);
  std::filesystem::remove(path);

  cli::ComputeArgs missing;
  missing.channel_path = "/nonexistent/channel.json";
  std::ostringstream cout5, cerr5;
  CHECK(cli::run_compute(missing, cout5, cerr5) == cli::kExitInputError);

  const auto bad = temp_file("zest_malformed.json");
  std::ofstream(bad) << "{ definitely not json";
  cli::ComputeArgs badargs;
  badargs.channel_path = bad.string();
  std::ostringstream cout6, cerr6;
  CHECK(cli::run_compute(badargs, cout6, cerr6) == cli::kExitInputError);
  std::filesystem::remove(bad);
}

TEST_CASE("run_family rejects out-of-range angles") {
  std::ostringstream out, err;
  CHECK(cli::run_family({0.0, ""}, out, err) == cli::kExitInputError);
  CHECK(cli::run_family({1.0, ""}, out, err) == cli::kExitInputError);
  std::ostringstream out2, err2;
  CHECK(cli::run_family({0.5, ""}, out2, err2) == cli::kExitOk);
  CHECK(out2.str().find("\"kraus\"") != std::string::npos);
}

TEST_CASE("run_sweep validates and emits the grid") {
  std::ostringstream out, err;
  cli::SweepArgs bad{0.5, 0.1, 3, "", 1e-8, 200};
  CHECK(cli::run_sweep(bad, out, err) == cli::kExitInputError);

  cli::SweepArgs single{0.4, 0.7, 1, "", 1e-8, 200};
  std::ostringstream out2, err2;
  REQUIRE(cli::run_sweep(single, out2, err2) == cli::kExitOk);
  // Header plus one row per quantity, all at alpha = from.
  std::istringstream is(out2.str());
  std::string line;
  int rows = 0;
  std::getline(is, line);
  while (std::getline(is, line)) {
    ++rows;
    CHECK(line.find("0.4,") != std::string::npos);
  }
  CHECK(rows == 4);
}

TEST_CASE("verify-paper validates alphas") {
  std::ostringstream out, err;
  cli::VerifyPaperArgs bad;
  bad.alphas = {1.0};
  CHECK(cli::run_verify_paper(bad, out, err) == cli::kExitInputError);
}
