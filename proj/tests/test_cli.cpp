#include "madcap/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace madcap {
namespace {

std::vector<std::string> lines_of(const std::string &text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    lines.push_back(line);
  }
  return lines;
}

TEST(FormatNumber, NineSignificantDigits) {
  EXPECT_EQ(format_number(3.1699250014423126), "3.169925");
  EXPECT_EQ(format_number(2.8701678035785663), "2.8701678");
  EXPECT_EQ(format_number(3.011362392190151), "3.01136239");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(std::nan("")), "nan");
}

TEST(Capacity, PrintsValueStatusRegionArgmax) {
  const CliResult r = run_cli_capture(
      {"capacity", "--family", "single1", "--p1", "0.3"});
  EXPECT_EQ(r.exit_code, exit_code::ok);
  const std::vector<std::string> lines = lines_of(r.out);
  ASSERT_GE(lines.size(), 4u);
  EXPECT_EQ(lines[0], "value 3.01136239");
  EXPECT_EQ(lines[1], "status Exact");
  EXPECT_EQ(lines[2], "region Degradable");
  EXPECT_EQ(lines[3].rfind("argmax alpha=", 0), 0u);
}

TEST(Capacity, QuantitySelection) {
  const CliResult ea = run_cli_capture(
      {"capacity", "--family", "single1", "--quantity", "ea-quantum"});
  EXPECT_EQ(ea.exit_code, exit_code::ok);
  EXPECT_EQ(lines_of(ea.out)[0], "value 3.169925");

  const CliResult chi = run_cli_capture({"capacity", "--family", "single1",
                                         "--p1", "0.3", "--quantity",
                                         "classical-upper"});
  EXPECT_EQ(chi.exit_code, exit_code::ok);
  EXPECT_EQ(lines_of(chi.out)[0], "value 3.15034791");
  EXPECT_EQ(lines_of(chi.out)[1], "status UpperBound");
}

TEST(Capacity, ErrorExitCodes) {
  EXPECT_EQ(run_cli_capture({"capacity", "--family", "nosuch"}).exit_code,
            exit_code::unsupported);
  EXPECT_EQ(run_cli_capture({"capacity", "--family", "single1", "--quantity",
                             "nosuch"})
                .exit_code,
            exit_code::unsupported);
  // The quantity/family gate fires before parameter validation.
  const CliResult gate = run_cli_capture({"capacity", "--family", "lambda",
                                          "--p1", "7", "--quantity",
                                          "classical-upper"});
  EXPECT_EQ(gate.exit_code, exit_code::unsupported);
  EXPECT_NE(gate.err.find("classical-upper"), std::string::npos);

  const CliResult cptp = run_cli_capture({"capacity", "--family", "full",
                                          "--p1", "0.9", "--p2", "0.1",
                                          "--p3", "0.1"});
  EXPECT_EQ(cptp.exit_code, exit_code::cptp_violation);
  EXPECT_NE(cptp.err.find("error:"), std::string::npos);

  EXPECT_EQ(run_cli_capture({"capacity", "--family", "single1", "--p1", "1.5"})
                .exit_code,
            exit_code::cptp_violation);
}

TEST(Sweep, SingleDecayRowCountAndMonotonicity) {
  const CliResult r = run_cli_capture(
      {"sweep", "--family", "single1", "--quantity", "quantum", "--grid",
       "0.05"});
  EXPECT_EQ(r.exit_code, exit_code::ok);
  const std::vector<std::string> lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 22u);
  EXPECT_EQ(lines[0],
            "family,p1,p2,p3,quantity,value,status,alpha,beta,gamma,delta");
  double prev = 1e9;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    std::string cell;
    std::getline(row, cell, ','); // family
    EXPECT_EQ(cell, "single1");
    std::getline(row, cell, ','); // p1
    std::getline(row, cell, ','); // p2
    std::getline(row, cell, ','); // p3
    std::getline(row, cell, ','); // quantity
    EXPECT_EQ(cell, "quantum");
    std::getline(row, cell, ','); // value
    const double value = std::stod(cell);
    EXPECT_LE(value, prev + 1e-9);
    prev = value;
  }
}

TEST(Sweep, ByteIdenticalReruns) {
  const std::vector<std::string> args = {"sweep", "--family", "v",
                                         "--quantity", "ea-quantum", "--grid",
                                         "0.25"};
  const CliResult a = run_cli_capture(args);
  const CliResult b = run_cli_capture(args);
  EXPECT_EQ(a.exit_code, exit_code::ok);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(lines_of(a.out).size(), 26u); // header + 5x5 grid
}

TEST(Sweep, ThreadCountDoesNotChangeTheBytes) {
  const std::vector<std::string> args = {"sweep", "--family", "single1",
                                         "--quantity", "coherent-info",
                                         "--grid", "0.25"};
  ::setenv("MADCAP_THREADS", "1", 1);
  const CliResult serial = run_cli_capture(args);
  ::setenv("MADCAP_THREADS", "7", 1);
  const CliResult parallel = run_cli_capture(args);
  ::unsetenv("MADCAP_THREADS");
  EXPECT_EQ(serial.out, parallel.out);
}

TEST(Sweep, FullFamilySkipsUnphysicalPoints) {
  const CliResult r = run_cli_capture(
      {"sweep", "--family", "full", "--quantity", "coherent-info", "--grid",
       "0.25"});
  EXPECT_EQ(r.exit_code, exit_code::ok);
  const std::size_t rows = lines_of(r.out).size() - 1;
  EXPECT_LT(rows, 125u);
  EXPECT_GT(rows, 60u);
}

TEST(Sweep, RejectsBadGrid) {
  EXPECT_EQ(run_cli_capture({"sweep", "--family", "single1", "--grid", "0.4"})
                .exit_code,
            exit_code::cptp_violation);
  EXPECT_EQ(
      run_cli_capture({"sweep", "--family", "lambda", "--quantity",
                       "classical-upper"})
          .exit_code,
      exit_code::unsupported);
}

TEST(Sweep, WritesFileAndReportsIoFailure) {
  const std::string path = ::testing::TempDir() + "cli_sweep.csv";
  const CliResult ok = run_cli_capture({"sweep", "--family", "single1",
                                        "--grid", "0.25", "--out", path});
  EXPECT_EQ(ok.exit_code, exit_code::ok);
  std::ifstream f(path);
  ASSERT_TRUE(f.good());
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header,
            "family,p1,p2,p3,quantity,value,status,alpha,beta,gamma,delta");

  const CliResult bad = run_cli_capture({"sweep", "--family", "single1",
                                         "--grid", "0.25", "--out",
                                         "/nonexistent/dir/out.csv"});
  EXPECT_EQ(bad.exit_code, exit_code::io_failure);
}

TEST(Degradability, CsvShapeAndNanColumn) {
  const CliResult r = run_cli_capture(
      {"degradability", "--family", "single1", "--grid", "0.25"});
  EXPECT_EQ(r.exit_code, exit_code::ok);
  const std::vector<std::string> lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines[0],
            "p1,p2,p3,degradable,antidegradable,min_choi_eig_deg,"
            "min_choi_eig_anti");
  EXPECT_EQ(lines[1].rfind("0,0,0,yes,no,", 0), 0u);
  // The fully drained edge has no invertible route: both minima are nan.
  EXPECT_NE(lines[5].find("1,0,0,no,no,nan,nan"), std::string::npos);
}

TEST(LindbladCheck, PassesWithDefaults) {
  const CliResult r = run_cli_capture({"lindblad-check"});
  EXPECT_EQ(r.exit_code, exit_code::ok);
  EXPECT_NE(r.out.find("result PASS"), std::string::npos);
  EXPECT_NE(r.out.find("worst residual"), std::string::npos);
}

TEST(Verify, AllChecksPassAndRerunsAreByteIdentical) {
  const CliResult a = run_cli_capture({"verify", "--seed", "7"});
  const CliResult b = run_cli_capture({"verify", "--seed", "7"});
  EXPECT_EQ(a.exit_code, exit_code::ok);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("verify: 8/8 checks passed"), std::string::npos);
  EXPECT_NE(a.out.find("check corrupted-kraus: PASS"), std::string::npos);
}

TEST(ConfigFile, SectionKeysApplyAndFlagsWin) {
  const std::string path = ::testing::TempDir() + "cli_config.ini";
  {
    std::ofstream f(path);
    f << "[capacity]\nfamily = single1\np1 = 0.3\n";
  }
  const CliResult from_config = run_cli_capture({"capacity", "--config", path});
  EXPECT_EQ(from_config.exit_code, exit_code::ok);
  EXPECT_EQ(lines_of(from_config.out)[0], "value 3.01136239");

  const CliResult overridden = run_cli_capture(
      {"capacity", "--config", path, "--p1", "0"});
  EXPECT_EQ(overridden.exit_code, exit_code::ok);
  EXPECT_EQ(lines_of(overridden.out)[0], "value 3.169925");
}

TEST(Help, ExitsCleanly) {
  EXPECT_EQ(run_cli_capture({"--help"}).exit_code, exit_code::ok);
  EXPECT_EQ(run_cli_capture({}).exit_code, exit_code::unsupported);
}

} // namespace
} // namespace madcap
