// Copyright (c) 2026 the soncert authors. Distributed under the terms of the
// Apache License, Version 2.0 (http://www.apache.org/licenses/LICENSE-2.0).

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CliResult run_cli(const std::string& args) {
  const std::string out_path = "/tmp/sonc_cli_test_out.txt";
  const std::string cmd =
      std::string(SONC_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status), slurp(out_path)};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("cli: decide exit codes follow the verdict") {
  CHECK(run_cli("decide \"x1^2 + 1 - 2*x1\"").exit_code == 0);
  const CliResult not_sonc = run_cli(
      "decide \"50*x1^4*x2^4 + x1^4 + 3*x2^4 + 800 - 300*x1*x2^2 - 180*x1^2*x2\"");
  CHECK(not_sonc.exit_code == 3);
  CHECK(not_sonc.out.find("\"NOT_SONC\"") != std::string::npos);
  CHECK(not_sonc.out.find("REP infeasible") != std::string::npos);
}

TEST_CASE("cli: circuit subcommand reports theta") {
  const CliResult r = run_cli("circuit \"x1^4*x2^2 + x1^2*x2^4 + 1 - 3*x1^2*x2^2\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"theta\":\"3\"") != std::string::npos);
  CHECK(r.out.find("\"verdict\":\"boundary\"") != std::string::npos);
  CHECK(run_cli("circuit \"x1^2 - 3*x1 + 1\"").exit_code == 3);
}

TEST_CASE("cli: covers subcommand lists the regression simplices") {
  const CliResult r = run_cli(
      "covers \"50*x1^4*x2^4 + x1^4 + 3*x2^4 + 800 - 300*x1*x2^2 - 180*x1^2*x2\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("[[0,0],[0,4],[4,0]]") != std::string::npos);
  CHECK(r.out.find("[[0,0],[4,0],[4,4]]") != std::string::npos);
  CHECK(r.out.find("[[0,0],[0,4],[4,4]]") != std::string::npos);
}

TEST_CASE("cli: mediated subcommand") {
  const CliResult h = run_cli("mediated \"[[0,0],[2,0],[0,2]]\"");
  CHECK(h.exit_code == 0);
  CHECK(h.out.find("\"h_trellis\":true") != std::string::npos);
  const CliResult motzkin = run_cli("mediated \"[[0,0],[4,2],[2,4]]\" --contains \"[2,2]\"");
  CHECK(motzkin.exit_code == 3);
  CHECK(motzkin.out.find("\"contains\":false") != std::string::npos);
}

TEST_CASE("cli: sosb hints at scaling and succeeds with it") {
  const CliResult plain = run_cli("sosb \"x1^4*x2^2 + x1^2*x2^4 + 1 - 3*x1^2*x2^2\"");
  CHECK(plain.exit_code == 3);
  const CliResult scaled =
      run_cli("sosb --scale 2 \"x1^4*x2^2 + x1^2*x2^4 + 1 - 3*x1^2*x2^2\"");
  CHECK(scaled.exit_code == 0);
  CHECK(scaled.out.find("\"squares\"") != std::string::npos);
}

TEST_CASE("cli: verify accepts emitted certificates and rejects tampering") {
  write_file("/tmp/sonc_cli_poly.txt", "x1^4 + x2^4 + 2 - x1^2 - x2^2");
  const CliResult decided =
      run_cli("--out /tmp/sonc_cli_cert.json decide /tmp/sonc_cli_poly.txt");
  REQUIRE(decided.exit_code == 0);
  CHECK(run_cli("verify /tmp/sonc_cli_cert.json /tmp/sonc_cli_poly.txt").exit_code == 0);

  // bump one coefficient in the certificate
  std::string cert = slurp("/tmp/sonc_cli_cert.json");
  const auto pos = cert.find("\"coeffs\":[\"");
  REQUIRE(pos != std::string::npos);
  cert.replace(pos + 11, 1, "7");
  write_file("/tmp/sonc_cli_tampered.json", cert);
  const CliResult bad = run_cli("verify /tmp/sonc_cli_tampered.json /tmp/sonc_cli_poly.txt");
  CHECK(bad.exit_code == 3);
  CHECK(bad.out.find("\"verified\":false") != std::string::npos);
}

TEST_CASE("cli: transform consumes a decomposition json") {
  write_file("/tmp/sonc_cli_circuits.json",
             "[{\"vertices\":[[0],[4]],\"coeffs\":[\"1\",\"1\"],\"beta\":[2],\"d\":\"2\"}]");
  const CliResult r = run_cli("transform /tmp/sonc_cli_circuits.json");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"status\":\"SONC\"") != std::string::npos);
  CHECK(r.out.find("\"exact\":true") != std::string::npos);
}

TEST_CASE("cli: deterministic output") {
  const std::string cmd = "decide \"x1^4*x2^2 + x1^2*x2^4 + 1 - 3*x1^2*x2^2\"";
  const CliResult a = run_cli(cmd);
  const CliResult b = run_cli(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("cli: usage errors exit with 1") {
  CHECK(run_cli("decide \"x1 + $\"").exit_code == 1);
  CHECK(run_cli("decide \"0\"").exit_code == 1);  // zero polynomial
  CHECK(run_cli("transform \"[not json\"").exit_code == 1);
}
