// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "halfplane/cli.hpp"

namespace {
struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "halfplane");
  std::ostringstream out, err;
  const int code = halfplane::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string cert(const char* file) { return std::string(HALFPLANE_TEST_CERT_DIR) + "/" + file; }
}  // namespace

TEST(Cli, VerifyShippedCertificate) {
  const auto r = run({"verify-cert", cert("f7m4.cert")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "PASS\n");
}

TEST(Cli, VerifyAgainstWrongTargetFails) {
  const auto r = run({"verify-cert", cert("f7m4.cert"), "--target", "V8"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out, "PASS\n");
}

TEST(Cli, CheckHpp) {
  const auto r = run({"check-hpp", "V8", "--certs", HALFPLANE_TEST_CERT_DIR});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("replay: ok"), std::string::npos);
  EXPECT_NE(r.out.find("verdict: PROVED"), std::string::npos);
  const auto j = run({"check-hpp", "F7m4", "--certs", HALFPLANE_TEST_CERT_DIR, "--format", "json"});
  EXPECT_EQ(j.code, 0);
  EXPECT_NO_THROW((void)nlohmann::json::parse(j.out));
}

TEST(Cli, Isomorphism) {
  const auto same = run({"iso", "U_2_4", "U_2_4"});
  EXPECT_EQ(same.code, 0);
  EXPECT_EQ(same.out, "[1 2 3 4]\n");
  const auto differ = run({"iso", "F7m4", "F7m5"});
  EXPECT_EQ(differ.code, 2);
}

TEST(Cli, SmallCommands) {
  EXPECT_EQ(run({"bases", "U_1_2"}).out, "{1}\n{2}\n");
  EXPECT_EQ(run({"rdiff", "U_2_4", "1", "2"}).code, 0);
  EXPECT_EQ(run({"catalog"}).code, 0);
  EXPECT_EQ(run({"dual", "V8"}).code, 0);
  EXPECT_EQ(run({"minor", "V8", "del", "1"}).code, 0);
}

TEST(Cli, SosSearchWritesCertificate) {
  const auto path = std::filesystem::temp_directory_path() / "halfplane_cli_u24.cert";
  const auto r = run({"sos-search", "U_2_4", "--pair", "1", "2", "-o", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "PASS\n");
  EXPECT_EQ(run({"verify-cert", path.string()}).code, 0);
  std::filesystem::remove(path);
}

TEST(Cli, ErrorsAndHelp) {
  EXPECT_EQ(run({}).code, 3);
  EXPECT_EQ(run({"frobnicate"}).code, 3);
  EXPECT_EQ(run({"bases"}).code, 3);
  EXPECT_EQ(run({"bases", "NoSuchMatroid"}).code, 2);
  EXPECT_NE(run({"verify-cert", "/nonexistent/x.cert"}).code, 0);
  EXPECT_NE(run({"minor", "U_2_4", "con", "9"}).code, 0);
  const auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE((help.out + help.err).find("check-hpp"), std::string::npos);
}
