#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(NILKAEHLER_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

std::string input(const std::string& name) { return std::string(NILKAEHLER_INPUTS) + "/" + name; }

}  // namespace

TEST(Cli, List) {
  auto r = run("list");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("g10  type (2,4,6)"), std::string::npos);
  EXPECT_NE(r.out.find("g25  type (4,6)"), std::string::npos);
}

TEST(Cli, UnknownEntryIsUsageError) {
  EXPECT_EQ(run("show g00").code, 2);
  EXPECT_EQ(run("verify g00").code, 2);
  EXPECT_EQ(run("export g00 --format json").code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("export g21 --format pdf").code, 2);
  EXPECT_EQ(run("curvature g24").code, 2);
  EXPECT_EQ(run("curvature g24 --form w1 --bind psi11=0.5").code, 2);
  EXPECT_EQ(run("curvature g24 --form w9").code, 2);
  EXPECT_EQ(run("verify").code, 2);
  EXPECT_EQ(run("search missing.json missing.json").code, 2);
}

TEST(Cli, Show) {
  auto r = run("show g21");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("[e1,e2] = e4"), std::string::npos);
  EXPECT_NE(r.out.find("form w2: e16 + e25 -e34"), std::string::npos);
  EXPECT_NE(r.out.find("side condition: psi12 != 0"), std::string::npos);
}

TEST(Cli, VerifyPassCitesComponent) {
  auto r = run("verify g21");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("g21: PASS"), std::string::npos);
  EXPECT_NE(r.out.find("R_1212 = -psi12  matched"), std::string::npos);
  EXPECT_NE(r.out.find("side condition: psi12 != 0"), std::string::npos);
}

TEST(Cli, VerifySingleForm) {
  auto r = run("verify g13 --form w3");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("structure J3 on w3: PASS"), std::string::npos);
  EXPECT_EQ(r.out.find("structure J1"), std::string::npos);
}

TEST(Cli, VerifyFailureExitsOne) {
  // g16 lists a form that is not closed.
  auto r = run("verify g16");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("[FAIL] w2 closed"), std::string::npos);
}

TEST(Cli, CurvatureWithBinding) {
  auto r = run("curvature g24 --form w1 --bind psi11=1 psi12=1");
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["down_components"].size(), 1u);
  EXPECT_EQ(j["down_components"][0]["label"], "R_1212");
  EXPECT_EQ(j["down_components"][0]["value"], "1");
  EXPECT_TRUE(j["ricci_zero"].get<bool>());
  EXPECT_EQ(j["norm"], "0");
  EXPECT_FALSE(j["side_conditions"].empty());
}

TEST(Cli, CurvatureRationalBinding) {
  auto r = run("curvature g21 --form w2 --bind psi12=-2/3");
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["down_components"][0]["value"], "2/3");
}

TEST(Cli, CurvatureSingularBindingFails) {
  auto r = run("curvature g21 --form w2 --bind psi12=0");
  EXPECT_NE(r.code, 0);
}

TEST(Cli, SolveLinear) {
  auto r = run("solve-linear " + input("standard_form.json"));
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["dimension"], 21);
  EXPECT_EQ(j["basis"].size(), 21u);
}

TEST(Cli, SearchReport) {
  auto r = run("search " + input("g21_algebra.json") + " " + input("g21_w2.json") + " --seed 3");
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["status"], "converged");
  EXPECT_LT(j["residual"].get<double>(), 1e-9);
  EXPECT_EQ(j["J"].size(), 36u);
  EXPECT_EQ(j["seed"], 3);
  auto again = run("search " + input("g21_algebra.json") + " " + input("g21_w2.json") + " --seed 3");
  EXPECT_EQ(again.out, r.out);
}

TEST(Cli, SearchNoRoot) {
  auto r = run("search " + input("g21_algebra.json") + " " + input("g21_w1.json") + " --starts 200");
  EXPECT_EQ(r.code, 1);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["status"], "failed");
  EXPECT_EQ(j["starts_tried"], 200);
  EXPECT_TRUE(j["J"].empty());
}

TEST(Cli, ExportJson) {
  auto r = run("export g21 --format json");
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["name"], "g21");
  EXPECT_EQ(j["algebra"]["brackets"].size(), 3u);
  EXPECT_EQ(j["structures"][0]["metric"]["rows"][1][5], "-psi12");
}

TEST(Cli, ExportCsv) {
  auto r = run("export g21 --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("entry,object,id,i,j,k,value\n", 0), 0u);
  EXPECT_NE(r.out.find("g21,metric,J,2,6,,-psi12"), std::string::npos);
}

TEST(Cli, ExportLatexMetricLayout) {
  auto r = run("export g21 --format latex");
  EXPECT_EQ(r.code, 0);
  std::string g = r.out.substr(r.out.find("g_{J}"));
  EXPECT_NE(g.find("\\begin{pmatrix}"), std::string::npos);
  EXPECT_NE(g.find("0 & 0 & 0 & 0 & \\frac{\\psi_{11}^{2}+1}{\\psi_{12}} & -\\psi_{11} \\\\"), std::string::npos);
  EXPECT_NE(g.find("0 & 0 & 0 & 0 & \\psi_{11} & -\\psi_{12} \\\\"), std::string::npos);
  EXPECT_NE(g.find("0 & 0 & -\\frac{\\psi_{11}^{2}+1}{\\psi_{12}} & \\psi_{11} & 0 & 0 \\\\"), std::string::npos);
}

TEST(Cli, CatalogOverride) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "nilkaehler_cli_catalog";
  fs::remove_all(dir);
  fs::create_directories(dir);
  fs::copy_file(fs::path(NILKAEHLER_DATA_DIR) / "g25.json", dir / "g25.json");
  std::string cmd = "NILKAEHLER_CATALOG=" + dir.string() + " " + NILKAEHLER_CLI + " list";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 256> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  pclose(p);
  EXPECT_EQ(out, "g25  type (4,6)  forms 1  structures 1\n");
  fs::remove_all(dir);
}
