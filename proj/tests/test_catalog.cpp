#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "nilkaehler/catalog.hpp"

using namespace nilkaehler;
namespace fs = std::filesystem;

namespace {

const Catalog& catalog() {
  static Catalog c = Catalog::load(NILKAEHLER_DATA_DIR);
  return c;
}

bool has_check(const EntryReport& r, const std::string& needle) {
  for (const auto& f : r.failures())
    if (f.name.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Catalog, ListsThirteenEntries) {
  std::vector<std::string> want{"g10", "g11", "g12", "g13", "g14", "g15", "g16",
                                "g17", "g18", "g21", "g23", "g24", "g25"};
  EXPECT_EQ(catalog().list(), want);
}

TEST(Catalog, UnknownNameThrows) {
  EXPECT_THROW(catalog().get("g00"), UnknownEntryError);
  EXPECT_THROW(catalog().get("g21").form("w9"), UnknownEntryError);
}

TEST(Catalog, AlgebraMatchesFixture) {
  const auto& e = catalog().get("g21");
  auto ref = fixtures::g21();
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(e.algebra.C(i, j, k), ref.C(i, j, k));
  EXPECT_TRUE(e.form("w2").w.matrix() == fixtures::g21_w2().matrix());
  EXPECT_TRUE(e.structure("J").J == fixtures::g21_family());
}

TEST(Catalog, JsonRoundTrip) {
  for (const auto& name : catalog().list()) {
    const auto& e = catalog().get(name);
    auto alg = algebra_from_json(algebra_to_json(e.algebra));
    EXPECT_EQ(alg.constants().size(), e.algebra.constants().size()) << name;
    for (const auto& f : e.forms) EXPECT_TRUE(form_from_json(form_to_json(f.w)).matrix() == f.w.matrix()) << name;
    for (const auto& s : e.structures) EXPECT_TRUE(matrix_from_json(matrix_to_json(s.J)) == s.J) << name;
    Entry back = entry_from_json(entry_to_json(e));
    EXPECT_EQ(back.structures.size(), e.structures.size());
  }
}

TEST(Catalog, DeclaredTypesAndJacobi) {
  for (const auto& name : catalog().list()) {
    const auto& e = catalog().get(name);
    EXPECT_TRUE(jacobi_check(e.algebra).empty()) << name;
    EXPECT_TRUE(is_nilpotent(e.algebra)) << name;
    EXPECT_EQ(algebra_type(e.algebra), e.type) << name;
  }
}

TEST(Catalog, EveryExpectationHasAStructure) {
  for (const auto& x : catalog().expectations()) {
    const auto& e = catalog().get(x.entry);
    EXPECT_EQ(e.structure(x.structure).form, x.form) << x.entry;
  }
}

class CatalogEntry : public ::testing::TestWithParam<std::string> {};

TEST_P(CatalogEntry, SelfValidates) {
  auto r = validate_entry(catalog().get(GetParam()), catalog().expectations());
  std::string why;
  for (const auto& f : r.failures()) why += "\n  " + f.name + ": " + f.detail;
  EXPECT_TRUE(r.passed()) << why;
}

INSTANTIATE_TEST_SUITE_P(All, CatalogEntry,
                         ::testing::Values("g10", "g11", "g12", "g13", "g14", "g15", "g16", "g17", "g18", "g21", "g23",
                                           "g24", "g25"),
                         [](const auto& info) { return info.param; });

TEST(Catalog, MutatedExpectationFails) {
  auto xs = catalog().expectations();
  bool flipped = false;
  for (auto& x : xs)
    if (x.entry == "g21")
      for (auto& c : x.down)
        if (c.value == "-psi12") {
          c.value = "psi12";
          flipped = true;
        }
  ASSERT_TRUE(flipped);
  auto r = validate_entry(catalog().get("g21"), xs);
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(has_check(r, "expected down-components"));
  EXPECT_TRUE(validate_entry(catalog().get("g21"), catalog().expectations()).passed());
}

TEST(Catalog, MissingListedComponentFailsExhaustiveCheck) {
  auto xs = catalog().expectations();
  for (auto& x : xs)
    if (x.entry == "g17") x.up.pop_back();
  EXPECT_TRUE(has_check(validate_entry(catalog().get("g17"), xs), "expected up-components"));
}

TEST(Catalog, FlatEntriesHaveNoComponents) {
  for (const char* name : {"g14", "g25"}) {
    const auto& e = catalog().get(name);
    auto r = analyze_structure(e, e.structures.front());
    EXPECT_TRUE(r.up.empty()) << name;
    EXPECT_TRUE(r.down.empty()) << name;
    EXPECT_EQ(r.norm, "0");
  }
}

TEST(Catalog, NegativePairingFailsCompat) {
  const auto& e = catalog().get("g16");
  ASSERT_EQ(e.negative_pairings.size(), 1u);
  auto rep = verify_family(e.algebra, e.form("w1").w, e.negative_pairings[0].J);
  EXPECT_FALSE(rep.compatible);
  EXPECT_TRUE(verify_family(e.algebra, e.form("w2").w, e.structure("J0").J).passed());
}

TEST(Catalog, BindingOption) {
  const auto& e = catalog().get("g21");
  AnalysisOptions opt;
  opt.binding = {{"psi11", Rational(0)}, {"psi12", Rational(-2)}};
  auto r = analyze_structure(e, e.structure("J"), nullptr, opt);
  ASSERT_EQ(r.down.size(), 1u);
  EXPECT_EQ(r.down[0].label, "R_1212");
  EXPECT_EQ(r.down[0].value, "2");
}

TEST(Catalog, SqrtTwoStructure) {
  const auto& e = catalog().get("g12");
  const auto& s = e.structure("J3");
  ASSERT_TRUE(s.uses_sqrt2());
  auto r = analyze_structure(e, s);
  EXPECT_TRUE(r.ricci_zero);
  bool has_s = false;
  for (const auto& c : r.down) has_s = has_s || c.value.find('s') != std::string::npos;
  EXPECT_TRUE(has_s);
}

TEST(Catalog, EnvironmentOverride) {
  fs::path dir = fs::temp_directory_path() / "nilkaehler_catalog_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  fs::copy_file(fs::path(NILKAEHLER_DATA_DIR) / "g25.json", dir / "g25.json");
  setenv("NILKAEHLER_CATALOG", dir.c_str(), 1);
  auto c = Catalog::load();
  unsetenv("NILKAEHLER_CATALOG");
  EXPECT_EQ(c.list(), std::vector<std::string>{"g25"});
  EXPECT_TRUE(c.expectations().empty());
  fs::remove_all(dir);
}

TEST(Catalog, MalformedFileReportsError) {
  fs::path dir = fs::temp_directory_path() / "nilkaehler_catalog_bad";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "bad.json") << "{\"name\": \"bad\", \"type\": [2,6]";
  EXPECT_THROW(Catalog::load(dir), CatalogFormatError);
  std::ofstream(dir / "bad.json") << R"({"name":"bad","type":[2],"algebra":{"dim":6,"brackets":[{"i":7,"j":1,"k":2}]},"forms":[],"structures":[]})";
  EXPECT_THROW(Catalog::load(dir), CatalogFormatError);
  fs::remove_all(dir);
}
