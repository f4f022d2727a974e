#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <set>

#include "golden_cells.hpp"

using namespace cellkit;

#ifndef CELLKIT_TEST_DATA_DIR
#define CELLKIT_TEST_DATA_DIR "tests/data"
#endif

namespace {

std::string data_file(const char* name) {
  return std::string(CELLKIT_TEST_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("B3 cells reproduce the golden grids") {
  CoxeterSystem sys("B3");
  KLTable t = KLTable::build(sys);
  CellDecomposition dec = compute_cells(sys, t);
  auto golden = golden::load_golden(data_file("b3_cells_golden.json"));
  std::string diff = golden::compare_cells(sys, dec, golden);
  CHECK_MESSAGE(diff.empty(), diff);
}

TEST_CASE("B4 cells reproduce the golden grids") {
  CoxeterSystem sys("B4");
  KLTable t = KLTable::build(sys);
  CellDecomposition dec = compute_cells(sys, t, 2);
  auto golden = golden::load_golden(data_file("b4_cells_golden.json"));
  std::string diff = golden::compare_cells(sys, dec, golden);
  CHECK_MESSAGE(diff.empty(), diff);

  // exactly the two a=4 cells are incomparable
  std::vector<std::uint32_t> a4;
  for (std::uint32_t j = 0; j < dec.two_cells.size(); ++j)
    if (dec.a_values[j] == 4) a4.push_back(j);
  REQUIRE(a4.size() == 2);
  CHECK_FALSE(dec.two_leq(a4[0], a4[1]));
  CHECK_FALSE(dec.two_leq(a4[1], a4[0]));
  int incomparable = 0;
  for (std::uint32_t i = 0; i < dec.two_cells.size(); ++i)
    for (std::uint32_t j = i + 1; j < dec.two_cells.size(); ++j)
      if (!dec.two_leq(i, j) && !dec.two_leq(j, i)) ++incomparable;
  CHECK(incomparable == 1);
}

TEST_CASE("multiplying by the longest element reverses the two-sided order") {
  for (const char* name : {"B3", "B4"}) {
    CoxeterSystem sys(name);
    KLTable t = KLTable::build(sys);
    CellDecomposition dec = compute_cells(sys, t, 2);
    Elt w0 = sys.w0();
    // the map w -> w*w0 permutes two-sided cells
    std::vector<std::uint32_t> image(dec.two_cells.size(), UINT32_MAX);
    for (Elt x = 0; x < sys.size(); ++x) {
      std::uint32_t from = dec.two_id[x];
      std::uint32_t to = dec.two_id[sys.multiply(x, w0)];
      if (image[from] == UINT32_MAX)
        image[from] = to;
      else
        CHECK(image[from] == to);
    }
    std::set<std::uint32_t> hit(image.begin(), image.end());
    CHECK(hit.size() == dec.two_cells.size());
    for (std::uint32_t i = 0; i < dec.two_cells.size(); ++i)
      for (std::uint32_t j = 0; j < dec.two_cells.size(); ++j)
        CHECK(dec.two_leq(i, j) == dec.two_leq(image[j], image[i]));
  }
}

TEST_CASE("cell partition does not depend on edge enumeration order") {
  for (const char* name : {"B3", "I2(8)"}) {
    CoxeterSystem sys(name);
    KLTable t = KLTable::build(sys);
    CellDecomposition a = compute_cells(sys, t, 1, false);
    CellDecomposition b = compute_cells(sys, t, 1, true);
    CHECK(a.left_id == b.left_id);
    CHECK(a.right_id == b.right_id);
    CHECK(a.two_id == b.two_id);
    CHECK(a.a_values == b.a_values);
  }
}

TEST_CASE("reports") {
  CoxeterSystem sys("B3");
  KLTable t = KLTable::build(sys);
  CellDecomposition dec = compute_cells(sys, t);

  SUBCASE("markdown carries one header per a-value") {
    std::string md = cell_report(dec, ReportFormat::Markdown);
    for (const char* h : {"## a = 0", "## a = 1", "## a = 2", "## a = 3",
                          "## a = 4", "## a = 9"})
      CHECK(md.find(h) != std::string::npos);
    CHECK(md.find("**e**") != std::string::npos);
    CHECK(md.find("**1212**") != std::string::npos);
  }

  SUBCASE("json round-trips byte-identically") {
    std::string js = cell_report(dec, ReportFormat::Json);
    auto parsed = nlohmann::ordered_json::parse(js);
    CHECK(parsed.dump(2) + "\n" == js);
    CHECK(parsed["spec"] == "B3");
    REQUIRE(parsed["cells"].size() == 6);
    CHECK(parsed["cells"][0]["a"] == 0);
    CHECK(parsed["cells"][5]["a"] == 9);
    // grid of the identity cell renders as a 1x1 grid
    CHECK(parsed["cells"][0]["grid"].size() == 1);
    CHECK(parsed["cells"][0]["grid"][0].size() == 1);
    CHECK(parsed["cells"][0]["grid"][0][0] ==
          nlohmann::ordered_json::array({"e"}));
    // successors encode the linear order
    CHECK(parsed["cells"][0]["order_successors"] ==
          nlohmann::ordered_json::array({1}));
    CHECK(parsed["cells"][5]["order_successors"] ==
          nlohmann::ordered_json::array());
  }

  SUBCASE("csv has one row per element") {
    std::string csv = cell_report(dec, ReportFormat::Csv);
    std::size_t lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines == sys.size() + 1);
    CHECK(csv.rfind("label,length,left_cell,right_cell,two_sided_cell,a", 0) ==
          0);
  }

  SUBCASE("predicate report carries the verdicts") {
    std::string md = predicate_report(dec, ReportFormat::Markdown);
    CHECK(md.find("regular: yes, strongly regular: no, nice: yes") !=
          std::string::npos);
  }

  CHECK_THROWS_AS(parse_report_format("yaml"), DomainError);
}

TEST_CASE("nice predicates on B3") {
  CoxeterSystem sys("B3");
  KLTable t = KLTable::build(sys);
  CellDecomposition dec = compute_cells(sys, t);

  // a=4 cell (the one containing 1212) is nice
  std::uint32_t j4 = dec.two_id[sys.element_from_label("1212")];
  REQUIRE(dec.a_values[j4] == 4);
  CellPredicateReport rep = nice_report(dec, j4);
  CHECK(rep.nice);
  CHECK(rep.regular);
  CHECK_FALSE(rep.strongly_regular);
  REQUIRE(rep.parabolic_witness.has_value());
  CHECK(rep.parabolic_witness->second == sys.element_from_label("1212"));

  // a=2 cell is strongly regular (hence not nice: no box of size 2)
  std::uint32_t j2 = dec.two_id[sys.element_from_label("13")];
  CHECK(is_strongly_regular(dec, j2));
  CellPredicateReport rep2 = nice_report(dec, j2);
  CHECK_FALSE(rep2.nice);
  CHECK_FALSE(rep2.box_mixed_ok);
  CHECK(rep2.box_bound_ok);
  CHECK(rep2.parabolic_ok);

  // {e} is strongly regular
  CHECK(is_strongly_regular(dec, dec.two_id[0]));
}
