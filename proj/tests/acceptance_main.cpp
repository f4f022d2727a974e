// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Budgets are wall-clock seconds and are checked, not just
// reported.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "cellkit/based_rings.hpp"
#include "golden_cells.hpp"

using namespace cellkit;
using Clock = std::chrono::steady_clock;

#ifndef CELLKIT_TEST_DATA_DIR
#define CELLKIT_TEST_DATA_DIR "tests/data"
#endif

namespace {

int g_failures = 0;

int worker_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n ? static_cast<int>(n) : 1;
}

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;

  template <class Body>
  void run(Body&& body) {
    auto start = Clock::now();
    std::string failure;
    try {
      body(failure);
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (failure.empty() && secs > budget_seconds) {
      std::ostringstream s;
      s << "exceeded the " << budget_seconds << " s budget";
      failure = s.str();
    }
    if (failure.empty()) {
      std::printf("PASS criterion %d: %s (%.2fs)\n", id, title, secs);
    } else {
      std::printf("FAIL criterion %d: %s (%.2fs): %s\n", id, title, secs,
                  failure.c_str());
      ++g_failures;
    }
    std::fflush(stdout);
  }
};

#define NEED(cond, msg)                \
  do {                                 \
    if (!(cond)) {                     \
      std::ostringstream s_;           \
      s_ << msg;                       \
      out = s_.str();                  \
      return;                          \
    }                                  \
  } while (0)

std::string data_file(const char* name) {
  return std::string(CELLKIT_TEST_DATA_DIR) + "/" + name;
}

void criterion1(std::string& out) {
  CoxeterSystem sys("B3");
  KLTable t = KLTable::build(sys);
  CellDecomposition dec = compute_cells(sys, t, worker_threads());

  NEED(dec.two_cells.size() == 6, "expected 6 two-sided cells");
  std::vector<std::size_t> sizes;
  for (const auto& c : dec.two_cells) sizes.push_back(c.size());
  NEED((sizes == std::vector<std::size_t>{1, 14, 9, 9, 14, 1}),
       "cell sizes disagree");
  NEED((dec.a_values == std::vector<int>{0, 1, 2, 3, 4, 9}),
       "a-values disagree");
  for (std::uint32_t i = 0; i < 6; ++i)
    for (std::uint32_t j = 0; j < 6; ++j)
      NEED(dec.two_leq(i, j) == (i <= j), "two-sided order is not linear");

  auto golden = golden::load_golden(data_file("b3_cells_golden.json"));
  std::string diff = golden::compare_cells(sys, dec, golden);
  NEED(diff.empty(), diff);
}

void criterion2(std::string& out) {
  CoxeterSystem sys("B4");
  KLTable t = KLTable::build(sys);
  CellDecomposition dec = compute_cells(sys, t, worker_threads());

  NEED(dec.two_cells.size() == 10, "expected 10 two-sided cells");
  NEED((dec.a_values == std::vector<int>{0, 1, 2, 3, 4, 4, 5, 6, 9, 16}),
       "a-values disagree");
  std::vector<std::uint32_t> a4;
  for (std::uint32_t j = 0; j < 10; ++j)
    if (dec.a_values[j] == 4) a4.push_back(j);
  NEED(a4.size() == 2, "expected two a=4 cells");
  NEED(!dec.two_leq(a4[0], a4[1]) && !dec.two_leq(a4[1], a4[0]),
       "the a=4 cells must be incomparable");
  int incomparable = 0;
  for (std::uint32_t i = 0; i < 10; ++i)
    for (std::uint32_t j = i + 1; j < 10; ++j)
      if (!dec.two_leq(i, j) && !dec.two_leq(j, i)) ++incomparable;
  NEED(incomparable == 1, "exactly one incomparable pair expected");

  auto golden = golden::load_golden(data_file("b4_cells_golden.json"));
  std::string diff = golden::compare_cells(sys, dec, golden);
  NEED(diff.empty(), diff);
}

void criterion3(std::string& out) {
  {
    CoxeterSystem b3("B3");
    KLTable t = KLTable::build(b3);
    CellDecomposition dec = compute_cells(b3, t, worker_threads());
    std::uint32_t j4 = dec.two_id[b3.element_from_label("1212")];
    NEED(dec.a_values[j4] == 4, "B3: 1212 should sit in the a=4 cell");
    NEED(is_nice(dec, j4), "B3: the a=4 cell should be nice");
  }
  {
    CoxeterSystem b4("B4");
    KLTable t = KLTable::build(b4);
    CellDecomposition dec = compute_cells(b4, t, worker_threads());
    for (std::uint32_t j = 0; j < dec.two_cells.size(); ++j)
      if (!is_strongly_regular(dec, j))
        NEED(is_nice(dec, j),
             "B4: non-strongly-regular cell with a=" << dec.a_values[j]
                                                     << " should be nice");
  }
  {
    CoxeterSystem b5("B5");
    KLTable t = KLTable::build(b5);
    CellDecomposition dec = compute_cells(b5, t, worker_threads());
    std::vector<std::uint32_t> bad;
    for (std::uint32_t j = 0; j < dec.two_cells.size(); ++j)
      if (!is_strongly_regular(dec, j) && !is_nice(dec, j)) bad.push_back(j);
    NEED(bad.size() == 1,
         "B5: expected exactly one cell neither strongly regular nor nice, "
         "found " << bad.size());
    NEED(dec.a_values[bad[0]] == 11,
         "B5: the exceptional cell has a=" << dec.a_values[bad[0]]
                                           << ", expected 11");
  }
}

void criterion4(std::string& out) {
  CoxeterSystem sys("B3");
  KLTable t = KLTable::build(sys);
  CellDecomposition dec = compute_cells(sys, t, worker_threads());
  auto h = h_cell(dec, dec.left_id[sys.element_from_label("1")]);
  NEED((h == std::vector<Elt>{sys.element_from_label("1"),
                              sys.element_from_label("121")}),
       "H-cell of the left cell of 1 should be {1, 121}");

  BasedRing ring = BasedRing::with_unit({"1", "x"});
  ring.n(1, 1, 0) = 1;  // x^2 = 1
  ring.validate();
  ModuleSearchResult res = enumerate_transitive_modules(ring, 2);
  NEED(res.complete, "rank-2 search should be complete");
  NEED(res.modules.size() == 2, "expected exactly two modules, got "
                                    << res.modules.size());
  NEED(res.modules[0].rank == 1 &&
           (res.modules[0].action[1] == std::vector<std::int64_t>{1}),
       "missing the rank-one module (1)");
  NEED(res.modules[1].rank == 2 &&
           (res.modules[1].action[1] ==
            std::vector<std::int64_t>{0, 1, 1, 0}),
       "missing the rank-two swap module");
}

void criterion5(std::string& out) {
  for (int n : {5, 7, 9}) {
    BasedRing a = dihedral_small_quotient_ring(n, DihedralRoute::Formulas);
    BasedRing b = dihedral_small_quotient_ring(n, DihedralRoute::HeckeOracle);
    NEED(a.labels == b.labels,
         "dihedral n=" << n << ": basis labels disagree");
    NEED(a.tensor == b.tensor,
         "dihedral n=" << n << ": structure constants disagree");

    CoxeterSystem sys("I2(" + std::to_string(n) + ")");
    KLTable t = KLTable::build(sys);
    for (Elt y = 0; y < sys.size(); ++y)
      for (Elt x = 0; x < sys.size(); ++x) {
        Poly p = t.kl_poly(x, y);
        if (sys.bruhat_leq(x, y))
          NEED(p.is_one(), "dihedral KL polynomial not 1");
        else
          NEED(p.is_zero(), "dihedral KL polynomial not 0");
      }
  }
}

void criterion6(std::string& out) {
  auto names = [](const std::vector<ClassifiedGraph>& graphs) {
    std::set<std::string> out_names;
    for (const auto& g : graphs) out_names.insert(g.graph.name);
    return out_names;
  };
  for (int n : {3, 5, 7}) {
    std::set<std::string> expect{"A" + std::to_string(n - 1)};
    NEED(names(classify_spectral_graphs(n, std::max(n, 4))) == expect,
         "odd n=" << n << " should give exactly the path");
  }
  for (int n : {6, 8, 10}) {
    std::set<std::string> expect{"A" + std::to_string(n - 1),
                                 "D" + std::to_string(n / 2 + 1)};
    NEED(names(classify_spectral_graphs(n, n)) == expect,
         "even n=" << n << " should give the path and one fork");
  }
  NEED((names(classify_spectral_graphs(12, 12)) ==
        std::set<std::string>{"A11", "D7", "E6"}),
       "n=12 should give A11, D7, E6");

  // census backstop: everything below two on <= 12 vertices
  std::set<std::string> census_names;
  for (const Graph& g : spectral_radius_below_two_census(12))
    census_names.insert(g.name);
  std::set<std::string> expect;
  for (int k = 1; k <= 12; ++k) expect.insert("A" + std::to_string(k));
  for (int k = 4; k <= 12; ++k) expect.insert("D" + std::to_string(k));
  expect.insert("E6");
  expect.insert("E7");
  expect.insert("E8");
  NEED(census_names == expect, "census disagrees with the known list");
}

void criterion7(std::string& out) {
  // partition invariants + inverse symmetry + KL bounds + a anchors
  for (const char* name : {"B2", "B3", "B4"}) {
    CoxeterSystem sys(name);
    KLTable t = KLTable::build(sys);
    CellDecomposition dec = compute_cells(sys, t, worker_threads());

    std::size_t total = 0;
    for (const auto& c : dec.two_cells) total += c.size();
    NEED(total == sys.size(), name << ": cells must partition the group");
    for (const auto& lc : dec.left_cells) {
      NEED(!lc.empty(), "empty left cell");
      for (Elt x : lc)
        NEED(dec.two_id[x] == dec.two_id[lc.front()],
             name << ": a left cell crosses two-sided cells");
    }
    for (Elt x = 0; x < sys.size(); ++x) {
      Elt ix = sys.inverse(x);
      NEED(dec.two_id[ix] == dec.two_id[x],
           name << ": inverse must fix two-sided cells");
      NEED(dec.right_id[ix] == dec.right_id[sys.inverse(x)],
           "trivial identity");
    }
    // inverse maps each left cell onto a right cell
    for (const auto& lc : dec.left_cells) {
      std::set<std::uint32_t> images;
      for (Elt x : lc) images.insert(dec.right_id[sys.inverse(x)]);
      NEED(images.size() == 1, name << ": inverse image of a left cell "
                                       "is not a right cell");
      NEED(dec.right_cells[*images.begin()].size() == lc.size(),
           name << ": inverse image size mismatch");
    }

    // KL degree bounds and nonnegativity
    if (std::string(name) != "B2") {
      for (Elt y = 0; y < sys.size(); ++y)
        for (Elt x = 0; x < sys.size(); ++x) {
          if (!sys.bruhat_leq(x, y)) continue;
          Poly p = t.kl_poly(x, y);
          NEED(p.all_coeffs_nonnegative(), name << ": negative coefficient");
          if (x != y)
            NEED(2 * p.degree() <= sys.length(y) - sys.length(x) - 1,
                 name << ": degree bound violated");
        }
    }

    // a-function constant on two-sided cells is enforced during
    // construction; assert the anchors here
    NEED(dec.a_values[dec.two_id[0]] == 0, name << ": a(e) != 0");
    NEED(dec.a_values[dec.two_id[sys.w0()]] == sys.length(sys.w0()),
         name << ": a(w0) != l(w0)");

    // the two-sided order refines a-value monotonicity
    for (std::uint32_t i = 0; i < dec.two_cells.size(); ++i)
      for (std::uint32_t j = 0; j < dec.two_cells.size(); ++j)
        if (i != j && dec.two_leq(i, j))
          NEED(dec.a_values[i] <= dec.a_values[j],
               name << ": a-values not monotone along the order");
  }

  // the longest-element twist reverses the two-sided order
  for (const char* name : {"B3", "B4"}) {
    CoxeterSystem sys(name);
    KLTable t = KLTable::build(sys);
    CellDecomposition dec = compute_cells(sys, t, worker_threads());
    Elt w0 = sys.w0();
    std::vector<std::uint32_t> image(dec.two_cells.size(), UINT32_MAX);
    for (Elt x = 0; x < sys.size(); ++x) {
      std::uint32_t from = dec.two_id[x];
      std::uint32_t to = dec.two_id[sys.multiply(x, w0)];
      if (image[from] == UINT32_MAX) image[from] = to;
      NEED(image[from] == to,
           name << ": w -> w*w0 does not map cells to cells");
    }
    for (std::uint32_t i = 0; i < dec.two_cells.size(); ++i)
      for (std::uint32_t j = 0; j < dec.two_cells.size(); ++j)
        NEED(dec.two_leq(i, j) == dec.two_leq(image[j], image[i]),
             name << ": w -> w*w0 does not reverse the order");
  }

  // product expansions do not depend on the reduced word driving them
  {
    CoxeterSystem sys("B3");
    KLTable t = KLTable::build(sys);
    ProductOptions alt;
    alt.chooser = [](const CoxeterSystem& s, Elt u) {
      std::uint32_t m = s.descent_mask(u, Side::Left);
      return static_cast<Gen>(31 - __builtin_clz(m));
    };
    std::mt19937 rng(2024);
    std::uniform_int_distribution<Elt> pick(0, sys.size() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      Elt x = pick(rng), y = pick(rng);
      NEED(cbasis_product(t, x, y) == cbasis_product(t, x, y, alt),
           "expansion differs between reduced-word choices at trial "
               << trial);
    }
  }
}

}  // namespace

int main() {
  Criterion{1, "B3 golden cells, a-values, linear order", 5.0}.run(criterion1);
  Criterion{2, "B4 golden cells with incomparable a=4 pair", 60.0}.run(
      criterion2);
  Criterion{3, "nice-cell predicates on B3, B4 and B5", 900.0}.run(criterion3);
  Criterion{4, "H-cell of B3 and the rank-2 involution ring", 1.0}.run(
      criterion4);
  Criterion{5, "dihedral quotient rings: formulas match the generic path",
            10.0}
      .run(criterion5);
  Criterion{6, "spectral census at 2cos(pi/n) and below 2", 120.0}.run(
      criterion6);
  Criterion{7, "structural property suite", 600.0}.run(criterion7);

  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
