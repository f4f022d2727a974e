// cellkit: cells, a-values, Kazhdan-Lusztig data, H-cell rings and
// spectral classifications for finite Coxeter groups.

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <thread>

#include "cellkit/based_rings.hpp"
#include "cellkit/cache.hpp"
#include "cellkit/cells.hpp"

namespace {

using namespace cellkit;
using ordered_json = nlohmann::ordered_json;

struct Options {
  std::string format = "markdown";
  std::string cache_dir;
  std::string threads = "auto";
  bool no_cache = false;

  int thread_count() const {
    if (threads == "auto") {
      unsigned n = std::thread::hardware_concurrency();
      return n ? static_cast<int>(n) : 1;
    }
    int n = std::stoi(threads);
    if (n < 1) throw DomainError("--threads must be positive or \"auto\"");
    return n;
  }
  std::filesystem::path cache_path() const {
    return cache_dir.empty() ? default_cache_dir()
                             : std::filesystem::path(cache_dir);
  }
};

// Loads the KL table from the cache when possible, otherwise computes it
// (and stores it for the next invocation).  A present-but-stale cache is an
// error, never silently recomputed.
KLTable table_for(const CoxeterSystem& sys, const Options& opt) {
  std::filesystem::path file = kl_cache_path(opt.cache_path(), sys.spec());
  if (!opt.no_cache && std::filesystem::exists(file)) {
    std::cerr << "loading KL table from " << file.string() << "\n";
    return load_kl_cache(sys, file);
  }
  std::cerr << "computing KL table for " << sys.spec().str() << " ("
            << sys.size() << " elements)\n";
  KLTable t = KLTable::build(sys);
  if (!opt.no_cache) {
    save_kl_cache(t, file);
    std::cerr << "cached KL table at " << file.string() << "\n";
  }
  return t;
}

ordered_json ring_json(const BasedRing& ring) {
  ordered_json out;
  out["labels"] = ring.labels;
  std::size_t b = ring.basis_size();
  ordered_json tensor = ordered_json::array();
  for (std::size_t i = 0; i < b; ++i) {
    ordered_json plane = ordered_json::array();
    for (std::size_t j = 0; j < b; ++j) {
      ordered_json row = ordered_json::array();
      for (std::size_t k = 0; k < b; ++k) row.push_back(ring.n(i, j, k));
      plane.push_back(std::move(row));
    }
    tensor.push_back(std::move(plane));
  }
  out["tensor"] = std::move(tensor);
  return out;
}

ordered_json modules_json(const ModuleSearchResult& res) {
  ordered_json out;
  out["note"] = "decategorified candidates";
  out["entry_bound"] = res.entry_bound;
  out["complete"] = res.complete;
  out["warnings"] = res.warnings;
  ordered_json mods = ordered_json::array();
  for (const BasedModule& m : res.modules) {
    ordered_json jm;
    jm["rank"] = m.rank;
    ordered_json mats = ordered_json::array();
    for (const auto& mat : m.action) {
      ordered_json rows = ordered_json::array();
      for (int i = 0; i < m.rank; ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < m.rank; ++j) row.push_back(mat[i * m.rank + j]);
        rows.push_back(std::move(row));
      }
      mats.push_back(std::move(rows));
    }
    jm["matrices"] = std::move(mats);
    mods.push_back(std::move(jm));
  }
  out["modules"] = std::move(mods);
  return out;
}

std::string poly_for_format(const Poly& p, ReportFormat fmt, Elt x, Elt y,
                            const CoxeterSystem& sys) {
  if (fmt == ReportFormat::Json) {
    ordered_json out;
    out["spec"] = sys.spec().str();
    out["x"] = sys.label(x);
    out["y"] = sys.label(y);
    ordered_json coeffs = ordered_json::array();
    for (long long c : p.coeffs()) coeffs.push_back(std::to_string(c));
    out["coefficients"] = std::move(coeffs);
    out["polynomial"] = p.str();
    return out.dump(2) + "\n";
  }
  if (fmt == ReportFormat::Csv) {
    std::string out = sys.label(x) + "," + sys.label(y);
    for (long long c : p.coeffs()) out += "," + std::to_string(c);
    return out + "\n";
  }
  return p.str() + "\n";
}

int run_cells(const std::string& spec, const Options& opt, bool predicates) {
  CoxeterSystem sys(spec);
  KLTable t = table_for(sys, opt);
  CellDecomposition dec = compute_cells(sys, t, opt.thread_count());
  ReportFormat fmt = parse_report_format(opt.format);
  std::cout << (predicates ? predicate_report(dec, fmt)
                           : cell_report(dec, fmt));
  return 0;
}

int run_afunction(const std::string& spec, const Options& opt) {
  CoxeterSystem sys(spec);
  KLTable t = table_for(sys, opt);
  CellDecomposition dec = compute_cells(sys, t, opt.thread_count());
  ReportFormat fmt = parse_report_format(opt.format);
  if (fmt == ReportFormat::Json) {
    ordered_json out;
    out["spec"] = sys.spec().str();
    ordered_json rows = ordered_json::array();
    for (Elt x = 0; x < sys.size(); ++x)
      rows.push_back(ordered_json{{"element", sys.label(x)},
                                  {"a", dec.a_values[dec.two_id[x]]}});
    out["a_values"] = std::move(rows);
    std::cout << out.dump(2) << "\n";
  } else if (fmt == ReportFormat::Csv) {
    std::cout << "element,a\n";
    for (Elt x = 0; x < sys.size(); ++x)
      std::cout << sys.label(x) << ',' << dec.a_values[dec.two_id[x]] << "\n";
  } else {
    std::cout << "| element | a |\n|---|---|\n";
    for (Elt x = 0; x < sys.size(); ++x)
      std::cout << "| " << sys.label(x) << " | "
                << dec.a_values[dec.two_id[x]] << " |\n";
  }
  return 0;
}

int run_kl(const std::string& spec, const std::string& xl,
           const std::string& yl, const Options& opt) {
  CoxeterSystem sys(spec);
  KLTable t = table_for(sys, opt);
  Elt x = sys.element_from_label(xl);
  Elt y = sys.element_from_label(yl);
  std::cout << poly_for_format(t.kl_poly(x, y), parse_report_format(opt.format),
                               x, y, sys);
  return 0;
}

int run_hcell(const std::string& spec, const std::string& label,
              const Options& opt) {
  CoxeterSystem sys(spec);
  KLTable t = table_for(sys, opt);
  CellDecomposition dec = compute_cells(sys, t, opt.thread_count());
  Elt x = sys.element_from_label(label);
  std::uint32_t l = dec.left_id[x];
  std::vector<Elt> h = h_cell(dec, l);
  std::vector<std::string> h_labels, inv_labels, cell_labels;
  for (Elt w : dec.left_cells[l]) cell_labels.push_back(sys.label(w));
  for (Elt w : h) {
    h_labels.push_back(sys.label(w));
    if (sys.multiply(w, w) == 0) inv_labels.push_back(sys.label(w));
  }
  ReportFormat fmt = parse_report_format(opt.format);
  if (fmt == ReportFormat::Json) {
    ordered_json out;
    out["spec"] = sys.spec().str();
    out["element"] = sys.label(x);
    out["left_cell"] = cell_labels;
    out["h_cell"] = h_labels;
    out["involution_candidates"] = inv_labels;
    std::cout << out.dump(2) << "\n";
  } else if (fmt == ReportFormat::Csv) {
    std::cout << "member\n";
    for (const auto& s : h_labels) std::cout << s << "\n";
  } else {
    std::cout << "# H-cell of the left cell of " << sys.label(x) << " in "
              << sys.spec().str() << "\n\n";
    std::cout << "- left cell:";
    for (const auto& s : cell_labels) std::cout << ' ' << s;
    std::cout << "\n- H-cell:";
    for (const auto& s : h_labels) std::cout << ' ' << s;
    std::cout << "\n- involution candidates:";
    for (const auto& s : inv_labels) std::cout << ' ' << s;
    std::cout << "\n";
  }
  return 0;
}

int run_ring(const std::string& spec, const std::string& label,
             const Options& opt) {
  CoxeterSystem sys(spec);
  KLTable t = table_for(sys, opt);
  CellDecomposition dec = compute_cells(sys, t, opt.thread_count());
  Elt x = sys.element_from_label(label);
  BasedRing ring = cell_quotient_ring(sys, t, dec, dec.left_id[x]);
  ReportFormat fmt = parse_report_format(opt.format);
  if (fmt == ReportFormat::Markdown) {
    std::cout << "# H-cell ring at " << sys.label(x) << " in "
              << sys.spec().str() << "\n\n";
    for (std::size_t i = 1; i < ring.basis_size(); ++i)
      for (std::size_t j = 1; j < ring.basis_size(); ++j) {
        std::cout << "- " << ring.labels[i] << " * " << ring.labels[j]
                  << " =";
        bool any = false;
        for (std::size_t k = 0; k < ring.basis_size(); ++k)
          if (ring.n(i, j, k)) {
            std::cout << (any ? " + " : " ") << ring.n(i, j, k) << "*"
                      << ring.labels[k];
            any = true;
          }
        if (!any) std::cout << " 0";
        std::cout << "\n";
      }
    return 0;
  }
  if (fmt == ReportFormat::Csv)
    throw DomainError("ring output supports markdown or json");
  ordered_json out;
  out["spec"] = sys.spec().str();
  out["element"] = sys.label(x);
  out["ring"] = ring_json(ring);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_classify_dihedral(int n, int max_rank,
                          std::optional<std::int64_t> entry_bound,
                          int max_vertices, const Options& opt) {
  if (max_vertices == 0) max_vertices = std::max(n, 3);
  auto graphs = classify_spectral_graphs(n, max_vertices);
  BasedRing ring = dihedral_small_quotient_ring(n);
  ModuleSearchResult res = enumerate_transitive_modules(ring, max_rank,
                                                        entry_bound);
  int extra = 0;
  bool exact = true;
  if (n > 4 && n % 2 == 0) {
    if (n == 12 || n == 18 || n == 30) {
      extra = 4;
      exact = false;
    } else {
      extra = 2;
    }
  }
  ReportFormat fmt = parse_report_format(opt.format);
  if (fmt == ReportFormat::Csv)
    throw DomainError("classification output supports markdown or json");
  if (fmt == ReportFormat::Markdown) {
    std::cout << "# Dihedral classification for n = " << n << "\n\n";
    std::cout << "Graphs with spectral radius 2cos(pi/" << n << ") on up to "
              << max_vertices << " vertices:\n";
    for (const auto& cg : graphs)
      std::cout << "- " << cg.graph.name << " (" << cg.graph.vertices
                << " vertices, graph6 " << cg.graph.graph6() << ")\n";
    std::cout << "\nBigrading pairs (graph, bicoloring): "
              << 2 * graphs.size() << "\n";
    std::cout << "Expected extra classes beyond the cell ones: "
              << (exact ? "" : ">= ") << extra << "\n";
    std::cout << "\nTransitive module candidates over the small-quotient "
                 "ring (decategorified candidates, max rank "
              << max_rank << "): " << res.modules.size() << "\n";
    if (!res.complete)
      std::cout << "warning: search incomplete at entry bound "
                << res.entry_bound << "\n";
    return 0;
  }
  ordered_json out;
  out["n"] = n;
  out["max_vertices"] = max_vertices;
  ordered_json jg = ordered_json::array();
  for (const auto& cg : graphs) {
    ordered_json g;
    g["name"] = cg.graph.name;
    g["vertices"] = cg.graph.vertices;
    g["graph6"] = cg.graph.graph6();
    ordered_json colorings = ordered_json::array();
    ordered_json c0 = ordered_json::array(), c1 = ordered_json::array();
    for (std::uint8_t c : cg.graph.bipartition) {
      c0.push_back(static_cast<int>(c));
      c1.push_back(1 - static_cast<int>(c));
    }
    colorings.push_back(std::move(c0));
    colorings.push_back(std::move(c1));
    g["bicolorings"] = std::move(colorings);
    ordered_json cert;
    cert["min_poly"] = cg.certificate.min_poly;
    cert["char_poly"] = cg.certificate.char_poly;
    cert["spectral_radius"] = cg.certificate.spectral_radius;
    g["certificate"] = std::move(cert);
    jg.push_back(std::move(g));
  }
  out["graphs"] = std::move(jg);
  out["expected_extra_classes"] = extra;
  out["expected_extra_classes_exact"] = exact;
  out["ring"] = ring_json(ring);
  out["enumeration"] = modules_json(res);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_classify_hcell(const std::string& spec, const std::string& label,
                       int max_rank, std::optional<std::int64_t> entry_bound,
                       const Options& opt) {
  CoxeterSystem sys(spec);
  KLTable t = table_for(sys, opt);
  CellDecomposition dec = compute_cells(sys, t, opt.thread_count());
  Elt x = sys.element_from_label(label);
  BasedRing ring = cell_quotient_ring(sys, t, dec, dec.left_id[x]);
  ModuleSearchResult res =
      enumerate_transitive_modules(ring, max_rank, entry_bound);
  ReportFormat fmt = parse_report_format(opt.format);
  if (fmt == ReportFormat::Markdown) {
    std::cout << "# Transitive module candidates over the H-cell ring of "
              << sys.label(x) << " in " << sys.spec().str() << "\n\n";
    std::cout << "ring basis:";
    for (const auto& l : ring.labels) std::cout << ' ' << l;
    std::cout << "\nmodules (decategorified candidates, max rank " << max_rank
              << "): " << res.modules.size() << "\n";
    for (const auto& m : res.modules) std::cout << "- rank " << m.rank << "\n";
    if (!res.complete)
      std::cout << "warning: search incomplete at entry bound "
                << res.entry_bound << "\n";
    return 0;
  }
  if (fmt == ReportFormat::Csv)
    throw DomainError("classification output supports markdown or json");
  ordered_json out;
  out["spec"] = sys.spec().str();
  out["element"] = sys.label(x);
  out["ring"] = ring_json(ring);
  out["enumeration"] = modules_json(res);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_cache(const std::string& action, const std::string& spec,
              const Options& opt) {
  CoxeterSystem sys(spec);
  std::filesystem::path file = kl_cache_path(opt.cache_path(), sys.spec());
  if (action == "build") {
    std::cerr << "computing KL table for " << sys.spec().str() << "\n";
    KLTable t = KLTable::build(sys);
    save_kl_cache(t, file);
    std::cout << "cached " << sys.spec().str() << " at " << file.string()
              << "\n";
    return 0;
  }
  if (action == "verify") {
    KLTable t = load_kl_cache(sys, file);
    CacheVerifyReport rep = verify_kl_cache(sys, t, 0.01, 0xCE11);
    std::cout << "sampled " << rep.sampled << " polynomials, "
              << rep.mismatches << " mismatches\n";
    if (rep.mismatches) throw DomainError("cache verification failed");
    return 0;
  }
  if (action == "clear") {
    bool removed = std::filesystem::remove(file);
    std::cout << (removed ? "removed " : "no cache at ") << file.string()
              << "\n";
    return 0;
  }
  throw DomainError("cache action must be build, verify or clear");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kazhdan-Lusztig cells, a-values, H-cell rings and spectral "
               "classifications for finite Coxeter groups"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"markdown", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--cache-dir", opt.cache_dir,
                 "Cache directory (default: CELLKIT_CACHE_DIR or "
                 "~/.cache/cellkit)");
  app.add_option("--threads", opt.threads, "Worker threads or \"auto\"")
      ->capture_default_str();
  app.add_flag("--no-cache", opt.no_cache, "Neither read nor write caches");

  std::string spec, xl, yl, action;
  int max_rank = 2, max_vertices = 0, dihedral_n = 0;
  std::int64_t entry_bound_val = -1;

  CLI::App* cells = app.add_subcommand("cells", "Cell decomposition report");
  cells->add_option("spec", spec, "Coxeter type, e.g. B3")->required();

  CLI::App* report =
      app.add_subcommand("report", "Cells plus regularity/niceness verdicts");
  report->add_option("spec", spec)->required();

  CLI::App* afun = app.add_subcommand("afunction", "a-value of every element");
  afun->add_option("spec", spec)->required();

  CLI::App* kl = app.add_subcommand("kl", "One Kazhdan-Lusztig polynomial");
  kl->add_option("spec", spec)->required();
  kl->add_option("x", xl)->required();
  kl->add_option("y", yl)->required();

  CLI::App* hc = app.add_subcommand("hcell", "H-cell of an element's left cell");
  hc->add_option("spec", spec)->required();
  hc->add_option("element", xl)->required();

  CLI::App* ring = app.add_subcommand("ring", "H-cell quotient ring");
  ring->add_option("spec", spec)->required();
  ring->add_option("element", xl)->required();

  CLI::App* classify = app.add_subcommand("classify", "Spectral / module classification");
  classify->require_subcommand(1);
  CLI::App* cdi = classify->add_subcommand("dihedral", "Dihedral small quotient");
  cdi->add_option("n", dihedral_n, "Dihedral order (>= 3)")->required();
  cdi->add_option("--max-rank", max_rank, "Module rank bound")
      ->capture_default_str();
  cdi->add_option("--entry-bound", entry_bound_val, "Matrix entry bound");
  cdi->add_option("--max-vertices", max_vertices,
                  "Vertex bound for the graph census (default n)");
  CLI::App* chc = classify->add_subcommand("hcell", "H-cell ring of a left cell");
  chc->add_option("spec", spec)->required();
  chc->add_option("element", xl)->required();
  chc->add_option("--max-rank", max_rank, "Module rank bound")
      ->capture_default_str();
  chc->add_option("--entry-bound", entry_bound_val, "Matrix entry bound");

  CLI::App* cache = app.add_subcommand("cache", "KL table cache maintenance");
  cache->add_option("action", action, "build | verify | clear")->required();
  cache->add_option("spec", spec)->required();

  for (CLI::App* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (CLI::App* nested : sub->get_subcommands({})) nested->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  std::optional<std::int64_t> entry_bound;
  if (entry_bound_val >= 0) entry_bound = entry_bound_val;

  try {
    if (cells->parsed()) return run_cells(spec, opt, false);
    if (report->parsed()) return run_cells(spec, opt, true);
    if (afun->parsed()) return run_afunction(spec, opt);
    if (kl->parsed()) return run_kl(spec, xl, yl, opt);
    if (hc->parsed()) return run_hcell(spec, xl, opt);
    if (ring->parsed()) return run_ring(spec, xl, opt);
    if (classify->parsed()) {
      if (cdi->parsed())
        return run_classify_dihedral(dihedral_n, max_rank, entry_bound,
                                     max_vertices, opt);
      return run_classify_hcell(spec, xl, max_rank, entry_bound, opt);
    }
    if (cache->parsed()) return run_cache(action, spec, opt);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
