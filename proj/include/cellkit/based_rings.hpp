#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cellkit/cells.hpp"

namespace cellkit {

// A ring with a fixed basis whose structure constants are nonnegative
// integers.  Index 0 is always the unit.
struct BasedRing {
  std::vector<std::string> labels;
  std::vector<std::int64_t> tensor;  // n*n*n, entry (i,j,k) = N[i][j][k]

  std::size_t basis_size() const { return labels.size(); }
  std::int64_t n(std::size_t i, std::size_t j, std::size_t k) const {
    std::size_t b = basis_size();
    return tensor[(i * b + j) * b + k];
  }
  std::int64_t& n(std::size_t i, std::size_t j, std::size_t k) {
    std::size_t b = basis_size();
    return tensor[(i * b + j) * b + k];
  }

  static BasedRing with_unit(std::vector<std::string> labels);

  // Unitality, associativity, nonnegativity.  Throws DomainError.
  void validate() const;
};

// Cells of a based ring, mirroring the group-level decomposition on an
// abstract positive basis.
struct BasisCells {
  std::vector<std::uint32_t> left_id, right_id, two_id;  // per basis index
  std::vector<std::vector<std::uint32_t>> left_cells, right_cells, two_cells;
  std::vector<std::vector<std::uint64_t>> left_reach, right_reach, two_reach;

  bool two_leq(std::uint32_t i, std::uint32_t j) const;
  // The unique maximal two-sided basis cell, if it is unique.
  std::optional<std::uint32_t> top_cell() const;
};

BasisCells basis_cells(const BasedRing& ring);

// The based ring on {unit} + H for H the H-cell of `left_cell`, with
// structure constants h_{x,y,z}(v=1) truncated to the two-sided cell.
// Requires the ambient two-sided cell to be regular; a product escaping
// into the rest of the cell reports an error.
BasedRing cell_quotient_ring(const CoxeterSystem& sys, const KLTable& table,
                             const CellDecomposition& dec,
                             std::uint32_t left_cell);

// A module with a fixed basis on which every ring basis element acts by a
// nonnegative integer matrix; action[0] is the identity.
struct BasedModule {
  int rank = 0;
  std::vector<std::vector<std::int64_t>> action;  // per basis elt, rank*rank
};

// Spectral radius of the regular action of the sum of all basis elements.
double special_value(const BasedRing& ring);
// Spectral radius of the sum of the module action matrices.
double module_sum_spectral_radius(const BasedModule& mod);
bool is_special(const BasedRing& ring, const BasedModule& mod,
                double rel_tol = 1e-9);

struct ModuleSearchResult {
  std::vector<BasedModule> modules;  // canonical representatives, sorted
  std::int64_t entry_bound = 0;
  // False when an accepted module has an entry at the bound: modules with
  // larger entries may exist beyond the searched box.
  bool complete = true;
  std::vector<std::string> warnings;
};

// All transitive based modules of rank <= max_rank, with every element of
// the ring's top cell acting by a nonzero matrix, up to simultaneous
// permutation of the module basis.
ModuleSearchResult enumerate_transitive_modules(
    const BasedRing& ring, int max_rank,
    std::optional<std::int64_t> entry_bound = std::nullopt);

enum class DihedralRoute : std::uint8_t { Formulas, HeckeOracle };

// The based ring of the dihedral small quotient: basis {unit} + all
// elements except the identity and the longest one.  Odd n uses the closed
// multiplication table, even n the generic Hecke computation with the top
// element truncated; both routes are available for cross-checking.
BasedRing dihedral_small_quotient_ring(int n);
BasedRing dihedral_small_quotient_ring(int n, DihedralRoute route);

// ---- spectral classification -------------------------------------------

struct Graph {
  int vertices = 0;
  std::vector<std::uint8_t> adj;  // row-major 0/1, symmetric, no loops
  std::string name;               // "A5", "D7", "E6" when recognized
  std::vector<std::uint8_t> bipartition;  // one 2-coloring (when bipartite)

  bool edge(int i, int j) const { return adj[i * vertices + j] != 0; }
  std::string graph6() const;
};

Graph path_graph(int vertices);
// Three paths of lengths a, b, c glued to a central vertex.
Graph tripod_graph(int a, int b, int c);

struct SpectralCertificate {
  std::vector<long long> min_poly;   // minimal polynomial of 2cos(pi/n)
  std::vector<long long> char_poly;  // adjacency characteristic polynomial
  double spectral_radius = 0.0;
};

struct ClassifiedGraph {
  Graph graph;
  SpectralCertificate certificate;
};

// Connected simple graphs, up to isomorphism, with adjacency spectral
// radius exactly 2cos(pi/n).  Equality is certified by exact divisibility
// of the characteristic polynomial by the minimal polynomial plus a
// numeric bound on the largest eigenvalue.
std::vector<ClassifiedGraph> classify_spectral_graphs(int n, int max_vertices);

// All connected graphs on <= max_vertices vertices with spectral radius
// strictly below 2, up to isomorphism (positive-definiteness of 2I - A is
// decided exactly).
std::vector<Graph> spectral_radius_below_two_census(int max_vertices);

// Minimal polynomial of 2cos(pi/n) over Q, ascending coefficients, monic.
std::vector<long long> cos_minimal_polynomial(int n);
// Characteristic polynomial of the adjacency matrix, ascending, exact.
std::vector<long long> adjacency_char_poly(const Graph& g);

}  // namespace cellkit
