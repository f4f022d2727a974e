#pragma once

#include <cstdint>
#include <filesystem>

#include "cellkit/hecke.hpp"

namespace cellkit {

class CacheError : public DomainError {
 public:
  using DomainError::DomainError;
};

// CELLKIT_CACHE_DIR when set, otherwise ~/.cache/cellkit.
std::filesystem::path default_cache_dir();
std::filesystem::path kl_cache_path(const std::filesystem::path& dir,
                                    const CoxeterSpec& spec);

// Self-describing JSON file: header (spec, |W|, convention version,
// checksum of the element indexing) plus every nonzero P_{x,y} as an
// (x, y, [coefficients]) record with coefficients as decimal strings.
void save_kl_cache(const KLTable& table, const std::filesystem::path& file);

// Throws CacheError when the file does not match the system (stale or
// foreign caches are refused rather than reinterpreted).
KLTable load_kl_cache(const CoxeterSystem& sys,
                      const std::filesystem::path& file);

struct CacheVerifyReport {
  std::size_t sampled = 0;
  std::size_t mismatches = 0;
};

// Recomputes a deterministic random sample of the cached polynomials with
// the independent single-pair recursion and compares exactly.
CacheVerifyReport verify_kl_cache(const CoxeterSystem& sys,
                                  const KLTable& loaded, double fraction,
                                  std::uint64_t seed);

}  // namespace cellkit
