#include "cellkit/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <random>

namespace cellkit {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

template <class F>
void for_each_pair(const CoxeterSystem& sys, Elt y, F&& f) {
  const std::uint64_t* row = sys.bruhat_row(y);
  std::size_t words = sys.bruhat_words_per_row();
  std::uint32_t ordinal = 0;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t bits = row[w];
    while (bits) {
      int b = __builtin_ctzll(bits);
      bits &= bits - 1;
      f(static_cast<Elt>((w << 6) + static_cast<std::size_t>(b)), ordinal++);
    }
  }
}

}  // namespace

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("CELLKIT_CACHE_DIR"); env && *env)
    return env;
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "cellkit";
  return std::filesystem::path(".cellkit-cache");
}

std::filesystem::path kl_cache_path(const std::filesystem::path& dir,
                                    const CoxeterSpec& spec) {
  return dir / ("kl-" + spec.str() + "-" + kKLConventionVersion + ".json");
}

void save_kl_cache(const KLTable& table, const std::filesystem::path& file) {
  const CoxeterSystem& sys = table.system();
  ordered_json doc;
  doc["format"] = "cellkit-kl-cache";
  doc["version"] = 1;
  doc["spec"] = sys.spec().str();
  doc["group_order"] = sys.size();
  doc["convention_version"] = table.convention_version();
  doc["indexing_checksum"] = hex64(sys.indexing_checksum());

  ordered_json records = ordered_json::array();
  for (Elt y = 0; y < sys.size(); ++y) {
    const auto& ids = table.row_ids(y);
    for_each_pair(sys, y, [&](Elt x, std::uint32_t ord) {
      const Poly& p = table.pool_poly(ids[ord]);
      ordered_json coeffs = ordered_json::array();
      for (long long c : p.coeffs()) coeffs.push_back(std::to_string(c));
      records.push_back(ordered_json::array({x, y, std::move(coeffs)}));
    });
  }
  doc["kl"] = std::move(records);

  std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file);
  if (!out) throw CacheError("cannot write cache file " + file.string());
  out << doc.dump() << "\n";
}

KLTable load_kl_cache(const CoxeterSystem& sys,
                      const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw CacheError("cannot read cache file " + file.string());
  ordered_json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw CacheError("cache file " + file.string() +
                     " is not valid JSON: " + e.what());
  }
  auto expect = [&](const char* key, const ordered_json& want) {
    if (!doc.contains(key) || doc[key] != want)
      throw CacheError("cache file " + file.string() + " mismatch on " + key +
                       " (stale cache refused; rebuild it)");
  };
  expect("format", "cellkit-kl-cache");
  expect("spec", sys.spec().str());
  expect("group_order", sys.size());
  expect("convention_version", kKLConventionVersion);
  expect("indexing_checksum", hex64(sys.indexing_checksum()));

  std::vector<std::vector<std::uint32_t>> rows(sys.size());
  for (Elt y = 0; y < sys.size(); ++y) {
    std::size_t count = 0;
    for_each_pair(sys, y, [&](Elt, std::uint32_t) { ++count; });
    rows[y].assign(count, UINT32_MAX);
  }

  std::vector<Poly> pool{Poly(), Poly(1)};
  std::unordered_map<Poly, std::uint32_t, PolyHash> ids{{Poly(), 0},
                                                        {Poly(1), 1}};
  Elt cur_y = UINT32_MAX;
  std::unordered_map<Elt, std::uint32_t> ordinal_of;
  for (const auto& rec : doc["kl"]) {
    if (!rec.is_array() || rec.size() != 3)
      throw CacheError("malformed cache record");
    Elt x = rec[0].get<Elt>();
    Elt y = rec[1].get<Elt>();
    if (y >= sys.size() || !sys.bruhat_leq(x, y))
      throw CacheError("cache record for a pair outside Bruhat order");
    std::vector<long long> coeffs;
    for (const auto& c : rec[2]) coeffs.push_back(std::stoll(c.get<std::string>()));
    Poly p = Poly::from_coeffs(std::move(coeffs));
    std::uint32_t id;
    if (auto it = ids.find(p); it != ids.end()) {
      id = it->second;
    } else {
      id = static_cast<std::uint32_t>(pool.size());
      pool.push_back(p);
      ids.emplace(std::move(p), id);
    }
    if (y != cur_y) {
      cur_y = y;
      ordinal_of.clear();
      for_each_pair(sys, y,
                    [&](Elt xx, std::uint32_t ord) { ordinal_of[xx] = ord; });
    }
    auto it = ordinal_of.find(x);
    if (it == ordinal_of.end())
      throw CacheError("cache record could not be placed");
    rows[y][it->second] = id;
  }
  for (Elt y = 0; y < sys.size(); ++y)
    for (std::uint32_t id : rows[y])
      if (id == UINT32_MAX)
        throw CacheError("cache is missing a Bruhat pair for " +
                         sys.spec().str());
  return KLTable::from_rows(sys, std::move(rows), std::move(pool));
}

CacheVerifyReport verify_kl_cache(const CoxeterSystem& sys,
                                  const KLTable& loaded, double fraction,
                                  std::uint64_t seed) {
  CacheVerifyReport report;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (Elt y = 0; y < sys.size(); ++y) {
    for_each_pair(sys, y, [&](Elt x, std::uint32_t) {
      if (dist(rng) >= fraction) return;
      ++report.sampled;
      if (loaded.kl_poly(x, y) != kl_polynomial_single(sys, x, y))
        ++report.mismatches;
    });
  }
  return report;
}

}  // namespace cellkit
