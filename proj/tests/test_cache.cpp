#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cellkit/cache.hpp"

using namespace cellkit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("cellkit-test-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("cache round-trip preserves every polynomial") {
  TempDir tmp;
  CoxeterSystem sys("B3");
  KLTable t = KLTable::build(sys);
  fs::path file = kl_cache_path(tmp.path, sys.spec());
  save_kl_cache(t, file);

  KLTable back = load_kl_cache(sys, file);
  for (Elt y = 0; y < sys.size(); ++y)
    for (Elt x = 0; x < sys.size(); ++x) {
      CHECK(back.kl_poly(x, y) == t.kl_poly(x, y));
      CHECK(back.mu(x, y) == t.mu(x, y));
    }

  CacheVerifyReport rep = verify_kl_cache(sys, back, 0.05, 12345);
  CHECK(rep.sampled > 0);
  CHECK(rep.mismatches == 0);
}

TEST_CASE("stale or foreign caches are refused") {
  TempDir tmp;
  CoxeterSystem b3("B3");
  CoxeterSystem a3("A3");
  KLTable t = KLTable::build(b3);
  fs::path file = tmp.path / "cache.json";
  save_kl_cache(t, file);

  CHECK_THROWS_AS(load_kl_cache(a3, file), CacheError);

  // corrupt a coefficient: loading still works (format is valid) but the
  // verification sample must catch the lie
  std::ifstream in(file);
  std::string body((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  in.close();
  auto pos = body.rfind("[\"1\",\"1\"]");
  REQUIRE(pos != std::string::npos);
  body.replace(pos, 9, "[\"1\",\"7\"]");
  std::ofstream(file) << body;
  KLTable tampered = load_kl_cache(b3, file);
  CacheVerifyReport rep = verify_kl_cache(b3, tampered, 1.0, 1);
  CHECK(rep.mismatches > 0);

  std::ofstream(file) << "{not json";
  CHECK_THROWS_AS(load_kl_cache(b3, file), CacheError);
  CHECK_THROWS_AS(load_kl_cache(b3, tmp.path / "missing.json"), CacheError);
}

TEST_CASE("cache path layout") {
  CHECK(kl_cache_path("/x", CoxeterSpec::parse("I2(7)")).string() ==
        std::string("/x/kl-I2(7)-") + kKLConventionVersion + ".json");
}
