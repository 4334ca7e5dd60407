#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "nlkg/box.hpp"
#include "nlkg/errors.hpp"
#include "nlkg/io.hpp"
#include "nlkg/radial.hpp"
#include "nlkg/snapshot.hpp"

using namespace nlkg;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const char* stem) {
  return fs::temp_directory_path() / (std::string(stem) + "_" +
                                      std::to_string(::getpid()) + ".bin");
}

}  // namespace

TEST_CASE("format_double round trips") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    const double x = U(rng) * std::pow(10.0, int(rng() % 40) - 20);
    const double back = std::stod(format_double(x));
    CHECK(std::memcmp(&back, &x, sizeof x) == 0);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-3.0) == "-3");
  CHECK(format_double(0.1) == "0.1");
  // shortest form regenerates the exact bits of 1/3
  const double third = 1.0 / 3.0;
  CHECK(std::stod(format_double(third)) == third);
}

TEST_CASE("csv layout") {
  const std::string s = csv_string({"a", "b"}, {{1.0, 0.5}, {2.0, -1.0}});
  CHECK(s == "a,b\n1,0.5\n2,-1\n");

  const auto p = temp_file("csv");
  write_csv(p.string(), {"x", "y"}, {{3.25, 4.0}});
  std::ifstream in(p);
  std::string all((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  CHECK(all == csv_string({"x", "y"}, {{3.25, 4.0}}));
  fs::remove(p);
}

TEST_CASE("radial snapshot round trip is bit exact") {
  RadialGrid g(3, 25.0, 513);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> U(-5.0, 5.0);
  std::vector<double> v(g.size());
  for (auto& x : v) x = U(rng) * std::pow(2.0, int(rng() % 60) - 30);

  auto s = make_radial_snapshot(g, v);
  CHECK(s.kind == Snapshot::Kind::Radial);
  CHECK(s.d == 3);
  CHECK(s.n == 513);
  CHECK(s.extent == 25.0);

  const auto p = temp_file("radial_snap");
  write_snapshot(p.string(), s);
  const auto r = read_snapshot(p.string());
  CHECK(r.kind == s.kind);
  CHECK(r.d == s.d);
  CHECK(r.n == s.n);
  CHECK(r.extent == s.extent);
  REQUIRE(r.values.size() == v.size());
  CHECK(std::memcmp(r.values.data(), v.data(), v.size() * sizeof(double)) ==
        0);

  const auto g2 = radial_grid_of(r);
  CHECK(g2.dim() == 3);
  CHECK(g2.r_max() == 25.0);
  CHECK(g2.size() == 513);
  fs::remove(p);
}

TEST_CASE("box snapshot round trip") {
  BoxGrid g(2, 6.0, 16);
  std::vector<double> v(g.total());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(0.1 * double(i));

  auto s = make_box_snapshot(g, v);
  CHECK(s.kind == Snapshot::Kind::Box);
  CHECK(s.n == 16);

  const auto p = temp_file("box_snap");
  write_snapshot(p.string(), s);
  const auto r = read_snapshot(p.string());
  const auto g2 = box_grid_of(r);
  CHECK(g2.dim() == 2);
  CHECK(g2.length() == 6.0);
  CHECK(g2.total() == g.total());
  CHECK(std::memcmp(r.values.data(), v.data(), v.size() * sizeof(double)) ==
        0);
  fs::remove(p);
}

TEST_CASE("snapshot io failure modes") {
  CHECK_THROWS_AS(read_snapshot("/nonexistent/dir/x.snap"), IoError);

  // corrupt magic
  const auto p = temp_file("bad_snap");
  {
    std::ofstream out(p, std::ios::binary);
    out << "JUNK!" << std::string(64, '\0');
  }
  CHECK_THROWS_AS(read_snapshot(p.string()), IoError);
  fs::remove(p);

  // truncated payload
  RadialGrid g(1, 4.0, 64);
  auto s = make_radial_snapshot(g, std::vector<double>(64, 1.0));
  const auto p2 = temp_file("trunc_snap");
  write_snapshot(p2.string(), s);
  fs::resize_file(p2, fs::file_size(p2) - 17);
  CHECK_THROWS_AS(read_snapshot(p2.string()), IoError);
  fs::remove(p2);
}

TEST_CASE("grid rebuild rejects mismatched kinds") {
  RadialGrid g(1, 4.0, 32);
  auto s = make_radial_snapshot(g, std::vector<double>(32, 0.0));
  CHECK_THROWS_AS(box_grid_of(s), Error);
  BoxGrid b(1, 4.0, 32);
  auto sb = make_box_snapshot(b, std::vector<double>(32, 0.0));
  CHECK_THROWS_AS(radial_grid_of(sb), Error);
}
