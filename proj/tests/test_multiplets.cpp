#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "swsh/error.hpp"
#include "swsh/multiplets.hpp"

using swsh::MultipletSpectrum;
using Counts = std::map<int, std::int64_t>;

namespace {

MultipletSpectrum spectrum(Counts counts, int j_max, bool complete = false) {
  MultipletSpectrum s;
  s.multiplicities = std::move(counts);
  s.j_max = j_max;
  s.complete = complete;
  return s;
}

Counts tower(int from, int to, int step, std::int64_t n = 1) {
  Counts c;
  for (int j = from; j <= to; j += step) c[j] = n;
  return c;
}

}  // namespace

TEST_CASE("tensor_decompose") {
  CHECK(swsh::tensor_decompose(1, 1).multiplicities == Counts{{0, 1}, {1, 1}, {2, 1}});
  CHECK(swsh::tensor_decompose(4, 0).multiplicities == Counts{{4, 1}});
  CHECK(swsh::tensor_decompose(3, 2).multiplicities == tower(1, 5, 1));
  CHECK_THROWS_AS(swsh::tensor_decompose(-1, 2), swsh::Error);
  for (int a = 0; a <= 6; ++a) {
    for (int b = 0; b <= 6; ++b) {
      CHECK(swsh::tensor_decompose(a, b).dimension() == (2 * a + 1) * (2 * b + 1));
      CHECK(swsh::tensor_decompose(a, b).multiplicities == oracle::tensor_with(a, {{b, 1}}));
    }
  }
}

TEST_CASE("massless and massive spectra") {
  CHECK(swsh::massless_spectrum(1, 5).multiplicities == tower(1, 5, 1));
  CHECK(swsh::massless_spectrum(0, 3).multiplicities == tower(0, 3, 1));
  CHECK(swsh::massless_spectrum(-2, 4).multiplicities == tower(2, 4, 1));
  CHECK_THROWS_AS(swsh::massless_spectrum(3, 2), swsh::Error);

  CHECK(swsh::massive_spectrum(1, 3).multiplicities == Counts{{0, 1}, {1, 3}, {2, 3}, {3, 3}});
  CHECK(swsh::massive_spectrum(0, 5).multiplicities == swsh::massless_spectrum(0, 5).multiplicities);
  CHECK(swsh::massive_spectrum(2, 4).multiplicities ==
        Counts{{0, 1}, {1, 3}, {2, 5}, {3, 5}, {4, 5}});
  CHECK_THROWS_AS(swsh::massive_spectrum(-1, 4), swsh::Error);

  // Massive spectrum equals V_s ⊗ (full orbital tower) on the sound window.
  for (int s = 0; s <= 3; ++s) {
    const auto product =
        swsh::spectrum_tensor(swsh::single_multiplet(s), spectrum(tower(0, 20, 1), 20));
    CHECK(product.j_max == 20 - s);
    CHECK(product.multiplicities == swsh::massive_spectrum(s, 20 - s).multiplicities);
  }
}

TEST_CASE("spectrum_tensor truncation semantics") {
  const auto v1 = swsh::single_multiplet(1);
  const auto massive = swsh::spectrum_tensor(v1, spectrum(tower(0, 12, 1), 12));
  CHECK(massive.j_max == 11);
  CHECK(massive.multiplicities == swsh::massive_spectrum(1, 11).multiplicities);

  const auto splitting = swsh::spectrum_tensor(v1, spectrum(tower(0, 12, 3), 12));
  CHECK(splitting.j_max == 11);
  CHECK(splitting.multiplicities == tower(1, 11, 1));

  const auto v0 = swsh::single_multiplet(0);
  const auto any = spectrum(Counts{{2, 2}, {5, 1}}, 9);
  CHECK(swsh::spectrum_tensor(any, v0) == any);
  CHECK(swsh::spectrum_tensor(v0, any) == any);

  const auto both = swsh::spectrum_tensor(spectrum(tower(0, 4, 1), 4), spectrum(tower(0, 4, 1), 4));
  CHECK(both.j_max == -1);
  CHECK(both.multiplicities.empty());
}

TEST_CASE("dimension, commutativity and associativity on complete spectra") {
  const auto a = spectrum(Counts{{0, 1}, {2, 2}}, 2, true);
  const auto b = spectrum(Counts{{1, 1}, {3, 1}}, 3, true);
  const auto c = spectrum(Counts{{1, 2}}, 1, true);
  const auto ab = swsh::spectrum_tensor(a, b);
  CHECK(ab.complete);
  CHECK(ab.dimension() == a.dimension() * b.dimension());
  CHECK(swsh::spectrum_tensor(b, a) == ab);
  CHECK(swsh::spectrum_tensor(ab, c) == swsh::spectrum_tensor(a, swsh::spectrum_tensor(b, c)));
  CHECK(swsh::spectrum_tensor(ab, c).dimension() == a.dimension() * b.dimension() * c.dimension());
}

TEST_CASE("factor_search against brute-force enumeration") {
  // massless h = 1, a = 1
  const auto target = swsh::massless_spectrum(1, 12);
  const auto found = swsh::factor_search(target, 1, 12);
  const auto brute = oracle::brute_force_factor(target.multiplicities, 1, 0, 12, 1, 11);
  // Brute force only with multiplicities <= 1 here (2^13 candidates); the
  // library search with cap 3 must contain every one of them.
  for (const auto& o : brute) {
    bool present = false;
    for (const auto& s : found) present = present || s.multiplicities == o;
    CHECK(present);
  }
  std::vector<Counts> found_counts;
  for (const auto& s : found) found_counts.push_back(s.multiplicities);
  // V_1 ⊗ V_2 = V_1 ⊕ V_2 ⊕ V_3 makes {2, 5, 8, 11} a second exact solution.
  CHECK(found_counts == std::vector<Counts>{tower(0, 12, 3), tower(2, 11, 3)});

  // Smaller windows against a full (cap 3) enumeration.
  for (const int a : {0, 1, 2}) {
    for (const int l_max : {3, 4, 5}) {
      if (l_max < a) continue;
      const auto t = swsh::massive_spectrum(1, 6);
      const int window = std::min(t.j_max, l_max - a);
      const auto lib = swsh::factor_search(t, a, l_max, {3, 100000});
      // O(l) with l < a - window cannot reach the window; the search leaves them 0.
      const auto ref = oracle::brute_force_factor(t.multiplicities, a, std::max(0, a - window),
                                                  a + window, 3, window);
      std::vector<Counts> lib_counts;
      for (const auto& s : lib) lib_counts.push_back(s.multiplicities);
      std::vector<Counts> ref_sorted = ref;
      std::sort(ref_sorted.begin(), ref_sorted.end());
      CHECK(lib_counts == ref_sorted);
    }
  }
}

TEST_CASE("factor_search examples") {
  const auto massive = swsh::factor_search(swsh::massive_spectrum(1, 12), 1, 12);
  bool has_tower = false;
  for (const auto& s : massive) has_tower = has_tower || s.multiplicities == tower(0, 12, 1);
  CHECK(has_tower);

  CHECK(swsh::factor_search(spectrum(Counts{{0, 1}}, 12), 1, 12).empty());

  CHECK_THROWS_AS(swsh::factor_search(swsh::massless_spectrum(1, 12), 5, 12, {3, 2}),
                  swsh::Error);
  CHECK_THROWS_AS(swsh::factor_search(swsh::massless_spectrum(1, 12), -1, 12), swsh::Error);
}

TEST_CASE("spectrum JSON") {
  std::ostringstream out;
  swsh::write_spectrum_json(out, swsh::massive_spectrum(1, 3));
  CHECK(out.str() == "{\"j_max\":3,\"multiplicities\":{\"0\":1,\"1\":3,\"2\":3,\"3\":3}}\n");
  std::istringstream in(out.str());
  const auto back = swsh::read_spectrum_json(in);
  CHECK(back.j_max == 3);
  CHECK(back.multiplicities == swsh::massive_spectrum(1, 3).multiplicities);

  std::istringstream bad("{\"j_max\": 2, \"multiplicities\": {\"x\": 1}}");
  CHECK_THROWS_AS(swsh::read_spectrum_json(bad), swsh::Error);
  std::istringstream negative("{\"j_max\": 2, \"multiplicities\": {\"1\": -1}}");
  CHECK_THROWS_AS(swsh::read_spectrum_json(negative), swsh::Error);
}
