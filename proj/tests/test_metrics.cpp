#include <doctest.h>

#include <cmath>

#include "omffm/metrics.hpp"
#include "omffm/rng.hpp"
#include "test_util.hpp"

using namespace omffm;

TEST_CASE("purity worked examples") {
  std::vector<ObjectiveVector> a{{1, 1}};
  std::vector<ObjectiveVector> b{{0.5, 0.5}};
  CHECK(purity(a, {a, b}) == 0.0);
  CHECK(purity(b, {a, b}) == 1.0);

  std::vector<ObjectiveVector> c{{0, 2}, {2, 0}};
  std::vector<ObjectiveVector> d{{1, 1}};
  CHECK(purity(c, {c, d}) == 1.0);
  CHECK(purity(d, {c, d}) == 1.0);

  // the combined reference against itself
  std::vector<ObjectiveVector> all{{0, 2}, {1, 1}, {2, 0}};
  CHECK(purity(all, {all}) == 1.0);
  CHECK(purity({}, {all}) == 0.0);

  // invariant under permutation of the front order
  std::vector<ObjectiveVector> perm{{2, 0}, {0, 2}, {1, 1}};
  CHECK(purity(perm, {all}) == 1.0);
}

TEST_CASE("gamma spread worked examples") {
  CHECK(gamma_spread({{0, 1}, {0.5, 0.5}, {1, 0}}) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(std::isinf(gamma_spread({{0.3, 0.7}})));
  CHECK(std::isinf(gamma_spread({})));

  // equally spaced points on a line: gap = length / (k - 1)
  const int k = 11;
  std::vector<ObjectiveVector> line;
  for (int i = 0; i < k; ++i) {
    const double t = static_cast<double>(i) / (k - 1);
    line.push_back({t, 1.0 - t});
  }
  CHECK(gamma_spread(line) == doctest::Approx(std::sqrt(2.0) / (k - 1)).epsilon(1e-12));
}

TEST_CASE("delta spread worked examples") {
  std::pair<ObjectiveVector, ObjectiveVector> extremes{{0, 1}, {1, 0}};

  std::vector<ObjectiveVector> uniform;
  for (int i = 0; i <= 10; ++i) {
    const double t = i / 10.0;
    uniform.push_back({t, 1.0 - t});
  }
  CHECK(delta_spread(uniform, extremes) == doctest::Approx(0.0).epsilon(1e-12));

  // clustered front: gaps d1 = 0.01 sqrt(2), d2 = 0.99 sqrt(2) give exactly 0.98
  std::vector<ObjectiveVector> clustered{{0, 1}, {0.01, 0.99}, {1, 0}};
  CHECK(delta_spread(clustered, extremes) == doctest::Approx(0.98).epsilon(1e-12));

  CHECK(std::isinf(delta_spread({{0.5, 0.5}}, extremes)));
}

TEST_CASE("spread metrics reject unsupported arities") {
  std::pair<ObjectiveVector, ObjectiveVector> ex{{0, 1, 1}, {1, 0, 1}};
  CHECK_THROWS_AS((void)delta_spread({{0, 1, 1}, {1, 0, 1}}, ex), std::invalid_argument);
  CHECK_THROWS_AS((void)gamma_spread({{1, 2, 3, 4}, {0, 1, 2, 3}}), std::invalid_argument);
}

TEST_CASE("gamma and delta are invariant under common positive scaling") {
  Rng rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<ObjectiveVector> pts;
    for (int i = 0; i < 8; ++i) pts.push_back({rng.uniform(0, 1), rng.uniform(0, 1)});
    pts = nondominated_filter(pts);
    if (pts.size() < 2) continue;
    std::pair<ObjectiveVector, ObjectiveVector> ex{pts.front(), pts.back()};
    const double c = rng.uniform(0.5, 20.0);
    std::vector<ObjectiveVector> scaled;
    for (const auto& p : pts) scaled.push_back({c * p[0], c * p[1]});
    std::pair<ObjectiveVector, ObjectiveVector> exs{{c * ex.first[0], c * ex.first[1]},
                                                    {c * ex.second[0], c * ex.second[1]}};
    CHECK(gamma_spread(scaled) == doctest::Approx(c * gamma_spread(pts)).epsilon(1e-10));
    CHECK(delta_spread(scaled, exs) == doctest::Approx(delta_spread(pts, ex)).epsilon(1e-10));
  }
}

TEST_CASE("hypervolume worked examples") {
  CHECK(hypervolume({{0, 1}, {1, 0}}, {2, 2}) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(hypervolume({{0.25, 0.5}}, {2, 2}) == doctest::Approx(1.75 * 1.5).epsilon(1e-15));
  // dominated points contribute nothing
  CHECK(hypervolume({{0, 1}, {1, 0}, {1, 1}}, {2, 2}) == doctest::Approx(3.0).epsilon(1e-15));
  // clipped-out point beyond the reference
  CHECK(hypervolume({{0, 1}, {3, 0}}, {2, 2}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(hypervolume({}, {2, 2}) == 0.0);
  // single 3-D box
  CHECK(hypervolume({{0, 0, 0}}, {1, 2, 3}) == doctest::Approx(6.0).epsilon(1e-15));
}

namespace {

double monte_carlo_hv(const std::vector<ObjectiveVector>& front, const ObjectiveVector& ref,
                      int samples, Rng& rng) {
  const std::size_t m = ref.size();
  ObjectiveVector lo(m, 1e300);
  for (const auto& p : front)
    for (std::size_t j = 0; j < m; ++j) lo[j] = std::min(lo[j], p[j]);
  double vol = 1.0;
  for (std::size_t j = 0; j < m; ++j) vol *= ref[j] - lo[j];
  int hit = 0;
  ObjectiveVector z(m);
  for (int s = 0; s < samples; ++s) {
    for (std::size_t j = 0; j < m; ++j) z[j] = rng.uniform(lo[j], ref[j]);
    for (const auto& p : front) {
      bool dom = true;
      for (std::size_t j = 0; j < m && dom; ++j) dom = p[j] <= z[j];
      if (dom) {
        ++hit;
        break;
      }
    }
  }
  return vol * hit / samples;
}

std::vector<ObjectiveVector> random_front(Rng& rng, std::size_t m, int raw) {
  std::vector<ObjectiveVector> pts;
  for (int i = 0; i < raw; ++i) {
    ObjectiveVector f(m);
    for (std::size_t j = 0; j < m; ++j) f[j] = rng.uniform(0, 1);
    pts.push_back(f);
  }
  return nondominated_filter(pts);
}

}  // namespace

TEST_CASE("hypervolume agrees with Monte Carlo estimation") {
  Rng rng(32);
  for (std::size_t m : {2u, 3u}) {
    for (int rep = 0; rep < 4; ++rep) {
      const auto front = random_front(rng, m, 25);
      ObjectiveVector ref(m, 1.2);
      const double exact = hypervolume(front, ref);
      const double mc = monte_carlo_hv(front, ref, 200000, rng);
      CHECK(std::abs(exact - mc) <= 0.02 * exact);
    }
  }
}

TEST_CASE("hypervolume is monotone under added non-dominated points") {
  Rng rng(33);
  for (std::size_t m : {2u, 3u}) {
    for (int rep = 0; rep < 30; ++rep) {
      auto front = random_front(rng, m, 12);
      ObjectiveVector ref(m, 1.5);
      const double before = hypervolume(front, ref);
      ObjectiveVector extra(m);
      for (std::size_t j = 0; j < m; ++j) extra[j] = rng.uniform(0, 1);
      front.push_back(extra);
      CHECK(hypervolume(front, ref) >= before - 1e-12);
    }
  }
}

TEST_CASE("performance profile worked example") {
  std::vector<std::vector<double>> values{{1, 2}, {3, 3}};
  std::vector<std::vector<bool>> mask{{false, false}, {false, false}};
  const auto curves = performance_profile(values, mask, {"s1", "s2"});
  REQUIRE(curves.size() == 2);
  REQUIRE(curves[0].taus == std::vector<double>{1, 2});
  CHECK(curves[0].rhos == std::vector<double>{1.0, 1.0});
  CHECK(curves[1].rhos == std::vector<double>{0.5, 1.0});
}

TEST_CASE("performance profile edge behavior") {
  // single solver: always the best
  auto single = performance_profile({{2.0}, {5.0}}, {{false}, {false}}, {"only"});
  for (double r : single[0].rhos) CHECK(r == 1.0);

  // all-failed row dropped; failures keep rho below 1
  auto withfail = performance_profile({{1.0, 2.0}, {1.0, 1.0}},
                                      {{false, true}, {true, true}}, {"a", "b"});
  CHECK(withfail[0].rhos.back() == 1.0);
  CHECK(withfail[1].rhos.back() == 0.0);

  // rho curves are non-decreasing within [0, 1]; someone is best on each problem
  Rng rng(34);
  std::vector<std::vector<double>> values;
  std::vector<std::vector<bool>> mask;
  for (int p = 0; p < 12; ++p) {
    values.push_back({rng.uniform(1, 9), rng.uniform(1, 9), rng.uniform(1, 9)});
    mask.push_back({false, false, false});
  }
  const auto curves = performance_profile(values, mask, {"a", "b", "c"});
  double rho1_sum = 0.0;
  for (const auto& c : curves) {
    for (std::size_t i = 0; i + 1 < c.rhos.size(); ++i) CHECK(c.rhos[i] <= c.rhos[i + 1]);
    CHECK(c.rhos.back() <= 1.0);
    CHECK(c.rhos.front() >= 0.0);
    rho1_sum += c.rhos.front();  // taus.front() == 1
  }
  CHECK(rho1_sum >= 1.0 - 1e-12);

  CHECK_THROWS_AS((void)performance_profile({{-1.0}}, {{false}}, {"bad"}),
                  std::invalid_argument);
}
