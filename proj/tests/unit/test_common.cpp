#include <doctest.h>

#include <atomic>
#include <string_view>
#include <vector>

#include "holsh/common/block_tridiagonal.hpp"
#include "holsh/common/parallel.hpp"
#include "holsh/common/rng.hpp"
#include "holsh/common/stats.hpp"

using namespace holsh;

TEST_SUITE("common") {

TEST_CASE("streams are reproducible and distinct") {
  Rng a = make_stream(42, 3), b = make_stream(42, 3), c = make_stream(42, 4);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(a);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("line fit recovers an exact line") {
  const std::vector<double> x{0, 1, 2, 3, 4};
  std::vector<double> y;
  for (double t : x) y.push_back(1.5 - 0.25 * t);
  const auto f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(f.intercept == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(f.rms_residual < 1e-14);
  CHECK(f.count == 5);
}

TEST_CASE("FNV-1a matches the published test vectors") {
  constexpr std::string_view empty = "";
  constexpr std::string_view a = "a";
  CHECK(fnv1a64(std::span<const char>(empty.data(), empty.size())) == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64(std::span<const char>(a.data(), a.size())) == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("minimum-norm orbit correction solves the system with the least norm") {
  Rng rng = make_stream(9, 0);
  const int m = 2;
  const std::size_t n = 12;
  std::vector<SmallMat> a(n);
  std::vector<SmallVec> g(n);
  for (std::size_t k = 0; k < n; ++k) {
    a[k] = SmallMat(m, m);
    g[k] = SmallVec(m);
    for (int i = 0; i < m; ++i) {
      g[k](i) = uniform(rng, -1, 1);
      for (int j = 0; j < m; ++j) a[k](i, j) = uniform(rng, -2, 2);
    }
  }
  const auto delta = min_norm_orbit_correction(a, g);
  REQUIRE(delta.size() == n + 1);

  // Dense reference: J delta = -g with J = [-A_k  I] blocks, least norm via
  // complete orthogonal decomposition.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n * m, (n + 1) * m);
  Eigen::VectorXd rhs(n * m);
  for (std::size_t k = 0; k < n; ++k) {
    J.block(k * m, k * m, m, m) = -a[k];
    J.block(k * m, (k + 1) * m, m, m).setIdentity();
    rhs.segment(k * m, m) = -g[k];
  }
  const Eigen::VectorXd ref = J.completeOrthogonalDecomposition().solve(rhs);
  for (std::size_t k = 0; k <= n; ++k)
    for (int i = 0; i < m; ++i) CHECK(delta[k](i) == doctest::Approx(ref(k * m + i)).epsilon(1e-9));
}

TEST_CASE("parallel_for visits every item once whatever the thread count") {
  for (unsigned jobs : {1U, 2U, 4U}) {
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), jobs, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) REQUIRE(h == 1);
  }
}

TEST_CASE("parallel_for rethrows the first failure") {
  CHECK_THROWS_AS(parallel_for(10, 2, [](std::size_t i) {
                    if (i == 5) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

}
