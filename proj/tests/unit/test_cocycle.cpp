#include <doctest.h>

#include <cmath>
#include <sstream>

#include "holsh/cocycle/cocycle_io.hpp"
#include "holsh/cocycle/min_sup.hpp"
#include "holsh/cocycle/oracle.hpp"
#include "holsh/cocycle/slow_growth.hpp"
#include "holsh/common/error.hpp"
#include "holsh/maps/catalog.hpp"
#include "support.hpp"

using namespace holsh;
using namespace holsh::cocycle;

namespace {
MatrixXd cat_matrix() {
  MatrixXd a(2, 2);
  a << 2, 1, 1, 1;
  return a;
}
std::vector<VectorXd> constant_forcing(int m, long n, double value = 1.0) {
  return std::vector<VectorXd>(static_cast<std::size_t>(n), VectorXd::Constant(m, value / std::sqrt(m)));
}
}  // namespace

TEST_SUITE("cocycle") {

TEST_CASE("norm bound R gets a safety margin") {
  const Cocycle c = Cocycle::constant(cat_matrix(), 0, 9);
  CHECK(c.sampled_norm_sup() == doctest::Approx((3 + std::sqrt(5.0)) / 2));
  CHECK(c.R() == doctest::Approx(1.1 * c.sampled_norm_sup()));
  CHECK(c.satisfies_bound());
  CHECK(c.k1() == 9);
  CHECK(c.size() == 10);
}

TEST_CASE("singular and out-of-window requests throw") {
  MatrixXd s(2, 2);
  s << 1, 2, 2, 4;
  CHECK_THROWS_AS(Cocycle::constant(s, 0, 3), SingularError);
  const Cocycle c = Cocycle::scalar({2.0, 3.0}, 5);
  CHECK_THROWS_AS(c.A(4), WindowError);
  CHECK_THROWS_AS(c.A(7), WindowError);
  CHECK_THROWS_AS(transition(c, 5, 3), WindowError);
}

TEST_CASE("transitions and products") {
  const Cocycle c = Cocycle::scalar({2.0, -3.0, 0.5}, -1);
  CHECK(product_1d(c, -1, 3) == doctest::Approx(3.0));
  CHECK(product_1d(c, 0, 0) == 1.0);
  CHECK(transition(c, -1, 2)(0, 0) == doctest::Approx(-6.0));
}

TEST_CASE("normalised directions follow the unstable direction") {
  const Cocycle c = Cocycle::constant(cat_matrix(), 0, 39);
  VectorXd e(2);
  e << 1, 0;
  const auto s = normalized_directions(c, e, 0);
  CHECK(s.at(0).norm() == doctest::Approx(1.0));
  CHECK(s.stretch(30) == doctest::Approx((3 + std::sqrt(5.0)) / 2).epsilon(1e-10));
  const auto back = normalized_directions(c, e, 40);
  CHECK(back.at(0).norm() == doctest::Approx(1.0));
  CHECK(direction_product(s, 0, 3) == doctest::Approx(s.stretch(0) * s.stretch(1) * s.stretch(2)));
}

TEST_CASE("derivative cocycle along an orbit") {
  const auto cat = maps::make_cat_map();
  maps::Vec p(2);
  p << 0.1, 0.2;
  const Cocycle c = from_orbit(cat, p, -5, 5);
  CHECK(c.k0() == -5);
  CHECK((c.A(-5) - cat_matrix()).norm() == 0.0);
  const auto circle = maps::find_map("circle_example");
  CHECK_NOTHROW(from_orbit(circle, maps::Vec::Constant(1, 0.3), -3, 3));
}

TEST_CASE("cocycle files round trip") {
  Rng rng = make_stream(4, 0);
  const Cocycle c = testing::random_cocycle(rng, 2, -3, 6);
  std::stringstream s;
  write_cocycle(s, c);
  const Cocycle d = read_cocycle(s);
  CHECK(d.k0() == -3);
  CHECK(d.R() == c.R());
  for (long k = c.k0(); k <= c.k1(); ++k) CHECK((c.A(k) - d.A(k)).norm() == 0.0);
}

TEST_CASE("malformed cocycle files are rejected") {
  std::istringstream empty("# nothing\n\n");
  CHECK_THROWS_AS(read_cocycle(empty), PreconditionError);
  std::istringstream header("2 0\n");
  CHECK_THROWS_AS(read_cocycle(header), PreconditionError);
  std::istringstream short_file("1 0 2 3\n1\n1\n");
  CHECK_THROWS_AS(read_cocycle(short_file), PreconditionError);
  std::istringstream partial("2 0 0 3\n1 0 0\n");
  CHECK_THROWS_AS(read_cocycle(partial), PreconditionError);
}

TEST_CASE("identity with unit forcing has min sup N/2") {
  for (long N : {1L, 4L, 10L, 51L}) {
    const Cocycle c = Cocycle::scalar(std::vector<double>(static_cast<std::size_t>(N), 1.0), 0);
    const auto sol = solve_min_sup(make_problem(c, 0, constant_forcing(1, N)));
    CHECK(sol.F == doctest::Approx(N / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("expanding scalar cocycle keeps solutions below 1") {
  const Cocycle c = Cocycle::scalar(std::vector<double>(60, 2.0), 0);
  Rng rng = make_stream(6, 0);
  for (int t = 0; t < 10; ++t) {
    const auto sol = solve_min_sup(make_problem(c, 0, testing::random_forcing(rng, 1, 60)));
    CHECK(sol.F <= 1.0 + 1e-9);
  }
}

TEST_CASE("min sup solutions satisfy the recursion") {
  Rng rng = make_stream(7, 0);
  for (int m = 1; m <= 3; ++m) {
    const Cocycle c = testing::random_cocycle(rng, m, 0, 30);
    const auto p = make_problem(c, 0, testing::random_forcing(rng, m, 30));
    const auto sol = solve_min_sup(p);
    CHECK(recursion_residual(p, sol.v) < 1e-9 * (1.0 + sol.F));
    double sup = 0.0;
    for (const auto& v : sol.v) sup = std::max(sup, v.norm());
    CHECK(sup == doctest::Approx(sol.F).epsilon(1e-9));
  }
}

TEST_CASE("min sup agrees with the grid oracle on small instances") {
  Rng rng = make_stream(8, 0);
  for (int t = 0; t < 20; ++t) {
    const int m = 1 + t % 2;
    const long N = 2 + t % 9;
    const Cocycle c = testing::random_cocycle(rng, m, 0, N);
    const auto p = make_problem(c, 0, testing::random_forcing(rng, m, N));
    CHECK(solve_min_sup(p).F == doctest::Approx(brute_force_F_oracle(p)).epsilon(1e-8));
  }
}

TEST_CASE("malformed problems are rejected") {
  const Cocycle c = Cocycle::scalar({1.0, 1.0}, 0);
  CHECK_THROWS_AS(make_problem(c, 0, constant_forcing(1, 3)), WindowError);
  CHECK_THROWS_AS(make_problem(c, 0, constant_forcing(2, 2)), PreconditionError);
}

TEST_CASE("Q estimates") {
  const Cocycle id = Cocycle::scalar(std::vector<double>(50, 1.0), 0);
  for (long N : {4L, 10L, 50L}) CHECK(estimate_Q(id, 0, N).Q_hat == doctest::Approx(N / 2.0).epsilon(1e-9));
  const Cocycle id2 = Cocycle::constant(MatrixXd::Identity(2, 2), 0, 9);
  CHECK(estimate_Q(id2, 0, 10).Q_hat == doctest::Approx(5.0).epsilon(1e-6));
  const Cocycle two = Cocycle::scalar(std::vector<double>(40, 2.0), 0);
  CHECK(estimate_Q(two, 0, 40).Q_hat <= 1.0 + 1e-9);
}

TEST_CASE("Q estimate does not depend on the thread count") {
  Rng rng = make_stream(10, 0);
  const Cocycle c = testing::random_cocycle(rng, 2, 0, 15);
  QOptions o;
  o.samples = 6;
  const double a = estimate_Q(c, 0, 15, o).Q_hat;
  o.jobs = 3;
  CHECK(estimate_Q(c, 0, 15, o).Q_hat == a);
}

TEST_CASE("growth classification") {
  CHECK(classify_growth(0.05) == GrowthRegime::bounded);
  CHECK(classify_growth(0.5) == GrowthRegime::sublinear);
  CHECK(classify_growth(1.0) == GrowthRegime::linear_or_worse);
  const long grid[] = {5, 10, 20, 40};
  const Cocycle id = Cocycle::scalar(std::vector<double>(40, 1.0), 0);
  const auto fit = fit_slow_growth(id, grid);
  CHECK(fit.gamma == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fit.regime == GrowthRegime::linear_or_worse);
  const Cocycle two = Cocycle::scalar(std::vector<double>(40, 2.0), 0);
  CHECK(fit_slow_growth(two, grid).gamma < 0.1);
  const long short_grid[] = {5, 10, 20};
  CHECK_THROWS_AS(fit_slow_growth(id, short_grid), PreconditionError);
}

}
