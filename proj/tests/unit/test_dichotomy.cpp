#include <doctest.h>

#include <cmath>
#include <numbers>

#include "holsh/cocycle/slow_growth.hpp"
#include "holsh/common/error.hpp"
#include "holsh/dichotomy/bounded_solutions.hpp"
#include "holsh/dichotomy/property_a.hpp"
#include "holsh/dichotomy/reduction.hpp"
#include "holsh/dichotomy/trichotomy.hpp"
#include "holsh/maps/catalog.hpp"
#include "support.hpp"

using namespace holsh;
using namespace holsh::dichotomy;

namespace {
const double kGolden = (3.0 - std::sqrt(5.0)) / 2.0;

MatrixXd diag_matrix() {
  MatrixXd a(2, 2);
  a << 0.5, 0, 0, 2;
  return a;
}
MatrixXd cat_matrix() {
  MatrixXd a(2, 2);
  a << 2, 1, 1, 1;
  return a;
}
Cocycle two_sided(const MatrixXd& a) { return Cocycle::constant(a, -100, 99); }
Cocycle scalar_steps(double before, double after, long half) {
  std::vector<double> l(static_cast<std::size_t>(2 * half));
  for (long k = 0; k < 2 * half; ++k) l[static_cast<std::size_t>(k)] = k < half ? before : after;
  return Cocycle::scalar(std::move(l), -half);
}
}  // namespace

TEST_SUITE("dichotomy") {

TEST_CASE("diag(1/2, 2) splits along the axes") {
  const auto s = detect(two_sided(diag_matrix()), Half::forward);
  REQUIRE(s);
  CHECK(s->lambda == doctest::Approx(0.5).epsilon(0.02));
  CHECK(s->C >= 1.0);
  CHECK(s->C <= 1.2);
  REQUIRE(s->stable_dim() == 1);
  REQUIRE(s->unstable_dim() == 1);
  CHECK(std::abs(s->stable_at(0)(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(s->unstable_at(0)(1, 0)) == doctest::Approx(1.0));
  CHECK(s->H == doctest::Approx(1.0));
}

TEST_CASE("cat map rate is the inverse golden ratio squared") {
  for (Half h : {Half::forward, Half::backward}) {
    const auto s = detect(two_sided(cat_matrix()), h);
    REQUIRE(s);
    CHECK(s->lambda == doctest::Approx(kGolden).epsilon(0.05));
    CHECK(s->equivariance_angle < 1e-6);
    CHECK(s->stable_dim() + s->unstable_dim() == 2);
  }
}

TEST_CASE("identity has no dichotomy") {
  const auto r = detect_report(two_sided(MatrixXd::Identity(2, 2)), Half::forward);
  CHECK_FALSE(r.splitting);
  CHECK_FALSE(r.reason.empty());
}

TEST_CASE("halving the probe horizon barely moves the fitted rate") {
  DetectOptions o;
  const double full = detect(two_sided(cat_matrix()), Half::forward, o)->lambda;
  o.T = 15;
  const double half = detect(two_sided(cat_matrix()), Half::forward, o)->lambda;
  CHECK(std::abs(half - full) < 0.1 * full);
}

TEST_CASE("short windows are rejected") {
  CHECK_THROWS_AS(detect(Cocycle::constant(cat_matrix(), -10, 9), Half::forward), WindowError);
}

TEST_CASE("transversality") {
  const Cocycle cat = two_sided(cat_matrix());
  auto t = pliss_transversality(detect(cat, Half::forward), detect(cat, Half::backward));
  CHECK(t.pass);
  // [[2,1],[1,1]] is symmetric, so its eigenvectors are orthogonal.
  CHECK(t.angle == doctest::Approx(std::numbers::pi / 2).epsilon(1e-9));

  const Cocycle diag = two_sided(diag_matrix());
  t = pliss_transversality(detect(diag, Half::forward), detect(diag, Half::backward));
  CHECK(t.pass);
  CHECK(t.angle == doctest::Approx(std::numbers::pi / 2));

  const Cocycle two = Cocycle::scalar(std::vector<double>(200, 2.0), -100);
  const auto f = detect(two, Half::forward);
  const auto b = detect(two, Half::backward);
  REQUIRE(f);
  REQUIRE(b);
  CHECK(f->stable_dim() == 0);
  CHECK(b->unstable_dim() == 1);
  CHECK(pliss_transversality(f, b).pass);

  const Cocycle mixed = scalar_steps(0.5, 2.0, 100);
  t = pliss_transversality(detect(mixed, Half::forward), detect(mixed, Half::backward));
  CHECK_FALSE(t.pass);
  CHECK(t.defect_dimension == 1);

  const Cocycle id = two_sided(MatrixXd::Identity(2, 2));
  t = pliss_transversality(detect(id, Half::forward), detect(id, Half::backward));
  CHECK(t.status == TransversalityStatus::a1_fails);
}

TEST_CASE("bounded solutions") {
  const Cocycle two = Cocycle::scalar(std::vector<double>(400, 2.0), -200);
  for (long N : {10L, 50L, 200L})
    CHECK(bounded_solution_check(two, WindowPart::forward, N, {}).L_hat <= 1.0 + 1e-6);
  const Cocycle id = Cocycle::scalar(std::vector<double>(100, 1.0), 0);
  CHECK(bounded_solution_check(id, WindowPart::forward, 40, {}).L_hat == doctest::Approx(20.0).epsilon(1e-6));
  const long grid[] = {10, 20, 40};
  CHECK_FALSE(bounded_solution_trend(id, WindowPart::forward, grid).bounded);
  CHECK(bounded_solution_trend(two, WindowPart::whole, grid).bounded);
  CHECK_THROWS_AS(bounded_solution_check(id, WindowPart::backward, 5, {}), WindowError);
}

TEST_CASE("trichotomy cases") {
  CHECK(trichotomy_1d(Cocycle::scalar(std::vector<double>(20, 2.0), 0), 2).kind == TrichotomyCase::expanding);
  CHECK(trichotomy_1d(Cocycle::scalar(std::vector<double>(20, 0.5), 0), 2).kind == TrichotomyCase::contracting);
  const auto r = trichotomy_1d(scalar_steps(2.0, 0.5, 10), 2);
  CHECK(r.kind == TrichotomyCase::mixed);
  CHECK(r.i1 < r.i2);
  CHECK(r.i1 == -2);
  CHECK(r.i2 == 0);
  CHECK(trichotomy_1d(Cocycle::scalar(std::vector<double>(20, 1.0), 0), 2).kind == TrichotomyCase::none);
  CHECK(trichotomy_1d(scalar_steps(0.5, 2.0, 10), 2).kind == TrichotomyCase::none);
}

TEST_CASE("trichotomy along direction products") {
  const Cocycle cat = Cocycle::constant(cat_matrix(), 0, 29);
  VectorXd e(2);
  e << 1, 0;
  CHECK(trichotomy_1d(cocycle::normalized_directions(cat, e, 0), 3).kind == TrichotomyCase::expanding);
}

TEST_CASE("growth function") {
  const double a = std::sqrt(201.0);
  CHECK(growth_function(1, 0.5, 100) == doctest::Approx(std::pow(1 + 1 / a, 98) / a).epsilon(1e-12));
  CHECK(growth_function(3, 0.7, 2) == doctest::Approx(1.0 / (3 * std::pow(5.0, 0.7))).epsilon(1e-14));
  const auto n = growth_threshold(1, 0.5);
  REQUIRE(n);
  CHECK(*n <= 100);
  CHECK(growth_function(1, 0.5, *n) > 2.0);
  CHECK(growth_function(1, 0.5, *n - 1) <= 2.0);
  CHECK_FALSE(growth_threshold(1, 1.0));
  CHECK(std::isinf(growth_function(1e-3, 0.01, 1000000)));
  CHECK(log_growth_function(1e-3, 0.01, 1000000) > 700.0);
  CHECK_THROWS_AS(growth_function(0, 0.5, 10), PreconditionError);
  CHECK_THROWS_AS(growth_function(1, 0.5, 1), PreconditionError);
}

TEST_CASE("sublinear growth implies a trichotomy at the growth threshold") {
  for (double lambda : {2.0, 0.5}) {
    const Cocycle c = Cocycle::scalar(std::vector<double>(400, lambda), 0);
    const long grid[] = {10, 20, 40, 80};
    const auto fit = cocycle::fit_slow_growth(c, grid);
    REQUIRE(fit.gamma < 0.9);
    const auto n = growth_threshold(fit.L, std::max(fit.gamma, 1e-3));
    REQUIRE(n);
    CHECK(trichotomy_1d(c, *n).kind != TrichotomyCase::none);
  }
}

TEST_CASE("reduction along an invariant axis") {
  VectorXd e(2);
  e << 1, 0;
  const auto r = reduce(Cocycle::constant(diag_matrix(), 0, 9), e);
  for (long k = 0; k <= 9; ++k) {
    CHECK(r.directions.stretch(k) == doctest::Approx(0.5));
    CHECK(std::abs(r.B_at(k)(0, 0)) == doctest::Approx(2.0));
    CHECK(std::abs(r.D_at(k)(0, 0)) < 1e-15);
  }
}

TEST_CASE("reduction of the cat map along its unstable direction") {
  VectorXd e(2);
  e << (1 + std::sqrt(5.0)) / 2, 1;
  e.normalize();
  const Cocycle c = Cocycle::constant(cat_matrix(), 0, 19);
  const auto r = reduce(c, e);
  for (long k = 0; k <= 19; ++k) {
    CHECK(r.directions.stretch(k) == doctest::Approx(1 / kGolden).epsilon(1e-12));
    CHECK(std::abs(r.B_at(k)(0, 0)) == doctest::Approx(kGolden).epsilon(1e-12));
    CHECK(std::abs(r.D_at(k)(0, 0)) < 1e-12);
  }
  CHECK(r.norm_sup() < c.R());
}

TEST_CASE("split recursion reproduces the full recursion") {
  Rng rng = make_stream(12, 0);
  for (int t = 0; t < 10; ++t) {
    const int m = 2 + t % 2;
    const Cocycle c = testing::random_cocycle(rng, m, -5, 40);
    VectorXd e(m);
    for (int j = 0; j < m; ++j) e(j) = standard_normal(rng);
    e.normalize();
    const auto r = reduce(c, e);
    VectorXd v0(m);
    for (int j = 0; j < m; ++j) v0(j) = uniform(rng, -1, 1);
    CHECK(split_recursion_residual(c, r, v0, testing::random_forcing(rng, m, 40)) < 1e-10);
    CHECK(r.reduced().dim() == m - 1);
  }
  CHECK_THROWS_AS(reduce(Cocycle::scalar({2.0}, 0), VectorXd::Ones(1)), PreconditionError);
}

TEST_CASE("Property A on catalogue maps") {
  const auto cat = maps::make_cat_map();
  maps::Vec p(2);
  p << 0.2, 0.7;
  const auto r = property_A_check(cat, p);
  CHECK(r.hyperbolic_like());
  CHECK(r.verdict() == "hyperbolic-like");

  const auto id = property_A_check(maps::make_identity(2), p);
  CHECK(id.a1_forward == CheckStatus::fail);
  CHECK(id.a1_backward == CheckStatus::fail);
  CHECK(id.verdict() == "not hyperbolic-like");

  const auto circle = property_A_check(maps::find_map("circle_example"), maps::Vec::Constant(1, 0.0));
  CHECK(circle.a1_forward == CheckStatus::fail);
  CHECK_FALSE(circle.hyperbolic_like());
}

TEST_CASE("Property A echoes bounded solutions") {
  const long grid[] = {8, 16, 32, 64};
  struct Row {
    const char* name;
    Cocycle c;
  };
  const Row rows[] = {
      {"cat", Cocycle::constant(cat_matrix(), -100, 99)},
      {"identity", Cocycle::constant(MatrixXd::Identity(2, 2), -100, 99)},
      {"lambda2", Cocycle::scalar(std::vector<double>(200, 2.0), -100)},
      {"mixed", scalar_steps(0.5, 2.0, 100)},
  };
  for (const auto& row : rows) {
    INFO(row.name);
    const bool a = property_A_check(row.c).hyperbolic_like();
    const bool bounded = bounded_solution_trend(row.c, WindowPart::whole, grid).bounded;
    CHECK(a == bounded);
  }
}

}
