#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hardy/discretize.hpp"

using namespace hardy;
using doctest::Approx;

namespace {
const Interval unit(0, 1);
const Quadrature quad;

DiscretizingSequence seq_of(const Weight& w, int k_max, int k_min = -64) {
  return build_discretizing_sequence(w, quad, k_min, k_max);
}
}  // namespace

TEST_CASE("closed-form sequences") {
  auto s = seq_of(Weight::constant(unit, 1), 4);
  REQUIRE(s.size() == 5);
  CHECK(s.n_finite);
  CHECK(s.first_level() == 0);
  const double want[] = {0, 0.5, 0.75, 0.875, 0.9375};
  for (int k = 0; k < 5; ++k) CHECK(s.points[k].x == Approx(want[k]).epsilon(1e-12));

  auto e = seq_of(Weight::exponential(Interval(0, kInf), 1, -1), 3);
  for (int k = 0; k <= 3; ++k) {
    CHECK(e.points[k].x == Approx(k * std::log(2.0)).epsilon(1e-10));
  }

  auto t = seq_of(Weight::power(unit, 2, 1), 2);
  CHECK(t.points[1].x == Approx(0.70710678).epsilon(1e-8));
  CHECK(t.points[2].x == Approx(0.86602540).epsilon(1e-8));
}

TEST_CASE("W halves between consecutive points") {
  const Weight ws[] = {Weight::power(unit, 1, -0.7, 0.5),
                       Weight::power(unit, 3, 2, 0),
                       Weight::piecewise({Weight::constant(Interval(0, 0.3), 5),
                                          Weight::power(Interval(0.3, 1), 1, 0, 1)})};
  for (const Weight& w : ws) {
    auto s = seq_of(w, 30);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) CHECK(before(s.points[i - 1], s.points[i]));
      const double W = tail_W(w, s.points[i]).value;
      CHECK(std::abs(W * s.inv_W(s.levels[i]) - 1) <= 1e-8);
    }
  }
}

TEST_CASE("infinite W(a) gives a two-sided sequence") {
  Weight w = Weight::power(unit, 1, -2);
  auto s = seq_of(w, 20, -20);
  CHECK_FALSE(s.n_finite);
  CHECK(s.first_level() == -20);
  CHECK(s.last_level() == 20);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(std::abs(tail_W(w, s.points[i]).value * s.inv_W(s.levels[i]) - 1) <= 1e-8);
  }
}

TEST_CASE("integral and supremum discretization") {
  auto s = seq_of(Weight::constant(unit, 1), 45);
  Weight one = Weight::constant(unit, 1);
  auto c = check_int_sup_equiv(one, [](double) { return 1.0; }, 1, s, 0);
  CHECK(c.integral.lhs == Approx(1.0).epsilon(1e-9));
  CHECK(c.integral.rhs == Approx(1.0).epsilon(1e-9));
  auto x = check_int_sup_equiv(one, [](double t) { return t; }, 1, s, 0);
  CHECK(x.integral.lhs == Approx(0.5).epsilon(1e-9));
  CHECK(x.integral.rhs == Approx(2.0 / 3).epsilon(1e-9));
  CHECK(x.integral.ratio == Approx(0.75).epsilon(1e-8));
  auto z = check_int_sup_equiv(one, [](double) { return 0.0; }, 1, s, 0);
  CHECK(z.integral.lhs == 0.0);
  CHECK(z.integral.rhs == 0.0);
}

TEST_CASE("supremum against a non-increasing function") {
  auto s = seq_of(Weight::constant(unit, 1), 10);
  Weight one = Weight::constant(unit, 1);
  auto a = check_neg_sup_equiv(one, [](double) { return 1.0; }, 1, s, 3);
  CHECK(a.lhs == Approx(8.0));
  CHECK(a.rhs == Approx(8.0));
  auto b = check_neg_sup_equiv(one, [](double t) { return 1 - t; }, 1, s, 2);
  CHECK(b.lhs == Approx(1.0));
  CHECK(b.rhs == Approx(2.0));
  auto z = check_neg_sup_equiv(one, [](double) { return 0.0; }, 1, s, 2);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
}

TEST_CASE("sequence equivalences") {
  std::vector<double> a, b(11, 1.0);
  for (int k = 0; k <= 10; ++k) a.push_back(std::ldexp(1.0, -k));
  auto dec = sequence_equiv_suite(SequenceSample::from(a), b, 1);
  REQUIRE(dec.size() == 3);
  CHECK(dec[0].id == "dec.sum-sum");
  CHECK(dec[0].lhs == Approx(3.9873046875).epsilon(1e-14));
  CHECK(dec[0].rhs == Approx(1.9990234375).epsilon(1e-14));

  std::vector<double> inc;
  for (int k = 0; k <= 10; ++k) inc.push_back(std::ldexp(1.0, k));
  std::vector<double> mixed{3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5};
  for (const auto& id : sequence_equiv_suite(SequenceSample::from(inc), mixed, 1.5)) {
    CHECK(id.lhs >= id.rhs);
    if (id.id == "inc.sup-sup") CHECK(id.lhs == id.rhs);
  }

  auto one = sequence_equiv_suite(SequenceSample::from({2.0}), {3.0}, 2);
  CHECK(one.size() == 7);
  for (const auto& id : one) {
    CHECK(id.lhs == Approx(18.0));
    CHECK(id.rhs == Approx(18.0));
  }
  CHECK_THROWS_AS(sequence_equiv_suite(SequenceSample::from({1, 2, 1}), {1, 1, 1}, 1),
                  DomainError);
}

TEST_CASE("regular kernels") {
  std::vector<double> a, b(6, 1.0);
  for (int k = 0; k < 6; ++k) a.push_back(std::ldexp(1.0, k));
  auto c = regular_kernel_check([](int, int) { return 1.0; }, a, b, 1);
  CHECK(c.kersup.lhs == Approx(32.0));
  CHECK(c.kersup.rhs == Approx(32.0));
  CHECK(c.kersum.lhs == Approx(120.0));

  auto zero = regular_kernel_check([](int, int) { return 1.0; }, a,
                                   std::vector<double>(6, 0.0), 1);
  CHECK(zero.kersup.lhs == 0.0);
  CHECK(zero.kersum.rhs == 0.0);

  // V_{1/2} between points of the w = 1 sequence, shifted by one level.
  auto s = seq_of(Weight::constant(unit, 1), 10);
  Weight v = Weight::power(unit, 1, 0.5);
  auto d = [&](int k, int i) {
    if (i <= k) return 0.0;
    return v_r(v, 0.5, s.points[k], s.points[i]).value;
  };
  auto reg = regular_kernel_check(d, a, b, 0.5);
  CHECK(reg.triangle_constant <= 1.0 + 1e-12);
  CHECK(reg.kersup.lhs >= reg.kersup.rhs);
  CHECK(reg.kersum.lhs >= reg.kersum.rhs);

  auto bad = [](int k, int i) { return double(k - i + 10); };
  try {
    regular_kernel_check(bad, a, b, 1);
    FAIL("expected a witness");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("(k, j, i)") != std::string::npos);
  }
}

TEST_CASE("u estimate and the power difference bound") {
  Weight one = Weight::constant(unit, 1);
  auto e = u_estimate(one, 0, 1, 1, 1);
  CHECK(e.integral == Approx(0.5));
  CHECK(e.product == Approx(1.0));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  Weight u = Weight::power(unit, 1, -0.4, 0.8);
  for (int i = 0; i < 30; ++i) {
    double x[3] = {U(rng), U(rng), U(rng)};
    std::sort(x, x + 3);
    const double alpha = 2 * U(rng);
    auto r = u_estimate(u, x[0], x[1], x[2], alpha);
    CHECK(r.integral <= r.product * (1 + 1e-9));
    CHECK(r.product <= (1 + alpha) * r.integral * (1 + 1e-9));
    auto n = u_estimate(u, x[0], x[1], x[2], -0.9 * U(rng));
    CHECK(n.integral >= n.product * (1 - 1e-9));
  }
}
