#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hardy/kernels.hpp"

using namespace hardy;
namespace K = hardy::kernels;

namespace {
const Interval unit(0, 1);

NodeTable table(const Weight& u, const Weight& v, const Weight& w, double r) {
  auto nodes = mesh_nodes(unit, left_end(unit), right_end(unit),
                          merged_breaks({&u, &v, &w}), MeshLevel{0.5, 12}, false);
  return tabulate(u, v, &w, r, left_end(unit), right_end(unit), nodes, {});
}

NodeTable closed_table(const Weight& u, const Weight& v, double r) {
  auto nodes = mesh_nodes(unit, at(unit, 0.2), right_end(unit), {},
                          MeshLevel{0.5, 12}, true);
  return tabulate(u, v, nullptr, r, at(unit, 0.2), right_end(unit), nodes, {});
}

// Logs agree to relative 1e-9 in the value (both infinite counts as equal).
void same(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) {
    CHECK(a == b);
  } else {
    CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
  }
}

struct Fixture {
  Weight u, v, w;
  double p, q, r;
};

const Fixture fixtures[] = {
    {Weight::power(unit, 1, 0, 1.2), Weight::power(unit, 1, 0.5), Weight::power(unit, 1, -0.5, 0.5), 0.9, 0.5, 0.6},
    {Weight::power(unit, 2, 1, 0.8), Weight::constant(unit, 1), Weight::constant(unit, 1), 0.7, 0.9, 0.5},
    {Weight::power(unit, 1, 0.5, 2), Weight::power(unit, 1, -0.2), Weight::power(unit, 1, 1), 3, 2, 1},
    {Weight::piecewise({Weight::constant(Interval(0, 0.5), 1), Weight::constant(Interval(0.5, 1), 3)}),
     Weight::power(unit, 1, 1), Weight::constant(unit, 1), 0.8, 0.5, 1},
    {Weight::power(unit, 1, 1, 1.5), Weight::power(unit, 1, 0.5), Weight::power(unit, 1, -0.5, 0.5), 0.8, 0.6, 0.5},
};
}  // namespace

TEST_CASE("parallel, serial and reference kernels agree") {
  for (const Fixture& f : fixtures) {
    CAPTURE(f.p);
    CAPTURE(f.q);
    CAPTURE(f.r);
    const NodeTable t = table(f.u, f.v, f.w, f.r);
    REQUIRE(t.n() < 80);
    using Fn = double (*)(const NodeTable&, double, double, K::Exec);
    using Ref = double (*)(const NodeTable&, double, double);
    const std::pair<Fn, Ref> pairs[] = {
        {K::c1, K::reference::c1}, {K::c2, K::reference::c2},
        {K::c3, K::reference::c3}, {K::c4, K::reference::c4},
        {K::c5, K::reference::c5}, {K::c6, K::reference::c6},
        {K::c7, K::reference::c7}};
    for (int k = 0; k < 7; ++k) {
      CAPTURE(k);
      const auto& [fast, ref] = pairs[k];
      const double par = fast(t, f.p, f.q, K::Exec::parallel);
      const double ser = fast(t, f.p, f.q, K::Exec::serial);
      CHECK(par == ser);
      same(par, ref(t, f.p, f.q));
    }
    if (!(f.r <= f.q && f.q < f.p && f.p < 1)) continue;
    const auto s5 = K::script_c5(t, f.p, f.q, K::Exec::parallel);
    const auto r5 = K::reference::script_c5(t, f.p, f.q);
    same(s5.first, r5.first);
    same(s5.second, r5.second);
    same(K::script_c6(t, f.p, f.q, K::Exec::serial), K::reference::script_c6(t, f.p, f.q));
  }
}

TEST_CASE("H kernels agree with the reference") {
  for (const Fixture& f : fixtures) {
    const NodeTable t = closed_table(f.u, f.v, f.r);
    same(K::h_sup(t, f.q), K::reference::h_sup(t, f.q));
    same(K::h_int(t, f.q), K::reference::h_int(t, f.q));
  }
}

TEST_CASE("log helpers") {
  CHECK(K::lse(std::log(2.0), std::log(3.0)) == doctest::Approx(std::log(5.0)));
  CHECK(K::lse(-kInf, 1.0) == 1.0);
  // (A_l^2 - A_r^2) / 2 with A_l = 3, A_r = 1.
  const double la = std::log(3.0);
  CHECK(std::exp(K::log_mass_pow(la, 0.0, la, 2.0)) == doctest::Approx(4.0));
}
