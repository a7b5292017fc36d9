#include <doctest.h>

#include <cmath>
#include <vector>

#include <Eigen/Geometry>

#include "helicoid/diffgeo.hpp"
#include "helicoid/errors.hpp"
#include "oracles.hpp"

using namespace helicoid;

namespace {

const SurfaceSpec kWorked = SurfaceSpec::helicoidal(3, 1, Profile::parse("poly:0,1"));

bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(1.0, std::abs(b));
}

std::vector<SurfaceSpec> standard_specs() {
  std::vector<SurfaceSpec> out;
  for (double m : {2.0, 3.0, 4.0})
    for (double a : {0.0, 1.0})
      for (const char* phi : {"poly:0", "poly:0,1", "poly:0,0,1"})
        out.push_back(SurfaceSpec::helicoidal(m, a, Profile::parse(phi)));
  return out;
}

}  // namespace

TEST_CASE("closed first form examples") {
  FirstForm f = first_form_closed(3, 1, Profile::parse("poly:0,1"), 1, 0);
  CHECK(f.E == doctest::Approx(1));
  CHECK(f.F == doctest::Approx(1));
  CHECK(f.G == doctest::Approx(5));
  f = first_form_closed(2, 1, Profile::parse("poly:0,0,1"), 1, M_PI / 4);
  CHECK(f.E == doctest::Approx(8));
  CHECK(f.F == doctest::Approx(2));
  CHECK(f.G == doctest::Approx(1));
  f = first_form_closed(3, 0, Profile(), 1, 0);
  CHECK(std::abs(f.E) < 1e-15);
}

TEST_CASE("first form from jet") {
  const FirstForm f = first_form_from_jet(jet(kWorked, 1, 0));
  CHECK(f.E == doctest::Approx(oracle::worked::E));
  CHECK(f.F == doctest::Approx(oracle::worked::F));
  CHECK(f.G == doctest::Approx(oracle::worked::G));
  const FirstForm z = first_form_from_jet(Jet2{});
  CHECK(z.E == 0);
  CHECK(z.F == 0);
  CHECK(z.G == 0);
}

TEST_CASE("worked point: forms, normal and curvatures") {
  const FundamentalForms f = fundamental_forms(jet(kWorked, 1, 0));
  using namespace oracle::worked;
  CHECK(std::abs(f.detI - detI) < 1e-12);
  CHECK((f.normal - Vec3(normal[0], normal[1], normal[2])).norm() < 1e-12);
  CHECK(std::abs(f.L - L) < 1e-12);
  CHECK(std::abs(f.M - M) < 1e-12);
  CHECK(std::abs(f.N - N) < 1e-12);
  const Curvatures c = curvatures(f);
  CHECK(std::abs(c.H - H) < 1e-12);
  CHECK(std::abs(c.K - K) < 1e-12);
}

TEST_CASE("degenerate points") {
  const SurfaceSpec flat = SurfaceSpec::helicoidal(3, 0, Profile());
  CHECK_THROWS_AS(gauss_map(jet(flat, 1, 0)), DegenerateMetric);
  CHECK_THROWS_AS(curvature_sample(flat, 1, 0), DegenerateMetric);
  FundamentalForms f;
  CHECK_THROWS_AS(curvatures(f), DegenerateMetric);
}

TEST_CASE("plane: second form vanishes") {
  const SurfaceSpec plane = SurfaceSpec::classical_helicoid(0, Profile());
  for (double r : {0.3, 1.0, 2.0})
    for (double t : {0.0, 1.0, 4.0}) {
      const FundamentalForms f = fundamental_forms(jet(plane, r, t));
      CHECK(std::abs(f.L) < 1e-15);
      CHECK(std::abs(f.M) < 1e-15);
      CHECK(std::abs(f.N) < 1e-15);
    }
}

TEST_CASE("property: structural identities on random helicoidal points") {
  auto g = oracle::rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double m = oracle::uniform(g, 1.5, 5);
    const double a = oracle::uniform(g, 0, 2);
    const double r = oracle::uniform(g, 0.2, 1.5), t = oracle::uniform(g, 0, 2 * M_PI);
    const Profile phi = Profile::polynomial({0, oracle::uniform(g, -1, 1), oracle::uniform(g, -1, 1)});
    const SurfaceSpec s = SurfaceSpec::helicoidal(m, a, phi);
    const Jet2 j = jet(s, r, t);
    const FirstForm fj = first_form_from_jet(j), fc = first_form_closed(m, a, phi, r, t);
    CHECK(rel_close(fj.E, fc.E, 1e-10));
    CHECK(rel_close(fj.F, fc.F, 1e-10));
    CHECK(rel_close(fj.G, fc.G, 1e-10));
    // Lagrange identity.
    CHECK(rel_close(j.p_r.cross(j.p_t).squaredNorm(), fj.det(), 1e-10));
    if (fj.det() > 1e-8) {
      const Vec3 n = gauss_map(j);
      CHECK(std::abs(n.dot(j.p_r)) < 1e-10 * std::max(1.0, j.p_r.norm()));
      CHECK(std::abs(n.dot(j.p_t)) < 1e-10 * std::max(1.0, j.p_t.norm()));
      CHECK(std::abs(n.norm() - 1) < 1e-14);
    }
  }
}

TEST_CASE("property: homothety scales H by 1/lambda and K by 1/lambda^2") {
  auto g = oracle::rng(12);
  for (int i = 0; i < 100; ++i) {
    const SurfaceSpec s =
        SurfaceSpec::helicoidal(3, oracle::uniform(g, 0, 2), Profile::parse("poly:0,1,0.5"));
    const double r = oracle::uniform(g, 0.3, 0.9), t = oracle::uniform(g, 0, 6);
    Jet2 j = jet(s, r, t);
    const Curvatures c = curvatures(fundamental_forms(j));
    const double lambda = oracle::uniform(g, 0.5, 4);
    for (Vec3* v : {&j.p, &j.p_r, &j.p_t, &j.p_rr, &j.p_rt, &j.p_tt}) *v *= lambda;
    const Curvatures cs = curvatures(fundamental_forms(j));
    CHECK(cs.H == doctest::Approx(c.H / lambda).epsilon(1e-10));
    CHECK(cs.K == doctest::Approx(c.K / (lambda * lambda)).epsilon(1e-10));
  }
}

TEST_CASE("Bour minimal surface has zero mean curvature") {
  const SurfaceSpec b3 = SurfaceSpec::bour_minimal(3);
  auto g = oracle::rng(13);
  for (int i = 0; i < 500; ++i) {
    const double r = oracle::uniform(g, 0.2, 1.5), t = oracle::uniform(g, 0, 2 * M_PI);
    CHECK(std::abs(curvature_sample(b3, r, t).H) < 1e-8);
  }
  for (double m : {2.0, 4.0, 5.5}) {
    const CurvatureSample c = curvature_sample(SurfaceSpec::bour_minimal(m), 0.7, 0.4);
    CHECK(std::abs(c.H) < 1e-8);
  }
}

TEST_CASE("analytic and finite-difference curvatures agree") {
  for (const SurfaceSpec& s : standard_specs()) {
    for (double r = 0.5; r <= 1.5 + 1e-12; r += 0.1) {
      if (std::abs(r - 1) <= 0.05) continue;
      for (int k = 0; k < 12; ++k) {
        const double t = 2 * M_PI * k / 12;
        const CurvatureSample a = curvature_sample(s, r, t);
        const CurvatureSample f = curvature_sample(s, r, t, JetSource::finite_difference);
        CHECK(std::abs(a.H - f.H) < 1e-4);
        CHECK(std::abs(a.K - f.K) < 1e-4);
        CHECK(std::abs(a.forms.L - f.forms.L) < 1e-5);
        CHECK(std::abs(a.forms.M - f.forms.M) < 1e-5);
        CHECK(std::abs(a.forms.N - f.forms.N) < 1e-5);
      }
    }
  }
}

TEST_CASE("finite differences converge at second order") {
  const double r = 0.8, t = 0.6;
  const Jet2 exact = jet(kWorked, r, t);
  const double e1 = (fd_jet(kWorked, r, t, 1e-2).p_r - exact.p_r).norm();
  const double e2 = (fd_jet(kWorked, r, t, 5e-3).p_r - exact.p_r).norm();
  CHECK(e1 / e2 == doctest::Approx(4).epsilon(0.05));
  const double s1 = (fd_jet(kWorked, r, t, 1e-2).p_rt - exact.p_rt).norm();
  const double s2 = (fd_jet(kWorked, r, t, 5e-3).p_rt - exact.p_rt).norm();
  CHECK(s1 / s2 == doctest::Approx(4).epsilon(0.05));
}

TEST_CASE("finite-difference stencil stays in the domain") {
  CHECK_THROWS_AS(fd_jet(kWorked, 1e-5, 0, 1e-4), DomainError);
  CHECK_NOTHROW(fd_jet(kWorked, 1e-3, 0, 1e-4));
}

TEST_CASE("property: theta periodicity") {
  auto g = oracle::rng(14);
  for (int i = 0; i < 200; ++i) {
    const double m = 2 + i % 3;
    const SurfaceSpec s = SurfaceSpec::helicoidal(m, oracle::uniform(g, 0, 2),
                                                  Profile::parse("poly:0,0.7,0.2"));
    const double r = oracle::uniform(g, 0.3, 1.4), t = oracle::uniform(g, 0, 2 * M_PI);
    const CurvatureSample c0 = curvature_sample(s, r, t);
    const CurvatureSample c1 = curvature_sample(s, r, t + 2 * M_PI);
    for (auto [x, y] : {std::pair{c0.forms.E, c1.forms.E}, {c0.forms.F, c1.forms.F},
                        {c0.forms.G, c1.forms.G}, {c0.forms.L, c1.forms.L},
                        {c0.forms.M, c1.forms.M}, {c0.forms.N, c1.forms.N}, {c0.H, c1.H},
                        {c0.K, c1.K}})
      CHECK(rel_close(x, y, 1e-9));
    const FirstForm f0 = first_form_from_jet(jet(s, r, t));
    const FirstForm f1 = first_form_from_jet(jet(s, r, t + M_PI / m));
    CHECK(rel_close(f0.E, f1.E, 1e-9));
    CHECK(rel_close(f0.F, f1.F, 1e-9));
    CHECK(rel_close(f0.G, f1.G, 1e-9));
  }
}

TEST_CASE("Bour first form is invariant under theta -> theta + pi/m") {
  const SurfaceSpec b3 = SurfaceSpec::bour_minimal(3);
  for (double r : {0.4, 0.9, 1.3})
    for (double t : {0.1, 1.0, 2.5}) {
      const FirstForm f0 = first_form_from_jet(jet(b3, r, t));
      const FirstForm f1 = first_form_from_jet(jet(b3, r, t + M_PI / 3));
      CHECK(rel_close(f0.E, f1.E, 1e-12));
      CHECK(rel_close(f0.F, f1.F, 1e-12));
      CHECK(rel_close(f0.G, f1.G, 1e-12));
    }
}
