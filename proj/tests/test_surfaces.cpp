#include <doctest.h>

#include <cmath>

#include "helicoid/diffgeo.hpp"
#include "helicoid/errors.hpp"
#include "helicoid/surfaces.hpp"
#include "oracles.hpp"

using namespace helicoid;

namespace {

void check_point(const Vec3& got, const oracle::Point& want, double tol = 1e-14) {
  for (int k = 0; k < 3; ++k) CHECK(std::abs(got[k] - want[k]) <= tol);
}

bool near3(const Vec3& a, const Vec3& b, double tol) { return (a - b).cwiseAbs().maxCoeff() <= tol; }

Vec3 V(const oracle::Point& p) { return Vec3(p[0], p[1], p[2]); }

}  // namespace

TEST_CASE("profile grammar") {
  CHECK(Profile::parse("poly:0,1").value(2.0) == 2.0);
  CHECK(Profile::parse("poly:1,0,3").value(2.0) == 13.0);
  CHECK(Profile::parse("power:2,3").value(2.0) == 16.0);
  CHECK(Profile::parse("const:1.5").value(7.0) == 1.5);
  CHECK(Profile::parse("poly:0,0,1").d1(3.0) == 6.0);
  CHECK(Profile::parse("poly:0,0,1").d2(3.0) == 2.0);
  CHECK(Profile::parse("power:2,3").d1(2.0) == doctest::Approx(24.0));
  CHECK(Profile::parse("power:2,3").d2(2.0) == doctest::Approx(24.0));
  CHECK(Profile::parse("poly:0,1").id() == "poly:0,1");
  CHECK(Profile::parse(Profile::parse("power:0.1,2.5").id()).id() == "power:0.1,2.5");
  CHECK_THROWS_AS(Profile::parse("sin:1"), DomainError);
  CHECK_THROWS_AS(Profile::parse("poly:"), DomainError);
  CHECK_THROWS_AS(Profile::parse("poly:1,x"), DomainError);
  CHECK_THROWS_AS(Profile::parse("power:1"), DomainError);
}

TEST_CASE("family names") {
  CHECK(family_from_string("helicoidal") == Family::helicoidal);
  CHECK(family_from_string("bour-minimal") == Family::bour_minimal);
  CHECK(family_from_string(to_string(Family::rotational)) == Family::rotational);
  CHECK(family_from_string(to_string(Family::classical_helicoid)) == Family::classical_helicoid);
  CHECK_THROWS_AS(family_from_string("sphere"), DomainError);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(SurfaceSpec::helicoidal(3, -1, Profile()).validate(), DomainError);
  CHECK_THROWS_AS(SurfaceSpec::helicoidal(1, 0, Profile()).validate(), DomainError);
  CHECK_THROWS_AS(SurfaceSpec::helicoidal(-1, 0, Profile()).validate(), DomainError);
  CHECK_THROWS_AS(SurfaceSpec::bour_minimal(0).validate(), DomainError);
  CHECK_NOTHROW(SurfaceSpec::helicoidal(0.5, 2, Profile()).validate());
  CHECK_THROWS_AS(eval(SurfaceSpec::helicoidal(3, 0, Profile()), 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(eval(SurfaceSpec::helicoidal(3, 0, Profile()), -1.0, 0.0), DomainError);
}

TEST_CASE("helicoidal worked points") {
  check_point(eval_helicoidal(SurfaceSpec::helicoidal(3, 1, Profile()), 1, M_PI / 2),
              {-0.75, 0, M_PI / 2});
  check_point(eval_helicoidal(SurfaceSpec::helicoidal(3, 0, Profile()), 1, 0), {0.25, 0, 0});
  for (double a : {0.0, 0.5, 3.0})
    for (double r : {0.3, 1.0, 1.7})
      CHECK(eval_helicoidal(SurfaceSpec::helicoidal(3, a, Profile::parse("poly:0,1")), r, 0).z() ==
            r);
}

TEST_CASE("two-block definition") {
  const SurfaceSpec s = SurfaceSpec::helicoidal(3, 1, Profile());
  check_point(compose_definition(s, 1, M_PI / 2), {-0.75, 0, M_PI / 2});
  const SurfaceSpec s2 = SurfaceSpec::helicoidal(3, 2, Profile::parse("poly:0.5,1"));
  CHECK(compose_definition(s2, 1, 0).z() == doctest::Approx(1.5));
  CHECK(compose_definition(s2, 1, 0.25).z() == doctest::Approx(1.5 + 0.5));
}

TEST_CASE("property: two-block definition equals closed form") {
  auto g = oracle::rng(1);
  int n = 0;
  while (n < 1000) {
    const double m = oracle::uniform(g, -5, 5);
    if (std::abs(m - 1) < 0.05 || std::abs(m + 1) < 0.05) continue;
    const double a = oracle::uniform(g, 0, 3);
    const double r = oracle::uniform(g, 0.2, 1.5);
    const double t = oracle::uniform(g, 0, 2 * M_PI);
    const Profile phi = Profile::polynomial(
        {oracle::uniform(g, -1, 1), oracle::uniform(g, -1, 1), oracle::uniform(g, -1, 1)});
    const SurfaceSpec s = SurfaceSpec::helicoidal(m, a, phi);
    const Vec3 p = eval_helicoidal(s, r, t);
    CHECK(near3(compose_definition(s, r, t), p, 1e-14));
    const oracle::Point q = oracle::helicoidal(m, a, phi.value(r), r, t);
    CHECK(near3(p, V(q), 1e-12));
    ++n;
  }
}

TEST_CASE("rotational surface") {
  const SurfaceSpec rot = SurfaceSpec::rotational(3, Profile());
  check_point(eval_rotational(rot, 1, 0, 0), {0.25, 0, 0});
  CHECK(eval_rotational(rot, 1, M_PI / 3, 1).x() == doctest::Approx(-0.125));
  CHECK(eval_rotational(rot, 1, M_PI / 3, 1).z() == 1);

  // a = 0 helicoidal and rotational with the same height coincide exactly.
  auto g = oracle::rng(2);
  for (int i = 0; i < 200; ++i) {
    const double m = 2 + oracle::uniform(g, 0, 3);
    const Profile phi = Profile::polynomial({oracle::uniform(g, -1, 1), oracle::uniform(g, -1, 1)});
    const double r = oracle::uniform(g, 0.1, 2), t = oracle::uniform(g, -4, 4);
    const Vec3 h = eval_helicoidal(SurfaceSpec::helicoidal(m, 0, phi), r, t);
    const Vec3 q = eval_rotational(SurfaceSpec::rotational(m, phi), r, t, phi.value(r));
    CHECK(h == q);
    CHECK(eval(SurfaceSpec::rotational(m, phi), r, t) == q);
  }
}

TEST_CASE("Bour minimal surface points") {
  check_point(eval_bour_minimal(3, 1, 0), {0.25, 0, 2.0 / 3.0});
  for (double r : {0.2, 0.7, 1.5}) CHECK(std::abs(eval_bour_minimal(3, r, M_PI / 6).z()) < 1e-15);
  // Three-fold symmetry of the (x, y) shadow: a shift by 2 pi / 3 rotates it.
  const double r = 0.8, t = 0.3;
  const Vec3 p = eval_bour_minimal(3, r, t), q = eval_bour_minimal(3, r, t + 2 * M_PI / 3);
  CHECK(std::hypot(p.x(), p.y()) == doctest::Approx(std::hypot(q.x(), q.y())));
  CHECK(p.z() == doctest::Approx(q.z()));
  // The pitch variant adds a theta.
  const SurfaceSpec pitched = SurfaceSpec::bour_minimal(3, 2);
  CHECK(eval(pitched, r, t).z() == doctest::Approx(p.z() + 2 * t));
}

TEST_CASE("classical helicoid") {
  check_point(eval_classical_helicoid(1, Profile(), 1, M_PI / 2), {0, 1, M_PI / 2}, 1e-15);
  check_point(eval_classical_helicoid(0, Profile::parse("poly:0,1"), 2, M_PI), {-2, 0, 2}, 1e-15);
  // a = 0 sweeps the profile (r, 0, phi(r)) around the axis.
  const Vec3 p = eval_classical_helicoid(0, Profile::parse("poly:1,0,1"), 1.5, 0.7);
  CHECK(std::hypot(p.x(), p.y()) == doctest::Approx(1.5));
  CHECK(p.z() == doctest::Approx(1 + 2.25));
}

TEST_CASE("worked jet") {
  const Jet2 j = jet(SurfaceSpec::helicoidal(3, 1, Profile::parse("poly:0,1")), 1, 0);
  using namespace oracle::worked;
  CHECK(near3(j.p, V(p), 1e-15));
  CHECK(near3(j.p_r, V(p_r), 1e-15));
  CHECK(near3(j.p_t, V(p_t), 1e-15));
  CHECK(near3(j.p_rr, V(p_rr), 1e-15));
  CHECK(near3(j.p_rt, V(p_rt), 1e-15));
  CHECK(near3(j.p_tt, V(p_tt), 1e-15));
}

TEST_CASE("property: jet point equals eval exactly") {
  auto g = oracle::rng(3);
  for (int i = 0; i < 300; ++i) {
    const double r = oracle::uniform(g, 0.2, 1.5), t = oracle::uniform(g, 0, 2 * M_PI);
    const double a = oracle::uniform(g, 0, 2);
    const Profile phi = Profile::polynomial({0.1, oracle::uniform(g, -1, 1), 0.5});
    for (const SurfaceSpec& s :
         {SurfaceSpec::helicoidal(2 + i % 3, a, phi), SurfaceSpec::rotational(3, phi),
          SurfaceSpec::bour_minimal(3, a), SurfaceSpec::classical_helicoid(a, phi)})
      CHECK(jet(s, r, t).p == eval(s, r, t));
  }
}

TEST_CASE("property: analytic jet matches finite differences") {
  auto g = oracle::rng(4);
  for (int i = 0; i < 200; ++i) {
    const double m = oracle::uniform(g, 1.5, 5);
    const double r = oracle::uniform(g, 0.3, 1.5), t = oracle::uniform(g, 0, 2 * M_PI);
    const SurfaceSpec s = SurfaceSpec::helicoidal(
        m, oracle::uniform(g, 0, 2), Profile::polynomial({0, oracle::uniform(g, -1, 1), 0.3}));
    const Jet2 a = jet(s, r, t), f = fd_jet(s, r, t);
    for (auto [x, y] : {std::pair{a.p_r, f.p_r}, {a.p_t, f.p_t}, {a.p_rr, f.p_rr},
                        {a.p_rt, f.p_rt}, {a.p_tt, f.p_tt}}) {
      const double d = (x - y).norm();
      CHECK((x.norm() > 1e-8 ? d <= 1e-6 * x.norm() : d <= 1e-9));
    }
  }
}
