#include <doctest.h>

#include <numbers>
#include <tuple>

#include "msing/witness.hpp"

using namespace msing;

namespace {

RiemannPoint fin(Complex v) { return RiemannPoint::finite(v); }

PointSet points(std::initializer_list<Complex> finite, bool with_inf = false) {
  std::vector<RiemannPoint> pts;
  for (auto v : finite) pts.push_back(fin(v));
  if (with_inf) pts.push_back(RiemannPoint::infinity());
  return PointSet(pts);
}

const BuildOptions kForce{Realizability::force, 0, kDefaultTolerance};

ClassificationEntry entry(GroupLabel g, std::vector<std::int64_t> c) { return {g, {std::move(c)}}; }

}  // namespace

TEST_CASE("special polyhedral orbits") {
  const std::vector<std::tuple<GroupKind, OrbitTag, std::size_t, std::vector<std::int64_t>>> cases{
      {GroupKind::A5, OrbitTag::V12, 12, {1, 0, 0, 0}}, {GroupKind::A5, OrbitTag::V20, 20, {0, 1, 0, 0}},
      {GroupKind::A5, OrbitTag::V30, 30, {0, 0, 1, 0}}, {GroupKind::S4, OrbitTag::V6, 6, {1, 0, 0, 0}},
      {GroupKind::S4, OrbitTag::V8, 8, {0, 1, 0, 0}},   {GroupKind::S4, OrbitTag::V12, 12, {0, 0, 1, 0}},
      {GroupKind::A4, OrbitTag::V4a, 4, {1, 0, 0}},     {GroupKind::A4, OrbitTag::V4b, 4, {1, 0, 0}},
  };
  for (const auto& [group, tag, size, index] : cases) {
    const PointSet s = polyhedral_orbit(group, tag);
    CHECK(s.size() == size);
    const auto r = stabilizer(s);
    CHECK(r.index.counts == index);
  }
  // The octahedron projects to {0, ∞, ±1, ±i}.
  CHECK(set_equal(polyhedral_orbit(GroupKind::S4, OrbitTag::V6),
                  points({0.0, 1.0, -1.0, Complex(0, 1), Complex(0, -1)}, true)));
  // The tetrahedral 6-orbit alone is the octahedron again.
  CHECK(stabilizer(polyhedral_orbit(GroupKind::A4, OrbitTag::V6)).label == GroupLabel::s4());
  CHECK(polyhedral_generic_orbit(GroupKind::A5, {0.21, 0.58, 0.79}).size() == 60);
  CHECK_THROWS_AS(polyhedral_generic_orbit(GroupKind::S4, {0, 0, 1}), Error);
  CHECK(polyhedra::rotation_group(GroupKind::A4).size() == 12);
  CHECK(polyhedra::rotation_group(GroupKind::S4).size() == 24);
  CHECK(polyhedra::rotation_group(GroupKind::A5).size() == 60);
}

TEST_CASE("dihedral constructions") {
  const PointSet d3 = dihedral_witness(3, {{0, 0, 1}});
  std::vector<RiemannPoint> expected;
  const Complex z = std::polar(1.0, 2 * std::numbers::pi / 24);
  for (int j = 0; j < 3; ++j) {
    const Complex w = std::polar(1.0, 2 * std::numbers::pi * j / 3);
    expected.push_back(fin(z * w));
    expected.push_back(fin(w / z));
  }
  CHECK(set_equal(d3, PointSet(expected)));

  std::vector<RiemannPoint> fifth;
  for (int j = 0; j < 5; ++j) fifth.push_back(fin(std::polar(1.0, 2 * std::numbers::pi * j / 5)));
  CHECK(set_equal(dihedral_witness(5, {{0, 1, 0}}), PointSet(fifth)));

  const Complex k4z = std::polar(1.0, 2 * std::numbers::pi / 16);
  CHECK(set_equal(dihedral_witness(2, {{1, 1}}), points({0.0, k4z, -k4z, 1.0 / k4z, -1.0 / k4z}, true)));
}

TEST_CASE("cyclic and trivial constructions") {
  CHECK(set_equal(cyclic_witness(2, {{1, 2}}), points({0.0, 1.0, -1.0, 2.0, -2.0})));
  CHECK(cyclic_witness(2, {{0, 3}}).size() == 6);
  CHECK(cyclic_witness(2, {{2, 3}}).contains(RiemannPoint::infinity()));
  const PointSet c5 = cyclic_witness(5, {{1, 1}});
  CHECK(c5.size() == 6);
  CHECK(c5.contains(fin(0.0)));
  CHECK(cyclic_witness(4, {{0, 3}}).size() == 12);
  CHECK(set_equal(trivial_witness(5), points({1.0, Complex(0, 1), -1.0, Complex(0, -1), 2.0})));
  CHECK(trivial_witness(6).size() == 6);
  CHECK_THROWS_AS(trivial_witness(4), Error);
}

TEST_CASE("excluded indices are refused unless forced") {
  CHECK_THROWS_AS(dihedral_witness(3, {{0, 2, 0}}), Error);
  CHECK_THROWS_AS(dihedral_witness(4, {{1, 1, 0}}), Error);
  CHECK_THROWS_AS(dihedral_witness(2, {{3, 0}}), Error);
  CHECK_THROWS_AS(polyhedral_witness(GroupKind::A4, {{2, 1, 0}}), Error);
  CHECK_THROWS_AS(cyclic_witness(5, {{0, 1}}), Error);
  CHECK_THROWS_AS(cyclic_witness(3, {{1, 1}}), Error);
  CHECK_THROWS_AS(cyclic_witness(2, {{0, 2}}), Error);
  try {
    dihedral_witness(3, {{0, 2, 0}});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnrealizableIndex);
  }
}

TEST_CASE("forced excluded indices have the predicted larger stabilizer") {
  for (std::int64_t p : {3, 5, 6}) {
    CHECK(stabilizer(dihedral_witness(p, {{0, 2, 0}}, kForce)).label == GroupLabel::dihedral(2 * p));
    CHECK(stabilizer(dihedral_witness(p, {{1, 2, 0}}, kForce)).label == GroupLabel::dihedral(2 * p));
  }
  CHECK(stabilizer(dihedral_witness(4, {{1, 1, 0}}, kForce)).label == GroupLabel::s4());
  for (auto idx : {std::vector<std::int64_t>{2, 0, 0}, {0, 1, 0}, {2, 1, 0}}) {
    CHECK(stabilizer(polyhedral_witness(GroupKind::A4, {idx}, kForce)).label == GroupLabel::s4());
  }
  CHECK(stabilizer(cyclic_witness(5, {{0, 1}}, kForce)).label == GroupLabel::dihedral(5));
  CHECK(stabilizer(cyclic_witness(5, {{2, 1}}, kForce)).label == GroupLabel::dihedral(5));
  CHECK(stabilizer(cyclic_witness(5, {{0, 2}}, kForce)).label == GroupLabel::dihedral(5));
  CHECK(stabilizer(cyclic_witness(3, {{1, 1}}, kForce)).label == GroupLabel::a4());
  CHECK(stabilizer(dihedral_witness(2, {{3, 0}}, kForce)).label == GroupLabel::s4());
  CHECK(stabilizer(dihedral_witness(2, {{2, 0}}, kForce)).label == GroupLabel::dihedral(4));
}

TEST_CASE("witness round trip for small n and assorted larger entries") {
  for (std::int64_t n = 3; n <= 30; ++n) {
    for (const auto& e : classify(n)) {
      INFO(n << " " << format_entry(e));
      const auto w = witness(n, e);
      CHECK(w.points.size() == static_cast<std::size_t>(n));
      REQUIRE(w.verified.has_value());
      CHECK(w.verified->entry() == e);
    }
  }
  for (const auto& [n, e] : std::vector<std::pair<std::int64_t, ClassificationEntry>>{
           {62, entry(GroupLabel::a5(), {1, 1, 1, 0})},
           {122, entry(GroupLabel::a5(), {1, 1, 1, 1})},
           {50, entry(GroupLabel::s4(), {1, 1, 1, 1})},
           {26, entry(GroupLabel::a4(), {2, 1, 1})},
           {36, entry(GroupLabel::a4(), {0, 0, 3})},
           {44, entry(GroupLabel::dihedral(7), {1, 0, 3})},
       }) {
    INFO(format_entry(e));
    CHECK(witness(n, e).verified->entry() == e);
  }
}

TEST_CASE("witness errors") {
  try {
    witness(5, entry(GroupLabel::a5(), {1, 0, 0, 0}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EntryNotInClassification);
  }
  const auto inf = witness(2, ClassificationEntry{GroupLabel::infinite(), {}});
  CHECK(inf.points.size() == 2);
  CHECK_FALSE(inf.verified.has_value());
}

TEST_CASE("K4 conjugators permute the three involutions") {
  const std::vector<MobiusMap> involutions{MobiusMap(-1.0, 0.0, 0.0, 1.0), MobiusMap(0.0, 1.0, 1.0, 0.0),
                                           MobiusMap(0.0, -1.0, 1.0, 0.0)};
  for (const auto& c : {k4_conjugators().phi, k4_conjugators().psi}) {
    int moved = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      const MobiusMap s = compose(c, compose(involutions[i], inverse(c)));
      int match = -1;
      for (std::size_t j = 0; j < 3; ++j) {
        if (projectively_equal(s, involutions[j])) match = static_cast<int>(j);
      }
      REQUIRE(match >= 0);
      moved += match != static_cast<int>(i);
    }
    CHECK(moved == 2);
  }
  // φ swaps z ↦ -z and z ↦ 1/z.
  const auto& phi = k4_conjugators().phi;
  CHECK(projectively_equal(compose(phi, compose(involutions[0], inverse(phi))), involutions[1]));
}

TEST_CASE("conjugated dihedral sets contain the standard Klein group but are larger") {
  const std::vector<MobiusMap> k4{MobiusMap(-1.0, 0.0, 0.0, 1.0), MobiusMap(0.0, 1.0, 1.0, 0.0),
                                  MobiusMap(0.0, -1.0, 1.0, 0.0)};
  for (const auto& c : {k4_conjugators().phi, k4_conjugators().psi}) {
    for (std::int64_t p : {2, 3, 5}) {
      const PointSet s = k4_superset_fixture(c, p);
      for (const auto& f : k4) CHECK(set_equal(image(f, s), s));
      const auto r = stabilizer(s);
      CHECK(r.label == GroupLabel::dihedral(2 * p));
      CHECK(r.index.counts == std::vector<std::int64_t>{0, 1, 1});
    }
  }
}
