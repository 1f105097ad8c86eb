#include <doctest.h>

#include "msing/serialize.hpp"

using namespace msing;
using nlohmann::json;

TEST_CASE("entries round-trip through JSON") {
  for (std::int64_t n : {1, 5, 6, 62, 2018}) {
    for (const auto& e : classify(n)) {
      const json j = e;
      CHECK(j.at("label") == format_group(e.group));
      CHECK(j.get<ClassificationEntry>() == e);
    }
  }
  const json d = ClassificationEntry{GroupLabel::dihedral(7), {{1, 0, 144}}};
  CHECK(d.at("group") == "Dihedral");
  CHECK(d.at("p") == 7);
  CHECK(d.at("index") == json::array({1, 0, 144}));
  CHECK_FALSE(json(ClassificationEntry{GroupLabel::a5(), {{1, 0, 0, 0}}}).contains("p"));
  CHECK_THROWS_AS(json::parse(R"({"group":"Q8","index":[]})").get<ClassificationEntry>(), Error);
}

TEST_CASE("point sets and stabilizers") {
  const PointSet s({RiemannPoint::finite(0.0), RiemannPoint::infinity(), RiemannPoint::finite(Complex(1, -2))});
  CHECK(json(s) == json::array({"0+0i", "inf", "1-2i"}));

  const json r = stabilizer(s);
  CHECK(r.at("order") == 6);
  CHECK(r.at("label") == "D_3");
  CHECK(r.at("p") == 3);
  CHECK(r.at("index") == json::array({0, 1, 0}));
  CHECK(r.at("orbit_sizes") == json::array({3}));
  CHECK(r.at("elements").size() == 6);
  CHECK(r.at("elements")[0].size() == 4);
}

TEST_CASE("lambda tuples") {
  const LambdaTuple l{{Complex(2, 1), 5.0}};
  const json j = l;
  CHECK(j == json::parse(R"({"n":5,"values":["2+1i","5+0i"]})"));
  const auto back = j.get<LambdaTuple>();
  CHECK(lambda_distance(back, l) == 0.0);
  CHECK_THROWS_AS(json::parse(R"({"n":6,"values":["2"]})").get<LambdaTuple>(), Error);
}

TEST_CASE("reports") {
  const json law = verify_group_law(5, 10, 1);
  CHECK(law.at("pass") == true);
  const json phi = phi_check(LambdaTuple{{Complex(2, 1), 5.0}});
  CHECK(phi.at("g_order") == 1);
  CHECK(parse_group_kind("Cyclic") == GroupKind::Cyclic);
  CHECK_THROWS_AS(parse_group_kind("cyclic"), Error);
}
