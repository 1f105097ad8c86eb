// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include "msing/moduli.hpp"
#include "msing/stabilizer.hpp"
#include "msing/witness.hpp"
#include "theorem_tables.hpp"

using namespace msing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail = what;
      ok = false;
    }
  }
};

RiemannPoint fin(Complex v) { return RiemannPoint::finite(v); }

Outcome golden_listing() {
  Outcome o;
  std::ifstream in(std::string(MSING_TEST_DATA_DIR) + "/classify_2018.txt");
  std::vector<ClassificationEntry> expected;
  for (std::string line; std::getline(in, line);) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    expected.push_back(parse_entry(line));
  }
  const auto got = classify(2018);
  o.require(got.size() == expected.size(),
            "expected " + std::to_string(expected.size()) + " entries, got " + std::to_string(got.size()));
  for (std::size_t i = 0; i < std::min(got.size(), expected.size()); ++i) {
    o.require(got[i] == expected[i], "line " + std::to_string(i + 1) + ": " + format_entry(got[i]));
  }
  o.detail = o.ok ? std::to_string(got.size()) + " entries" : o.detail;
  return o;
}

Outcome cardinality_sets() {
  Outcome o;
  constexpr std::int64_t kMax = 300;
  std::map<std::string, std::set<std::int64_t>> observed;
  std::map<std::string, GroupLabel> labels;
  for (std::int64_t n = 1; n <= kMax; ++n) {
    for (const auto& e : classify(n)) {
      const std::string name = format_group(e.group);
      observed[name].insert(n);
      labels.emplace(name, e.group);
    }
  }
  std::vector<GroupLabel> groups{GroupLabel::a5(), GroupLabel::s4(), GroupLabel::a4(), GroupLabel::k4(),
                                 GroupLabel::z2(), GroupLabel::trivial()};
  for (std::int64_t p = 3; p <= kMax; ++p) {
    groups.push_back(GroupLabel::dihedral(p));
    groups.push_back(GroupLabel::cyclic(p));
  }
  for (const auto& g : groups) {
    const std::string name = format_group(g);
    o.require(observed[name] == tables::stated_cardinalities(g, kMax), name);
  }
  // Nothing appears that the checks above do not cover.
  for (const auto& [name, g] : labels) {
    if (g.kind() == GroupKind::Infinite) continue;
    o.require(std::find(groups.begin(), groups.end(), g) != groups.end(), "unchecked group " + name);
  }
  if (o.ok) o.detail = std::to_string(groups.size()) + " groups, n <= 300";
  return o;
}

Outcome round_trip() {
  Outcome o;
  int count = 0;
  for (std::int64_t n = 5; n <= 20; ++n) {
    for (const auto& e : classify(n)) {
      const auto w = witness(n, e);
      const auto r = stabilizer(w.points);
      const std::string where = "n=" + std::to_string(n) + " " + format_entry(e);
      o.require(w.points.size() == static_cast<std::size_t>(n), where + " size");
      o.require(r.label == e.group, where + " label " + format_group(r.label));
      o.require(r.index == e.index, where + " index");
      ++count;
    }
  }
  if (o.ok) o.detail = std::to_string(count) + " entries";
  return o;
}

Outcome forced_unrealizable() {
  Outcome o;
  const BuildOptions force{Realizability::force, 0, kDefaultTolerance};
  auto expect = [&](const PointSet& s, const GroupLabel& g, const std::string& what) {
    const auto r = stabilizer(s);
    o.require(r.label == g, what + " gave " + format_group(r.label));
  };
  for (std::int64_t p : {3, 5}) {
    expect(dihedral_witness(p, {{0, 2, 0}}, force), GroupLabel::dihedral(2 * p),
           "D_" + std::to_string(p) + " (0,2,0)");
  }
  expect(dihedral_witness(4, {{1, 1, 0}}, force), GroupLabel::s4(), "D_4 (1,1,0)");
  for (auto idx : {std::vector<std::int64_t>{2, 0, 0}, {0, 1, 0}, {2, 1, 0}}) {
    expect(polyhedral_witness(GroupKind::A4, {idx}, force), GroupLabel::s4(), "A_4 index");
  }
  expect(cyclic_witness(5, {{0, 1}}, force), GroupLabel::dihedral(5), "Z_5 (0,1)");
  expect(dihedral_witness(2, {{3, 0}}, force), GroupLabel::s4(), "K_4 (3,0)");
  if (o.ok) o.detail = "8 forced builds";
  return o;
}

Outcome specific_witnesses() {
  Outcome o;
  const auto h = stabilizer(PointSet({fin(0.0), fin(1.0), RiemannPoint::infinity()}));
  const std::vector<MobiusMap> anharmonic{MobiusMap::identity(),          MobiusMap(-1.0, 1.0, 0.0, 1.0),
                                          MobiusMap(0.0, 1.0, 1.0, 0.0),   MobiusMap(1.0, 0.0, 1.0, -1.0),
                                          MobiusMap(1.0, -1.0, 1.0, 0.0), MobiusMap(0.0, -1.0, 1.0, -1.0)};
  o.require(h.order() == 6, "|H| = " + std::to_string(h.order()));
  for (const auto& f : anharmonic) {
    o.require(std::any_of(h.elements.begin(), h.elements.end(),
                          [&](const MobiusMap& g) { return projectively_equal(f, g, 1e-8); }),
              "H element missing");
  }

  const auto trivial = stabilizer(PointSet({fin(1.0), fin(Complex(0, 1)), fin(-1.0), fin(Complex(0, -1)), fin(2.0)}));
  o.require(trivial.label == GroupLabel::trivial(), "{1,i,-1,-i,2}");

  const auto z2 = stabilizer(PointSet({fin(0.0), fin(1.0), fin(-1.0), fin(2.0), fin(-2.0)}));
  o.require(z2.label == GroupLabel::z2() && z2.index.counts == std::vector<std::int64_t>{1, 2}, "{0,±1,±2}");

  for (int k = 1; k <= 3; ++k) {
    std::vector<RiemannPoint> pts;
    for (int l = 1; l <= k; ++l) {
      const Complex z = std::polar(1.0, 2 * std::numbers::pi * l / (72.0 * k * k));
      for (int j = 0; j < 3; ++j) {
        const Complex w = std::polar(1.0, 2 * std::numbers::pi * j / 3);
        pts.push_back(fin(z * w));
        pts.push_back(fin(w / z));
      }
    }
    const auto r = stabilizer(PointSet(pts));
    o.require(r.label == GroupLabel::dihedral(3) && r.index.counts == std::vector<std::int64_t>{0, 0, k},
              "C_3 union, k=" + std::to_string(k));
  }
  if (o.ok) o.detail = "H, trivial, Z_2, D_3 k=1..3";
  return o;
}

Outcome moduli_action() {
  Outcome o;
  double worst_law = 0;
  for (int n : {5, 6}) {
    const auto r = verify_group_law(n, 500, 20180101 + n);
    o.require(r.group_law_pass && r.max_deviation < 1e-7, "group law at n=" + std::to_string(n));
    worst_law = std::max(worst_law, r.max_deviation);
  }
  // S_5 has 119 non-identity elements; each must move a generic λ.
  const int moving = count_moving_permutations(preset_lambda("generic", 5));
  o.require(moving == 119, "moving permutations " + std::to_string(moving));
  double worst_closed = 0;
  for (int n : {5, 6, 7}) worst_closed = std::max(worst_closed, closed_form_deviation(n, 1000, 77 + n));
  o.require(worst_closed < 1e-9, "closed form deviation");
  std::ostringstream d;
  d << "law " << worst_law << ", faithful " << moving << "/119, closed form " << worst_closed;
  o.detail = o.ok ? d.str() : o.detail + " (" + d.str() + ")";
  return o;
}

Outcome phi_isomorphism() {
  Outcome o;
  std::ostringstream d;
  for (const char* name : {"d5", "z2", "generic"}) {
    const auto r = phi_check(preset_lambda(name, 5), kDefaultTolerance, 1e-7);
    o.require(r.pass && r.g_order == r.a_order && r.pairs_failed == 0 && r.injective && r.lands_in_stabilizer,
              std::string(name) + " failed");
    d << name << " " << r.g_order << "=" << r.a_order << " ";
  }
  if (o.ok) o.detail = d.str() + "orders";
  return o;
}

Outcome realizability() {
  Outcome o;
  std::vector<GroupLabel> groups{GroupLabel::a5(), GroupLabel::s4(), GroupLabel::a4(), GroupLabel::k4(),
                                 GroupLabel::z2()};
  for (std::int64_t p = 3; p <= 50; ++p) {
    groups.push_back(GroupLabel::dihedral(p));
    groups.push_back(GroupLabel::cyclic(p));
  }
  for (const auto& g : groups) {
    bool found = false;
    for (std::int64_t n = 5; n <= 5 * (g.order() + 2) && !found; ++n) {
      for (const auto& e : classify(n)) found |= e.group == g;
    }
    o.require(found, format_group(g));
  }
  if (o.ok) o.detail = std::to_string(groups.size()) + " groups";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"golden listing for n = 2018", 0.1, golden_listing},
      {"cardinality sets", 1.0, cardinality_sets},
      {"witness and stabilizer round trip, n in [5, 20]", 120.0, round_trip},
      {"forced excluded indices", 10.0, forced_unrealizable},
      {"specific witnesses", 10.0, specific_witnesses},
      {"moduli action", 30.0, moduli_action},
      {"isomorphism on presets", 10.0, phi_isomorphism},
      {"realizability", 1.0, realizability},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < criteria[i].budget_s;
    const bool pass = o.ok && in_time;
    failures += !pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3f s / %.1f s", secs, criteria[i].budget_s);
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].name << " ["
              << o.detail << "] (" << timing << (in_time ? "" : ", over budget") << ")\n";
  }
  return failures == 0 ? 0 : 1;
}
