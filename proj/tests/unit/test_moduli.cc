#include <doctest.h>

#include <numbers>
#include <random>

#include "msing/moduli.hpp"

using namespace msing;

namespace {

LambdaTuple lam(std::initializer_list<Complex> v) { return LambdaTuple{std::vector<Complex>(v)}; }

void check_close(const LambdaTuple& a, const LambdaTuple& b, double tol = 1e-12) {
  REQUIRE(a.values.size() == b.values.size());
  CHECK(lambda_distance(a, b) <= tol);
}

}  // namespace

TEST_CASE("permutations") {
  const Permutation s = Permutation::parse("(1,4)(2,5)", 5);
  CHECK(s.images() == std::vector<int>{4, 5, 3, 1, 2});
  CHECK(format_permutation(s) == "(1,4)(2,5)");
  CHECK(Permutation::parse("(1 4 2)", 5).images() == std::vector<int>{4, 1, 3, 2, 5});
  CHECK(Permutation::parse("e", 4).is_identity());
  CHECK(Permutation::parse("()", 4).is_identity());
  CHECK_THROWS_AS(Permutation::parse("(1,6)", 5), Error);
  CHECK_THROWS_AS(Permutation::parse("(1,2,1)", 5), Error);
  CHECK_THROWS_AS(Permutation({1, 1, 2}), Error);

  const Permutation a = Permutation::parse("(1,2)", 3), b = Permutation::parse("(2,3)", 3);
  // (a·b)(i) = a(b(i)): 1 → 1 → 2, 2 → 3 → 3, 3 → 2 → 1.
  CHECK((a * b).images() == std::vector<int>{2, 3, 1});
  CHECK((s * s.inverse()).is_identity());
  CHECK(all_permutations(5).size() == 120);
}

TEST_CASE("coset decomposition") {
  for (int n : {4, 5, 6, 7}) {
    std::set<std::vector<int>> reps;
    for (const auto& s : all_permutations(n)) {
      const auto [tau, v] = decompose(s);
      CHECK(tau * v == s);
      CHECK((tau * tau).is_identity());
      std::set<int> head{v(1), v(2), v(3)};
      CHECK(head == std::set<int>{1, 2, 3});
      for (int i = 1; i <= 3; ++i) {
        if (tau(i) != i) CHECK(tau(i) >= 4);
      }
      reps.insert(tau.images());
    }
    // One representative per coset of S_{1,2,3} × S_{4..n}.
    std::size_t cosets = 1;
    for (int i = n - 2; i <= n; ++i) cosets *= static_cast<std::size_t>(i);
    cosets /= 6;
    CHECK(reps.size() == cosets);
  }
}

TEST_CASE("f_sigma examples") {
  const LambdaTuple l = lam({Complex(2, 1), 5.0, Complex(-1, 3)});
  CHECK(projectively_equal(f_sigma(l, Permutation::identity(6)), MobiusMap::identity()));
  for (int p = 4; p <= 6; ++p) {
    const Complex x = l.values[p - 4];
    CHECK(projectively_equal(f_sigma(l, Permutation::transposition(6, 1, p)), MobiusMap(1.0, -x, 0.0, 1.0 - x)));
  }
  CHECK(projectively_equal(f_sigma(l, Permutation::transposition(6, 1, 2)), MobiusMap(-1.0, 1.0, 0.0, 1.0)));
}

TEST_CASE("g_sigma examples") {
  const LambdaTuple l = lam({2.0, 3.0});
  check_close(g_sigma(l, Permutation::identity(5)), l, 0.0);
  check_close(g_sigma(l, Permutation::parse("(1,4)", 5)), lam({2.0, -1.0}));
  check_close(g_sigma(l, Permutation::parse("(2,4)", 5)), lam({0.5, 1.5}));
  CHECK_THROWS_AS(g_sigma(l, Permutation::identity(6)), Error);
}

TEST_CASE("closed forms agree with the definition for every coset family") {
  std::mt19937_64 rng(31);
  const char* families[] = {"e",           "(1,p)",       "(2,p)",       "(3,p)",
                            "(1,p)(2,q)",  "(2,p)(3,q)", "(3,p)(1,q)", "(1,p)(2,q)(3,r)"};
  for (int n : {6, 7, 8}) {
    for (const char* family : families) {
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> big;
        for (int i = 4; i <= n; ++i) big.push_back(i);
        std::shuffle(big.begin(), big.end(), rng);
        std::string text = family;
        for (auto [c, v] : {std::pair{'p', big[0]}, {'q', big[1]}, {'r', big[2]}}) {
          const auto pos = text.find(c);
          if (pos != std::string::npos) text.replace(pos, 1, std::to_string(v));
        }
        const Permutation tau = Permutation::parse(text, n);
        const LambdaTuple l = random_lambda(n, rng);
        INFO(text);
        check_close(g_sigma_closed_form(l, tau), g_sigma_definitional(l, tau), 1e-9);
      }
    }
  }
  CHECK(closed_form_deviation(7, 300, 5) < 1e-9);
}

TEST_CASE("the action stays in K_n and is equivariant on the configuration") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 5 + trial % 4;
    const LambdaTuple l = random_lambda(n, rng);
    auto img = Permutation::identity(n).images();
    std::shuffle(img.begin(), img.end(), rng);
    const Permutation s(img);
    const LambdaTuple g = g_sigma(l, s);
    CHECK_NOTHROW(validate_lambda(g));
    CHECK(set_equal(image(f_sigma(l, s), configuration(l)), configuration(g)));
    // f^λ_σ(z^λ_k) = z^{g_σ(λ)}_{σ(k)}.
    const auto zl = marked_points(l), zg = marked_points(g);
    for (int k = 1; k <= n; ++k) CHECK(chordal_distance(apply(f_sigma(l, s), zl[k - 1]), zg[s(k) - 1]) < 1e-9);
  }
}

TEST_CASE("group law and faithfulness") {
  for (int n : {4, 5, 6, 7}) {
    const auto r = verify_group_law(n, 200, 9);
    CHECK(r.group_law_pass);
    CHECK(r.max_deviation < 1e-7);
    CHECK(r.pass);
    if (n >= 5) CHECK(r.faithfulness_trials == 200);
  }
  const LambdaTuple l = lam({Complex(2, 1), 5.0});
  const Permutation e = Permutation::identity(5);
  CHECK(lambda_distance(g_sigma(g_sigma(l, e), e), g_sigma(l, e * e)) == 0.0);
  CHECK(count_moving_permutations(preset_lambda("generic", 5)) == 119);

  std::set<std::vector<double>> distinct;
  for (const auto& s : all_permutations(5)) {
    const auto g = g_sigma(l, s);
    distinct.insert({std::round(g.values[0].real() * 1e6), std::round(g.values[0].imag() * 1e6),
                     std::round(g.values[1].real() * 1e6), std::round(g.values[1].imag() * 1e6)});
  }
  CHECK(distinct.size() == 120);
}

TEST_CASE("stabilizer of a configuration") {
  const auto generic = stabilizer_G_lambda(preset_lambda("generic", 5));
  CHECK(generic.order() == 1);
  CHECK(generic.direct_ran);
  CHECK(generic.oracle_ran);

  for (int n : {5, 7}) {
    const auto d5 = stabilizer_G_lambda(preset_lambda("d5", n));
    CHECK(d5.order() == 10);
    CHECK(d5.oracle->label == GroupLabel::dihedral(5));
    CHECK(d5.elements.front().is_identity());
  }
  const LambdaTuple z2 = preset_lambda("z2", 5);
  check_close(z2, lam({-1.0 / 3.0, -0.5}), 1e-12);
  CHECK(stabilizer_G_lambda(z2).order() == 2);

  const LambdaTuple big = preset_lambda("generic", 10);
  CHECK_THROWS_AS(stabilizer_G_lambda(big, GLambdaPath::direct), Error);
  CHECK(stabilizer_G_lambda(big).order() == 1);
  CHECK_FALSE(stabilizer_G_lambda(big).direct_ran);

  // Each permutation in G_λ fixes λ.
  const LambdaTuple d7 = preset_lambda("d5", 7);
  for (const auto& s : stabilizer_G_lambda(d7, GLambdaPath::oracle).elements) {
    CHECK(lambda_distance(g_sigma(d7, s), d7) < 1e-9);
  }
}

TEST_CASE("phi is an isomorphism onto the stabilizer of [lambda]") {
  const auto generic = phi_check(lam({Complex(2, 1), 5.0}));
  CHECK(generic.pass);
  CHECK(generic.g_order == 1);
  CHECK(generic.a_order == 1);

  const auto d5 = phi_check(preset_lambda("d5", 7));
  CHECK(d5.pass);
  CHECK(d5.g_order == 10);
  CHECK(d5.a_order == 10);
  CHECK(d5.pairs_checked == 100);
  CHECK(d5.pairs_failed == 0);

  const auto z2 = phi_check(preset_lambda("z2", 5));
  CHECK(z2.pass);
  CHECK(z2.g_order == 2);

  // The octahedral configuration at n = 6.
  const auto oct = phi_check(lam({-1.0, Complex(0, 1), Complex(0, -1)}));
  CHECK(oct.pass);
  CHECK(oct.g_order == 24);
}

TEST_CASE("lambda validation and parsing") {
  CHECK_THROWS_AS(validate_lambda(lam({0.0, 2.0})), Error);
  CHECK_THROWS_AS(validate_lambda(lam({1.0, 2.0})), Error);
  CHECK_THROWS_AS(validate_lambda(lam({2.0, 2.0})), Error);
  CHECK_THROWS_AS(validate_lambda(lam({})), Error);
  CHECK_NOTHROW(validate_lambda(lam({2.0, 3.0})));
  check_close(parse_lambda("2+1i,5"), lam({Complex(2, 1), 5.0}), 0.0);
  CHECK_THROWS_AS(parse_lambda("2,inf"), Error);
  CHECK_THROWS_AS(parse_lambda("2,,3"), Error);
  CHECK_THROWS_AS(preset_lambda("d5", 6), Error);
  CHECK_THROWS_AS(preset_lambda("z2", 6), Error);
  CHECK_THROWS_AS(preset_lambda("nope", 5), Error);
  CHECK(preset_lambda("generic", 12).n() == 12);
}
