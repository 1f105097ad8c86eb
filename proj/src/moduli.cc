#include "msing/moduli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>

namespace msing {

// ---------------------------------------------------------------- permutations

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size() + 1, false);
  for (int v : images_) {
    if (v < 1 || v > size() || seen[v]) {
      throw Error(ErrorCode::InvalidIndex, "image vector is not a permutation");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  return Permutation(std::move(img));
}

Permutation Permutation::transposition(int n, int a, int b) {
  auto img = identity(n).images_;
  std::swap(img[a - 1], img[b - 1]);
  return Permutation(std::move(img));
}

Permutation Permutation::parse(std::string_view text, int n) {
  auto img = identity(n).images_;
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  if (text.substr(i) == "e") return Permutation(std::move(img));
  while (true) {
    skip_space();
    if (i == text.size()) break;
    if (text[i] != '(') throw Error(ErrorCode::ParseError, "expected '(' in permutation");
    ++i;
    std::vector<int> cycle;
    while (true) {
      skip_space();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw Error(ErrorCode::ParseError, "expected a label in permutation");
      const int v = std::stoi(std::string(text.substr(i, j - i)));
      if (v < 1 || v > n || used[v]) {
        throw Error(ErrorCode::ParseError, "label " + std::to_string(v) + " out of range or repeated");
      }
      used[v] = true;
      cycle.push_back(v);
      i = j;
    }
    for (std::size_t c = 0; c < cycle.size(); ++c) img[cycle[c] - 1] = cycle[(c + 1) % cycle.size()];
  }
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i) {
    if (images_[i] != i + 1) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < size(); ++i) inv[images_[i] - 1] = i + 1;
  return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& pi, const Permutation& sigma) {
  if (pi.size() != sigma.size()) throw Error(ErrorCode::InvalidIndex, "permutation sizes differ");
  std::vector<int> img(static_cast<std::size_t>(sigma.size()));
  for (int i = 1; i <= sigma.size(); ++i) img[i - 1] = pi(sigma(i));
  return Permutation(std::move(img));
}

std::string format_permutation(const Permutation& p) {
  std::string out;
  std::vector<bool> done(static_cast<std::size_t>(p.size()) + 1, false);
  for (int i = 1; i <= p.size(); ++i) {
    if (done[i] || p(i) == i) continue;
    out += "(";
    for (int j = i; !done[j]; j = p(j)) {
      if (j != i) out += ",";
      out += std::to_string(j);
      done[j] = true;
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

std::vector<Permutation> all_permutations(int n) {
  auto img = Permutation::identity(n).images();
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

CosetDecomposition decompose(const Permutation& sigma) {
  const int n = sigma.size();
  if (n < 3) throw Error(ErrorCode::InvalidIndex, "need at least three marked points");
  // σ ∈ τ·V_n iff σ({1,2,3}) = τ({1,2,3}). Pair the missing small labels with
  // the incoming large ones, both in increasing order.
  std::vector<int> missing, incoming;
  std::vector<bool> hit(4, false);
  for (int i = 1; i <= 3; ++i) {
    const int s = sigma(i);
    if (s <= 3) {
      hit[s] = true;
    } else {
      incoming.push_back(s);
    }
  }
  for (int m = 1; m <= 3; ++m) {
    if (!hit[m]) missing.push_back(m);
  }
  std::sort(incoming.begin(), incoming.end());
  auto img = Permutation::identity(n).images();
  for (std::size_t i = 0; i < missing.size(); ++i) {
    std::swap(img[missing[i] - 1], img[incoming[i] - 1]);
  }
  Permutation tau(std::move(img));
  Permutation v = tau * sigma;  // τ is an involution
  return {std::move(tau), std::move(v)};
}

// ---------------------------------------------------------------- λ tuples

std::vector<RiemannPoint> marked_points(const LambdaTuple& lambda) {
  std::vector<RiemannPoint> z{RiemannPoint::finite(0.0), RiemannPoint::finite(1.0),
                              RiemannPoint::infinity()};
  for (auto v : lambda.values) z.push_back(RiemannPoint::finite(v));
  return z;
}

void validate_lambda(const LambdaTuple& lambda, double tol) {
  if (lambda.n() < 4) throw Error(ErrorCode::InvalidLambda, "need at least one coordinate");
  for (auto v : lambda.values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::InvalidLambda, "coordinate is not finite");
    }
  }
  const auto z = marked_points(lambda);
  for (std::size_t i = 3; i < z.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (chordal_distance(z[i], z[j]) <= tol) {
        throw Error(ErrorCode::InvalidLambda,
                    "coordinate " + format_point(z[i]) + " collides with " + format_point(z[j]));
      }
    }
  }
}

PointSet configuration(const LambdaTuple& lambda, double tol) {
  return PointSet(marked_points(lambda), tol);
}

double lambda_distance(const LambdaTuple& a, const LambdaTuple& b) {
  if (a.values.size() != b.values.size()) return 2.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    worst = std::max(worst, chordal_distance(RiemannPoint::finite(a.values[i]),
                                             RiemannPoint::finite(b.values[i])));
  }
  return worst;
}

// ---------------------------------------------------------------- g_σ

MobiusMap f_sigma(const LambdaTuple& lambda, const Permutation& sigma) {
  const auto z = marked_points(lambda);
  const Permutation inv = sigma.inverse();
  return mobius_through_triple({z[inv(1) - 1], z[inv(2) - 1], z[inv(3) - 1]},
                               {RiemannPoint::finite(0.0), RiemannPoint::finite(1.0),
                                RiemannPoint::infinity()});
}

LambdaTuple g_sigma_definitional(const LambdaTuple& lambda, const Permutation& sigma) {
  const auto z = marked_points(lambda);
  const Permutation inv = sigma.inverse();
  const MobiusMap f = f_sigma(lambda, sigma);
  LambdaTuple out;
  for (int k = 1; k <= lambda.n() - 3; ++k) {
    const RiemannPoint w = apply(f, z[inv(k + 3) - 1]);
    if (w.is_infinity()) throw Error(ErrorCode::InvalidLambda, "g_sigma left K_n");
    out.values.push_back(w.value());
  }
  return out;
}

namespace {

// The anharmonic map h with h(0) = z_{v(1)}, h(1) = z_{v(2)}, h(∞) = z_{v(3)}.
Complex anharmonic(int v1, int v2, Complex x) {
  if (v1 == 1 && v2 == 2) return x;
  if (v1 == 2 && v2 == 1) return 1.0 - x;
  if (v1 == 3 && v2 == 2) return 1.0 / x;
  if (v1 == 1 && v2 == 3) return x / (x - 1.0);
  if (v1 == 3 && v2 == 1) return (x - 1.0) / x;
  return -1.0 / (x - 1.0);  // (2, 3)
}

LambdaTuple apply_v(const LambdaTuple& lambda, const Permutation& v) {
  const Permutation inv = v.inverse();
  LambdaTuple out;
  for (int k = 1; k <= lambda.n() - 3; ++k) {
    out.values.push_back(anharmonic(v(1), v(2), lambda.values[inv(k + 3) - 4]));
  }
  return out;
}

// Closed forms for the coset representatives. `x(j)` is the coordinate of the
// marked point j ≥ 4, i.e. λ^{j-3}.
LambdaTuple apply_tau(const LambdaTuple& lambda, const Permutation& tau) {
  const int m = lambda.n() - 3;
  auto x = [&](int label) { return lambda.values[label - 4]; };
  int s1 = 0, s2 = 0, s3 = 0;  // partner of 1, 2, 3 (0 if fixed)
  if (tau(1) != 1) s1 = tau(1);
  if (tau(2) != 2) s2 = tau(2);
  if (tau(3) != 3) s3 = tau(3);

  LambdaTuple out;
  out.values.resize(static_cast<std::size_t>(m));
  for (int k = 1; k <= m; ++k) {
    const int label = k + 3;
    const Complex lk = lambda.values[k - 1];
    Complex g;
    if (!s1 && !s2 && !s3) {
      g = lk;
    } else if (s1 && !s2 && !s3) {  // (1,p)
      const Complex lp = x(s1);
      g = label == s1 ? -lp / (1.0 - lp) : (lk - lp) / (1.0 - lp);
    } else if (!s1 && s2 && !s3) {  // (2,p)
      const Complex lp = x(s2);
      g = label == s2 ? 1.0 / lp : lk / lp;
    } else if (!s1 && !s2 && s3) {  // (3,p)
      const Complex lp = x(s3);
      // f(z) = z(1-λp)/(z-λp) sends z₃ = ∞ to 1-λp.
      g = label == s3 ? 1.0 - lp : lk * (1.0 - lp) / (lk - lp);
    } else if (s1 && s2 && !s3) {  // (1,p)(2,q)
      const Complex lp = x(s1), lq = x(s2);
      if (label == s1) {
        g = -lp / (lq - lp);
      } else if (label == s2) {
        g = (1.0 - lp) / (lq - lp);
      } else {
        g = (lk - lp) / (lq - lp);
      }
    } else if (!s1 && s2 && s3) {  // (2,p)(3,q)
      const Complex lp = x(s2), lq = x(s3);
      if (label == s2) {
        g = (lp - lq) / (lp * (1.0 - lq));
      } else if (label == s3) {
        g = (lp - lq) / lp;
      } else {
        g = (lp - lq) * lk / (lp * (lk - lq));
      }
    } else if (s1 && !s2 && s3) {  // (3,p)(1,q)
      const Complex lp = x(s3), lq = x(s1);
      if (label == s3) {
        g = (lp - 1.0) / (lq - 1.0);
      } else if (label == s1) {
        g = (lp - 1.0) * lq / ((lq - 1.0) * lp);
      } else {
        g = (lp - 1.0) * (lk - lq) / ((lq - 1.0) * (lk - lp));
      }
    } else {  // (1,p)(2,q)(3,r)
      const Complex lp = x(s1), lq = x(s2), lr = x(s3);
      if (label == s1) {
        g = (lq - lr) * lp / ((lq - lp) * lr);
      } else if (label == s2) {
        g = (lq - lr) * (1.0 - lp) / ((lq - lp) * (1.0 - lr));
      } else if (label == s3) {
        g = (lq - lr) / (lq - lp);
      } else {
        g = (lq - lr) * (lk - lp) / ((lq - lp) * (lk - lr));
      }
    }
    out.values[k - 1] = g;
  }
  return out;
}

}  // namespace

LambdaTuple g_sigma_closed_form(const LambdaTuple& lambda, const Permutation& sigma) {
  const auto [tau, v] = decompose(sigma);
  return apply_tau(apply_v(lambda, v), tau);
}

LambdaTuple g_sigma(const LambdaTuple& lambda, const Permutation& sigma, double tol) {
  if (sigma.size() != lambda.n()) {
    throw Error(ErrorCode::InvalidIndex, "permutation acts on " + std::to_string(sigma.size()) +
                                             " labels but λ has " + std::to_string(lambda.n()));
  }
  LambdaTuple direct = g_sigma_definitional(lambda, sigma);
  const LambdaTuple closed = g_sigma_closed_form(lambda, sigma);
  const double d = lambda_distance(direct, closed);
  if (!(d <= 10.0 * tol)) {
    throw Error(ErrorCode::ClosedFormMismatch,
                format_permutation(sigma) + ": paths differ by " + std::to_string(d));
  }
  return direct;
}

// ---------------------------------------------------------------- checks

LambdaTuple random_lambda(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  while (true) {
    LambdaTuple l;
    for (int i = 0; i < n - 3; ++i) l.values.emplace_back(coord(rng), coord(rng));
    try {
      validate_lambda(l, 0.05);
      return l;
    } catch (const Error&) {
    }
  }
}

namespace {

Permutation random_permutation(int n, std::mt19937_64& rng) {
  auto img = Permutation::identity(n).images();
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(std::move(img));
}

}  // namespace

GroupLawReport verify_group_law(int n, int trials, std::uint64_t seed, double tol) {
  if (n < 4) throw Error(ErrorCode::InvalidCardinality, "the action needs n ≥ 4");
  std::mt19937_64 rng(seed);
  GroupLawReport r;
  r.n = n;
  r.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const LambdaTuple l = random_lambda(n, rng);
    const Permutation sigma = random_permutation(n, rng);
    const Permutation pi = random_permutation(n, rng);
    const double d = lambda_distance(g_sigma(g_sigma(l, sigma, tol), pi, tol), g_sigma(l, pi * sigma, tol));
    r.max_deviation = std::max(r.max_deviation, d);
    if (n >= 5) {
      Permutation s = random_permutation(n, rng);
      while (s.is_identity()) s = random_permutation(n, rng);
      ++r.faithfulness_trials;
      if (lambda_distance(g_sigma(l, s, tol), l) <= 10.0 * tol) ++r.faithfulness_failures;
    }
  }
  r.group_law_pass = r.max_deviation < 10.0 * tol;
  r.pass = r.group_law_pass && r.faithfulness_failures == 0;
  return r;
}

double closed_form_deviation(int n, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const LambdaTuple l = random_lambda(n, rng);
    const Permutation s = random_permutation(n, rng);
    worst = std::max(worst, lambda_distance(g_sigma_definitional(l, s), g_sigma_closed_form(l, s)));
  }
  return worst;
}

int count_moving_permutations(const LambdaTuple& lambda, double tol) {
  int moving = 0;
  for (const auto& s : all_permutations(lambda.n())) {
    if (lambda_distance(g_sigma(lambda, s, tol), lambda) > tol) ++moving;
  }
  return moving;
}

GLambdaResult stabilizer_G_lambda(const LambdaTuple& lambda, GLambdaPath path, double tol) {
  validate_lambda(lambda, tol);
  const int n = lambda.n();
  const bool want_direct = path == GLambdaPath::direct ||
                           (path == GLambdaPath::automatic && n <= kDirectEnumerationBound);
  const bool want_oracle = path != GLambdaPath::direct;
  if (want_direct && n > kDirectEnumerationBound) {
    throw Error(ErrorCode::EnumerationBoundExceeded,
                "direct enumeration of S_" + std::to_string(n) + " exceeds the bound " +
                    std::to_string(kDirectEnumerationBound));
  }

  GLambdaResult result;
  std::vector<Permutation> direct, pulled;
  if (want_direct) {
    for (const auto& s : all_permutations(n)) {
      if (lambda_distance(g_sigma(lambda, s, tol), lambda) <= tol) direct.push_back(s);
    }
    result.direct_ran = true;
  }
  if (want_oracle) {
    const PointSet config = configuration(lambda, tol);
    StabilizerResult stab = stabilizer(config);
    for (const auto& f : stab.elements) {
      std::vector<int> img;
      for (std::size_t j = 0; j < config.size(); ++j) {
        const auto hit = config.find(apply(f, config[j]));
        if (!hit) throw Error(ErrorCode::PathDisagreement, "stabilizing map leaves [λ]");
        img.push_back(static_cast<int>(*hit) + 1);
      }
      pulled.emplace_back(std::move(img));
    }
    std::sort(pulled.begin(), pulled.end());
    result.oracle = std::move(stab);
    result.oracle_ran = true;
  }
  if (result.direct_ran && result.oracle_ran && direct != pulled) {
    throw Error(ErrorCode::PathDisagreement,
                "direct enumeration found " + std::to_string(direct.size()) +
                    " permutations, the oracle pullback " + std::to_string(pulled.size()));
  }
  result.elements = result.direct_ran ? std::move(direct) : std::move(pulled);
  // Lexicographic order already puts the identity first.
  return result;
}

PhiReport phi_check(const LambdaTuple& lambda, double tol, double map_tol) {
  PhiReport r;
  r.n = lambda.n();
  GLambdaResult g = stabilizer_G_lambda(lambda, GLambdaPath::automatic, tol);
  const PointSet config = configuration(lambda, tol);
  const StabilizerResult a = g.oracle ? *g.oracle : stabilizer(config);
  r.g_order = g.order();
  r.a_order = a.order();
  r.a_label = format_group(a.label);

  std::vector<MobiusMap> maps;
  for (const auto& s : g.elements) maps.push_back(f_sigma(lambda, s));

  r.injective = true;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (projectively_equal(maps[i], maps[j], map_tol)) r.injective = false;
    }
  }
  r.lands_in_stabilizer = true;
  for (const auto& f : maps) {
    const bool in_a = std::any_of(a.elements.begin(), a.elements.end(),
                                  [&](const MobiusMap& h) { return projectively_equal(f, h, map_tol); });
    if (!in_a || !set_equal(image(f, config), config)) r.lands_in_stabilizer = false;
  }
  for (std::size_t i = 0; i < g.elements.size(); ++i) {
    for (std::size_t j = 0; j < g.elements.size(); ++j) {
      ++r.pairs_checked;
      const Permutation prod = g.elements[i] * g.elements[j];
      if (!projectively_equal(compose(maps[i], maps[j]), f_sigma(lambda, prod), map_tol)) {
        ++r.pairs_failed;
      }
    }
  }
  r.pass = r.g_order == r.a_order && r.injective && r.lands_in_stabilizer && r.pairs_failed == 0;
  return r;
}

// ---------------------------------------------------------------- presets

namespace {

// Normalizes a configuration so that pts[0], pts[1], pts[2] become 0, 1, ∞.
LambdaTuple normalize(const std::vector<RiemannPoint>& pts) {
  const MobiusMap f = mobius_through_triple(
      {pts[0], pts[1], pts[2]},
      {RiemannPoint::finite(0.0), RiemannPoint::finite(1.0), RiemannPoint::infinity()});
  LambdaTuple l;
  for (std::size_t i = 3; i < pts.size(); ++i) l.values.push_back(apply(f, pts[i]).value());
  return l;
}

}  // namespace

LambdaTuple preset_lambda(std::string_view name, int n) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  LambdaTuple l;
  if (name == "d5" && (n == 5 || n == 7)) {
    std::vector<RiemannPoint> roots;
    for (int j = 0; j < 5; ++j) roots.push_back(RiemannPoint::finite(std::polar(1.0, two_pi * j / 5)));
    if (n == 7) {
      // {0, ∞} together with the fifth roots of unity already contains 0, 1, ∞.
      for (int j = 1; j < 5; ++j) l.values.push_back(roots[j].value());
    } else {
      l = normalize(roots);
    }
  } else if (name == "z2" && n >= 5 && n % 2 == 1) {
    // {0, ±1, …, ±k} with 0, 1, k sent to 0, 1, ∞.
    const int k = (n - 1) / 2;
    std::vector<RiemannPoint> pts{RiemannPoint::finite(0.0), RiemannPoint::finite(1.0),
                                  RiemannPoint::finite(static_cast<double>(k))};
    for (int j = 1; j <= k; ++j) pts.push_back(RiemannPoint::finite(static_cast<double>(-j)));
    for (int j = 2; j < k; ++j) pts.push_back(RiemannPoint::finite(static_cast<double>(j)));
    l = normalize(pts);
  } else if (name == "generic" && n >= 4) {
    const std::vector<Complex> fixed{{2, 1}, {5, 0}, {3, -2}, {-4, 0.5}, {0.3, 1.7}, {-1.1, -2.6}};
    for (int i = 0; i < n - 3 && i < static_cast<int>(fixed.size()); ++i) l.values.push_back(fixed[i]);
    if (n - 3 > static_cast<int>(fixed.size())) {
      std::mt19937_64 rng(20180101);
      const LambdaTuple extra = random_lambda(n - static_cast<int>(fixed.size()), rng);
      // Keep drawing until the combined tuple is valid.
      for (auto v : extra.values) l.values.push_back(v);
      while (true) {
        try {
          validate_lambda(l, 0.01);
          break;
        } catch (const Error&) {
          l.values.resize(fixed.size());
          for (auto v : random_lambda(n - static_cast<int>(fixed.size()), rng).values) l.values.push_back(v);
        }
      }
    }
  } else {
    throw Error(ErrorCode::InvalidLambda,
                "no preset '" + std::string(name) + "' with n = " + std::to_string(n));
  }
  validate_lambda(l);
  return l;
}

LambdaTuple parse_lambda(std::string_view text) {
  LambdaTuple l;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view part =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    const RiemannPoint p = parse_point(part);
    if (p.is_infinity()) throw Error(ErrorCode::ParseError, "λ coordinates must be finite");
    l.values.push_back(p.value());
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return l;
}

}  // namespace msing
