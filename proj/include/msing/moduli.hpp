#pragma once

// The S_n action on normalized configurations λ = (λ¹, …, λ^{n-3}): the n
// marked points are z₁ = 0, z₂ = 1, z₃ = ∞ and z_{i+3} = λⁱ. A permutation σ
// relabels them and f_σ renormalizes so that the new first three land on
// 0, 1, ∞ again.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "msing/sphere.hpp"
#include "msing/stabilizer.hpp"

namespace msing {

/// Bijection of {1..n}, stored 1-based: (*this)(i) is the image of i.
class Permutation {
 public:
  Permutation() = default;
  /// `images[i-1]` is the image of i. Throws InvalidIndex if not a bijection.
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);
  static Permutation transposition(int n, int a, int b);
  /// Cycle notation such as "(1,4)(2,5)" or "(1 4 2)"; "e" or "()" is the
  /// identity. Throws ParseError.
  static Permutation parse(std::string_view text, int n);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i - 1]; }
  const std::vector<int>& images() const { return images_; }
  bool is_identity() const;
  Permutation inverse() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

/// (π·σ)(i) = π(σ(i)).
Permutation operator*(const Permutation& pi, const Permutation& sigma);
/// Cycle notation, fixed points omitted; "e" for the identity.
std::string format_permutation(const Permutation& p);
/// All n! permutations in lexicographic order of their image vectors.
std::vector<Permutation> all_permutations(int n);

/// σ = τ·v with τ a fixed coset representative (an involution swapping some
/// of 1, 2, 3 with larger labels) and v ∈ S_{1,2,3} × S_{4..n}.
struct CosetDecomposition {
  Permutation tau;
  Permutation v;
};
CosetDecomposition decompose(const Permutation& sigma);

struct LambdaTuple {
  std::vector<Complex> values;
  int n() const { return static_cast<int>(values.size()) + 3; }
};

/// Throws InvalidLambda unless every coordinate avoids 0, 1, ∞ and the others
/// by more than `tol` chordally.
void validate_lambda(const LambdaTuple& lambda, double tol = kDefaultTolerance);
/// (0, 1, ∞, λ¹, …).
std::vector<RiemannPoint> marked_points(const LambdaTuple& lambda);
/// The unordered set [λ].
PointSet configuration(const LambdaTuple& lambda, double tol = kDefaultTolerance);
/// Largest componentwise chordal distance.
double lambda_distance(const LambdaTuple& a, const LambdaTuple& b);

/// Sends z_{σ⁻¹(1)}, z_{σ⁻¹(2)}, z_{σ⁻¹(3)} to 0, 1, ∞.
MobiusMap f_sigma(const LambdaTuple& lambda, const Permutation& sigma);
/// g_σ(λ)_k = f_σ(z_{σ⁻¹(k+3)}).
LambdaTuple g_sigma_definitional(const LambdaTuple& lambda, const Permutation& sigma);
/// Coset formulas: the closed form for τ after h∘(coordinate permutation) for v.
LambdaTuple g_sigma_closed_form(const LambdaTuple& lambda, const Permutation& sigma);
/// Evaluates both paths; throws ClosedFormMismatch if they differ by more than
/// 10·tol.
LambdaTuple g_sigma(const LambdaTuple& lambda, const Permutation& sigma,
                    double tol = kDefaultTolerance);

/// Random λ ∈ K_n with coordinates well separated.
LambdaTuple random_lambda(int n, std::mt19937_64& rng);

struct GroupLawReport {
  int n = 0;
  int trials = 0;
  double max_deviation = 0.0;
  bool group_law_pass = false;
  int faithfulness_trials = 0;
  int faithfulness_failures = 0;
  bool pass = false;
};
/// For random (σ, π, λ): compares g_π(g_σ(λ)) with g_{π·σ}(λ), and at n ≥ 5
/// checks that g_σ moves λ for σ ≠ e.
GroupLawReport verify_group_law(int n, int trials, std::uint64_t seed,
                                double tol = kDefaultTolerance);

/// Largest disagreement between the two g_σ paths over random (σ, λ).
double closed_form_deviation(int n, int trials, std::uint64_t seed);

/// Number of σ ∈ S_n with g_σ(λ) ≠ λ.
int count_moving_permutations(const LambdaTuple& lambda, double tol = kDefaultTolerance);

enum class GLambdaPath { automatic, direct, oracle };
inline constexpr int kDirectEnumerationBound = 8;

struct GLambdaResult {
  std::vector<Permutation> elements;  // sorted, identity first
  bool direct_ran = false;
  bool oracle_ran = false;
  std::optional<StabilizerResult> oracle;
  std::int64_t order() const { return static_cast<std::int64_t>(elements.size()); }
};
/// Direct enumeration of S_n (n ≤ 8) and/or the pullback of the stabilizer of
/// [λ] to permutations of the marked points. `automatic` runs both when n ≤ 8
/// and throws PathDisagreement if they differ.
GLambdaResult stabilizer_G_lambda(const LambdaTuple& lambda,
                                  GLambdaPath path = GLambdaPath::automatic,
                                  double tol = kDefaultTolerance);

struct PhiReport {
  int n = 0;
  std::int64_t g_order = 0;
  std::int64_t a_order = 0;
  std::string a_label;
  bool injective = false;
  bool lands_in_stabilizer = false;
  int pairs_checked = 0;
  int pairs_failed = 0;
  bool pass = false;
};
/// Checks that σ ↦ f^λ_σ is a bijective homomorphism G_λ → A_{[λ]}.
PhiReport phi_check(const LambdaTuple& lambda, double tol = kDefaultTolerance,
                    double map_tol = 1e-7);

/// Named configurations: "d5" (n = 5 or 7, stabilizer D5), "z2" (odd n ≥ 5,
/// stabilizer Z2), "generic" (any n ≥ 4, trivial). Throws InvalidLambda for an
/// unknown name or unsupported n.
LambdaTuple preset_lambda(std::string_view name, int n);

/// Comma-separated complex numbers. Throws ParseError.
LambdaTuple parse_lambda(std::string_view text);

}  // namespace msing
