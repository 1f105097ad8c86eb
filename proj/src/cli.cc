#include "msing/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "msing/classifier.hpp"
#include "msing/kernels.hpp"
#include "msing/moduli.hpp"
#include "msing/serialize.hpp"
#include "msing/stabilizer.hpp"
#include "msing/witness.hpp"

namespace msing {

namespace {

using nlohmann::json;

struct Common {
  bool json_output = false;
  double tol = kDefaultTolerance;
  std::string out_path;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_flag("--json", c.json_output, "Machine-readable output");
  cmd->add_option("--tol", c.tol, "Chordal tolerance, in (0, 1e-3]");
  cmd->add_option("--out", c.out_path, "Write the result to this file instead of stdout");
}

std::optional<std::int64_t> parse_count(const std::string& text) {
  std::int64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return v;
}

// Rounds away representation noise such as cos(π/2) ≈ 6e-17 for display.
std::string display_point(const RiemannPoint& p) {
  if (p.is_infinity()) return "inf";
  Complex v = p.value();
  const double scale = std::max(1.0, std::abs(v));
  if (std::abs(v.real()) < 1e-14 * scale) v.real(0.0);
  if (std::abs(v.imag()) < 1e-14 * scale) v.imag(0.0);
  return format_complex(v);
}

void warn_small(std::int64_t n, std::ostream& err) {
  if (n >= 3 && n <= 4) {
    err << "warning: n = " << n
        << " answers the subset question only; the moduli reading needs n >= 5\n";
  }
}

// ---------------------------------------------------------------- classify

int cmd_classify(const std::string& n_text, const Common& c, std::ostream& out, std::ostream& err) {
  const auto n = parse_count(n_text);
  if (!n || *n < 1) {
    err << "error: n must be a positive integer, got '" << n_text << "'\n";
    return kExitUsage;
  }
  warn_small(*n, err);
  const auto entries = classify(*n);
  if (c.json_output) {
    out << json(entries).dump(2) << "\n";
  } else {
    out << format_listing(entries);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- witness

int cmd_witness(const std::string& n_text, const std::string& entry_text, int retries,
                const Common& c, std::ostream& out, std::ostream& err) {
  const auto n = parse_count(n_text);
  if (!n || *n < 1) {
    err << "error: n must be a positive integer, got '" << n_text << "'\n";
    return kExitUsage;
  }
  ClassificationEntry entry;
  try {
    entry = parse_entry(entry_text);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  warn_small(*n, err);
  try {
    const WitnessResult w = witness(*n, entry, {c.tol, retries});
    if (c.json_output) {
      out << json(w).dump(2) << "\n";
      return kExitOk;
    }
    out << "# " << format_entry(w.entry) << "\n";
    if (w.verified) {
      out << "# verified: " << format_entry(w.verified->entry()) << ", order "
          << w.verified->order() << "\n";
    } else {
      out << "# not certified: the stabilizer is infinite\n";
    }
    for (const auto& p : w.points) out << display_point(p) << "\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::EntryNotInClassification) return kExitNotListed;
    if (e.code() == ErrorCode::WitnessSearchExhausted) return kExitExhausted;
    return kExitFailure;
  }
}

// ---------------------------------------------------------------- verify

PointSet random_set(std::int64_t n, std::mt19937_64& rng, double tol) {
  std::normal_distribution<double> gauss;
  while (true) {
    std::vector<RiemannPoint> pts;
    for (std::int64_t i = 0; i < n; ++i) {
      pts.push_back(polyhedra::project({gauss(rng), gauss(rng), gauss(rng)}));
    }
    try {
      PointSet s(std::move(pts), tol);
      if (s.min_separation() > 1e-3) return s;
    } catch (const Error&) {
    }
  }
}

std::vector<std::vector<RiemannPoint>> structured_pools(double tol) {
  std::vector<std::vector<RiemannPoint>> pools;
  auto merge = [&](std::initializer_list<PointSet> parts) {
    std::vector<RiemannPoint> pool;
    for (const auto& s : parts) pool.insert(pool.end(), s.begin(), s.end());
    pools.push_back(std::move(pool));
  };
  merge({polyhedral_orbit(GroupKind::S4, OrbitTag::V6, tol),
         polyhedral_orbit(GroupKind::S4, OrbitTag::V8, tol),
         polyhedral_orbit(GroupKind::S4, OrbitTag::V12, tol)});
  merge({polyhedral_orbit(GroupKind::A5, OrbitTag::V12, tol),
         polyhedral_orbit(GroupKind::A5, OrbitTag::V20, tol)});
  std::vector<RiemannPoint> rings{RiemannPoint::finite(0.0), RiemannPoint::infinity()};
  for (int j = 0; j < 6; ++j) {
    const double a = 2.0 * std::numbers::pi * j / 6.0;
    rings.push_back(RiemannPoint::finite(std::polar(1.0, a)));
    rings.push_back(RiemannPoint::finite(std::polar(2.0, a)));
    rings.push_back(RiemannPoint::finite(std::polar(1.0, a + std::numbers::pi / 6.0)));
  }
  pools.push_back(std::move(rings));
  std::vector<RiemannPoint> line{RiemannPoint::finite(0.0), RiemannPoint::infinity(),
                                 RiemannPoint::finite(Complex(0, 1)), RiemannPoint::finite(Complex(0, -1))};
  for (int j = 1; j <= 3; ++j) {
    line.push_back(RiemannPoint::finite(static_cast<double>(j)));
    line.push_back(RiemannPoint::finite(static_cast<double>(-j)));
  }
  pools.push_back(std::move(line));
  return pools;
}

struct SampleReport {
  int samples = 0;
  std::vector<std::string> counterexamples;
};

SampleReport sample_small(std::int64_t n, std::uint64_t seed, double tol) {
  SampleReport r;
  const auto listing = classify(n);
  std::mt19937_64 rng(seed + static_cast<std::uint64_t>(n));
  auto check = [&](const PointSet& s) {
    ++r.samples;
    const ClassificationEntry got = stabilizer(s).entry();
    if (std::find(listing.begin(), listing.end(), got) == listing.end()) {
      std::string pts;
      for (const auto& p : s) pts += " " + display_point(p);
      r.counterexamples.push_back(format_entry(got) + " from" + pts);
    }
  };
  for (int t = 0; t < 200; ++t) check(random_set(n, rng, tol));
  for (auto pool : structured_pools(tol)) {
    for (int t = 0; t < 150; ++t) {
      std::shuffle(pool.begin(), pool.end(), rng);
      check(PointSet(std::vector<RiemannPoint>(pool.begin(), pool.begin() + n), tol));
    }
  }
  return r;
}

int cmd_verify(const std::string& lo_text, const std::string& hi_text, bool exhaustive_small,
               int retries, std::uint64_t seed, const Common& c, std::ostream& out,
               std::ostream& err) {
  const auto lo = parse_count(lo_text), hi = parse_count(hi_text);
  if (!lo || !hi || *lo < 3 || *hi < *lo) {
    err << "error: expected 3 <= n_min <= n_max\n";
    return kExitUsage;
  }
  json rows = json::array();
  int passed = 0, failed = 0;
  std::ostringstream text;
  for (std::int64_t n = *lo; n <= *hi; ++n) {
    for (const auto& entry : classify(n)) {
      std::string verdict = "PASS", detail;
      try {
        const WitnessResult w = witness(n, entry, {c.tol, retries});
        const bool ok = w.verified && w.verified->entry() == entry &&
                        static_cast<std::int64_t>(w.points.size()) == n;
        if (!ok) {
          verdict = "FAIL";
          detail = w.verified ? "oracle: " + format_entry(w.verified->entry()) : "not certified";
        }
      } catch (const Error& e) {
        verdict = "FAIL";
        detail = e.what();
      }
      (verdict == "PASS" ? passed : failed) += 1;
      text << verdict << "  n=" << n << "  " << format_entry(entry);
      if (!detail.empty()) text << "  (" << detail << ")";
      text << "\n";
      rows.push_back({{"n", n}, {"entry", entry}, {"pass", verdict == "PASS"}, {"detail", detail}});
    }
  }

  json samples = json::array();
  int counterexamples = 0;
  if (exhaustive_small) {
    for (std::int64_t n = *lo; n <= std::min<std::int64_t>(*hi, 7); ++n) {
      const SampleReport r = sample_small(n, seed, c.tol);
      counterexamples += static_cast<int>(r.counterexamples.size());
      text << (r.counterexamples.empty() ? "PASS" : "FAIL") << "  n=" << n << "  sampled "
           << r.samples << " configurations, " << r.counterexamples.size()
           << " outside the classification\n";
      for (const auto& ce : r.counterexamples) text << "    " << ce << "\n";
      samples.push_back({{"n", n}, {"samples", r.samples}, {"counterexamples", r.counterexamples}});
    }
  }
  const bool ok = failed == 0 && counterexamples == 0;
  if (c.json_output) {
    out << json{{"entries", rows}, {"passed", passed}, {"failed", failed},
                {"sampling", samples}, {"pass", ok}}.dump(2)
        << "\n";
  } else {
    out << text.str() << "summary: " << passed << " passed, " << failed << " failed";
    if (exhaustive_small) out << ", " << counterexamples << " counterexamples";
    out << "\n";
  }
  return ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------- moduli

struct ModuliArgs {
  bool group_law = false;
  bool phi = false;
  int trials = 200;
  std::uint64_t seed = 0;
  std::string preset;
  std::string lambda;
};

std::string describe_group(std::int64_t order, const std::string& label) {
  return order == 1 ? "trivial" : label + " (order " + std::to_string(order) + ")";
}

int cmd_moduli(const std::string& n_text, const ModuliArgs& a, const Common& c, std::ostream& out,
               std::ostream& err) {
  const auto n = parse_count(n_text);
  if (!n || *n < 4 || *n > 64) {
    err << "error: moduli needs 4 <= n <= 64, got '" << n_text << "'\n";
    return kExitUsage;
  }
  const bool run_law = a.group_law || !a.phi;
  const bool run_phi = a.phi || !a.group_law;

  std::vector<std::pair<std::string, LambdaTuple>> lambdas;
  try {
    if (!a.lambda.empty()) {
      LambdaTuple l = parse_lambda(a.lambda);
      if (l.n() != *n) {
        err << "error: --lambda has " << l.values.size() << " coordinates, n = " << *n
            << " needs " << *n - 3 << "\n";
        return kExitUsage;
      }
      validate_lambda(l, c.tol);
      lambdas.emplace_back("lambda", std::move(l));
    }
    if (!a.preset.empty()) {
      lambdas.emplace_back(a.preset, preset_lambda(a.preset, static_cast<int>(*n)));
    }
    if (lambdas.empty() && run_phi) {
      for (const char* name : {"d5", "z2", "generic"}) {
        try {
          lambdas.emplace_back(name, preset_lambda(name, static_cast<int>(*n)));
        } catch (const Error&) {
        }
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  bool ok = true;
  json report = json::object();
  std::ostringstream text;
  try {
    if (run_law) {
      const GroupLawReport r = verify_group_law(static_cast<int>(*n), a.trials, a.seed, c.tol);
      ok = ok && r.pass;
      report["group_law"] = r;
      text << (r.pass ? "PASS" : "FAIL") << "  group law  n=" << r.n << "  trials=" << r.trials
           << "  max deviation " << r.max_deviation;
      if (r.faithfulness_trials > 0) {
        text << "  faithful " << r.faithfulness_trials - r.faithfulness_failures << "/"
             << r.faithfulness_trials;
      }
      text << "\n";
    }
    if (run_phi) {
      report["phi"] = json::array();
      for (const auto& [name, l] : lambdas) {
        const PhiReport r = phi_check(l, c.tol);
        ok = ok && r.pass;
        json j = r;
        j["name"] = name;
        j["lambda"] = l;
        report["phi"].push_back(j);
        text << (r.pass ? "PASS" : "FAIL") << "  phi " << name << "  n=" << r.n
             << "  G_lambda " << describe_group(r.g_order, r.a_label) << ", A "
             << describe_group(r.a_order, r.a_label) << "  homomorphism pairs "
             << r.pairs_checked - r.pairs_failed << "/" << r.pairs_checked << "\n";
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  report["pass"] = ok;
  if (c.json_output) {
    out << report.dump(2) << "\n";
  } else {
    out << text.str();
  }
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite Möbius stabilizers of point sets on the Riemann sphere", "msing"};
  app.require_subcommand(1);
  std::string kernel_choice = "auto";
  app.add_option("--kernels", kernel_choice, "Geometry kernels: auto, scalar or avx2");

  Common c;
  std::string n_text, n_max_text, entry_text;
  int retries = 16;
  bool exhaustive_small = false;
  ModuliArgs m;

  auto* classify_cmd = app.add_subcommand("classify", "List every possible stabilizer of an n-point set");
  classify_cmd->add_option("n", n_text, "Cardinality")->required();
  add_common(classify_cmd, c);

  auto* witness_cmd = app.add_subcommand("witness", "Build and certify a point set for one entry");
  witness_cmd->add_option("n", n_text, "Cardinality")->required();
  witness_cmd->add_option("--entry", entry_text, "Entry such as \"D_5, (0, 1, 0)\"")->required();
  witness_cmd->add_option("--retries", retries, "Construction attempts")->check(CLI::PositiveNumber);
  add_common(witness_cmd, c);

  auto* verify_cmd = app.add_subcommand("verify", "Round-trip every entry for n in a range");
  verify_cmd->add_option("n_min", n_text, "Smallest n")->required();
  verify_cmd->add_option("n_max", n_max_text, "Largest n (defaults to n_min)");
  verify_cmd->add_flag("--exhaustive-small", exhaustive_small,
                       "Also sample configurations with n <= 7 and look for results outside the listing");
  verify_cmd->add_option("--retries", retries, "Construction attempts")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", m.seed, "Sampling seed");
  add_common(verify_cmd, c);

  auto* moduli_cmd = app.add_subcommand("moduli", "Check the S_n action on normalized configurations");
  moduli_cmd->add_option("n", n_text, "Number of marked points")->required();
  moduli_cmd->add_flag("--group-law", m.group_law, "Check g_pi . g_sigma = g_(pi sigma)");
  moduli_cmd->add_flag("--phi", m.phi, "Check G_lambda -> A_[lambda] is an isomorphism");
  moduli_cmd->add_option("--trials", m.trials, "Random trials for the group law")->check(CLI::PositiveNumber);
  moduli_cmd->add_option("--seed", m.seed, "Random seed");
  moduli_cmd->add_option("--preset", m.preset, "d5, z2 or generic");
  moduli_cmd->add_option("--lambda", m.lambda, "Comma-separated coordinates, e.g. \"2+1i,5\"");
  add_common(moduli_cmd, c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (!kernels::select(kernel_choice)) {
    err << "error: kernels '" << kernel_choice << "' unavailable on this machine\n";
    return kExitUsage;
  }
  if (!(c.tol > 0.0 && c.tol <= 1e-3)) {
    err << "error: --tol must lie in (0, 1e-3]\n";
    return kExitUsage;
  }

  std::ofstream file;
  if (!c.out_path.empty()) {
    file.open(c.out_path);
    if (!file) {
      err << "error: cannot open " << c.out_path << "\n";
      return kExitFailure;
    }
  }
  std::ostream& sink = c.out_path.empty() ? out : file;

  try {
    if (classify_cmd->parsed()) return cmd_classify(n_text, c, sink, err);
    if (witness_cmd->parsed()) return cmd_witness(n_text, entry_text, retries, c, sink, err);
    if (verify_cmd->parsed()) {
      return cmd_verify(n_text, n_max_text.empty() ? n_text : n_max_text, exhaustive_small,
                        retries, m.seed, c, sink, err);
    }
    return cmd_moduli(n_text, m, c, sink, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return run_cli(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace msing
