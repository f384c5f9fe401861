#include "tanbound/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "tanbound/core/error.hpp"
#include "tanbound/functions.hpp"
#include "tanbound/oracle.hpp"
#include "tanbound/prover.hpp"

namespace tanbound::cli {

using nlohmann::json;

namespace {

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::PoleProximity: return kPole;
    case ErrorKind::Parse:
    case ErrorKind::OutsideValidity:
    case ErrorKind::ContainsZero: return kUsage;
    default: return kFailure;
  }
}

Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw Error(ErrorKind::Parse, "format must be text, json or csv");
}

const std::string kDomain = "(0, π/2) ≈ (0, 1.5707963267948966)";

// Every grid point must lie in (0, pi/2).
void check_grid_domain(const Grid& g) {
  const Rational pole = prover::pi_half_lower();
  if (!(g.start > Rational(0)) || !(g.end < pole))
    throw Error(ErrorKind::OutsideValidity, "grid must lie inside " + kDomain);
}

struct Output {
  std::ostream& out;
  std::optional<std::string> path;

  void write(const std::string& text) const {
    if (!path) {
      out << text;
      return;
    }
    std::ofstream f(*path);
    if (!f) throw Error(ErrorKind::Parse, "cannot write " + *path);
    f << text;
  }
};

struct Common {
  std::string format = "text";
  std::optional<std::string> out;
  std::uint64_t seed = 0;
};

// ---- eval ---------------------------------------------------------------

struct EvalArgs {
  std::string x;
};

int cmd_eval(const EvalArgs& a, const Common& c, std::ostream& out) {
  const Format fmt = parse_format(c.format);
  const Rational x = Rational::parse(a.x);
  if (!(x > Rational(0)) || !(x < prover::pi_half_lower()))
    throw Error(ErrorKind::OutsideValidity, "x = " + a.x + " is outside the valid range " + kDomain);
  const Interval xi = enclose(x);
  const bounds::Enclosure e = bounds::best_enclosure(xi);
  const Output o{out, c.out};
  if (fmt == Format::Json)
    o.write(bounds::to_json(e).dump(2) + "\n");
  else
    o.write(render_text(x, e, functions::tanx_over_x_enclosure(xi)));
  return kOk;
}

// ---- verify -------------------------------------------------------------

struct VerifyArgs {
  std::string grid{kDefaultGrid};
  std::optional<std::string> kinds;
  int random = 0;
};

std::vector<Rational> random_points(const Grid& g, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Rational> p;
  const Rational scale = Rational(mpz_class(1), mpz_class(1) << 53);
  for (int i = 0; i < n; ++i) {
    const Rational u = Rational(static_cast<long>(rng() >> 11)) * scale;
    p.push_back(g.start + (g.end - g.start) * u);
  }
  return p;
}

int cmd_verify(const VerifyArgs& a, const Common& c, std::ostream& out) {
  const Format fmt = parse_format(c.format);
  const Grid g = parse_grid(a.grid);
  check_grid_domain(g);
  if (a.random < 0) throw Error(ErrorKind::Parse, "--random must be non-negative");
  std::vector<Rational> points = g.points();
  const auto extra = random_points(g, a.random, c.seed);
  points.insert(points.end(), extra.begin(), extra.end());
  std::sort(points.begin(), points.end());

  std::optional<std::vector<bounds::BoundKind>> kinds;
  if (a.kinds && *a.kinds != "all") {
    kinds = parse_kinds(*a.kinds);
    for (bounds::BoundKind k : *kinds) {
      const auto& v = bounds::validity(k);
      if (!v.contains(g.start) || !v.contains(g.end))
        throw Error(ErrorKind::OutsideValidity, std::string(bounds::to_string(k)) + " is only valid on " + v.str() +
                                                    ", grid is [" + g.start.str() + ", " + g.end.str() + "]");
    }
  }
  const VerifyReport report = run_verify(points, kinds, c.seed);
  const Output o{out, c.out};
  switch (fmt) {
    case Format::Json: o.write(to_json(report).dump(2) + "\n"); break;
    case Format::Csv: o.write(render_csv(report)); break;
    case Format::Text: o.write(render_text(report)); break;
  }
  return report.exit_code;
}

// ---- prove --------------------------------------------------------------

struct ProveArgs {
  std::string dir = ".";
  std::vector<std::string> override_spec;
  std::optional<std::string> poly_file;
  std::optional<std::string> interval;
  std::string direction = "positive";
};

std::string polynomial_name(prover::CaseName n) {
  switch (n) {
    case prover::CaseName::F: return "u";
    case prover::CaseName::G: return "v";
    case prover::CaseName::H: return "w";
  }
  return "?";
}

std::string step_text(const prover::CascadeStep& s, const std::string& var) {
  std::ostringstream os;
  os << "    order " << s.derivative_order << "  " << prover::to_string(s.claim) << "  at " << var << " = "
     << s.evaluation_point.str() << "  [" << format_double(s.value_enclosure.lo()) << ", "
     << format_double(s.value_enclosure.hi()) << "]\n";
  return os.str();
}

std::string cascade_text(const prover::CascadeCertificate& c) {
  std::ostringstream os;
  os << "  cascade on (" << c.lo.str() << ", " << c.hi.str() << ")" << (c.extends_right ? ", extends right" : "")
     << ": " << prover::to_string(c.conclusion) << (c.note.empty() ? "" : " (" + c.note + ")") << '\n';
  for (const auto& s : c.steps) os << step_text(s, c.variable);
  return os.str();
}

std::string subdivision_text(const prover::SubdivisionCertificate& s) {
  std::ostringstream os;
  os << "  subdivision: " << prover::to_string(s.conclusion) << ", " << s.cells.size() << " cells";
  if (s.offending_cell)
    os << "; " << s.note << " on [" << s.offending_cell->lo.str() << ", " << s.offending_cell->hi.str() << "] value ["
       << format_double(s.offending_cell->value_enclosure.lo()) << ", "
       << format_double(s.offending_cell->value_enclosure.hi()) << "]";
  os << '\n';
  return os.str();
}

prover::Direction parse_direction(const std::string& s) {
  if (s == "positive") return prover::Direction::Positive;
  if (s == "negative") return prover::Direction::Negative;
  throw Error(ErrorKind::Parse, "direction must be positive or negative");
}

int cmd_prove(const ProveArgs& a, const Common& c, std::ostream& out) {
  const Format fmt = parse_format(c.format);
  std::filesystem::create_directories(a.dir);
  std::ostringstream text;
  json cases = json::array();
  int code = kOk;

  for (prover::CaseName n : {prover::CaseName::F, prover::CaseName::G, prover::CaseName::H}) {
    const std::string name(prover::to_string(n));
    const auto fact = prover::verify_factorization(prover::named_case(n));
    const auto proof = prover::prove_case(n);
    const auto expected = n == prover::CaseName::H ? prover::Conclusion::Negative : prover::Conclusion::Positive;
    const std::string path = (std::filesystem::path(a.dir) / ("cert_" + name + ".json")).string();
    {
      std::ofstream f(path);
      if (!f) throw Error(ErrorKind::Parse, "cannot write " + path);
      f << prover::to_json(prover::Certificate(proof.cascade)).dump(2) << '\n';
    }
    std::ifstream back(path);
    const bool check = prover::check_certificate(prover::certificate_from_json(json::parse(back)));
    const bool covered = n != prover::CaseName::H || prover::thm2_interval_covered();
    const bool ok = fact.exact_match && proof.cascade.conclusion == expected &&
                    proof.subdivision.conclusion == expected && check && covered &&
                    (n == prover::CaseName::H || proof.cascade.extends_right);
    if (!ok) code = kFailure;

    text << "case " << name << " (" << polynomial_name(n) << "): factorization "
         << (fact.exact_match ? "exact-match" : "MISMATCH") << '\n';
    if (!fact.exact_match) text << to_string(fact.residual) << '\n';
    text << cascade_text(proof.cascade) << subdivision_text(proof.subdivision);
    if (n == prover::CaseName::H)
      text << "  (1371/1000)^2 < 1881/1000: " << (covered ? "yes" : "NO") << '\n';
    text << "  certificate " << path << ": " << (check ? "valid" : "INVALID") << '\n';
    text << "  " << (ok ? "ok" : "FAILED: case " + name) << '\n';
    cases.push_back({{"case", name},
                     {"polynomial", polynomial_name(n)},
                     {"factorization", fact.exact_match ? "exact-match" : "mismatch"},
                     {"cascade", prover::to_json(prover::Certificate(proof.cascade))},
                     {"subdivision",
                      {{"conclusion", std::string(prover::to_string(proof.subdivision.conclusion))},
                       {"cells", proof.subdivision.cells.size()}}},
                     {"certificate_file", path},
                     {"certificate_valid", check},
                     {"ok", ok}});
  }

  json overrides = json::array();
  if (!a.override_spec.empty()) {
    if (a.override_spec.size() < 2 || a.override_spec.size() > 3)
      throw Error(ErrorKind::Parse, "--interval-override takes NAME LO [HI]");
    const std::string& pname = a.override_spec[0];
    const PiPoly* p = nullptr;
    Rational hi = prover::pi_half_lower();
    prover::Direction dir = prover::Direction::Positive;
    if (pname == "u") {
      p = &prover::poly_u();
    } else if (pname == "v") {
      p = &prover::poly_v();
    } else if (pname == "w") {
      p = &prover::poly_w();
      hi = Rational::parse("1.881");
      dir = prover::Direction::Negative;
    } else {
      throw Error(ErrorKind::Parse, "--interval-override polynomial must be u, v or w");
    }
    const Rational lo = Rational::parse(a.override_spec[1]);
    if (a.override_spec.size() == 3) hi = Rational::parse(a.override_spec[2]);
    if (!(lo < hi)) throw Error(ErrorKind::Parse, "override interval must have lo < hi");
    const auto cas = prover::cascade_prove(*p, lo, hi, dir);
    const auto sub = prover::subdivision_prove(*p, lo, hi, dir);
    text << "override " << pname << " on (" << lo.str() << ", " << hi.str() << "), exploratory:\n"
         << cascade_text(cas) << subdivision_text(sub);
    overrides.push_back({{"polynomial", pname},
                         {"interval", json::array({lo.str(), hi.str()})},
                         {"cascade", std::string(prover::to_string(cas.conclusion))},
                         {"subdivision", std::string(prover::to_string(sub.conclusion))},
                         {"subdivision_note", sub.note}});
  }

  if (a.poly_file) {
    if (!a.interval) throw Error(ErrorKind::Parse, "--poly needs --interval LO:HI");
    std::ifstream f(*a.poly_file);
    if (!f) throw Error(ErrorKind::Parse, "cannot read " + *a.poly_file);
    json pj;
    try {
      pj = json::parse(f);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::Parse, std::string("polynomial file: ") + e.what());
    }
    const PiPoly p = prover::poly_from_json(pj.contains("polynomial") ? pj.at("polynomial") : pj);
    const auto colon = a.interval->find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::Parse, "--interval must be LO:HI");
    const Rational lo = Rational::parse(a.interval->substr(0, colon));
    const Rational hi = Rational::parse(a.interval->substr(colon + 1));
    if (!(lo < hi)) throw Error(ErrorKind::Parse, "--interval must have LO < HI");
    const auto dir = parse_direction(a.direction);
    const auto cas = prover::cascade_prove(p, lo, hi, dir);
    const auto sub = prover::subdivision_prove(p, lo, hi, dir);
    const std::string path = (std::filesystem::path(a.dir) / "cert_user.json").string();
    std::ofstream cf(path);
    cf << prover::to_json(prover::Certificate(cas)).dump(2) << '\n';
    text << "user polynomial on (" << lo.str() << ", " << hi.str() << "):\n"
         << cascade_text(cas) << subdivision_text(sub) << "  certificate " << path << '\n';
    overrides.push_back({{"polynomial", *a.poly_file},
                         {"interval", json::array({lo.str(), hi.str()})},
                         {"cascade", std::string(prover::to_string(cas.conclusion))},
                         {"subdivision", std::string(prover::to_string(sub.conclusion))},
                         {"certificate_file", path}});
  }

  text << "result: " << (code == kOk ? "PASS" : "FAIL") << '\n';
  const Output o{out, c.out};
  if (fmt == Format::Json)
    o.write(json{{"cases", cases}, {"exploratory", overrides}, {"exit_code", code}}.dump(2) + "\n");
  else
    o.write(text.str());
  return code;
}

// ---- tightness ----------------------------------------------------------

struct TightnessArgs {
  std::string grid{kDefaultGrid};
  std::string kinds = "all";
};

int cmd_tightness(const TightnessArgs& a, Common c, std::ostream& out) {
  if (c.format == "text") c.format = "csv";
  const Format fmt = parse_format(c.format);
  const Grid g = parse_grid(a.grid);
  check_grid_domain(g);
  const auto kinds = parse_kinds(a.kinds);
  const auto points = g.points();
  const auto rows = bounds::tightness_profile(points, kinds);
  const Output o{out, c.out};
  if (fmt == Format::Json)
    o.write(bounds::to_json(rows).dump(2) + "\n");
  else
    o.write(bounds::to_csv(rows));
  const bool all_failed = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return !r.error.empty(); });
  return all_failed ? kFailure : kOk;
}

// ---- taylor -------------------------------------------------------------

struct TaylorArgs {
  int order = 4;
  std::string at = "both";
};

// Code points, not bytes: the exact strings contain π, ² and −.
std::size_t display_width(const std::string& utf8) {
  std::size_t n = 0;
  for (unsigned char ch : utf8)
    if ((ch & 0xC0) != 0x80) ++n;
  return n;
}

int oracle_digits() {
  const char* env = std::getenv("TANBOUND_PI_DIGITS");
  if (!env) return oracle::kDefaultDigits;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 50 || v > 1000)
    throw Error(ErrorKind::Parse, "TANBOUND_PI_DIGITS must be an integer in [50, 1000]");
  return static_cast<int>(v);
}

int cmd_taylor(const TaylorArgs& a, const Common& c, std::ostream& out) {
  const Format fmt = parse_format(c.format);
  if (a.order < 0 || a.order > oracle::kMaxExpansionOrder) throw Error(ErrorKind::Parse, "--order must lie in [0, 12]");
  if (a.at != "both" && a.at != "zero" && a.at != "pi-half") throw Error(ErrorKind::Parse, "--at must be zero, pi-half or both");
  const int digits = oracle_digits();
  bool all_match = true;
  std::ostringstream text;
  json sections = json::array();

  auto section = [&](const std::string& title, const oracle::PowerSeries& s, const std::vector<PiLaurent>& expected) {
    text << title << "  (oracle precision " << digits << " digits)\n";
    json rows = json::array();
    std::size_t width = 0;
    for (int k = 0; k <= s.order(); ++k) width = std::max(width, display_width(s.coeff(k).str()));
    for (int k = 0; k <= s.order(); ++k) {
      const PiLaurent& v = s.coeff(k);
      const std::string exact = v.str();
      const std::string dec = oracle::reference_value(v, 20, digits).str();
      std::string flag = "-";
      if (k < static_cast<int>(expected.size())) {
        const bool m = v == expected[static_cast<std::size_t>(k)];
        all_match = all_match && m;
        flag = m ? "match" : "MISMATCH";
      }
      text << "  " << s.variable() << "^" << k << ": " << exact << std::string(width + 2 - display_width(exact), ' ') << dec
           << "  " << flag << '\n';
      rows.push_back({{"power", k}, {"exact", exact}, {"decimal", dec}, {"status", flag}});
    }
    sections.push_back({{"expansion", title}, {"variable", s.variable()}, {"coefficients", rows}});
  };

  if (a.at != "zero") {
    std::vector<PiLaurent> expected{PiLaurent(8)};
    for (int k = 1; k <= 3; ++k) expected.push_back(bounds::shift_coefficient(k));
    section("(π² − 4x²)·tan(x)/x at x = π/2, y = π/2 − x", oracle::expansion_at_pi_half(a.order), expected);
  }
  if (a.at != "pi-half") {
    const PiPoly& n = bounds::thm2_numerator();
    std::vector<PiLaurent> expected;
    for (int k = 0; k <= 4; ++k) expected.push_back(n.coeff(k));
    section("(π² − 4x²)·tan(x)/x at x = 0", oracle::expansion_at_zero(a.order), expected);
  }
  text << "constants: " << (all_match ? "all matched" : "MISMATCH") << '\n';
  const Output o{out, c.out};
  if (fmt == Format::Json)
    o.write(json{{"sections", sections}, {"all_matched", all_match}, {"oracle_digits", digits}}.dump(2) + "\n");
  else
    o.write(text.str());
  return all_match ? kOk : kFailure;
}

// ---- check-cert ---------------------------------------------------------

int cmd_check_cert(const std::string& file, std::ostream& out) {
  std::ifstream f(file);
  if (!f) throw Error(ErrorKind::Parse, "cannot read " + file);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("certificate file: ") + e.what());
  }
  const auto cert = prover::certificate_from_json(j);
  const std::string problem = prover::certificate_problem(cert);
  const auto conclusion = std::visit([](const auto& c) { return c.conclusion; }, cert);
  if (problem.empty()) {
    out << file << ": valid (" << prover::to_string(conclusion) << ")\n";
    return kOk;
  }
  out << file << ": INVALID: " << problem << '\n';
  return kFailure;
}

void add_common(CLI::App* sub, Common& c, bool with_seed) {
  sub->add_option("--format", c.format, "Output format: text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  sub->add_option("--out", c.out, "Write output to PATH instead of stdout");
  if (with_seed) sub->add_option("--seed", c.seed, "Seed for randomized sampling");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified bounds for tan(x)/x near 0 and pi/2", "tanbound"};
  app.require_subcommand(1);

  Common common;
  EvalArgs eval_args;
  VerifyArgs verify_args;
  ProveArgs prove_args;
  TightnessArgs tight_args;
  TaylorArgs taylor_args;
  std::string cert_file;

  auto* eval = app.add_subcommand("eval", "Best certified enclosure of tan(x)/x at x");
  eval->add_option("--x", eval_args.x, "Point in (0, pi/2), decimal or n/d")->required();
  add_common(eval, common, false);

  auto* verify = app.add_subcommand("verify", "Check strict separation of the bounds on a grid");
  verify->add_option("--grid", verify_args.grid, "START:END:COUNT")->capture_default_str();
  verify->add_option("--kinds", verify_args.kinds, "Comma-separated bound kinds, or all");
  verify->add_option("--random", verify_args.random, "Extra seeded random points");
  add_common(verify, common, true);

  auto* prove = app.add_subcommand("prove", "Replay the polynomial proofs and write certificates");
  prove->add_option("--dir", prove_args.dir, "Directory for certificate files")->capture_default_str();
  prove->add_option("--interval-override", prove_args.override_spec, "NAME LO [HI]: exploratory run on another interval")
      ->expected(2, 3);
  prove->add_option("--poly", prove_args.poly_file, "JSON polynomial to prove");
  prove->add_option("--interval", prove_args.interval, "LO:HI for --poly");
  prove->add_option("--direction", prove_args.direction, "positive or negative, for --poly");
  add_common(prove, common, false);

  auto* tight = app.add_subcommand("tightness", "Gap between each bound and tan(x)/x on a grid");
  tight->add_option("--grid", tight_args.grid, "START:END:COUNT")->capture_default_str();
  tight->add_option("--kinds", tight_args.kinds, "Comma-separated bound kinds, or all")->capture_default_str();
  add_common(tight, common, false);

  auto* taylor = app.add_subcommand("taylor", "Exact series of (pi^2 - 4x^2) tan(x)/x at 0 and pi/2");
  taylor->add_option("--order", taylor_args.order, "Highest power, at most 12")->capture_default_str();
  taylor->add_option("--at", taylor_args.at, "zero, pi-half or both")->capture_default_str();
  add_common(taylor, common, false);

  auto* check = app.add_subcommand("check-cert", "Re-check a certificate file");
  check->add_option("file", cert_file, "Certificate JSON")->required();

  std::vector<const char*> argv{"tanbound"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "tanbound: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*eval) return cmd_eval(eval_args, common, out);
    if (*verify) return cmd_verify(verify_args, common, out);
    if (*prove) return cmd_prove(prove_args, common, out);
    if (*tight) return cmd_tightness(tight_args, common, out);
    if (*taylor) return cmd_taylor(taylor_args, common, out);
    if (*check) return cmd_check_cert(cert_file, out);
  } catch (const Error& e) {
    err << "tanbound: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_for(e);
  } catch (const std::invalid_argument& e) {
    err << "tanbound: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "tanbound: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace tanbound::cli
