#include <algorithm>
#include <cstdio>
#include <sstream>

#include "tanbound/cli.hpp"
#include "tanbound/core/error.hpp"
#include "tanbound/functions.hpp"

namespace tanbound::cli {

using nlohmann::json;

std::vector<Rational> Grid::points() const {
  std::vector<Rational> p;
  p.reserve(static_cast<std::size_t>(count));
  const Rational step = (end - start) / Rational(count - 1);
  for (int i = 0; i < count; ++i) p.push_back(i == count - 1 ? end : start + step * Rational(i));
  return p;
}

Grid parse_grid(std::string_view text) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos)
    throw Error(ErrorKind::Parse, "grid must be START:END:COUNT");
  Grid g;
  g.start = Rational::parse(std::string(text.substr(0, a)));
  g.end = Rational::parse(std::string(text.substr(a + 1, b - a - 1)));
  const std::string count(text.substr(b + 1));
  std::size_t used = 0;
  try {
    g.count = std::stoi(count, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != count.size()) throw Error(ErrorKind::Parse, "grid count must be an integer");
  if (g.count < 2) throw Error(ErrorKind::Parse, "grid count must be at least 2");
  if (!(g.start < g.end)) throw Error(ErrorKind::Parse, "grid start must be below grid end");
  return g;
}

std::vector<bounds::BoundKind> parse_kinds(std::string_view text) {
  if (text == "all") return {bounds::kAllKinds.begin(), bounds::kAllKinds.end()};
  std::vector<bounds::BoundKind> kinds;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (!item.empty()) {
      const auto k = bounds::parse_bound_kind(item);
      if (!k) throw Error(ErrorKind::Parse, "unknown bound kind '" + std::string(item) + "'");
      if (std::find(kinds.begin(), kinds.end(), *k) == kinds.end()) kinds.push_back(*k);
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (kinds.empty()) throw Error(ErrorKind::Parse, "no bound kinds given");
  return kinds;
}

VerifyReport run_verify(const std::vector<Rational>& points, const std::optional<std::vector<bounds::BoundKind>>& kinds,
                        std::uint64_t seed) {
  VerifyReport report;
  report.summary.seed = seed;
  for (const Rational& x : points) {
    PointRecord rec{x, true, true, {}};
    const Interval xi = enclose(x);
    bool inconclusive = false;
    for (bounds::BoundKind kind : kinds ? *kinds : std::vector<bounds::BoundKind>(bounds::kAllKinds.begin(), bounds::kAllKinds.end())) {
      if (!kinds && !bounds::validity(kind).contains(x)) continue;
      bounds::Separation s{kind, bounds::Verdict::Inconclusive, Interval(), Interval(), Interval()};
      try {
        s = bounds::check_separation(kind, xi);
      } catch (const Error&) {
        // No certified value at this point: recorded as inconclusive.
      }
      ++report.summary.checks;
      const bool ok = s.verdict == bounds::Verdict::Holds;
      if (bounds::side_of(kind) == bounds::Side::Lower)
        rec.lower_sep = rec.lower_sep && ok;
      else
        rec.upper_sep = rec.upper_sep && ok;
      if (s.verdict == bounds::Verdict::Violated) ++report.summary.violations;
      if (s.verdict == bounds::Verdict::Inconclusive) inconclusive = true;
      rec.checks.push_back(s);
    }
    if (inconclusive) ++report.summary.inconclusive;
    report.records.push_back(std::move(rec));
  }
  report.summary.points = report.records.size();
  if (report.summary.violations > 0)
    report.exit_code = kFailure;
  else if (static_cast<double>(report.summary.inconclusive) >
           kMaxInconclusiveRate * static_cast<double>(report.summary.points))
    report.exit_code = kInconclusive;
  return report;
}

namespace {

json interval_json(const Interval& v) { return json::array({v.lo(), v.hi()}); }

Interval interval_from(const json& j) { return Interval(j.at(0).get<double>(), j.at(1).get<double>()); }

bounds::Verdict verdict_from(const std::string& s) {
  for (auto v : {bounds::Verdict::Holds, bounds::Verdict::Violated, bounds::Verdict::Inconclusive})
    if (bounds::to_string(v) == s) return v;
  throw Error(ErrorKind::Parse, "unknown verdict '" + s + "'");
}

std::string interval_text(const Interval& v) { return "[" + format_double(v.lo()) + ", " + format_double(v.hi()) + "]"; }

}  // namespace

json to_json(const VerifyReport& report) {
  json records = json::array();
  for (const auto& r : report.records) {
    json checks = json::array();
    for (const auto& s : r.checks)
      checks.push_back({{"kind", std::string(bounds::to_string(s.kind))},
                        {"verdict", std::string(bounds::to_string(s.verdict))},
                        {"bound", interval_json(s.bound)},
                        {"truth", interval_json(s.truth)},
                        {"gap", interval_json(s.gap)}});
    records.push_back({{"x", r.x.str()}, {"lower_sep", r.lower_sep}, {"upper_sep", r.upper_sep}, {"enclosures", checks}});
  }
  const auto& s = report.summary;
  return {{"records", records},
          {"summary",
           {{"points", s.points},
            {"checks", s.checks},
            {"violations", s.violations},
            {"inconclusive", s.inconclusive},
            {"seed", s.seed}}},
          {"exit_code", report.exit_code}};
}

VerifyReport verify_report_from_json(const json& j) {
  try {
    VerifyReport r;
    for (const auto& rj : j.at("records")) {
      PointRecord rec{Rational::parse(rj.at("x").get<std::string>()), rj.at("lower_sep").get<bool>(),
                      rj.at("upper_sep").get<bool>(), {}};
      for (const auto& cj : rj.at("enclosures")) {
        const auto kind = bounds::parse_bound_kind(cj.at("kind").get<std::string>());
        if (!kind) throw Error(ErrorKind::Parse, "unknown bound kind in report");
        rec.checks.push_back({*kind, verdict_from(cj.at("verdict").get<std::string>()), interval_from(cj.at("bound")),
                              interval_from(cj.at("truth")), interval_from(cj.at("gap"))});
      }
      r.records.push_back(std::move(rec));
    }
    const auto& s = j.at("summary");
    r.summary = {s.at("points").get<std::size_t>(), s.at("checks").get<std::size_t>(),
                 s.at("violations").get<std::size_t>(), s.at("inconclusive").get<std::size_t>(),
                 s.at("seed").get<std::uint64_t>()};
    r.exit_code = j.at("exit_code").get<int>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("verify report: ") + e.what());
  }
}

std::string render_text(const VerifyReport& report) {
  const auto& s = report.summary;
  std::ostringstream os;
  char rate[32];
  std::snprintf(rate, sizeof rate, "%.3f%%",
                s.points ? 100.0 * static_cast<double>(s.inconclusive) / static_cast<double>(s.points) : 0.0);
  os << "points: " << s.points << "  checks: " << s.checks << "  violations: " << s.violations
     << "  inconclusive points: " << s.inconclusive << " (" << rate << ")  seed: " << s.seed << '\n';
  for (const auto& r : report.records)
    for (const auto& c : r.checks) {
      if (c.verdict == bounds::Verdict::Holds) continue;
      os << "  " << bounds::to_string(c.verdict) << "  x=" << r.x.str() << " (" << format_double(r.x.to_double())
         << ")  " << bounds::to_string(c.kind) << "  gap " << interval_text(c.gap) << '\n';
    }
  os << "result: "
     << (report.exit_code == kOk ? "PASS" : report.exit_code == kFailure ? "FAIL (violations)" : "FAIL (inconclusive rate)")
     << '\n';
  return os.str();
}

std::string render_csv(const VerifyReport& report) {
  std::ostringstream os;
  os << "x,kind,verdict,bound_lo,bound_hi,true_lo,true_hi,gap_lo,gap_hi\n";
  for (const auto& r : report.records)
    for (const auto& c : r.checks)
      os << format_double(r.x.to_double()) << ',' << bounds::to_string(c.kind) << ',' << bounds::to_string(c.verdict)
         << ',' << format_double(c.bound.lo()) << ',' << format_double(c.bound.hi()) << ','
         << format_double(c.truth.lo()) << ',' << format_double(c.truth.hi()) << ',' << format_double(c.gap.lo())
         << ',' << format_double(c.gap.hi()) << '\n';
  return os.str();
}

std::string render_text(const Rational& x, const bounds::Enclosure& e, const Interval& truth) {
  std::ostringstream os;
  os << "x = " << x.str() << '\n';
  os << "bounds:   " << format_double(e.lo) << " < tan(x)/x < " << format_double(e.hi) << '\n';
  os << "tan(x)/x: " << interval_text(truth) << '\n';
  for (const auto& w : e.witnesses)
    os << "  " << bounds::to_string(w.side) << ": " << bounds::to_string(w.kind) << '\n';
  return os.str();
}

}  // namespace tanbound::cli
