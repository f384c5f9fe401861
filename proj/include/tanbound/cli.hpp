#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tanbound/bounds.hpp"
#include "tanbound/core/rational.hpp"

namespace tanbound::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kPole = 3, kInconclusive = 4 };

enum class Format { Text, Json, Csv };

/// count exact rational points start + i (end - start)/(count - 1).
struct Grid {
  Rational start;
  Rational end;
  int count = 2;

  std::vector<Rational> points() const;
};

/// "START:END:COUNT"; Error(Parse) on malformed input or count < 2 or start >= end.
Grid parse_grid(std::string_view text);
/// Comma-separated BoundKind names, or "all". Error(Parse) on unknown or empty input.
std::vector<bounds::BoundKind> parse_kinds(std::string_view text);

inline constexpr std::string_view kDefaultGrid = "0.374:1.5707:2048";
/// Inconclusive points above this fraction give exit code 4.
inline constexpr double kMaxInconclusiveRate = 0.01;

struct PointRecord {
  Rational x;
  bool lower_sep = true;
  bool upper_sep = true;
  std::vector<bounds::Separation> checks;
};

struct VerifySummary {
  std::size_t points = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::size_t inconclusive = 0;
  std::uint64_t seed = 0;
};

struct VerifyReport {
  std::vector<PointRecord> records;
  VerifySummary summary;
  int exit_code = kOk;
};

/// Separation checks at every point. With explicit kinds every kind is
/// checked everywhere (the caller validates the domain); with kinds unset,
/// each point is checked against the kinds valid there.
VerifyReport run_verify(const std::vector<Rational>& points, const std::optional<std::vector<bounds::BoundKind>>& kinds,
                        std::uint64_t seed);

nlohmann::json to_json(const VerifyReport& report);
VerifyReport verify_report_from_json(const nlohmann::json& j);
std::string render_text(const VerifyReport& report);
std::string render_csv(const VerifyReport& report);

std::string render_text(const Rational& x, const bounds::Enclosure& e, const Interval& truth);

/// Entry point of the tanbound executable.
int run(int argc, char** argv);
/// Same, with explicit streams; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tanbound::cli
