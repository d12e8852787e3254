#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace legalkg::llm {

class ScoreSheetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kCqCount = 13;
inline constexpr int kMaxScore = 5;
inline constexpr int kMaxTotal = static_cast<int>(kCqCount) * kMaxScore;

// Manual 0-5 answer scores per question for the full-text and sub-part inputs.
struct CqScoreSheet {
  std::vector<std::string> questions;
  std::vector<std::array<int, 2>> scores;  // [fulltext, subpart]
  // "Total" row as written in the source file, kept verbatim for comparison.
  std::optional<std::array<std::string, 2>> stated_totals;

  void validate() const;

  // CSV header `question,fulltext,subpart`, 13 rows, optional trailing Total row.
  static CqScoreSheet parse_csv(std::string_view text);
  static CqScoreSheet load(const std::filesystem::path& path);
};

std::array<int, 2> score_sheet_total(const CqScoreSheet& sheet);
std::string render_total(int total);  // "43/65"

// CSV with the computed totals row.
std::string score_sheet_csv(const CqScoreSheet& sheet);

// Table plus computed totals; when the stated totals differ from the column
// sums, a known-issue note naming both is appended.
std::string score_report(const CqScoreSheet& sheet);

}  // namespace legalkg::llm
