#include "legalkg/llm/scores.hpp"

#include <charconv>
#include <cstdio>

#include "legalkg/ingestion/corpus.hpp"

namespace legalkg::llm {

namespace {

int parse_score(const std::string& cell, std::size_t row) {
  int v = 0;
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ScoreSheetError("row " + std::to_string(row) + ": score '" + cell + "' is not an integer");
  }
  return v;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

void CqScoreSheet::validate() const {
  if (questions.size() != kCqCount || scores.size() != kCqCount) {
    throw ScoreSheetError("score sheet must have " + std::to_string(kCqCount) + " questions, found " +
                          std::to_string(questions.size()));
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (questions[i].empty()) throw ScoreSheetError("question " + std::to_string(i + 1) + " is empty");
    for (const int s : scores[i]) {
      if (s < 0 || s > kMaxScore) {
        throw ScoreSheetError("score " + std::to_string(s) + " for '" + questions[i] + "' is outside [0," +
                              std::to_string(kMaxScore) + "]");
      }
    }
  }
}

CqScoreSheet CqScoreSheet::parse_csv(std::string_view text) {
  const auto rows = ingestion::parse_csv(text);
  if (rows.empty() || rows[0] != std::vector<std::string>{"question", "fulltext", "subpart"}) {
    throw ScoreSheetError("score sheet header must be 'question,fulltext,subpart'");
  }
  CqScoreSheet sheet;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 3) throw ScoreSheetError("row " + std::to_string(i + 1) + " does not have 3 fields");
    if (r[0] == "Total") {
      if (i + 1 != rows.size()) throw ScoreSheetError("the Total row must come last");
      sheet.stated_totals = std::array<std::string, 2>{r[1], r[2]};
      break;
    }
    sheet.questions.push_back(r[0]);
    sheet.scores.push_back({parse_score(r[1], i + 1), parse_score(r[2], i + 1)});
  }
  sheet.validate();
  return sheet;
}

CqScoreSheet CqScoreSheet::load(const std::filesystem::path& path) { return parse_csv(ingestion::read_file(path)); }

std::array<int, 2> score_sheet_total(const CqScoreSheet& sheet) {
  sheet.validate();
  std::array<int, 2> totals{0, 0};
  for (const auto& row : sheet.scores) {
    totals[0] += row[0];
    totals[1] += row[1];
  }
  return totals;
}

std::string render_total(int total) { return std::to_string(total) + "/" + std::to_string(kMaxTotal); }

std::string score_sheet_csv(const CqScoreSheet& sheet) {
  const auto totals = score_sheet_total(sheet);
  std::string out = "question,fulltext,subpart\n";
  for (std::size_t i = 0; i < sheet.questions.size(); ++i) {
    out += ingestion::csv_escape(sheet.questions[i]) + "," + std::to_string(sheet.scores[i][0]) + "," +
           std::to_string(sheet.scores[i][1]) + "\n";
  }
  out += "Total," + render_total(totals[0]) + "," + render_total(totals[1]) + "\n";
  return out;
}

std::string score_report(const CqScoreSheet& sheet) {
  const auto totals = score_sheet_total(sheet);
  std::size_t width = 8;
  for (const auto& q : sheet.questions) width = std::max(width, q.size());
  width += 2;

  std::string out = pad("Question", width) + "Full-text  Sub-part\n";
  for (std::size_t i = 0; i < sheet.questions.size(); ++i) {
    out += pad(sheet.questions[i], width) + pad(std::to_string(sheet.scores[i][0]), 11) +
           std::to_string(sheet.scores[i][1]) + "\n";
  }
  out += pad("Total", width) + pad(render_total(totals[0]), 11) + render_total(totals[1]) + "\n";

  char pct[64];
  std::snprintf(pct, sizeof pct, "Consistent answers: %.1f%% full-text, %.1f%% sub-part\n",
                100.0 * totals[0] / kMaxTotal, 100.0 * totals[1] / kMaxTotal);
  out += pct;

  if (sheet.stated_totals) {
    const auto& stated = *sheet.stated_totals;
    if (stated[0] != render_total(totals[0]) || stated[1] != render_total(totals[1])) {
      out += "Known issue: the sheet states totals of " + stated[0] + " (full-text) and " + stated[1] +
             " (sub-part), but plain addition of its 13 rows gives " + render_total(totals[0]) + " and " +
             render_total(totals[1]) + ". The totals above are the computed column sums; the stated ones are "
             "reported as given and not used.\n";
    }
  }
  return out;
}

}  // namespace legalkg::llm
