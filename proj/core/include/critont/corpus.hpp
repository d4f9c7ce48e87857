#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace critont {

// One registry record. The corpus file stores one record per line as
// tab-separated key=value fields (keys: trial_id, title, study_type,
// eligibility_text) with \n, \t and \\ escapes inside values. trial_id is
// required and must be unique within a corpus; the other fields default to
// empty. Blank lines and lines starting with '#' are skipped.
struct TrialRecord {
    std::string trial_id;
    std::string title;
    std::string study_type;
    std::string eligibility_text;

    bool operator==(const TrialRecord&) const = default;
};

enum class Polarity { inclusion, exclusion, unknown };

std::string_view polarity_name(Polarity p);

// One segmented eligibility criterion. line_index is contiguous from 0
// within a trial; text is non-empty after trimming.
struct CriterionLine {
    std::string trial_id;
    std::size_t line_index = 0;
    Polarity polarity = Polarity::unknown;
    std::string text;

    bool operator==(const CriterionLine&) const = default;
};

// A criterion before it is attached to a trial.
struct CriterionFragment {
    Polarity polarity = Polarity::unknown;
    std::string text;

    bool operator==(const CriterionFragment&) const = default;
};

// Reads records in input order. Throws Error{parse} with the 1-based line
// number on malformed lines and Error{duplicate_key} on repeated trial_id.
std::vector<TrialRecord> parse_corpus(std::istream& in);
std::vector<TrialRecord> load_corpus(const std::filesystem::path& path);

// Renders one record as a corpus line (inverse of parse_corpus for that line).
std::string format_record(const TrialRecord& record);

// Deterministic segmentation of free-text eligibility criteria:
//   1. a line whose content (after leading whitespace, case-insensitively)
//      starts with "inclusion criteria" / "exclusion criteria" switches the
//      polarity of subsequent items and is not itself emitted; items before
//      any header are Polarity::unknown
//   2. a line starting with a bullet ('-', '*', U+2022) or an ordinal
//      ("12." / "3)") begins a new item with the marker stripped; any other
//      non-blank line continues the current item (joined with one space) or
//      begins one if none is open
//   3. blank lines terminate the current item
// Items that are empty after trimming are dropped.
std::vector<CriterionFragment> segment_criteria(std::string_view eligibility_text);

// segment_criteria plus trial_id / line_index assignment.
std::vector<CriterionLine> segment_trial(const TrialRecord& record);
std::vector<CriterionLine> segment_corpus(const std::vector<TrialRecord>& records);

} // namespace critont
