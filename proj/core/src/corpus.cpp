#include "critont/corpus.hpp"

#include "critont/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace critont {

namespace {

std::string unescape_value(std::string_view raw, std::size_t line_no) {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        char c = raw[i];
        if (c != '\\') {
            out.push_back(c);
            continue;
        }
        if (i + 1 >= raw.size())
            raise(ErrorKind::parse, "dangling escape at end of field", line_no);
        char e = raw[++i];
        switch (e) {
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case '\\': out.push_back('\\'); break;
        default:
            raise(ErrorKind::parse, std::string("unknown escape '\\") + e + "'", line_no);
        }
    }
    return out;
}

void escape_value(std::string_view value, std::string& out) {
    for (char c : value) {
        switch (c) {
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\\': out += "\\\\"; break;
        default: out.push_back(c);
        }
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool iequals_prefix(std::string_view text, std::string_view lower_prefix) {
    if (text.size() < lower_prefix.size()) return false;
    for (std::size_t i = 0; i < lower_prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(text[i])) != lower_prefix[i]) return false;
    }
    return true;
}

// Returns the byte length of a leading item marker (bullet or ordinal),
// 0 when the line has none.
std::size_t marker_length(std::string_view line) {
    if (line.empty()) return 0;
    if (line[0] == '-' || line[0] == '*') return 1;
    // U+2022 bullet
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xE2 &&
        static_cast<unsigned char>(line[1]) == 0x80 &&
        static_cast<unsigned char>(line[2]) == 0xA2)
        return 3;
    std::size_t i = 0;
    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
    if (i > 0 && i < line.size() && (line[i] == '.' || line[i] == ')')) return i + 1;
    return 0;
}

} // namespace

std::string_view polarity_name(Polarity p) {
    switch (p) {
    case Polarity::inclusion: return "inclusion";
    case Polarity::exclusion: return "exclusion";
    case Polarity::unknown: return "unknown";
    }
    return "";
}

std::vector<TrialRecord> parse_corpus(std::istream& in) {
    std::vector<TrialRecord> records;
    std::set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;

        TrialRecord record;
        std::set<std::string, std::less<>> keys_seen;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t tab = line.find('\t', pos);
            std::string_view field(line.data() + pos,
                                   (tab == std::string::npos ? line.size() : tab) - pos);
            pos = (tab == std::string::npos) ? line.size() + 1 : tab + 1;
            if (field.empty()) continue;
            std::size_t eq = field.find('=');
            if (eq == std::string_view::npos)
                raise(ErrorKind::parse, "field without '=' separator", line_no);
            std::string_view key = field.substr(0, eq);
            std::string value = unescape_value(field.substr(eq + 1), line_no);
            if (!keys_seen.insert(std::string(key)).second)
                raise(ErrorKind::parse, "repeated field '" + std::string(key) + "'", line_no);
            if (key == "trial_id") record.trial_id = std::move(value);
            else if (key == "title") record.title = std::move(value);
            else if (key == "study_type") record.study_type = std::move(value);
            else if (key == "eligibility_text") record.eligibility_text = std::move(value);
            else raise(ErrorKind::parse, "unknown field '" + std::string(key) + "'", line_no);
        }
        if (record.trial_id.empty())
            raise(ErrorKind::parse, "record without trial_id", line_no);
        if (!seen_ids.insert(record.trial_id).second)
            raise(ErrorKind::duplicate_key, "duplicate trial_id '" + record.trial_id + "'",
                  line_no);
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<TrialRecord> load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(ErrorKind::io, "cannot open corpus file '" + path.string() + "'");
    return parse_corpus(in);
}

std::string format_record(const TrialRecord& record) {
    std::string out = "trial_id=";
    escape_value(record.trial_id, out);
    out += "\ttitle=";
    escape_value(record.title, out);
    out += "\tstudy_type=";
    escape_value(record.study_type, out);
    out += "\teligibility_text=";
    escape_value(record.eligibility_text, out);
    return out;
}

std::vector<CriterionFragment> segment_criteria(std::string_view eligibility_text) {
    std::vector<CriterionFragment> items;
    Polarity polarity = Polarity::unknown;
    bool item_open = false;
    std::string current;

    auto flush = [&] {
        if (item_open) {
            std::string_view text = trim(current);
            if (!text.empty()) items.push_back({polarity, std::string(text)});
            current.clear();
            item_open = false;
        }
    };

    std::size_t pos = 0;
    while (pos <= eligibility_text.size()) {
        std::size_t nl = eligibility_text.find('\n', pos);
        std::string_view raw =
            eligibility_text.substr(pos, (nl == std::string_view::npos ? eligibility_text.size() : nl) - pos);
        pos = (nl == std::string_view::npos) ? eligibility_text.size() + 1 : nl + 1;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

        std::string_view line = trim(raw);
        if (line.empty()) {
            flush();
            continue;
        }
        if (iequals_prefix(line, "inclusion criteria")) {
            flush();
            polarity = Polarity::inclusion;
            continue;
        }
        if (iequals_prefix(line, "exclusion criteria")) {
            flush();
            polarity = Polarity::exclusion;
            continue;
        }
        std::size_t marker = marker_length(line);
        if (marker > 0) {
            flush();
            item_open = true;
            current.assign(trim(line.substr(marker)));
            continue;
        }
        if (!item_open) {
            item_open = true;
            current.assign(line);
        } else {
            current.push_back(' ');
            current.append(line);
        }
    }
    flush();
    return items;
}

std::vector<CriterionLine> segment_trial(const TrialRecord& record) {
    std::vector<CriterionLine> lines;
    auto fragments = segment_criteria(record.eligibility_text);
    lines.reserve(fragments.size());
    for (std::size_t i = 0; i < fragments.size(); ++i) {
        lines.push_back({record.trial_id, i, fragments[i].polarity, std::move(fragments[i].text)});
    }
    return lines;
}

std::vector<CriterionLine> segment_corpus(const std::vector<TrialRecord>& records) {
    std::vector<CriterionLine> all;
    for (const auto& record : records) {
        auto lines = segment_trial(record);
        all.insert(all.end(), std::make_move_iterator(lines.begin()),
                   std::make_move_iterator(lines.end()));
    }
    return all;
}

} // namespace critont
