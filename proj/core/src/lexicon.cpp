#include "critont/lexicon.hpp"

#include "critont/errors.hpp"
#include "critont/text.hpp"

#include <fstream>
#include <istream>

namespace critont {

namespace {

std::vector<std::string_view> split_tsv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        std::size_t tab = line.find('\t', pos);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(pos));
            return fields;
        }
        fields.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
}

} // namespace

bool valid_concept_id(std::string_view id) {
    if (id.empty()) return false;
    for (char c : id) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '_';
        if (!ok) return false;
    }
    return true;
}

void Lexicon::add(LexiconEntry entry, std::size_t line_no) {
    if (entry.surface_form.empty())
        raise(ErrorKind::validation, "empty surface form", line_no);
    if (!is_normalized(entry.surface_form))
        raise(ErrorKind::validation,
              "surface form '" + entry.surface_form + "' is not in normal form", line_no);
    if (!valid_concept_id(entry.concept_id))
        raise(ErrorKind::validation,
              "concept id '" + entry.concept_id + "' must match [A-Za-z0-9_]+", line_no);
    if (by_surface_.contains(entry.surface_form))
        raise(ErrorKind::duplicate_key, "duplicate surface form '" + entry.surface_form + "'",
              line_no);
    std::size_t tokens = tokenize(entry.surface_form).size();
    max_phrase_tokens_ = std::max(max_phrase_tokens_, tokens);
    by_surface_.emplace(entry.surface_form, entries_.size());
    entries_.push_back(std::move(entry));
}

Lexicon Lexicon::parse(std::istream& in) {
    Lexicon lexicon;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_tsv(line);
        if (fields.size() != 3)
            raise(ErrorKind::parse, "expected 3 tab-separated columns", line_no);
        auto category = category_from_name(fields[2]);
        if (!category)
            raise(ErrorKind::validation, "unknown category '" + std::string(fields[2]) + "'",
                  line_no);
        LexiconEntry entry{normalize_text(fields[0]), std::string(fields[1]), *category};
        lexicon.add(std::move(entry), line_no);
    }
    return lexicon;
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(ErrorKind::io, "cannot open lexicon file '" + path.string() + "'");
    return parse(in);
}

const LexiconEntry* Lexicon::find_surface(std::string_view normalized_surface) const {
    auto it = by_surface_.find(normalized_surface);
    return it == by_surface_.end() ? nullptr : &entries_[it->second];
}

std::vector<EntityMention> extract_mentions(const CriterionLine& line, const Lexicon& lexicon) {
    if (lexicon.empty())
        raise(ErrorKind::argument, "extract_mentions requires a non-empty lexicon");

    std::string normalized = normalize_text(line.text);
    auto tokens = tokenize(normalized);

    std::vector<EntityMention> mentions;
    std::size_t i = 0;
    while (i < tokens.size()) {
        std::size_t max_len = std::min(lexicon.max_phrase_tokens(), tokens.size() - i);
        bool matched = false;
        for (std::size_t len = max_len; len >= 1; --len) {
            std::size_t begin = tokens[i].begin;
            std::size_t end = tokens[i + len - 1].end;
            std::string_view phrase(normalized.data() + begin, end - begin);
            if (const LexiconEntry* entry = lexicon.find_surface(phrase)) {
                mentions.push_back({line.trial_id, line.line_index, begin, end, entry->concept_id,
                                    entry->category});
                i += len;
                matched = true;
                break;
            }
        }
        if (!matched) ++i;
    }
    return mentions;
}

std::vector<EntityMention> extract_all_mentions(const std::vector<CriterionLine>& lines,
                                                const Lexicon& lexicon) {
    std::vector<EntityMention> all;
    for (const auto& line : lines) {
        auto mentions = extract_mentions(line, lexicon);
        all.insert(all.end(), std::make_move_iterator(mentions.begin()),
                   std::make_move_iterator(mentions.end()));
    }
    return all;
}

} // namespace critont
