#pragma once

#include "critont/category.hpp"
#include "critont/corpus.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace critont {

// One surface-form row. surface_form is stored pre-normalized (a fixed
// point of normalize_text) and is unique across the lexicon.
struct LexiconEntry {
    std::string surface_form;
    std::string concept_id;
    Category category = Category::Disease;

    bool operator==(const LexiconEntry&) const = default;
};

// One dictionary hit. The span is a half-open byte interval over the
// normalized line text; span text equals the matched surface form.
struct EntityMention {
    std::string trial_id;
    std::size_t line_index = 0;
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string concept_id;
    Category category = Category::Disease;

    bool operator==(const EntityMention&) const = default;
};

// Immutable surface-form dictionary. File format: UTF-8 TSV with columns
// surface_form, concept_id, category; '#'-prefixed lines are comments.
// Surface forms are normalized on load; concept ids are restricted to
// [A-Za-z0-9_] so they can be minted into IRIs.
class Lexicon {
public:
    static Lexicon parse(std::istream& in);
    static Lexicon load(const std::filesystem::path& path);

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::vector<LexiconEntry>& entries() const { return entries_; }

    // Longest surface phrase, in tokens.
    std::size_t max_phrase_tokens() const { return max_phrase_tokens_; }

    // Exact lookup of a normalized surface form.
    const LexiconEntry* find_surface(std::string_view normalized_surface) const;

    void add(LexiconEntry entry, std::size_t line_no = 0);

private:
    std::vector<LexiconEntry> entries_;
    std::map<std::string, std::size_t, std::less<>> by_surface_;
    std::size_t max_phrase_tokens_ = 0;
};

bool valid_concept_id(std::string_view id);

// Greedy left-to-right longest match over the normalized line text; matches
// align to token boundaries and never overlap. Throws Error{argument} on an
// empty lexicon.
std::vector<EntityMention> extract_mentions(const CriterionLine& line, const Lexicon& lexicon);

std::vector<EntityMention> extract_all_mentions(const std::vector<CriterionLine>& lines,
                                                const Lexicon& lexicon);

} // namespace critont
