#pragma once

#include "critont/lexicon.hpp"
#include "critont/ontology.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace critont {

// One expanded member code of a value set.
struct ValuesetCode {
    std::string code;
    std::string code_system;
    std::string display;

    bool operator==(const ValuesetCode&) const = default;
};

struct Valueset {
    std::string title;
    std::vector<ValuesetCode> codes; // non-empty

    bool operator==(const Valueset&) const = default;
};

// Local snapshot of value sets keyed by OID. File format: UTF-8 TSV with
// columns oid, title, code, code_system, display (one row per code,
// '#' comments allowed); every row of one OID must repeat the same title.
class ValuesetStore {
public:
    static ValuesetStore parse(std::istream& in);
    static ValuesetStore load(const std::filesystem::path& path);

    bool contains(std::string_view oid) const;
    const Valueset* find(std::string_view oid) const;
    const std::map<std::string, Valueset, std::less<>>& valuesets() const { return sets_; }

private:
    std::map<std::string, Valueset, std::less<>> sets_;
};

// Flat relatedness table (disease -> treatments, assessments, ...). Stored
// as side data, not as ontology axioms. File format: TSV with columns
// source_concept, relation_tag, target_concept; both endpoints must exist in
// the ontology at load time.
struct Association {
    std::string target_concept;
    std::string relation_tag;

    bool operator==(const Association&) const = default;
    auto operator<=>(const Association&) const = default;
};

class AssociationTable {
public:
    AssociationTable() = default;
    static AssociationTable parse(std::istream& in, const Ontology& ontology);
    static AssociationTable load(const std::filesystem::path& path, const Ontology& ontology);

    // Rows for a concept, ordered by (relation_tag, concept_id).
    std::vector<Association> related_to(std::string_view concept_id) const;

private:
    std::map<std::string, std::vector<Association>, std::less<>> by_source_;
};

// (code, code_system, oid) triple produced by value-set expansion.
struct ExpandedCode {
    std::string code;
    std::string code_system;
    std::string oid;

    bool operator==(const ExpandedCode&) const = default;
};

// Member codes of every OID annotated on the concept, ordered by
// (oid, code_system, code). Throws Error{missing_valueset} naming the OID
// when an annotated value set is absent from the store.
std::vector<ExpandedCode> expand_valuesets(const ConceptNode& concept, const ValuesetStore& store);

// Association rows for a concept (empty when none are configured).
std::vector<Association> related_entities(const ConceptNode& concept,
                                          const AssociationTable& associations);

struct NormalizationResult {
    std::string input;
    std::string matched_surface;
    std::string concept_id;
    std::string label;
    Category category = Category::Disease;
    AnnotationSet annotations;
    std::vector<ExpandedCode> valueset_codes;
    std::vector<Association> related;
};

// Resolves a raw term: normalize, exact surface lookup, then enrich from the
// ontology, value sets and associations. Throws Error{not_found} when no
// surface matches and Error{consistency} when the lexicon maps to a concept
// absent from the ontology.
NormalizationResult normalize_term(std::string_view term, const Ontology& ontology,
                                   const Lexicon& lexicon, const ValuesetStore& valuesets,
                                   const AssociationTable& associations);

// Fails with Error{consistency} unless every lexicon concept that appears in
// the ontology has resolvable value sets: all annotated OIDs (of every
// ontology concept) must exist in the store. Run after loading all stores.
void validate_stores(const Ontology& ontology, const ValuesetStore& valuesets);

// Structured-text rendering used by the CLI (key=value lines; one line per
// list element, canonical order).
std::string format_normalization(const NormalizationResult& result);

} // namespace critont
