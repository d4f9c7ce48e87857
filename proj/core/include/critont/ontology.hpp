#pragma once

#include "critont/category.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace critont {

// Cross-vocabulary annotations carried by a concept. List-valued members are
// kept sorted and deduplicated (canonical form).
struct AnnotationSet {
    std::optional<std::string> has_umls;       // CUI: 'C' + exactly 7 digits
    std::optional<std::int64_t> has_athena_id; // positive standard concept id
    std::vector<std::string> has_brand_name;
    std::vector<std::string> has_drugbank_category;
    std::vector<std::string> has_ndc;       // 10 or 11 digits, hyphens permitted
    std::vector<std::string> has_valuesets; // OIDs: dot-separated digit groups

    bool empty() const;
    void canonicalize();
    bool operator==(const AnnotationSet&) const = default;
};

bool valid_cui(std::string_view s);
bool valid_oid(std::string_view s);
bool valid_ndc(std::string_view s);

// Raises Error{validation} naming subject_id when any field is malformed.
void validate_annotations(const AnnotationSet& annotations, std::string_view subject_id);

struct ConceptNode {
    std::string concept_id;
    std::string label;
    Category category = Category::Disease;
    std::optional<std::string> parent_id; // absent only for the 7 category roots
    AnnotationSet annotations;
    bool scaffold = false; // structural class vs data-derived concept

    bool operator==(const ConceptNode&) const = default;
};

struct OntologyStats {
    std::size_t class_count = 0;
    std::size_t logical_axiom_count = 0;     // SubClassOf assertions
    std::size_t declaration_axiom_count = 0; // classes + annotation properties
    std::size_t annotation_property_count = 0;
    std::size_t annotation_assertion_count = 0; // labels + annotation values

    bool operator==(const OntologyStats&) const = default;
};

// The six custom annotation properties, in declaration order.
const std::array<std::string_view, 6>& annotation_property_names();

// Seven-category class tree. Each category is a tree rooted at a category
// class whose concept_id equals the category name; parent links never cross
// categories. Equality compares nodes, parents, labels, categories and
// annotations; the scaffold flag is presentation metadata and is excluded.
class Ontology {
public:
    // An ontology holding only the 7 category roots.
    Ontology();

    // Validates and adopts an arbitrary node set: ids unique and well formed,
    // exactly the 7 roots parentless, parent links acyclic and same-category,
    // annotations valid. Throws Error{validation|duplicate_key|cycle|...}.
    static Ontology from_nodes(std::vector<ConceptNode> nodes);

    // Adds a data-derived concept under an existing same-category parent.
    // Throws Error{duplicate_key} on a reused id, Error{not_found} on a
    // missing parent, Error{category_violation} on a cross-category parent
    // and Error{cycle} on a self-parent.
    void add_concept(std::string concept_id, std::string label, Category category,
                     std::string parent_id, AnnotationSet annotations, bool scaffold = false);

    bool contains(std::string_view concept_id) const;
    const ConceptNode* find(std::string_view concept_id) const;
    const std::map<std::string, ConceptNode, std::less<>>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }

    // Child ids of a node, ascending.
    std::vector<std::string> children_of(std::string_view concept_id) const;

    OntologyStats stats() const;

    bool operator==(const Ontology& other) const;

private:
    std::map<std::string, ConceptNode, std::less<>> nodes_;
};

// Scaffold config: UTF-8 TSV, '#' comments. Rows:
//   category\t<Name>                         declares a category root
//   concept\t<id>\t<parent_id>\t<label>      declares a scaffold class
//   default_parent\t<Name>\t<concept_id>     enrichment attachment point
// All 7 categories must be declared; forward parent references are allowed.
struct ScaffoldConfig {
    Ontology ontology;
    std::map<Category, std::string> default_parents; // absent -> category root
};

ScaffoldConfig load_scaffold(std::istream& in);
ScaffoldConfig load_scaffold_file(const std::filesystem::path& path);

// OWL 2 functional-style serialization restricted to Prefix, Ontology,
// Declaration(Class), Declaration(AnnotationProperty), SubClassOf and
// AnnotationAssertion. Output is deterministic: annotation properties in
// declaration order, classes by IRI, assertions by (subject, property, value).
std::string serialize_owl(const Ontology& ontology);

// Inverse of serialize_owl over its output subset. Throws
// Error{unsupported_construct} with a line number for constructs outside the
// subset and Error{validation} when the parsed axioms violate an invariant.
Ontology parse_owl(std::string_view text);
Ontology load_owl_file(const std::filesystem::path& path);

} // namespace critont
