#include "critont/ontology.hpp"

#include "critont/errors.hpp"
#include "critont/lexicon.hpp" // valid_concept_id

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace critont {

namespace {

constexpr std::string_view kBaseIri = "https://critont.org/ontology#";
constexpr std::string_view kOntologyIri = "https://critont.org/ontology";
constexpr std::string_view kRdfsLabelIri = "http://www.w3.org/2000/01/rdf-schema#label";
constexpr std::string_view kXsdIntegerIri = "http://www.w3.org/2001/XMLSchema#integer";

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

void sort_unique(std::vector<std::string>& values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
}

} // namespace

bool valid_cui(std::string_view s) {
    return s.size() == 8 && s[0] == 'C' && all_digits(s.substr(1));
}

bool valid_oid(std::string_view s) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    while (true) {
        std::size_t dot = s.find('.', pos);
        std::string_view group = s.substr(pos, dot == std::string_view::npos ? s.size() - pos
                                                                             : dot - pos);
        if (!all_digits(group)) return false;
        if (dot == std::string_view::npos) return true;
        pos = dot + 1;
    }
}

bool valid_ndc(std::string_view s) {
    std::size_t digits = 0;
    for (char c : s) {
        if (c >= '0' && c <= '9') ++digits;
        else if (c != '-') return false;
    }
    return digits == 10 || digits == 11;
}

bool AnnotationSet::empty() const {
    return !has_umls && !has_athena_id && has_brand_name.empty() &&
           has_drugbank_category.empty() && has_ndc.empty() && has_valuesets.empty();
}

void AnnotationSet::canonicalize() {
    sort_unique(has_brand_name);
    sort_unique(has_drugbank_category);
    sort_unique(has_ndc);
    sort_unique(has_valuesets);
}

void validate_annotations(const AnnotationSet& a, std::string_view subject_id) {
    auto fail = [&](const std::string& what) {
        raise(ErrorKind::validation, "concept '" + std::string(subject_id) + "': " + what);
    };
    if (a.has_umls && !valid_cui(*a.has_umls))
        fail("hasUMLS value '" + *a.has_umls + "' is not a CUI (C + 7 digits)");
    if (a.has_athena_id && *a.has_athena_id <= 0)
        fail("hasAthenaID must be a positive integer");
    for (const auto& v : a.has_valuesets)
        if (!valid_oid(v)) fail("hasValuesets value '" + v + "' is not an OID");
    for (const auto& v : a.has_ndc)
        if (!valid_ndc(v)) fail("hasNDC value '" + v + "' is not a 10/11-digit code");
    for (const auto& v : a.has_brand_name)
        if (v.empty()) fail("hasBrandName value is empty");
    for (const auto& v : a.has_drugbank_category)
        if (v.empty()) fail("hasDrugBankCategory value is empty");
}

const std::array<std::string_view, 6>& annotation_property_names() {
    static const std::array<std::string_view, 6> names = {
        "hasAthenaID", "hasUMLS", "hasBrandName", "hasDrugBankCategory", "hasNDC", "hasValuesets"};
    return names;
}

Ontology::Ontology() {
    for (Category c : all_categories()) {
        std::string name(category_name(c));
        nodes_.emplace(name, ConceptNode{name, name, c, std::nullopt, {}, true});
    }
}

Ontology Ontology::from_nodes(std::vector<ConceptNode> nodes) {
    Ontology out;
    out.nodes_.clear();
    for (auto& node : nodes) {
        if (!valid_concept_id(node.concept_id))
            raise(ErrorKind::validation,
                  "concept id '" + node.concept_id + "' must match [A-Za-z0-9_]+");
        if (node.label.empty()) node.label = node.concept_id;
        node.annotations.canonicalize();
        validate_annotations(node.annotations, node.concept_id);
        std::string id = node.concept_id;
        if (!out.nodes_.emplace(id, std::move(node)).second)
            raise(ErrorKind::duplicate_key, "duplicate concept id '" + id + "'");
    }

    // Exactly the 7 category roots are parentless, named after their category.
    std::size_t roots = 0;
    for (const auto& [id, node] : out.nodes_) {
        if (node.parent_id) continue;
        ++roots;
        if (id != category_name(node.category))
            raise(ErrorKind::validation,
                  "parentless class '" + id + "' is not one of the 7 category roots");
    }
    if (roots != category_count)
        raise(ErrorKind::validation, "ontology must contain exactly the 7 category roots");
    for (Category c : all_categories()) {
        if (!out.nodes_.contains(std::string(category_name(c))))
            raise(ErrorKind::validation,
                  "missing category root '" + std::string(category_name(c)) + "'");
    }

    // Parent links resolve, stay within one category and are acyclic.
    // state: 0 unvisited, 1 in progress, 2 verified.
    std::map<std::string_view, int> state;
    for (const auto& [id, node] : out.nodes_) {
        std::vector<std::string_view> path;
        std::string_view cur = id;
        while (state[cur] != 2) {
            if (state[cur] == 1)
                raise(ErrorKind::cycle, "parent links of '" + std::string(cur) + "' form a cycle");
            state[cur] = 1;
            path.push_back(cur);
            const ConceptNode& n = out.nodes_.find(cur)->second;
            if (!n.parent_id) break;
            auto parent = out.nodes_.find(*n.parent_id);
            if (parent == out.nodes_.end())
                raise(ErrorKind::validation,
                      "concept '" + std::string(cur) + "' references undeclared parent '" +
                          *n.parent_id + "'");
            if (parent->second.category != n.category)
                raise(ErrorKind::category_violation,
                      "concept '" + std::string(cur) + "' has parent in a different category");
            cur = parent->first;
        }
        for (auto v : path) state[v] = 2;
    }
    return out;
}

void Ontology::add_concept(std::string concept_id, std::string label, Category category,
                           std::string parent_id, AnnotationSet annotations, bool scaffold) {
    if (!valid_concept_id(concept_id))
        raise(ErrorKind::validation, "concept id '" + concept_id + "' must match [A-Za-z0-9_]+");
    if (concept_id == parent_id)
        raise(ErrorKind::cycle, "concept '" + concept_id + "' cannot be its own parent");
    if (nodes_.contains(concept_id))
        raise(ErrorKind::duplicate_key, "duplicate concept id '" + concept_id + "'");
    auto parent = nodes_.find(parent_id);
    if (parent == nodes_.end())
        raise(ErrorKind::not_found, "parent '" + parent_id + "' does not exist");
    if (parent->second.category != category)
        raise(ErrorKind::category_violation, "concept '" + concept_id + "' (" +
                                                 std::string(category_name(category)) +
                                                 ") cannot attach under '" + parent_id + "' (" +
                                                 std::string(category_name(
                                                     parent->second.category)) +
                                                 ")");
    if (label.empty()) label = concept_id;
    annotations.canonicalize();
    validate_annotations(annotations, concept_id);
    ConceptNode node{concept_id, std::move(label), category, std::move(parent_id),
                     std::move(annotations), scaffold};
    nodes_.emplace(std::move(concept_id), std::move(node));
}

bool Ontology::contains(std::string_view concept_id) const {
    return nodes_.find(concept_id) != nodes_.end();
}

const ConceptNode* Ontology::find(std::string_view concept_id) const {
    auto it = nodes_.find(concept_id);
    return it == nodes_.end() ? nullptr : &it->second;
}

std::vector<std::string> Ontology::children_of(std::string_view concept_id) const {
    std::vector<std::string> children;
    for (const auto& [id, node] : nodes_) {
        if (node.parent_id && *node.parent_id == concept_id) children.push_back(id);
    }
    return children;
}

OntologyStats Ontology::stats() const {
    OntologyStats s;
    s.class_count = nodes_.size();
    s.annotation_property_count = annotation_property_names().size();
    s.declaration_axiom_count = s.class_count + s.annotation_property_count;
    for (const auto& [id, node] : nodes_) {
        if (node.parent_id) ++s.logical_axiom_count;
        const AnnotationSet& a = node.annotations;
        s.annotation_assertion_count += 1; // rdfs:label
        s.annotation_assertion_count += a.has_umls ? 1 : 0;
        s.annotation_assertion_count += a.has_athena_id ? 1 : 0;
        s.annotation_assertion_count += a.has_brand_name.size() + a.has_drugbank_category.size() +
                                        a.has_ndc.size() + a.has_valuesets.size();
    }
    return s;
}

bool Ontology::operator==(const Ontology& other) const {
    if (nodes_.size() != other.nodes_.size()) return false;
    auto a = nodes_.begin();
    auto b = other.nodes_.begin();
    for (; a != nodes_.end(); ++a, ++b) {
        if (a->first != b->first) return false;
        const ConceptNode& x = a->second;
        const ConceptNode& y = b->second;
        if (x.label != y.label || x.category != y.category || x.parent_id != y.parent_id ||
            !(x.annotations == y.annotations))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Scaffold config
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
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

ScaffoldConfig load_scaffold(std::istream& in) {
    struct Row {
        std::string id;
        std::string parent;
        std::string label;
        std::size_t line_no;
    };
    std::vector<Row> rows;
    std::map<std::string, Category> declared_roots;
    std::map<Category, std::string> default_parents;
    std::vector<std::pair<Category, std::pair<std::string, std::size_t>>> default_rows;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_tabs(line);
        if (fields[0] == "category") {
            if (fields.size() != 2)
                raise(ErrorKind::parse, "category row expects 1 argument", line_no);
            auto cat = category_from_name(fields[1]);
            if (!cat)
                raise(ErrorKind::validation, "unknown category '" + std::string(fields[1]) + "'",
                      line_no);
            if (!declared_roots.emplace(std::string(fields[1]), *cat).second)
                raise(ErrorKind::validation,
                      "category '" + std::string(fields[1]) + "' declared twice", line_no);
        } else if (fields[0] == "concept") {
            if (fields.size() != 4)
                raise(ErrorKind::parse, "concept row expects id, parent and label", line_no);
            rows.push_back(
                {std::string(fields[1]), std::string(fields[2]), std::string(fields[3]), line_no});
        } else if (fields[0] == "default_parent") {
            if (fields.size() != 3)
                raise(ErrorKind::parse, "default_parent row expects category and concept id",
                      line_no);
            auto cat = category_from_name(fields[1]);
            if (!cat)
                raise(ErrorKind::validation, "unknown category '" + std::string(fields[1]) + "'",
                      line_no);
            default_rows.push_back({*cat, {std::string(fields[2]), line_no}});
        } else {
            raise(ErrorKind::parse, "unknown row kind '" + std::string(fields[0]) + "'", line_no);
        }
    }

    for (Category c : all_categories()) {
        if (!declared_roots.contains(std::string(category_name(c))))
            raise(ErrorKind::validation,
                  "scaffold config is missing category '" + std::string(category_name(c)) + "'");
    }

    // Resolve each concept's category by walking parent links; forward
    // references are allowed, so resolution iterates to a fixed point.
    std::map<std::string, const Row*> by_id;
    for (const Row& row : rows) {
        if (declared_roots.contains(row.id))
            raise(ErrorKind::duplicate_key, "concept id '" + row.id + "' collides with a root",
                  row.line_no);
        if (!by_id.emplace(row.id, &row).second)
            raise(ErrorKind::duplicate_key, "duplicate concept id '" + row.id + "'", row.line_no);
    }
    std::map<std::string, Category> resolved;
    auto resolve = [&](const Row& row) {
        std::vector<const Row*> chain;
        const Row* cur = &row;
        while (true) {
            if (resolved.contains(cur->id)) break;
            chain.push_back(cur);
            auto root = declared_roots.find(cur->parent);
            if (root != declared_roots.end()) {
                resolved[cur->id] = root->second;
                chain.pop_back();
                break;
            }
            auto next = by_id.find(cur->parent);
            if (next == by_id.end())
                raise(ErrorKind::validation,
                      "concept '" + cur->id + "' references unknown parent '" + cur->parent + "'",
                      cur->line_no);
            if (std::find(chain.begin(), chain.end(), next->second) != chain.end())
                raise(ErrorKind::cycle, "scaffold parent links form a cycle at '" + cur->id + "'",
                      cur->line_no);
            cur = next->second;
        }
        for (auto it = chain.rbegin(); it != chain.rend(); ++it)
            resolved[(*it)->id] = resolved.contains((*it)->parent)
                                      ? resolved[(*it)->parent]
                                      : declared_roots.at((*it)->parent);
    };
    for (const Row& row : rows) resolve(row);

    std::vector<ConceptNode> nodes;
    for (Category c : all_categories()) {
        std::string name(category_name(c));
        nodes.push_back({name, name, c, std::nullopt, {}, true});
    }
    for (const Row& row : rows)
        nodes.push_back({row.id, row.label, resolved.at(row.id), row.parent, {}, true});

    ScaffoldConfig config;
    config.ontology = Ontology::from_nodes(std::move(nodes));
    for (const auto& [cat, id_line] : default_rows) {
        const ConceptNode* node = config.ontology.find(id_line.first);
        if (!node)
            raise(ErrorKind::validation,
                  "default_parent '" + id_line.first + "' is not a scaffold concept",
                  id_line.second);
        if (node->category != cat)
            raise(ErrorKind::category_violation,
                  "default_parent '" + id_line.first + "' is not in category " +
                      std::string(category_name(cat)),
                  id_line.second);
        if (!config.default_parents.emplace(cat, id_line.first).second)
            raise(ErrorKind::validation,
                  "default_parent for " + std::string(category_name(cat)) + " declared twice",
                  id_line.second);
    }
    return config;
}

ScaffoldConfig load_scaffold_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(ErrorKind::io, "cannot open scaffold file '" + path.string() + "'");
    return load_scaffold(in);
}

// ---------------------------------------------------------------------------
// OWL functional-style serialization
// ---------------------------------------------------------------------------

namespace {

std::string escape_literal(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::string property_iri(std::string_view name) {
    return std::string(kBaseIri) + std::string(name);
}

} // namespace

std::string serialize_owl(const Ontology& ontology) {
    std::string out;
    out += "Prefix(:=<";
    out += kBaseIri;
    out += ">)\n";
    out += "Prefix(rdfs:=<http://www.w3.org/2000/01/rdf-schema#>)\n";
    out += "Prefix(xsd:=<http://www.w3.org/2001/XMLSchema#>)\n";
    out += "Ontology(<";
    out += kOntologyIri;
    out += ">\n";

    for (std::string_view name : annotation_property_names()) {
        out += "Declaration(AnnotationProperty(:";
        out += name;
        out += "))\n";
    }
    for (const auto& [id, node] : ontology.nodes()) {
        out += "Declaration(Class(:";
        out += id;
        out += "))\n";
    }
    for (const auto& [id, node] : ontology.nodes()) {
        if (!node.parent_id) continue;
        out += "SubClassOf(:";
        out += id;
        out += " :";
        out += *node.parent_id;
        out += ")\n";
    }

    // (subject IRI, property IRI, rendered value) tuples, sorted.
    std::vector<std::array<std::string, 3>> assertions;
    for (const auto& [id, node] : ontology.nodes()) {
        const AnnotationSet& a = node.annotations;
        assertions.push_back(
            {id, std::string(kRdfsLabelIri), "\"" + escape_literal(node.label) + "\""});
        if (a.has_umls)
            assertions.push_back(
                {id, property_iri("hasUMLS"), "\"" + escape_literal(*a.has_umls) + "\""});
        if (a.has_athena_id)
            assertions.push_back({id, property_iri("hasAthenaID"),
                                  "\"" + std::to_string(*a.has_athena_id) + "\"^^xsd:integer"});
        for (const auto& v : a.has_brand_name)
            assertions.push_back(
                {id, property_iri("hasBrandName"), "\"" + escape_literal(v) + "\""});
        for (const auto& v : a.has_drugbank_category)
            assertions.push_back(
                {id, property_iri("hasDrugBankCategory"), "\"" + escape_literal(v) + "\""});
        for (const auto& v : a.has_ndc)
            assertions.push_back({id, property_iri("hasNDC"), "\"" + escape_literal(v) + "\""});
        for (const auto& v : a.has_valuesets)
            assertions.push_back(
                {id, property_iri("hasValuesets"), "\"" + escape_literal(v) + "\""});
    }
    std::sort(assertions.begin(), assertions.end());
    for (const auto& [subject, prop, value] : assertions) {
        out += "AnnotationAssertion(";
        if (prop == kRdfsLabelIri) {
            out += "rdfs:label";
        } else {
            out += ':';
            out += prop.substr(kBaseIri.size());
        }
        out += " :";
        out += subject;
        out += ' ';
        out += value;
        out += ")\n";
    }
    out += ")\n";
    return out;
}

// ---------------------------------------------------------------------------
// OWL functional-style parsing (serializer subset only)
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum class Type { ident, pname, iri, literal, lparen, rparen, equals, end };
    Type type = Type::end;
    std::string text;        // ident name, pname, iri content, literal value
    std::string datatype;    // literal datatype IRI or pname ("" if plain)
    std::size_t line = 0;
};

class OwlLexer {
public:
    explicit OwlLexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_ws();
        Token t;
        t.line = line_;
        if (pos_ >= text_.size()) {
            t.type = Token::Type::end;
            return t;
        }
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            t.type = Token::Type::lparen;
            return t;
        }
        if (c == ')') {
            ++pos_;
            t.type = Token::Type::rparen;
            return t;
        }
        if (c == '=') {
            ++pos_;
            t.type = Token::Type::equals;
            return t;
        }
        if (c == '<') {
            std::size_t end = text_.find('>', pos_);
            if (end == std::string_view::npos)
                raise(ErrorKind::parse, "unterminated IRI", line_);
            t.type = Token::Type::iri;
            t.text = std::string(text_.substr(pos_ + 1, end - pos_ - 1));
            pos_ = end + 1;
            return t;
        }
        if (c == '"') {
            t.type = Token::Type::literal;
            t.text = read_quoted();
            if (pos_ + 1 < text_.size() && text_[pos_] == '^' && text_[pos_ + 1] == '^') {
                pos_ += 2;
                Token dt = next();
                if (dt.type != Token::Type::pname && dt.type != Token::Type::iri)
                    raise(ErrorKind::parse, "expected datatype after '^^'", line_);
                t.datatype = dt.text;
            }
            return t;
        }
        if (is_name_char(c) || c == ':') {
            std::size_t begin = pos_;
            bool has_colon = false;
            while (pos_ < text_.size() && (is_name_char(text_[pos_]) || text_[pos_] == ':')) {
                has_colon |= text_[pos_] == ':';
                ++pos_;
            }
            t.text = std::string(text_.substr(begin, pos_ - begin));
            t.type = has_colon ? Token::Type::pname : Token::Type::ident;
            return t;
        }
        raise(ErrorKind::parse, std::string("unexpected character '") + c + "'", line_);
    }

private:
    static bool is_name_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == '_' || c == '.' || c == '-';
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string read_quoted() {
        std::string out;
        ++pos_; // opening quote
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '"') {
                ++pos_;
                return out;
            }
            if (c == '\\') {
                if (pos_ + 1 >= text_.size())
                    raise(ErrorKind::parse, "dangling escape in literal", line_);
                char e = text_[pos_ + 1];
                switch (e) {
                case 'n': out.push_back('\n'); break;
                case 't': out.push_back('\t'); break;
                case 'r': out.push_back('\r'); break;
                case '"': out.push_back('"'); break;
                case '\\': out.push_back('\\'); break;
                default:
                    raise(ErrorKind::parse, std::string("unknown escape '\\") + e + "' in literal",
                          line_);
                }
                pos_ += 2;
                continue;
            }
            if (c == '\n') ++line_;
            out.push_back(c);
            ++pos_;
        }
        raise(ErrorKind::parse, "unterminated literal", line_);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

class OwlParser {
public:
    explicit OwlParser(std::string_view text) : lexer_(text) { advance(); }

    Ontology parse() {
        while (cur_.type == Token::Type::ident && cur_.text == "Prefix") parse_prefix();
        expect_ident("Ontology");
        expect(Token::Type::lparen);
        // optional ontology IRI and version IRI
        while (cur_.type == Token::Type::iri) advance();
        while (!(cur_.type == Token::Type::rparen)) {
            if (cur_.type == Token::Type::end)
                raise(ErrorKind::parse, "unexpected end of input inside Ontology(...)", cur_.line);
            parse_axiom();
        }
        advance(); // closing paren
        if (cur_.type != Token::Type::end)
            raise(ErrorKind::parse, "trailing content after Ontology(...)", cur_.line);
        return assemble();
    }

private:
    struct PendingAnnotations {
        std::optional<std::string> label;
        AnnotationSet set;
        std::size_t line = 0;
    };

    void advance() { cur_ = lexer_.next(); }

    void expect(Token::Type type) {
        if (cur_.type != type)
            raise(ErrorKind::parse, "unexpected token", cur_.line);
        advance();
    }

    void expect_ident(std::string_view name) {
        if (cur_.type != Token::Type::ident || cur_.text != name)
            raise(ErrorKind::parse, "expected '" + std::string(name) + "'", cur_.line);
        advance();
    }

    void parse_prefix() {
        advance(); // Prefix
        expect(Token::Type::lparen);
        if (cur_.type != Token::Type::pname || cur_.text.back() != ':')
            raise(ErrorKind::parse, "expected prefix name", cur_.line);
        std::string prefix = cur_.text.substr(0, cur_.text.size() - 1);
        advance();
        expect(Token::Type::equals);
        if (cur_.type != Token::Type::iri)
            raise(ErrorKind::parse, "expected IRI in prefix declaration", cur_.line);
        prefixes_[prefix] = cur_.text;
        advance();
        expect(Token::Type::rparen);
    }

    // Resolves a pname or IRI token to a full IRI.
    std::string resolve_entity(const Token& t) {
        if (t.type == Token::Type::iri) return t.text;
        if (t.type != Token::Type::pname)
            raise(ErrorKind::parse, "expected an entity IRI", t.line);
        std::size_t colon = t.text.find(':');
        std::string prefix = t.text.substr(0, colon);
        std::string local = t.text.substr(colon + 1);
        auto it = prefixes_.find(prefix);
        if (it == prefixes_.end())
            raise(ErrorKind::parse, "undeclared prefix '" + prefix + ":'", t.line);
        return it->second + local;
    }

    // Full IRI -> local concept id under the base prefix.
    std::string to_local_id(const std::string& iri, std::size_t line) {
        if (iri.size() <= kBaseIri.size() || iri.compare(0, kBaseIri.size(), kBaseIri) != 0)
            raise(ErrorKind::validation,
                  "entity <" + iri + "> is outside the ontology namespace", line);
        return iri.substr(kBaseIri.size());
    }

    void parse_axiom() {
        if (cur_.type != Token::Type::ident)
            raise(ErrorKind::parse, "expected an axiom", cur_.line);
        std::string keyword = cur_.text;
        std::size_t line = cur_.line;
        if (keyword == "Declaration") {
            advance();
            expect(Token::Type::lparen);
            if (cur_.type != Token::Type::ident)
                raise(ErrorKind::parse, "expected entity kind in Declaration", cur_.line);
            std::string kind = cur_.text;
            std::size_t kind_line = cur_.line;
            advance();
            expect(Token::Type::lparen);
            Token entity = cur_;
            advance();
            std::string iri = resolve_entity(entity);
            expect(Token::Type::rparen);
            expect(Token::Type::rparen);
            if (kind == "Class") {
                std::string id = to_local_id(iri, entity.line);
                if (!declared_classes_.emplace(id, entity.line).second)
                    raise(ErrorKind::validation, "class ':" + id + "' declared twice",
                          entity.line);
            } else if (kind == "AnnotationProperty") {
                declared_properties_.push_back(to_local_id(iri, entity.line));
            } else {
                raise(ErrorKind::unsupported_construct,
                      "Declaration(" + kind + " ...) is outside the supported subset", kind_line);
            }
        } else if (keyword == "SubClassOf") {
            advance();
            expect(Token::Type::lparen);
            Token child = cur_;
            advance();
            Token parent = cur_;
            advance();
            expect(Token::Type::rparen);
            std::string child_id = to_local_id(resolve_entity(child), child.line);
            std::string parent_id = to_local_id(resolve_entity(parent), parent.line);
            subclass_axioms_.push_back({child_id, parent_id, line});
        } else if (keyword == "AnnotationAssertion") {
            advance();
            expect(Token::Type::lparen);
            Token prop = cur_;
            advance();
            Token subject = cur_;
            advance();
            Token value = cur_;
            advance();
            expect(Token::Type::rparen);
            record_assertion(prop, subject, value);
        } else {
            raise(ErrorKind::unsupported_construct,
                  "'" + keyword + "' is outside the supported subset", line);
        }
    }

    void record_assertion(const Token& prop, const Token& subject, const Token& value) {
        std::string prop_iri = resolve_entity(prop);
        std::string subject_id = to_local_id(resolve_entity(subject), subject.line);
        PendingAnnotations& pending = annotations_[subject_id];
        pending.line = subject.line;

        auto literal = [&]() -> const std::string& {
            if (value.type != Token::Type::literal)
                raise(ErrorKind::parse, "expected a literal value", value.line);
            return value.text;
        };

        if (prop_iri == kRdfsLabelIri) {
            if (pending.label)
                raise(ErrorKind::validation, "duplicate rdfs:label for ':" + subject_id + "'",
                      value.line);
            pending.label = literal();
            return;
        }
        if (prop_iri == property_iri("hasUMLS")) {
            if (pending.set.has_umls)
                raise(ErrorKind::validation, "duplicate hasUMLS for ':" + subject_id + "'",
                      value.line);
            pending.set.has_umls = literal();
            return;
        }
        if (prop_iri == property_iri("hasAthenaID")) {
            if (pending.set.has_athena_id)
                raise(ErrorKind::validation, "duplicate hasAthenaID for ':" + subject_id + "'",
                      value.line);
            const std::string& text = literal();
            std::int64_t parsed = 0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), parsed);
            if (ec != std::errc{} || ptr != text.data() + text.size())
                raise(ErrorKind::validation,
                      "hasAthenaID value '" + text + "' is not an integer", value.line);
            pending.set.has_athena_id = parsed;
            return;
        }
        if (prop_iri == property_iri("hasBrandName")) {
            pending.set.has_brand_name.push_back(literal());
            return;
        }
        if (prop_iri == property_iri("hasDrugBankCategory")) {
            pending.set.has_drugbank_category.push_back(literal());
            return;
        }
        if (prop_iri == property_iri("hasNDC")) {
            pending.set.has_ndc.push_back(literal());
            return;
        }
        if (prop_iri == property_iri("hasValuesets")) {
            pending.set.has_valuesets.push_back(literal());
            return;
        }
        raise(ErrorKind::validation, "unknown annotation property <" + prop_iri + ">", prop.line);
    }

    Ontology assemble() {
        const auto& expected = annotation_property_names();
        if (declared_properties_.size() != expected.size())
            raise(ErrorKind::validation,
                  "ontology must declare exactly the 6 annotation properties");
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (declared_properties_[i] != expected[i])
                raise(ErrorKind::validation, "annotation property declaration " +
                                                 std::to_string(i + 1) + " must be '" +
                                                 std::string(expected[i]) + "'");
        }

        std::map<std::string, std::pair<std::string, std::size_t>> parent_of;
        for (const auto& axiom : subclass_axioms_) {
            if (!declared_classes_.contains(axiom.child))
                raise(ErrorKind::validation,
                      "SubClassOf references undeclared class ':" + axiom.child + "'", axiom.line);
            if (!declared_classes_.contains(axiom.parent))
                raise(ErrorKind::validation,
                      "SubClassOf references undeclared class ':" + axiom.parent + "'",
                      axiom.line);
            if (!parent_of.emplace(axiom.child, std::make_pair(axiom.parent, axiom.line)).second)
                raise(ErrorKind::validation,
                      "class ':" + axiom.child + "' has more than one parent", axiom.line);
        }
        for (const auto& [subject, pending] : annotations_) {
            if (!declared_classes_.contains(subject))
                raise(ErrorKind::validation,
                      "annotation on undeclared class ':" + subject + "'", pending.line);
        }

        // Category of each class = the root its parent chain reaches.
        std::map<std::string, Category> category_of;
        for (Category c : all_categories()) category_of[std::string(category_name(c))] = c;
        auto resolve_category = [&](const std::string& id) {
            std::vector<std::string> chain;
            std::string cur = id;
            while (!category_of.contains(cur)) {
                if (std::find(chain.begin(), chain.end(), cur) != chain.end())
                    raise(ErrorKind::validation, "SubClassOf axioms form a cycle at ':" + cur +
                                                     "'");
                chain.push_back(cur);
                auto it = parent_of.find(cur);
                if (it == parent_of.end())
                    raise(ErrorKind::validation,
                          "class ':" + cur + "' is not connected to a category root");
                cur = it->second.first;
            }
            for (const auto& link : chain) category_of[link] = category_of[cur];
        };
        for (const auto& [id, line] : declared_classes_) resolve_category(id);

        std::vector<ConceptNode> nodes;
        nodes.reserve(declared_classes_.size());
        for (const auto& [id, line] : declared_classes_) {
            ConceptNode node;
            node.concept_id = id;
            node.category = category_of.at(id);
            auto parent = parent_of.find(id);
            if (parent != parent_of.end()) node.parent_id = parent->second.first;
            auto pending = annotations_.find(id);
            if (pending != annotations_.end()) {
                node.label = pending->second.label.value_or(id);
                node.annotations = pending->second.set;
            } else {
                node.label = id;
            }
            node.scaffold = !node.parent_id.has_value();
            nodes.push_back(std::move(node));
        }
        return Ontology::from_nodes(std::move(nodes));
    }

    struct SubClassAxiom {
        std::string child;
        std::string parent;
        std::size_t line;
    };

    OwlLexer lexer_;
    Token cur_;
    std::map<std::string, std::string> prefixes_;
    std::map<std::string, std::size_t> declared_classes_; // id -> line
    std::vector<std::string> declared_properties_;
    std::vector<SubClassAxiom> subclass_axioms_;
    std::map<std::string, PendingAnnotations> annotations_;
};

} // namespace

Ontology parse_owl(std::string_view text) {
    OwlParser parser(text);
    return parser.parse();
}

Ontology load_owl_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(ErrorKind::io, "cannot open ontology file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_owl(buffer.str());
}

} // namespace critont
