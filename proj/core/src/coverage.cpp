#include "critont/coverage.hpp"

#include "critont/errors.hpp"
#include "critont/jenks.hpp"
#include "critont/util.hpp"

#include <algorithm>

namespace critont {

std::uint64_t FrequencyTable::count_of(Category category, std::string_view concept_id) const {
    auto cat = counts.find(category);
    if (cat == counts.end()) return 0;
    auto it = cat->second.find(std::string(concept_id));
    return it == cat->second.end() ? 0 : it->second;
}

FrequencyTable count_frequencies(const std::vector<EntityMention>& mentions) {
    FrequencyTable table;
    for (const auto& mention : mentions) {
        ++table.counts[mention.category][mention.concept_id];
    }
    table.total_mentions = mentions.size();
    return table;
}

bool SeedSelection::contains(Category category, std::string_view concept_id) const {
    auto it = per_category.find(category);
    if (it == per_category.end()) return false;
    return std::find(it->second.begin(), it->second.end(), concept_id) != it->second.end();
}

std::set<std::string, std::less<>> SeedSelection::concept_ids() const {
    std::set<std::string, std::less<>> ids;
    for (const auto& [category, concepts] : per_category)
        ids.insert(concepts.begin(), concepts.end());
    return ids;
}

SeedSelection select_seed(const FrequencyTable& freqs, std::size_t k) {
    SeedSelection seed;
    for (const auto& [category, concepts] : freqs.counts) {
        std::vector<std::pair<std::uint64_t, std::string>> ranked;
        ranked.reserve(concepts.size());
        for (const auto& [id, count] : concepts) ranked.emplace_back(count, id);
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        if (ranked.size() > k) ranked.resize(k);
        auto& out = seed.per_category[category];
        out.reserve(ranked.size());
        for (auto& [count, id] : ranked) out.push_back(std::move(id));
    }
    return seed;
}

double coverage_score(const std::set<std::string, std::less<>>& concept_set,
                      const std::vector<EntityMention>& mentions) {
    if (mentions.empty()) return 0.0;
    std::uint64_t covered = 0;
    for (const auto& mention : mentions)
        if (concept_set.contains(mention.concept_id)) ++covered;
    return static_cast<double>(covered) / static_cast<double>(mentions.size());
}

double coverage_score(const Ontology& ontology, const std::vector<EntityMention>& mentions) {
    if (mentions.empty()) return 0.0;
    std::uint64_t covered = 0;
    for (const auto& mention : mentions)
        if (ontology.contains(mention.concept_id)) ++covered;
    return static_cast<double>(covered) / static_cast<double>(mentions.size());
}

CoverageSeries enrichment_series(const FrequencyTable& freqs, const SeedSelection& seed,
                                 const PipelineConfig& config) {
    CoverageSeries series;
    series.total_mentions = freqs.total_mentions;

    for (const auto& [category, concepts] : seed.per_category)
        for (const auto& id : concepts) series.baseline_covered += freqs.count_of(category, id);
    series.baseline = series.total_mentions == 0
                          ? 0.0
                          : static_cast<double>(series.baseline_covered) /
                                static_cast<double>(series.total_mentions);

    struct Candidate {
        std::uint64_t count;
        std::string_view category_name;
        std::string_view concept_id;
        Category category;
    };
    std::vector<Candidate> candidates;
    for (const auto& [category, concepts] : freqs.counts) {
        if (config.enrichment_disabled_categories.contains(category)) continue;
        for (const auto& [id, count] : concepts) {
            if (seed.contains(category, id)) continue;
            candidates.push_back({count, category_name(category), id, category});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.count != b.count) return a.count > b.count;
        if (a.category_name != b.category_name) return a.category_name < b.category_name;
        return a.concept_id < b.concept_id;
    });

    std::uint64_t covered = series.baseline_covered;
    series.additions.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const Candidate& c = candidates[i];
        covered += c.count;
        CoverageAddition addition;
        addition.rank = i + 1;
        addition.concept_id = std::string(c.concept_id);
        addition.category = c.category;
        addition.count = c.count;
        addition.gain =
            static_cast<double>(c.count) / static_cast<double>(series.total_mentions);
        addition.cumulative =
            static_cast<double>(covered) / static_cast<double>(series.total_mentions);
        series.additions.push_back(std::move(addition));
    }
    return series;
}

std::size_t find_threshold(const CoverageSeries& series, ClusterOn cluster_on) {
    if (series.additions.empty())
        raise(ErrorKind::argument, "cannot find a threshold on an empty series");
    std::vector<double> values;
    values.reserve(series.additions.size());
    for (const auto& a : series.additions)
        values.push_back(cluster_on == ClusterOn::gains ? a.gain : a.cumulative);

    if (cluster_on == ClusterOn::gains) return threshold_prefix_length(values);

    // Cumulative values are non-decreasing in rank, so the low-valued Jenks
    // class is the leading ramp of the curve; its length is the threshold.
    bool all_equal =
        std::all_of(values.begin(), values.end(), [&](double v) { return v == values[0]; });
    if (all_equal) return values.size();
    JenksResult two = jenks_breaks(values, 2);
    return two.class_boundaries.front();
}

double apply_threshold(Ontology& ontology, const CoverageSeries& series, std::size_t p,
                       const PipelineConfig& config) {
    if (p > series.additions.size())
        raise(ErrorKind::argument, "threshold p exceeds the series length");
    for (std::size_t i = 0; i < p; ++i) {
        const CoverageAddition& a = series.additions[i];
        std::string parent;
        auto it = config.default_parents.find(a.category);
        parent = it == config.default_parents.end() ? std::string(category_name(a.category))
                                                    : it->second;
        ontology.add_concept(a.concept_id, a.concept_id, a.category, std::move(parent), {});
    }
    return p == 0 ? series.baseline : series.additions[p - 1].cumulative;
}

std::string format_series_csv(const CoverageSeries& series) {
    std::string out = "rank,concept_id,category,gain,cumulative\n";
    for (const auto& a : series.additions) {
        out += std::to_string(a.rank);
        out += ',';
        out += a.concept_id;
        out += ',';
        out += category_name(a.category);
        out += ',';
        out += to_string_shortest(a.gain);
        out += ',';
        out += to_string_shortest(a.cumulative);
        out += '\n';
    }
    return out;
}

CoverageSeries parse_series_csv(std::string_view csv) {
    CoverageSeries series;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (pos < csv.size()) {
        std::size_t nl = csv.find('\n', pos);
        std::string_view line =
            csv.substr(pos, nl == std::string_view::npos ? csv.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? csv.size() : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != "rank,concept_id,category,gain,cumulative")
                raise(ErrorKind::parse, "unexpected curve CSV header", line_no);
            saw_header = true;
            continue;
        }
        std::vector<std::string_view> fields;
        std::size_t fpos = 0;
        while (true) {
            std::size_t comma = line.find(',', fpos);
            if (comma == std::string_view::npos) {
                fields.push_back(line.substr(fpos));
                break;
            }
            fields.push_back(line.substr(fpos, comma - fpos));
            fpos = comma + 1;
        }
        if (fields.size() != 5)
            raise(ErrorKind::parse, "expected 5 comma-separated columns", line_no);
        CoverageAddition a;
        auto rank = parse_uint(fields[0]);
        if (!rank)
            raise(ErrorKind::parse, "bad rank value", line_no);
        a.rank = static_cast<std::size_t>(*rank);
        if (a.rank != series.additions.size() + 1)
            raise(ErrorKind::validation, "ranks must be contiguous from 1", line_no);
        a.concept_id = std::string(fields[1]);
        auto category = category_from_name(fields[2]);
        if (!category)
            raise(ErrorKind::validation, "unknown category '" + std::string(fields[2]) + "'",
                  line_no);
        a.category = *category;
        auto gain = parse_double(fields[3]);
        auto cumulative = parse_double(fields[4]);
        if (!gain || !cumulative)
            raise(ErrorKind::parse, "bad numeric value", line_no);
        a.gain = *gain;
        a.cumulative = *cumulative;
        series.additions.push_back(std::move(a));
    }
    if (!saw_header)
        raise(ErrorKind::parse, "curve CSV is empty");
    if (!series.additions.empty())
        series.baseline = series.additions.front().cumulative - series.additions.front().gain;
    return series;
}

void validate_series(const CoverageSeries& series) {
    constexpr double tolerance = 1e-12;
    double previous_gain = 0.0;
    double previous_cumulative = series.baseline;
    for (std::size_t i = 0; i < series.additions.size(); ++i) {
        const CoverageAddition& a = series.additions[i];
        if (a.rank != i + 1)
            raise(ErrorKind::validation, "series ranks must be contiguous from 1");
        if (a.gain < 0.0)
            raise(ErrorKind::validation, "series gains must be non-negative");
        if (i > 0 && a.gain > previous_gain + tolerance)
            raise(ErrorKind::validation, "series gains must be non-increasing");
        if (a.cumulative + tolerance < previous_cumulative)
            raise(ErrorKind::validation, "series cumulative values must be non-decreasing");
        double chained = previous_cumulative + a.gain;
        double diff = a.cumulative > chained ? a.cumulative - chained : chained - a.cumulative;
        if (diff > tolerance)
            raise(ErrorKind::validation, "series cumulative values do not chain from the gains");
        previous_gain = a.gain;
        previous_cumulative = a.cumulative;
    }
}

} // namespace critont
