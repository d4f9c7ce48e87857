#pragma once

#include "critont/category.hpp"
#include "critont/lexicon.hpp"
#include "critont/ontology.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace critont {

// Exact per-(category, concept) mention counts; total_mentions is the
// denominator of every coverage fraction.
struct FrequencyTable {
    std::map<Category, std::map<std::string, std::uint64_t>> counts;
    std::uint64_t total_mentions = 0;

    std::uint64_t count_of(Category category, std::string_view concept_id) const;
};

FrequencyTable count_frequencies(const std::vector<EntityMention>& mentions);

// Top-k concepts per category, count descending, ties by ascending id.
struct SeedSelection {
    std::map<Category, std::vector<std::string>> per_category;

    bool contains(Category category, std::string_view concept_id) const;
    std::set<std::string, std::less<>> concept_ids() const;
};

SeedSelection select_seed(const FrequencyTable& freqs, std::size_t k);

enum class ClusterOn { gains, cumulative };

struct PipelineConfig {
    std::size_t seed_size = 20;
    std::size_t jenks_class_count = 2; // threshold finding is fixed at 2
    std::set<Category> enrichment_disabled_categories = {Category::SDoH};
    ClusterOn cluster_on = ClusterOn::gains;
    std::map<Category, std::string> default_parents; // absent -> category root

    // The only ordering implemented; echoed into the run manifest.
    static constexpr std::string_view tie_break = "count_desc,category_asc,concept_asc";
};

// Fraction of mentions whose concept is in the set; 0 for no mentions.
double coverage_score(const std::set<std::string, std::less<>>& concept_set,
                      const std::vector<EntityMention>& mentions);
double coverage_score(const Ontology& ontology, const std::vector<EntityMention>& mentions);

// One enrichment step: the next most frequent yet unrepresented concept.
struct CoverageAddition {
    std::size_t rank = 0; // 1-based
    std::string concept_id;
    Category category = Category::Disease;
    std::uint64_t count = 0;
    double gain = 0.0;
    double cumulative = 0.0;
};

// Gains are non-increasing in rank; cumulative values are exact integer
// ratios covered_count / total_mentions, so baseline_covered plus the sum of
// addition counts reconciles exactly with the final cumulative numerator.
struct CoverageSeries {
    double baseline = 0.0;
    std::uint64_t baseline_covered = 0;
    std::uint64_t total_mentions = 0;
    std::vector<CoverageAddition> additions;
};

// Candidates are all non-seed concepts of enabled categories merged into one
// queue ordered by count desc, category name asc, concept id asc.
CoverageSeries enrichment_series(const FrequencyTable& freqs, const SeedSelection& seed,
                                 const PipelineConfig& config);

// Chosen threshold over the series. cluster_on == gains splits the marginal
// gains and returns the high-impact prefix length; cluster_on == cumulative
// splits the cumulative curve and returns the first-class length. Throws
// Error{argument} on an empty series.
std::size_t find_threshold(const CoverageSeries& series, ClusterOn cluster_on = ClusterOn::gains);

// Materializes the first p additions as concepts (label = concept id) under
// the category's default parent or root. Returns the resulting coverage,
// which equals the series cumulative at rank p.
double apply_threshold(Ontology& ontology, const CoverageSeries& series, std::size_t p,
                       const PipelineConfig& config);

// Writes / reads the enrichment curve CSV (rank,concept_id,category,gain,
// cumulative). Floats use shortest round-trip formatting.
std::string format_series_csv(const CoverageSeries& series);
CoverageSeries parse_series_csv(std::string_view csv);

// Re-checks the CoverageSeries invariants (used when re-reading a curve):
// non-increasing gains, non-decreasing cumulative, chain consistency within
// tolerance. Throws Error{validation} on violation.
void validate_series(const CoverageSeries& series);

} // namespace critont
