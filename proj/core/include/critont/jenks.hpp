#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace critont {

// Optimal 1-D classification of sorted values into contiguous classes.
// class_boundaries holds class_count-1 strictly increasing split indices
// into sorted_values; class j covers [boundary_{j-1}, boundary_j).
struct JenksResult {
    std::vector<double> sorted_values;
    std::vector<std::size_t> class_boundaries;
    double sdcm = 0.0; // sum over classes of squared deviations from the class mean
    double gvf = 0.0;  // (sdam - sdcm) / sdam; 1 when sdam == 0
};

// Fisher-style dynamic program minimizing the sum of squared deviations from
// class means (SDCM). The returned partition is a guaranteed global optimum;
// among equal-cost partitions the lexicographically smallest boundary vector
// is chosen. Class costs use long double prefix sums of v and v^2; the
// reported sdcm is recomputed per class by a direct two-pass sum. Throws
// Error{argument} unless 1 <= class_count <= |values| and values is non-empty.
JenksResult jenks_breaks(std::span<const double> values, std::size_t class_count);

// (sdam - sdcm) / sdam recomputed from the result; 1 by convention when all
// values are equal.
double goodness_of_variance_fit(const JenksResult& result);

// Two-class split of a non-increasing gain sequence: the returned p is the
// length of the high-impact rank prefix (the size of the higher-valued Jenks
// class). All gains equal -> p = n (no long tail). Throws Error{argument} on
// an empty sequence.
std::size_t threshold_prefix_length(std::span<const double> gains_desc);

} // namespace critont
