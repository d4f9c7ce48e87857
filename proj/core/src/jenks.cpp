#include "critont/jenks.hpp"

#include "critont/errors.hpp"

#include <algorithm>
#include <limits>

namespace critont {

namespace {

// Prefix sums of v and v^2 over the sorted values, in long double so that
// class costs stay exact for integer-scaled inputs and within 1e-9 relative
// error for large real series.
struct PrefixSums {
    std::vector<long double> sum;
    std::vector<long double> sum_sq;

    explicit PrefixSums(std::span<const double> sorted) {
        sum.resize(sorted.size() + 1, 0.0L);
        sum_sq.resize(sorted.size() + 1, 0.0L);
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            long double v = sorted[i];
            sum[i + 1] = sum[i] + v;
            sum_sq[i + 1] = sum_sq[i] + v * v;
        }
    }

    // SDCM contribution of one class over sorted[a, b).
    long double cost(std::size_t a, std::size_t b) const {
        long double n = static_cast<long double>(b - a);
        long double s1 = sum[b] - sum[a];
        long double s2 = sum_sq[b] - sum_sq[a];
        long double c = s2 - (s1 * s1) / n;
        return c < 0.0L ? 0.0L : c;
    }
};

// Direct two-pass squared-deviation sum, used for the reported sdcm so the
// public value does not depend on the prefix-sum formulation.
long double direct_class_cost(std::span<const double> sorted, std::size_t a, std::size_t b) {
    long double mean = 0.0L;
    for (std::size_t i = a; i < b; ++i) mean += sorted[i];
    mean /= static_cast<long double>(b - a);
    long double acc = 0.0L;
    for (std::size_t i = a; i < b; ++i) {
        long double d = sorted[i] - mean;
        acc += d * d;
    }
    return acc;
}

} // namespace

JenksResult jenks_breaks(std::span<const double> values, std::size_t class_count) {
    if (values.empty())
        raise(ErrorKind::argument, "jenks_breaks requires a non-empty value list");
    if (class_count < 1 || class_count > values.size())
        raise(ErrorKind::argument, "class_count must be in [1, |values|]");

    JenksResult result;
    result.sorted_values.assign(values.begin(), values.end());
    std::sort(result.sorted_values.begin(), result.sorted_values.end());

    const std::size_t n = result.sorted_values.size();
    const std::size_t k = class_count;
    const PrefixSums sums(result.sorted_values);

    if (k > 1) {
        // suffix[j][i]: minimal cost of partitioning sorted[i, n) into j
        // non-empty classes, defined for i <= n - j.
        std::vector<std::vector<long double>> suffix(k + 1);
        suffix[1].resize(n);
        for (std::size_t i = 0; i < n; ++i) suffix[1][i] = sums.cost(i, n);
        for (std::size_t j = 2; j <= k; ++j) {
            suffix[j].resize(n - j + 1);
            for (std::size_t i = 0; i + j <= n; ++i) {
                long double best = std::numeric_limits<long double>::infinity();
                for (std::size_t m = i + 1; m + (j - 1) <= n; ++m) {
                    long double c = sums.cost(i, m) + suffix[j - 1][m];
                    if (c < best) best = c;
                }
                suffix[j][i] = best;
            }
        }

        // Greedy reconstruction minimizes each boundary in turn, which yields
        // the lexicographically smallest optimal boundary vector.
        std::size_t pos = 0;
        for (std::size_t j = k; j >= 2; --j) {
            for (std::size_t m = pos + 1; m + (j - 1) <= n; ++m) {
                if (sums.cost(pos, m) + suffix[j - 1][m] == suffix[j][pos]) {
                    result.class_boundaries.push_back(m);
                    pos = m;
                    break;
                }
            }
        }
    }

    long double sdcm = 0.0L;
    std::size_t begin = 0;
    for (std::size_t b : result.class_boundaries) {
        sdcm += direct_class_cost(result.sorted_values, begin, b);
        begin = b;
    }
    sdcm += direct_class_cost(result.sorted_values, begin, n);
    result.sdcm = static_cast<double>(sdcm);

    long double sdam = direct_class_cost(result.sorted_values, 0, n);
    if (sdam == 0.0L) {
        result.gvf = 1.0;
    } else {
        long double g = (sdam - sdcm) / sdam;
        result.gvf = static_cast<double>(std::clamp(g, 0.0L, 1.0L));
    }
    return result;
}

double goodness_of_variance_fit(const JenksResult& result) {
    long double sdam = direct_class_cost(result.sorted_values, 0, result.sorted_values.size());
    if (sdam == 0.0L) return 1.0;
    long double g = (sdam - static_cast<long double>(result.sdcm)) / sdam;
    return static_cast<double>(std::clamp(g, 0.0L, 1.0L));
}

std::size_t threshold_prefix_length(std::span<const double> gains_desc) {
    if (gains_desc.empty())
        raise(ErrorKind::argument, "threshold requires a non-empty gain sequence");
    const std::size_t n = gains_desc.size();
    bool all_equal = std::all_of(gains_desc.begin(), gains_desc.end(),
                                 [&](double g) { return g == gains_desc[0]; });
    if (all_equal) return n;
    JenksResult two = jenks_breaks(gains_desc, 2);
    // sorted ascending: the higher-valued class is the suffix [b, n), and with
    // non-increasing gains it corresponds to the rank prefix of length n - b.
    return n - two.class_boundaries.front();
}

} // namespace critont
