#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace critont {

// The seven semantic categories every concept belongs to. The enum order is
// the declaration order used for category roots; orderings that must be
// deterministic across platforms sort by name() instead.
enum class Category {
    Disease,
    Medication,
    DiagnosticTest,
    Procedure,
    SDoH,
    RatingCriteria,
    Fertility,
};

inline constexpr std::size_t category_count = 7;

constexpr std::array<Category, category_count> all_categories() {
    return {Category::Disease,        Category::Medication, Category::DiagnosticTest,
            Category::Procedure,      Category::SDoH,       Category::RatingCriteria,
            Category::Fertility};
}

constexpr std::string_view category_name(Category c) {
    switch (c) {
    case Category::Disease: return "Disease";
    case Category::Medication: return "Medication";
    case Category::DiagnosticTest: return "DiagnosticTest";
    case Category::Procedure: return "Procedure";
    case Category::SDoH: return "SDoH";
    case Category::RatingCriteria: return "RatingCriteria";
    case Category::Fertility: return "Fertility";
    }
    return "";
}

std::optional<Category> category_from_name(std::string_view name);

} // namespace critont
