#pragma once

#include "maskreg/overlap.h"

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace maskreg {

/// Largest number of nonzero differences handled by the exact null distribution.
inline constexpr std::size_t kWilcoxonExactLimit = 25;

struct WilcoxonResult
{
    double p = 1.0;        ///< two-sided
    double w_plus = 0.0;   ///< sum of (mid)ranks of the positive differences
    std::size_t n = 0;     ///< nonzero differences
    bool exact = true;
};

/// Paired signed-rank test on differences. Zeros are dropped and tied |d|
/// receive midranks. Exact null for n <= kWilcoxonExactLimit, otherwise
/// the normal approximation. All-zero input gives p = 1.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> differences);

/// Exact two-sided p over all 2^n sign assignments (midranks, zeros dropped).
double wilcoxon_exact_p(std::span<const double> differences);

/// Normal approximation with tie-corrected variance and 0.5 continuity correction.
double wilcoxon_normal_p(std::span<const double> differences);

/// min(1, m * p) for each p; throws std::invalid_argument if m < pvals.size().
std::vector<double> bonferroni(std::span<const double> pvals, std::size_t m);

inline constexpr double kSignificanceLevel = 0.05;

struct LabelComparison
{
    int label_id = 0;
    std::string label_name;
    std::size_t pairs = 0;
    double mean_a = 0.0;
    double mean_b = 0.0;
    double p = 1.0;
    double p_adjusted = 1.0; ///< Bonferroni over the compared labels
    bool significant = false;
};

/// Per label, pairs rows by subject, tests a - b, and corrects across labels.
std::vector<LabelComparison> compare_dice_tables(const DiceTable& a, const DiceTable& b);

/// CSV `label_id,label_name,pairs,mean_a,mean_b,p,p_adjusted,significant`.
void write_comparison_table(const std::vector<LabelComparison>& rows, const std::filesystem::path& path);

} // namespace maskreg
