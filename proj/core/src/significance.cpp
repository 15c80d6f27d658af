#include "maskreg/significance.h"
#include "maskreg/csv.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <stdexcept>

namespace maskreg {

namespace {

struct SignedRanks
{
    std::vector<long> doubled; ///< 2 * midrank, always integral
    std::vector<bool> positive;
    std::vector<std::size_t> tie_sizes;
};

SignedRanks signed_ranks(std::span<const double> differences)
{
    std::vector<double> d;
    for (double v : differences) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("wilcoxon: non-finite difference");
        }
        if (v != 0.0) {
            d.push_back(v);
        }
    }
    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(d[a]) < std::abs(d[b]);
    });

    SignedRanks out;
    out.doubled.resize(d.size());
    out.positive.resize(d.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && std::abs(d[order[j + 1]]) == std::abs(d[order[i]])) {
            ++j;
        }
        // Ranks i+1 .. j+1 share their mean; doubled it is i + j + 2.
        for (std::size_t k = i; k <= j; ++k) {
            out.doubled[k] = long(i + j + 2);
            out.positive[k] = d[order[k]] > 0.0;
        }
        out.tie_sizes.push_back(j - i + 1);
        i = j + 1;
    }
    return out;
}

double w_plus_of(const SignedRanks& s)
{
    long w2 = 0;
    for (std::size_t i = 0; i < s.doubled.size(); ++i) {
        if (s.positive[i]) {
            w2 += s.doubled[i];
        }
    }
    return double(w2) / 2.0;
}

double exact_p(const SignedRanks& s)
{
    const std::size_t n = s.doubled.size();
    if (n == 0) {
        return 1.0;
    }
    // counts[t] = number of sign patterns whose positive doubled-rank sum is t.
    const long total = std::accumulate(s.doubled.begin(), s.doubled.end(), 0L);
    std::vector<double> counts(std::size_t(total) + 1, 0.0);
    counts[0] = 1.0;
    long reach = 0;
    for (long r : s.doubled) {
        for (long t = reach; t >= 0; --t) {
            counts[std::size_t(t + r)] += counts[std::size_t(t)];
        }
        reach += r;
    }
    long w2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (s.positive[i]) {
            w2 += s.doubled[i];
        }
    }
    double lower = 0.0, upper = 0.0;
    for (long t = 0; t <= total; ++t) {
        if (t <= w2) {
            lower += counts[std::size_t(t)];
        }
        if (t >= w2) {
            upper += counts[std::size_t(t)];
        }
    }
    const double patterns = std::ldexp(1.0, int(n));
    return std::min(1.0, 2.0 * std::min(lower, upper) / patterns);
}

double normal_p(const SignedRanks& s)
{
    const double n = double(s.doubled.size());
    if (n == 0) {
        return 1.0;
    }
    double ties = 0.0;
    for (std::size_t t : s.tie_sizes) {
        const double tt = double(t);
        ties += tt * tt * tt - tt;
    }
    const double mean = n * (n + 1.0) / 4.0;
    const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - ties / 48.0;
    if (!(var > 0.0)) {
        return 1.0;
    }
    const double z = std::max(0.0, std::abs(w_plus_of(s) - mean) - 0.5) / std::sqrt(var);
    return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

} // namespace

double wilcoxon_exact_p(std::span<const double> differences)
{
    return exact_p(signed_ranks(differences));
}

double wilcoxon_normal_p(std::span<const double> differences)
{
    return normal_p(signed_ranks(differences));
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> differences)
{
    const SignedRanks s = signed_ranks(differences);
    WilcoxonResult out;
    out.n = s.doubled.size();
    out.w_plus = w_plus_of(s);
    out.exact = out.n <= kWilcoxonExactLimit;
    out.p = out.exact ? exact_p(s) : normal_p(s);
    return out;
}

std::vector<double> bonferroni(std::span<const double> pvals, std::size_t m)
{
    if (m < pvals.size()) {
        throw std::invalid_argument("bonferroni: m is smaller than the number of tests");
    }
    std::vector<double> out;
    out.reserve(pvals.size());
    for (double p : pvals) {
        out.push_back(std::min(1.0, double(m) * p));
    }
    return out;
}

std::vector<LabelComparison> compare_dice_tables(const DiceTable& a, const DiceTable& b)
{
    std::map<int, std::map<std::string, double>> by_label_b;
    for (const auto& r : b) {
        by_label_b[r.label_id][r.subject] = r.dice;
    }
    std::map<int, std::vector<std::pair<double, double>>> pairs;
    std::map<int, std::string> names;
    for (const auto& r : a) {
        auto lb = by_label_b.find(r.label_id);
        if (lb == by_label_b.end()) {
            continue;
        }
        auto sb = lb->second.find(r.subject);
        if (sb == lb->second.end()) {
            continue;
        }
        pairs[r.label_id].emplace_back(r.dice, sb->second);
        names.emplace(r.label_id, r.label_name);
    }

    std::vector<LabelComparison> rows;
    std::vector<double> pvals;
    for (const auto& [label, ps] : pairs) {
        LabelComparison c;
        c.label_id = label;
        c.label_name = names[label];
        c.pairs = ps.size();
        std::vector<double> diff;
        for (const auto& [x, y] : ps) {
            c.mean_a += x;
            c.mean_b += y;
            diff.push_back(x - y);
        }
        c.mean_a /= double(ps.size());
        c.mean_b /= double(ps.size());
        c.p = wilcoxon_signed_rank(diff).p;
        pvals.push_back(c.p);
        rows.push_back(c);
    }
    const auto adjusted = bonferroni(pvals, pvals.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].p_adjusted = adjusted[i];
        rows[i].significant = adjusted[i] < kSignificanceLevel;
    }
    return rows;
}

void write_comparison_table(const std::vector<LabelComparison>& rows, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << "label_id,label_name,pairs,mean_a,mean_b,p,p_adjusted,significant\n";
    for (const auto& r : rows) {
        out << r.label_id << ',' << csv_escape(r.label_name) << ',' << r.pairs << ',' << format_real(r.mean_a) << ','
            << format_real(r.mean_b) << ',' << format_real(r.p) << ',' << format_real(r.p_adjusted) << ','
            << (r.significant ? 1 : 0) << '\n';
    }
}

} // namespace maskreg
