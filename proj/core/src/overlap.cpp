#include "maskreg/overlap.h"
#include "maskreg/csv.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>

namespace maskreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Exact 1D lower envelope of parabolas (Felzenszwalb & Huttenlocher) along
// one line; positions are index * spacing.
void envelope_1d(const double* f, double* out, int n, double spacing, std::vector<int>& v, std::vector<double>& z)
{
    v.resize(std::size_t(n));
    z.resize(std::size_t(n) + 1);
    int k = -1;
    for (int q = 0; q < n; ++q) {
        if (f[q] == kInf) {
            continue;
        }
        const double pq = q * spacing;
        double s = -kInf;
        while (k >= 0) {
            const double pv = v[std::size_t(k)] * spacing;
            s = ((f[q] + pq * pq) - (f[v[std::size_t(k)]] + pv * pv)) / (2.0 * (pq - pv));
            if (s <= z[std::size_t(k)]) {
                --k;
                s = -kInf;
            }
            else {
                break;
            }
        }
        ++k;
        v[std::size_t(k)] = q;
        z[std::size_t(k)] = k == 0 ? -kInf : s;
        z[std::size_t(k) + 1] = kInf;
    }
    if (k < 0) {
        std::fill(out, out + n, kInf);
        return;
    }
    int j = 0;
    for (int i = 0; i < n; ++i) {
        const double pi = i * spacing;
        while (z[std::size_t(j) + 1] < pi) {
            ++j;
        }
        const double d = pi - v[std::size_t(j)] * spacing;
        out[i] = d * d + f[v[std::size_t(j)]];
    }
}

std::vector<bool> label_mask(const LabelVolume& v, int label)
{
    std::vector<bool> m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        m[i] = v[i] == label;
    }
    return m;
}

} // namespace

std::vector<double> squared_distance_transform(const GridMeta& meta, const std::vector<bool>& inside)
{
    const Int3 d = meta.dims;
    std::vector<double> dt(inside.size());
    for (std::size_t i = 0; i < inside.size(); ++i) {
        dt[i] = inside[i] ? 0.0 : kInf;
    }

    const std::size_t stride[3] = {1, std::size_t(d.x), std::size_t(d.x) * std::size_t(d.y)};
    std::vector<double> line_in, line_out;
    std::vector<int> v;
    std::vector<double> z;
    for (int axis = 0; axis < 3; ++axis) {
        const int n = d[axis];
        line_in.resize(std::size_t(n));
        line_out.resize(std::size_t(n));
        const int a1 = (axis + 1) % 3;
        const int a2 = (axis + 2) % 3;
        for (int j = 0; j < d[a2]; ++j) {
            for (int i = 0; i < d[a1]; ++i) {
                const std::size_t base = std::size_t(i) * stride[a1] + std::size_t(j) * stride[a2];
                for (int t = 0; t < n; ++t) {
                    line_in[std::size_t(t)] = dt[base + std::size_t(t) * stride[axis]];
                }
                envelope_1d(line_in.data(), line_out.data(), n, meta.spacing[axis], v, z);
                for (int t = 0; t < n; ++t) {
                    dt[base + std::size_t(t) * stride[axis]] = line_out[std::size_t(t)];
                }
            }
        }
    }
    return dt;
}

std::optional<double> dice(const LabelVolume& a, const LabelVolume& b, int label)
{
    require_same_grid(a.meta(), b.meta(), "dice");
    std::size_t na = 0, nb = 0, both = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const bool ia = a[i] == label;
        const bool ib = b[i] == label;
        na += ia;
        nb += ib;
        both += ia && ib;
    }
    if (na + nb == 0) {
        return std::nullopt;
    }
    return 2.0 * double(both) / double(na + nb);
}

double directed_hausdorff(const LabelVolume& a, const LabelVolume& b, int label)
{
    require_same_grid(a.meta(), b.meta(), "hausdorff");
    const auto in_a = label_mask(a, label);
    const auto in_b = label_mask(b, label);
    if (std::find(in_a.begin(), in_a.end(), true) == in_a.end() ||
        std::find(in_b.begin(), in_b.end(), true) == in_b.end()) {
        throw std::invalid_argument("hausdorff: label " + std::to_string(label) + " is empty in one volume");
    }
    const auto dt = squared_distance_transform(b.meta(), in_b);
    double worst = 0.0;
    for (std::size_t i = 0; i < in_a.size(); ++i) {
        if (in_a[i]) {
            worst = std::max(worst, dt[i]);
        }
    }
    return std::sqrt(worst);
}

double hausdorff(const LabelVolume& a, const LabelVolume& b, int label)
{
    return std::max(directed_hausdorff(a, b, label), directed_hausdorff(b, a, label));
}

DiceTable dice_rows(const std::string& subject, const LabelVolume& reference, const LabelVolume& warped)
{
    require_same_grid(reference.meta(), warped.meta(), "dice_rows");
    std::set<int> labels;
    for (int id : reference.foreground_labels()) {
        labels.insert(id);
    }
    for (int id : warped.foreground_labels()) {
        labels.insert(id);
    }
    DiceTable rows;
    for (int id : labels) {
        auto d = dice(reference, warped, id);
        if (d) {
            rows.push_back({subject, id, reference.names().count(id) ? reference.name_of(id) : warped.name_of(id), *d});
        }
    }
    return rows;
}

void write_dice_table(const DiceTable& table, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << "subject,label_id,label_name,dice\n";
    for (const auto& r : table) {
        out << csv_escape(r.subject) << ',' << r.label_id << ',' << csv_escape(r.label_name) << ','
            << format_real(r.dice) << '\n';
    }
}

DiceTable read_dice_table(const std::filesystem::path& path)
{
    const CsvTable t = read_csv(path);
    const auto cs = t.column("subject");
    const auto cl = t.column("label_id");
    const auto cn = t.column("label_name");
    const auto cd = t.column("dice");
    DiceTable table;
    for (const auto& row : t.rows) {
        table.push_back({row[cs], int(parse_real(row[cl])), row[cn], parse_real(row[cd])});
    }
    return table;
}

double mean_dice(const DiceTable& table)
{
    if (table.empty()) {
        return std::nan("");
    }
    double sum = 0.0;
    for (const auto& r : table) {
        sum += r.dice;
    }
    return sum / double(table.size());
}

} // namespace maskreg
