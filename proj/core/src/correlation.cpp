#include "maskreg/correlation.h"
#include "maskreg/csv.h"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace maskreg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double correlation_from_moments(double cxx, double cyy, double cxy)
{
    return std::clamp(cxy / std::sqrt(cxx * cyy), -1.0, 1.0);
}

} // namespace

double pearson_p_value(double r, std::size_t n)
{
    if (n < 3) {
        throw std::invalid_argument("pearson_p_value: need at least 3 samples");
    }
    const double a = std::abs(r);
    if (a >= 1.0) {
        return 0.0;
    }
    const double df = double(n - 2);
    const double t = a * std::sqrt(df) / std::sqrt(1.0 - a * a);
    const boost::math::students_t dist(df);
    return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, t)));
}

PearsonResult pearson(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) {
        throw std::invalid_argument("pearson: length mismatch");
    }
    PearsonResult out;
    out.n = x.size();
    out.r = kNaN;
    out.p = kNaN;
    if (out.n < 3) {
        return out;
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < out.n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(out.n);
    my /= double(out.n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < out.n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) {
        return out;
    }
    out.r = correlation_from_moments(sxx, syy, sxy);
    out.p = pearson_p_value(out.r, out.n);
    out.valid = true;
    return out;
}

void CovariateTable::add(const std::string& subject, double value)
{
    if (!std::isfinite(value)) {
        throw std::invalid_argument("covariate for '" + subject + "' is not finite");
    }
    if (!_index.emplace(subject, value).second) {
        throw std::invalid_argument("duplicate covariate subject '" + subject + "'");
    }
    _order.push_back(subject);
}

double CovariateTable::at(const std::string& subject) const
{
    auto it = _index.find(subject);
    if (it == _index.end()) {
        throw std::out_of_range("no covariate for subject '" + subject + "'");
    }
    return it->second;
}

CovariateTable read_covariates(const std::filesystem::path& path)
{
    const CsvTable t = read_csv(path);
    const auto cs = t.column("subject");
    const auto cv = t.column("covariate");
    CovariateTable table;
    for (const auto& row : t.rows) {
        table.add(row[cs], parse_real(row[cv]));
    }
    return table;
}

void CorrelationAccumulator::add(const std::string& subject, double covariate, const ScalarVolume& values,
                                 const ScalarVolume& ff)
{
    if (!std::isfinite(covariate)) {
        throw std::invalid_argument("correlate: covariate for '" + subject + "' is not finite");
    }
    if (std::find(_seen.begin(), _seen.end(), subject) != _seen.end()) {
        throw std::invalid_argument("correlate: subject '" + subject + "' added twice");
    }
    require_same_grid(values.meta(), ff.meta(), "correlate");
    if (_seen.empty()) {
        _meta = values.meta();
        _moments.assign(values.size(), Moments{});
    }
    else {
        require_same_grid(_meta, values.meta(), "correlate");
    }
    _seen.push_back(subject);

    for (std::size_t i = 0; i < _moments.size(); ++i) {
        if (!(ff[i] > 0.0f)) {
            continue;
        }
        Moments& m = _moments[i];
        ++m.n;
        const double y = values[i];
        const double dx = covariate - m.mean_x;
        const double dy = y - m.mean_y;
        m.mean_x += dx / double(m.n);
        m.mean_y += dy / double(m.n);
        m.cxx += dx * (covariate - m.mean_x);
        m.cyy += dy * (y - m.mean_y);
        m.cxy += dx * (y - m.mean_y);
    }
}

CorrelationMaps CorrelationAccumulator::result() const
{
    if (_seen.empty()) {
        throw std::logic_error("correlate: no subjects");
    }
    CorrelationMaps out{ScalarVolume(_meta), ScalarVolume(_meta), ScalarVolume(_meta)};
    for (std::size_t i = 0; i < _moments.size(); ++i) {
        const Moments& m = _moments[i];
        out.n[i] = float(m.n);
        if (m.n < 3 || !(m.cxx > 0.0) || !(m.cyy > 0.0)) {
            out.r[i] = float(kNaN);
            out.p[i] = float(kNaN);
            continue;
        }
        const double r = correlation_from_moments(m.cxx, m.cyy, m.cxy);
        out.r[i] = float(r);
        out.p[i] = float(pearson_p_value(r, m.n));
    }
    return out;
}

CorrelationMaps correlate(const CovariateTable& covariates, std::span<const CohortSample> samples)
{
    CorrelationAccumulator acc;
    for (const auto& s : samples) {
        acc.add(s.subject, covariates.at(s.subject), s.values, s.ff);
    }
    return acc.result();
}

} // namespace maskreg
