#pragma once

#include "maskreg/volume.h"

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace maskreg {

struct PearsonResult
{
    double r = 0.0;
    double p = 1.0;
    std::size_t n = 0;
    bool valid = false; ///< false when n < 3 or either variable is constant; r and p are NaN then
};

/// Pearson r with a two-sided p from Student's t on n - 2 degrees of freedom.
/// |r| = 1 gives p = 0.
PearsonResult pearson(std::span<const double> x, std::span<const double> y);

/// Two-sided p for a correlation r over n samples; requires n >= 3.
double pearson_p_value(double r, std::size_t n);

/// Subject id -> covariate (ids unique, values finite), in file order.
class CovariateTable
{
public:
    /// Throws std::invalid_argument on a duplicate id or non-finite value.
    void add(const std::string& subject, double value);

    bool contains(const std::string& subject) const { return _index.count(subject) != 0; }
    /// Throws std::out_of_range naming the subject when absent.
    double at(const std::string& subject) const;

    const std::vector<std::string>& subjects() const { return _order; }
    std::size_t size() const { return _order.size(); }

private:
    std::map<std::string, double> _index;
    std::vector<std::string> _order;
};

/// CSV `subject,covariate`.
CovariateTable read_covariates(const std::filesystem::path& path);

/// Per-voxel maps; invalid voxels (n < 3 or zero variance) hold NaN in r and
/// p, while n always holds the included-subject count.
struct CorrelationMaps
{
    ScalarVolume r;
    ScalarVolume p;
    ScalarVolume n;
};

/// Streaming voxel-wise correlation. A subject contributes at a voxel only
/// where its fat fraction is > 0.
class CorrelationAccumulator
{
public:
    /// The first call fixes the grid. Throws std::invalid_argument on grid
    /// mismatch, a non-finite covariate, or a subject id that was already added.
    void add(const std::string& subject, double covariate, const ScalarVolume& values, const ScalarVolume& ff);

    std::size_t subjects() const { return _seen.size(); }

    /// Throws std::logic_error if nothing was added.
    CorrelationMaps result() const;

private:
    struct Moments
    {
        double mean_x = 0.0;
        double mean_y = 0.0;
        double cxx = 0.0;
        double cyy = 0.0;
        double cxy = 0.0;
        std::uint32_t n = 0;
    };

    GridMeta _meta;
    std::vector<Moments> _moments;
    std::vector<std::string> _seen;
};

struct CohortSample
{
    std::string subject;
    ScalarVolume values;
    ScalarVolume ff;
};

/// Every sample's subject must appear in `covariates`.
CorrelationMaps correlate(const CovariateTable& covariates, std::span<const CohortSample> samples);

} // namespace maskreg
