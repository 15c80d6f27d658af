#pragma once

#include "common.h"

#include <string>
#include <vector>

namespace maskreg::cli {

/// Every flag of every subcommand; each subcommand reads the ones it owns.
struct Options
{
    fs::path out = ".";
    int workers = 1;
    std::string config;
    bool no_masks = false;
    bool verbose = false;

    std::string reference_channels;
    std::string moving_channels;
    std::string channel_names = "ff,wf,sat,muscle";
    std::string mask_channels = "sat,muscle";
    std::string labels;
    std::string reference_labels;
    std::string manifest;
    std::string covariates;
    std::string subject;

    std::string field;
    std::string input;
    std::string inputs;
    std::string column;
    std::string include_column = "ff_warped";

    std::string dice_a;
    std::string dice_b;

    std::string parameter = "regularization_weight";
    std::string values;

    std::string dims = "64,64,64";
    unsigned long long seed = 1;
    int subjects = 1;
    int organs = 4;
    bool ambiguous = false;
    std::string translation;
    double amplitude = 1.5;
    double min_period = 0.6;
    double max_period = 1.0;
    double max_translation = 2.0;
};

Json run_register(const Options& o);
Json run_warp(const Options& o);
Json run_jacobian(const Options& o);
Json run_dice(const Options& o);
Json run_lefm(const Options& o);
Json run_aggregate(const Options& o);
Json run_correlate(const Options& o);
Json run_compare(const Options& o);
Json run_sweep(const Options& o);
Json run_phantom(const Options& o);

/// Grid for the sweep: the given list, or 10 equally spaced regularization
/// weights in [0.05, 0.5], or the 8 mask weights between 0.2 and 8.
std::vector<double> sweep_values(const std::string& parameter, const std::string& values);

} // namespace maskreg::cli
