#include "commands.h"

#include <maskreg/config.h>
#include <maskreg/metaimage.h>

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <iostream>

namespace {

using namespace maskreg::cli;

void error_record(const std::string& command, const std::string& kind, const std::string& message)
{
    const Json record = {{"status", "error"}, {"command", command}, {"kind", kind}, {"message", message}};
    std::cerr << record.dump() << '\n';
}

void add_registration_flags(CLI::App* cmd, Options& o)
{
    cmd->add_option("--reference-channels", o.reference_channels, "Comma-separated reference channel volumes");
    cmd->add_option("--moving-channels", o.moving_channels, "Comma-separated moving channel volumes");
    cmd->add_option("--channel-names", o.channel_names, "Names of the channels, in order")->capture_default_str();
    cmd->add_option("--mask-channels", o.mask_channels, "Channels treated as binary masks")->capture_default_str();
    cmd->add_option("--labels", o.labels, "Moving label volume");
    cmd->add_option("--manifest", o.manifest, "Subject manifest CSV");
    cmd->add_option("--subject", o.subject, "Subject id for single-subject runs");
    cmd->add_option("--config", o.config, "Registration config JSON");
    cmd->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_flag("--no-masks", o.no_masks, "Drop mask channels (intensity-only baseline)");
    cmd->add_flag("-v,--verbose", o.verbose, "Progress on stderr");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multi-channel discrete registration of fat/water MRI and cohort statistics"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--out", o.out, "Output directory")->capture_default_str();

    std::vector<std::pair<CLI::App*, std::function<Json(const Options&)>>> commands;

    auto* reg = app.add_subcommand("register", "Register subjects onto a reference");
    add_registration_flags(reg, o);
    commands.emplace_back(reg, run_register);

    auto* warp = app.add_subcommand("warp", "Warp a volume with a displacement field");
    warp->add_option("--field", o.field, "Displacement field")->required();
    warp->add_option("--input", o.input, "Scalar or label volume")->required();
    commands.emplace_back(warp, run_warp);

    auto* jac = app.add_subcommand("jacobian", "Jacobian determinant of a displacement field");
    jac->add_option("--field", o.field, "Displacement field")->required();
    commands.emplace_back(jac, run_jacobian);

    auto* dice = app.add_subcommand("dice", "Per-label Dice and Hausdorff against reference labels");
    dice->add_option("--reference-labels", o.reference_labels, "Reference label volume")->required();
    dice->add_option("--labels", o.labels, "Warped label volume");
    dice->add_option("--subject", o.subject, "Subject id for --labels");
    dice->add_option("--manifest", o.manifest, "Manifest of warped labels");
    dice->add_option("--inputs", o.inputs, "Comma-separated warped label volumes");
    dice->add_option("--column", o.column, "Manifest column holding the label volumes");
    commands.emplace_back(dice, run_dice);

    auto* lefm = app.add_subcommand("lefm", "Label error frequency map");
    lefm->add_option("--reference-labels", o.reference_labels, "Reference label volume")->required();
    lefm->add_option("--manifest", o.manifest, "Manifest of warped labels");
    lefm->add_option("--inputs", o.inputs, "Comma-separated warped label volumes");
    lefm->add_option("--column", o.column, "Manifest column holding the label volumes");
    commands.emplace_back(lefm, run_lefm);

    auto* agg = app.add_subcommand("aggregate", "Voxel-wise cohort mean and standard deviation");
    agg->add_option("--manifest", o.manifest, "Manifest CSV");
    agg->add_option("--column", o.column, "Manifest column holding the volumes");
    agg->add_option("--inputs", o.inputs, "Comma-separated scalar volumes");
    commands.emplace_back(agg, run_aggregate);

    auto* cor = app.add_subcommand("correlate", "Voxel-wise Pearson correlation with a covariate");
    cor->add_option("--manifest", o.manifest, "Manifest CSV")->required();
    cor->add_option("--covariates", o.covariates, "CSV with subject,covariate")->required();
    cor->add_option("--column", o.column, "Manifest column with the correlated volumes (default ff_warped)");
    cor->add_option("--include-column", o.include_column, "Manifest column whose positive voxels are included")
        ->capture_default_str();
    commands.emplace_back(cor, run_correlate);

    auto* cmp = app.add_subcommand("compare", "Paired Wilcoxon test of two Dice tables per label");
    cmp->add_option("--dice-a", o.dice_a, "First Dice table")->required();
    cmp->add_option("--dice-b", o.dice_b, "Second Dice table")->required();
    commands.emplace_back(cmp, run_compare);

    auto* sweep = app.add_subcommand("sweep", "Parameter sweep scored by Dice and Hausdorff");
    add_registration_flags(sweep, o);
    sweep->add_option("--reference-labels", o.reference_labels, "Reference label volume")->required();
    sweep->add_option("--parameter", o.parameter, "regularization_weight or mask_weight")
        ->check(CLI::IsMember({"regularization_weight", "mask_weight"}))
        ->capture_default_str();
    sweep->add_option("--values", o.values, "Comma-separated values (default grid otherwise)");
    commands.emplace_back(sweep, run_sweep);

    auto* ph = app.add_subcommand("phantom", "Generate a synthetic reference and deformed subjects");
    ph->add_option("--dims", o.dims, "Grid size x,y,z")->capture_default_str();
    ph->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    ph->add_option("--subjects", o.subjects, "Number of subjects")->capture_default_str();
    ph->add_option("--organs", o.organs, "Number of interior organs")->capture_default_str();
    ph->add_flag("--ambiguous", o.ambiguous, "Give the wall organs muscle-like intensities");
    ph->add_option("--translation", o.translation, "Pure translation x,y,z in voxels for every subject");
    ph->add_option("--amplitude", o.amplitude, "Largest sinusoid amplitude in voxels")->capture_default_str();
    ph->add_option("--min-period", o.min_period, "Shortest period as a fraction of the extent")
        ->capture_default_str();
    ph->add_option("--max-period", o.max_period, "Longest period as a fraction of the extent")
        ->capture_default_str();
    ph->add_option("--max-translation", o.max_translation, "Largest random translation in voxels")
        ->capture_default_str();
    commands.emplace_back(ph, run_phantom);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
        error_record(sub ? sub->get_name() : "", "usage", e.what());
        return 2;
    }

    for (const auto& [cmd, run] : commands) {
        if (!cmd->parsed()) {
            continue;
        }
        const std::string name = cmd->get_name();
        try {
            const Json summary = run(o);
            std::cout << Json{{"status", "ok"}, {"command", name}, {"summary", name + "_summary.json"}}.dump()
                      << '\n';
            return 0;
        }
        catch (const CliError& e) {
            error_record(name, e.kind(), e.what());
            return e.kind() == "usage" ? 2 : 1;
        }
        catch (const maskreg::MetaImageError& e) {
            error_record(name, "io", e.what());
        }
        catch (const maskreg::ConfigError& e) {
            error_record(name, "config", e.what());
        }
        catch (const std::invalid_argument& e) {
            error_record(name, "invalid_input", e.what());
        }
        catch (const std::exception& e) {
            error_record(name, "internal", e.what());
        }
        return 1;
    }
    return 2;
}
