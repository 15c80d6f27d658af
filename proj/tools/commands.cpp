#include "commands.h"

#include <maskreg/aggregate.h>
#include <maskreg/correlation.h>
#include <maskreg/csv.h>
#include <maskreg/lefm.h>
#include <maskreg/metaimage.h>
#include <maskreg/overlap.h>
#include <maskreg/phantom.h>
#include <maskreg/registration.h>
#include <maskreg/significance.h>
#include <maskreg/warp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

namespace maskreg::cli {

namespace {

RegistrationConfig config_of(const Options& o)
{
    return o.config.empty() ? RegistrationConfig{} : load_config(o.config);
}

ChannelLayout layout_of(const Options& o)
{
    return {split_list(o.channel_names), split_list(o.mask_channels)};
}

std::vector<fs::path> paths_of(const std::string& list)
{
    std::vector<fs::path> out;
    for (const auto& s : split_list(list)) {
        out.emplace_back(s);
    }
    return out;
}

fs::path required_path(const std::string& value, const char* flag)
{
    if (value.empty()) {
        throw CliError("usage", std::string(flag) + " is required");
    }
    require_files({value});
    return value;
}

Int3 parse_int3(const std::string& text, const char* what)
{
    const auto parts = split_list(text);
    if (parts.size() != 3) {
        throw CliError("usage", std::string(what) + " needs three comma-separated values");
    }
    Int3 v;
    for (int a = 0; a < 3; ++a) {
        v[a] = int(parse_real(parts[std::size_t(a)]));
    }
    return v;
}

Vec3d parse_vec3(const std::string& text, const char* what)
{
    const auto parts = split_list(text);
    if (parts.size() != 3) {
        throw CliError("usage", std::string(what) + " needs three comma-separated values");
    }
    return {parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2])};
}

Json report_json(const EnergyReport& e)
{
    return energy_json(e.data_term, e.regularization_term, e.total);
}

/// Subjects from --manifest, or a single subject from --moving-channels/--labels.
std::vector<ManifestEntry> subjects_of(const Options& o)
{
    if (!o.manifest.empty()) {
        return read_manifest(o.manifest);
    }
    if (o.moving_channels.empty()) {
        throw CliError("usage", "--moving-channels or --manifest is required");
    }
    ManifestEntry e;
    e.subject = o.subject.empty() ? "subject" : o.subject;
    e.channels = paths_of(o.moving_channels);
    if (!o.labels.empty()) {
        e.labels = fs::path(o.labels);
    }
    std::vector<fs::path> files = e.channels;
    if (e.labels) {
        files.push_back(*e.labels);
    }
    require_files(files);
    return {e};
}

struct SubjectRun
{
    RegistrationResult result;
    std::optional<LabelVolume> warped_labels;
    Json json;
};

SubjectRun register_subject(const ChannelStack& reference, const ManifestEntry& entry, const RegistrationConfig& cfg,
                            const ChannelLayout& layout, const Options& o, const fs::path* out_dir)
{
    Stopwatch clock;
    ChannelStack moving = load_stack(entry.channels, layout, cfg);
    const ChannelStack fixed = o.no_masks ? reference.without_masks() : reference;
    if (o.no_masks) {
        moving = moving.without_masks();
    }

    RegistrationOptions ropt;
    ropt.workers = o.workers;
    if (o.verbose) {
        ropt.log = [&](const std::string& msg) { std::fprintf(stderr, "[%s] %s\n", entry.subject.c_str(), msg.c_str()); };
    }

    SubjectRun run;
    run.result = register_stacks(fixed, moving, cfg, ropt);
    const DisplacementField& field = run.result.field;
    if (entry.labels) {
        run.warped_labels = warp_labels(read_label_volume(*entry.labels), field);
    }

    Json levels = Json::array();
    for (const auto& l : run.result.levels) {
        levels.push_back({{"level", l.level},
                          {"dims", {l.dims.x, l.dims.y, l.dims.z}},
                          {"sweeps", l.sweeps},
                          {"accepted_moves", l.accepted_moves},
                          {"attempted_moves", l.attempted_moves},
                          {"energy_trace", l.energy_trace}});
    }
    run.json = {{"subject", entry.subject},
                {"initial_energy", report_json(run.result.initial_energy)},
                {"final_energy", report_json(run.result.final_energy)},
                {"levels", levels}};

    if (out_dir) {
        const std::string stem = entry.subject;
        const ScalarVolume jd = jacobian_determinant(field);
        const Channel* ff = moving.find("ff");
        if (!ff) {
            for (const auto& c : moving) {
                if (c.kind == ChannelKind::Intensity) {
                    ff = &c;
                    break;
                }
            }
        }
        Json outputs;
        write_field(field, *out_dir / (stem + "_field.mha"));
        outputs["field"] = stem + "_field.mha";
        if (ff) {
            write_volume(warp_scalar(ff->volume, field), *out_dir / (stem + "_ff_warped.mha"));
            outputs["ff_warped"] = stem + "_ff_warped.mha";
        }
        if (run.warped_labels) {
            write_volume(*run.warped_labels, *out_dir / (stem + "_labels_warped.mha"));
            outputs["labels_warped"] = stem + "_labels_warped.mha";
        }
        write_volume(jd, *out_dir / (stem + "_jd.mha"));
        outputs["jd"] = stem + "_jd.mha";
        run.json["folds"] = count_folds(jd);
        run.json["outputs"] = outputs;
    }
    run.json["seconds"] = clock.seconds();
    return run;
}

Json base_summary(const std::string& command)
{
    return Json{{"command", command}, {"version", "0.3.0"}};
}

struct HausdorffRow
{
    std::string subject;
    int label_id;
    std::string label_name;
    double distance;
};

std::vector<HausdorffRow> hausdorff_rows(const std::string& subject, const LabelVolume& reference,
                                         const LabelVolume& warped)
{
    std::vector<HausdorffRow> rows;
    const auto ref_ids = reference.foreground_labels();
    const auto warped_ids = warped.foreground_labels();
    for (int id : ref_ids) {
        if (std::find(warped_ids.begin(), warped_ids.end(), id) == warped_ids.end()) {
            continue;
        }
        rows.push_back({subject, id, reference.name_of(id), hausdorff(reference, warped, id)});
    }
    return rows;
}

void write_hausdorff_table(const std::vector<HausdorffRow>& rows, const fs::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw CliError("io", "cannot write " + path.string());
    }
    out << "subject,label_id,label_name,hausdorff_mm\n";
    for (const auto& r : rows) {
        out << csv_escape(r.subject) << ',' << r.label_id << ',' << csv_escape(r.label_name) << ','
            << format_real(r.distance) << '\n';
    }
}

double mean_hausdorff(const std::vector<HausdorffRow>& rows)
{
    if (rows.empty()) {
        return std::nan("");
    }
    double s = 0.0;
    for (const auto& r : rows) {
        s += r.distance;
    }
    return s / double(rows.size());
}

/// Volumes named by --inputs, or the `column` entries of --manifest.
std::vector<std::pair<std::string, fs::path>> cohort_inputs(const Options& o, const std::string& column)
{
    std::vector<std::pair<std::string, fs::path>> out;
    if (!o.inputs.empty()) {
        for (const auto& p : paths_of(o.inputs)) {
            out.emplace_back(p.stem().string(), p);
        }
        std::vector<fs::path> files;
        for (const auto& [id, p] : out) {
            files.push_back(p);
        }
        require_files(files);
    }
    else if (!o.manifest.empty()) {
        for (const auto& e : read_manifest(o.manifest)) {
            out.emplace_back(e.subject, e.path(column));
        }
        std::vector<fs::path> files;
        for (const auto& [id, p] : out) {
            files.push_back(p);
        }
        require_files(files);
    }
    else {
        throw CliError("usage", "--inputs or --manifest is required");
    }
    if (out.empty()) {
        throw CliError("invalid_input", "empty cohort");
    }
    return out;
}

} // namespace

std::vector<double> sweep_values(const std::string& parameter, const std::string& values)
{
    if (!values.empty()) {
        std::vector<double> out;
        for (const auto& v : split_list(values)) {
            out.push_back(parse_real(v));
        }
        return out;
    }
    if (parameter == "regularization_weight") {
        std::vector<double> out;
        for (int i = 0; i < 10; ++i) {
            out.push_back(0.05 + (0.5 - 0.05) * double(i) / 9.0);
        }
        return out;
    }
    if (parameter == "mask_weight") {
        return {0.2, 0.4, 0.6, 1.0, 2.0, 4.0, 6.0, 8.0};
    }
    throw CliError("usage", "unknown sweep parameter '" + parameter + "'");
}

Json run_register(const Options& o)
{
    Stopwatch clock;
    const RegistrationConfig cfg = config_of(o);
    const ChannelLayout layout = layout_of(o);
    const auto ref_paths = paths_of(o.reference_channels);
    if (ref_paths.empty()) {
        throw CliError("usage", "--reference-channels is required");
    }
    require_files(ref_paths);
    const auto subjects = subjects_of(o);
    const ChannelStack reference = load_stack(ref_paths, layout, cfg);
    ensure_directory(o.out);

    Json summary = base_summary("register");
    summary["config"] = Json::parse(config_to_json(cfg));
    summary["no_masks"] = o.no_masks;
    summary["workers"] = o.workers;
    summary["subjects"] = Json::array();

    std::vector<ManifestEntry> results;
    for (const auto& entry : subjects) {
        SubjectRun run = register_subject(reference, entry, cfg, layout, o, &o.out);
        ManifestEntry r;
        r.subject = entry.subject;
        const Json& outputs = run.json["outputs"];
        if (outputs.contains("labels_warped")) {
            r.labels = fs::path(outputs["labels_warped"].get<std::string>());
        }
        for (const char* key : {"field", "ff_warped", "jd"}) {
            if (outputs.contains(key)) {
                r.columns[key] = outputs[key].get<std::string>();
            }
        }
        results.push_back(std::move(r));
        summary["subjects"].push_back(std::move(run.json));
    }
    write_manifest(results, {"field", "ff_warped", "jd"}, o.out / "register_manifest.csv");
    summary["timings"] = {{"total_seconds", clock.seconds()}};
    write_summary(o.out, "register", summary);
    return summary;
}

Json run_warp(const Options& o)
{
    Stopwatch clock;
    const fs::path field_path = required_path(o.field, "--field");
    const fs::path input = required_path(o.input, "--input");
    const DisplacementField field = read_field(field_path);
    ensure_directory(o.out);
    const fs::path out = o.out / (input.stem().string() + "_warped.mha");
    AnyVolume vol = read_volume(input);
    std::string kind;
    if (auto* s = std::get_if<ScalarVolume>(&vol)) {
        write_volume(warp_scalar(*s, field), out);
        kind = "scalar";
    }
    else {
        write_volume(warp_labels(std::get<LabelVolume>(vol), field), out);
        kind = "labels";
    }
    Json summary = base_summary("warp");
    summary["input"] = input.string();
    summary["field"] = field_path.string();
    summary["interpolation"] = kind == "scalar" ? "trilinear" : "nearest";
    summary["output"] = out.filename().string();
    summary["timings"] = {{"total_seconds", clock.seconds()}};
    write_summary(o.out, "warp", summary);
    return summary;
}

Json run_jacobian(const Options& o)
{
    Stopwatch clock;
    const fs::path field_path = required_path(o.field, "--field");
    const ScalarVolume jd = jacobian_determinant(read_field(field_path));
    ensure_directory(o.out);
    std::string stem = field_path.stem().string();
    if (stem.size() > 6 && stem.ends_with("_field")) {
        stem.resize(stem.size() - 6);
    }
    const fs::path out = o.out / (stem + "_jd.mha");
    write_volume(jd, out);
    double lo = jd[0], hi = jd[0], sum = 0.0;
    for (std::size_t i = 0; i < jd.size(); ++i) {
        lo = std::min(lo, double(jd[i]));
        hi = std::max(hi, double(jd[i]));
        sum += jd[i];
    }
    Json summary = base_summary("jacobian");
    summary["field"] = field_path.string();
    summary["output"] = out.filename().string();
    summary["folds"] = count_folds(jd);
    summary["min"] = lo;
    summary["max"] = hi;
    summary["mean"] = sum / double(jd.size());
    summary["timings"] = {{"total_seconds", clock.seconds()}};
    write_summary(o.out, "jacobian", summary);
    return summary;
}

Json run_dice(const Options& o)
{
    Stopwatch clock;
    const LabelVolume reference = read_label_volume(required_path(o.reference_labels, "--reference-labels"));
    std::vector<std::pair<std::string, fs::path>> cohort;
    if (!o.labels.empty()) {
        cohort.emplace_back(o.subject.empty() ? "subject" : o.subject, required_path(o.labels, "--labels"));
    }
    else {
        cohort = cohort_inputs(o, o.column.empty() ? "labels" : o.column);
    }
    ensure_directory(o.out);
    DiceTable table;
    std::vector<HausdorffRow> distances;
    for (const auto& [subject, path] : cohort) {
        const LabelVolume warped = read_label_volume(path);
        const DiceTable rows = dice_rows(subject, reference, warped);
        table.insert(table.end(), rows.begin(), rows.end());
        const auto h = hausdorff_rows(subject, reference, warped);
        distances.insert(distances.end(), h.begin(), h.end());
    }
    write_dice_table(table, o.out / "dice.csv");
    write_hausdorff_table(distances, o.out / "hausdorff.csv");
    Json summary = base_summary("dice");
    summary["subjects"] = cohort.size();
    summary["rows"] = table.size();
    summary["mean_dice"] = mean_dice(table);
    summary["mean_hausdorff_mm"] = mean_hausdorff(distances);
    summary["outputs"] = {"dice.csv", "hausdorff.csv"};
    summary["timings"] = {{"total_seconds", clock.seconds()}};
    write_summary(o.out, "dice", summary);
    return summary;
}

Json run_lefm(const Options& o)
{
    Stopwatch clock;
    LefmAccumulator acc(read_label_volume(required_path(o.reference_labels, "--reference-labels")));
    const auto cohort = cohort_inputs(o, o.column.empty() ? "labels" : o.column);
    ensure_directory(o.out);
    for (const auto& [subject, path] : cohort) {
        acc.add(read_label_volume(path));
    }
    const ScalarVolume map = acc.result();
    write_volume(map, o.out / "lefm.mha");
    double sum = 0.0;
    for (std::size_t i = 0; i < map.size(); ++i) {
        sum += map[i];
    }
    Json summary = base_summary("lefm");
    summary["subjects"] = acc.count();
    summary["mean_lefm"] = sum / double(map.size());
    summary["output"] = "lefm.mha";
    summary["timings"] = {{"total_seconds", clock.seconds()}};
    write_summary(o.out, "lefm", summary);
    return summary;
}

Json run_aggregate(const Options& o)
{
    Stopwatch clock;
    if (o.inputs.empty() && o.column.empty()) {
        throw CliError("usage", "--column is required with --manifest");
    }
    const auto cohort = cohort_inputs(o, o.column);
    const std::string name = o.column.empty() ? "aggregate" : o.column;
    ensure_directory(o.out);
    MeanStdAccumulator acc;
    for (const auto& [subject, path] : cohort) {
        acc.add(read_scalar_volume(path));
    }
    const MeanStd r = acc.result();
    write_volume(r.mean, o.out / (name + "_mean.mha"));
    write_volume(r.std, o.out / (name + "_std.mha"));
    Json summary = base_summary("aggregate");
    summary["subjects"] = acc.count();
    summary["outputs"] = {name + "_mean.mha", name + "_std.mha"};
    summary["timings"] = {{"total_seconds", clock.seconds()}};
    write_summary(o.out, "aggregate", summary);
    return summary;
}

Json run_correlate(const Options& o)
{
    Stopwatch clock;
    const CovariateTable covariates = read_covariates(required_path(o.covariates, "--covariates"));
    if (o.manifest.empty()) {
        throw CliError("usage", "--manifest is required");
    }
    const std::string column = o.column.empty() ? "ff_warped" : o.column;
    const auto entries = read_manifest(o.manifest);
    std::vector<fs::path> files;
    for (const auto& e : entries) {
        if (!covariates.contains(e.subject)) {
            throw CliError("invalid_input", "no covariate for subject '" + e.subject + "'");
        }
        files.push_back(e.path(column));
        files.push_back(e.path(o.include_column));
    }
    require_files(files);
    ensure_directory(o.out);

    CorrelationAccumulator acc;
    for (const auto& e : entries) {
        acc.add(e.subject, covariates.at(e.subject), read_scalar_volume(e.path(column)),
                read_scalar_volume(e.path(o.include_column)));
    }
    const CorrelationMaps maps = acc.result();
    write_volume(maps.r, o.out / (column + "_r.mha"));
    write_volume(maps.p, o.out / (column + "_p.mha"));
    write_volume(maps.n, o.out / (column + "_n.mha"));
    std::size_t valid = 0, significant = 0;
    for (std::size_t i = 0; i < maps.r.size(); ++i) {
        if (!std::isnan(maps.r[i])) {
            ++valid;
            significant += maps.p[i] < kSignificanceLevel;
        }
    }
    Json summary = base_summary("correlate");
    summary["subjects"] = acc.subjects();
    summary["valid_voxels"] = valid;
    summary["significant_voxels"] = significant;
    summary["outputs"] = {column + "_r.mha", column + "_p.mha", column + "_n.mha"};
    summary["timings"] = {{"total_seconds", clock.seconds()}};
    write_summary(o.out, "correlate", summary);
    return summary;
}

Json run_compare(const Options& o)
{
    Stopwatch clock;
    const DiceTable a = read_dice_table(required_path(o.dice_a, "--dice-a"));
    const DiceTable b = read_dice_table(required_path(o.dice_b, "--dice-b"));
    const auto rows = compare_dice_tables(a, b);
    ensure_directory(o.out);
    write_comparison_table(rows, o.out / "significance.csv");
    Json labels = Json::array();
    for (const auto& r : rows) {
        labels.push_back({{"label_id", r.label_id},
                          {"label_name", r.label_name},
                          {"pairs", r.pairs},
                          {"mean_a", r.mean_a},
                          {"mean_b", r.mean_b},
                          {"p", r.p},
                          {"p_adjusted", r.p_adjusted},
                          {"significant", r.significant}});
    }
    Json summary = base_summary("compare");
    summary["labels"] = labels;
    summary["output"] = "significance.csv";
    summary["timings"] = {{"total_seconds", clock.seconds()}};
    write_summary(o.out, "compare", summary);
    return summary;
}

Json run_sweep(const Options& o)
{
    Stopwatch clock;
    const RegistrationConfig base = config_of(o);
    const ChannelLayout layout = layout_of(o);
    const auto values = sweep_values(o.parameter, o.values);
    const auto ref_paths = paths_of(o.reference_channels);
    if (ref_paths.empty()) {
        throw CliError("usage", "--reference-channels is required");
    }
    require_files(ref_paths);
    const LabelVolume reference_labels =
        read_label_volume(required_path(o.reference_labels, "--reference-labels"));
    const auto subjects = subjects_of(o);
    for (const auto& s : subjects) {
        if (!s.labels) {
            throw CliError("missing_input", "subject '" + s.subject + "' has no labels");
        }
    }
    ensure_directory(o.out);

    Json summary = base_summary("sweep");
    summary["parameter"] = o.parameter;
    summary["base_config"] = Json::parse(config_to_json(base));
    summary["no_masks"] = o.no_masks;
    summary["runs"] = Json::array();

    std::ofstream csv(o.out / "sweep.csv", std::ios::binary | std::ios::trunc);
    if (!csv) {
        throw CliError("io", "cannot write sweep.csv");
    }
    csv << "parameter,value,mean_dice,mean_hausdorff,run\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        Stopwatch run_clock;
        RegistrationConfig cfg = base;
        if (o.parameter == "regularization_weight") {
            cfg.regularization_weight = values[i];
        }
        else if (o.parameter == "mask_weight") {
            cfg.mask_weight = values[i];
        }
        else {
            throw CliError("usage", "unknown sweep parameter '" + o.parameter + "'");
        }
        cfg.validate();
        const ChannelStack reference = load_stack(ref_paths, layout, cfg);

        char dir_name[32];
        std::snprintf(dir_name, sizeof dir_name, "run_%02zu", i);
        const fs::path run_dir = o.out / dir_name;
        ensure_directory(run_dir);

        DiceTable table;
        std::vector<HausdorffRow> distances;
        Json energies = Json::array();
        for (const auto& entry : subjects) {
            SubjectRun run = register_subject(reference, entry, cfg, layout, o, nullptr);
            const DiceTable rows = dice_rows(entry.subject, reference_labels, *run.warped_labels);
            table.insert(table.end(), rows.begin(), rows.end());
            const auto h = hausdorff_rows(entry.subject, reference_labels, *run.warped_labels);
            distances.insert(distances.end(), h.begin(), h.end());
            energies.push_back({{"subject", entry.subject}, {"final_energy", run.json["final_energy"]}});
        }
        write_dice_table(table, run_dir / "dice.csv");
        write_hausdorff_table(distances, run_dir / "hausdorff.csv");
        const double md = mean_dice(table);
        const double mh = mean_hausdorff(distances);
        csv << o.parameter << ',' << format_real(values[i]) << ',' << format_real(md) << ',' << format_real(mh)
            << ',' << dir_name << '\n';
        summary["runs"].push_back({{"value", values[i]},
                                   {"run", dir_name},
                                   {"mean_dice", md},
                                   {"mean_hausdorff_mm", mh},
                                   {"subjects", energies},
                                   {"seconds", run_clock.seconds()}});
    }
    summary["output"] = "sweep.csv";
    summary["timings"] = {{"total_seconds", clock.seconds()}};
    write_summary(o.out, "sweep", summary);
    return summary;
}

Json run_phantom(const Options& o)
{
    Stopwatch clock;
    PhantomSpec spec;
    spec.dims = parse_int3(o.dims, "--dims");
    spec.seed = o.seed;
    spec.organ_count = o.organs;
    spec.ambiguous = o.ambiguous;
    if (o.subjects < 1) {
        throw CliError("usage", "--subjects must be at least 1");
    }
    ensure_directory(o.out);

    const Phantom reference = make_reference(spec);
    const char* channel_names[] = {"ff", "wf", "sat", "muscle"};
    for (const char* name : channel_names) {
        write_volume(reference.stack.find(name)->volume, o.out / (std::string("reference_") + name + ".mha"));
    }
    write_volume(reference.labels, o.out / "reference_labels.mha");

    DeformationRange range;
    range.max_translation = o.max_translation;
    range.max_amplitude = o.amplitude;
    range.min_amplitude = 0.5 * o.amplitude;
    range.min_period = o.min_period;
    range.max_period = o.max_period;

    std::vector<ManifestEntry> entries;
    std::mt19937_64 ages(spec.seed);
    std::ofstream cov(o.out / "covariates.csv", std::ios::binary | std::ios::trunc);
    cov << "subject,covariate\n";
    Json subjects = Json::array();
    for (int s = 0; s < o.subjects; ++s) {
        char id[32];
        std::snprintf(id, sizeof id, "subject_%02d", s + 1);
        PhantomSpec sub_spec = spec;
        if (!o.translation.empty()) {
            sub_spec.deformation.translation = parse_vec3(o.translation, "--translation");
        }
        else {
            sub_spec.deformation = random_deformation(spec.seed * 1000 + std::uint64_t(s), spec.dims, range);
        }
        const PhantomSubject subject = make_subject(reference, sub_spec);
        ManifestEntry e;
        e.subject = id;
        for (const char* name : channel_names) {
            const std::string file = std::string(id) + "_" + name + ".mha";
            write_volume(subject.stack.find(name)->volume, o.out / file);
            e.channels.emplace_back(file);
        }
        write_volume(subject.labels, o.out / (std::string(id) + "_labels.mha"));
        e.labels = std::string(id) + "_labels.mha";
        write_field(subject.truth, o.out / (std::string(id) + "_truth.mha"));
        e.columns["truth"] = std::string(id) + "_truth.mha";
        entries.push_back(std::move(e));
        const double age = 480.0 + double(ages() % 421);
        cov << id << ',' << format_real(age) << '\n';
        subjects.push_back({{"subject", id}, {"covariate", age}});
    }
    write_manifest(entries, {"truth"}, o.out / "manifest.csv");

    Json summary = base_summary("phantom");
    summary["dims"] = {spec.dims.x, spec.dims.y, spec.dims.z};
    summary["seed"] = spec.seed;
    summary["organ_count"] = spec.organ_count;
    summary["ambiguous"] = spec.ambiguous;
    summary["subjects"] = subjects;
    summary["timings"] = {{"total_seconds", clock.seconds()}};
    write_summary(o.out, "phantom", summary);
    return summary;
}

} // namespace maskreg::cli
