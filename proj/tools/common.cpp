#include "common.h"

#include <maskreg/csv.h>
#include <maskreg/metaimage.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace maskreg::cli {

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) {
            out.push_back(item.substr(b, e - b + 1));
        }
    }
    return out;
}

void require_files(const std::vector<fs::path>& paths)
{
    for (const auto& p : paths) {
        if (!fs::exists(p)) {
            throw CliError("missing_input", "file not found: " + p.string());
        }
    }
}

ChannelStack load_stack(const std::vector<fs::path>& paths, const ChannelLayout& layout,
                        const RegistrationConfig& config)
{
    if (paths.size() != layout.names.size()) {
        throw CliError("usage", "expected " + std::to_string(layout.names.size()) + " channel files, got " +
                                    std::to_string(paths.size()));
    }
    require_files(paths);
    ChannelStack stack;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const bool mask =
            std::find(layout.masks.begin(), layout.masks.end(), layout.names[i]) != layout.masks.end();
        stack.add(layout.names[i], read_scalar_volume(paths[i]), mask ? config.mask_weight : config.intensity_weight,
                  mask ? ChannelKind::Mask : ChannelKind::Intensity);
    }
    return stack;
}

fs::path ManifestEntry::path(const std::string& column) const
{
    if (column == "labels" && labels) {
        return *labels;
    }
    auto it = columns.find(column);
    if (it == columns.end() || it->second.empty()) {
        throw CliError("missing_input", "manifest has no '" + column + "' entry for subject '" + subject + "'");
    }
    return it->second;
}

std::vector<ManifestEntry> read_manifest(const fs::path& path)
{
    require_files({path});
    const CsvTable table = read_csv(path);
    const fs::path base = path.parent_path();
    auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };

    const auto subject_col = table.column("subject");
    std::vector<ManifestEntry> entries;
    std::set<std::string> seen;
    std::vector<fs::path> files;
    for (const auto& row : table.rows) {
        ManifestEntry e;
        e.subject = row[subject_col];
        if (e.subject.empty() || !seen.insert(e.subject).second) {
            throw CliError("invalid_input", "manifest subject ids must be unique and non-empty: '" + e.subject + "'");
        }
        for (std::size_t c = 0; c < table.header.size(); ++c) {
            const std::string& name = table.header[c];
            const std::string& cell = row[c];
            if (c == subject_col || cell.empty()) {
                continue;
            }
            if (name == "channels") {
                for (const auto& item : split_list(cell)) {
                    e.channels.push_back(resolve(item));
                    files.push_back(e.channels.back());
                }
            }
            else if (name == "labels") {
                e.labels = resolve(cell);
                files.push_back(*e.labels);
            }
            else {
                e.columns[name] = resolve(cell).string();
            }
        }
        entries.push_back(std::move(e));
    }
    require_files(files);
    return entries;
}

void write_manifest(const std::vector<ManifestEntry>& entries, const std::vector<std::string>& extra_columns,
                    const fs::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw CliError("io", "cannot write " + path.string());
    }
    out << "subject,channels,labels";
    for (const auto& c : extra_columns) {
        out << ',' << c;
    }
    out << '\n';
    for (const auto& e : entries) {
        std::string channels;
        for (std::size_t i = 0; i < e.channels.size(); ++i) {
            channels += (i ? "," : "") + e.channels[i].generic_string();
        }
        out << csv_escape(e.subject) << ',' << csv_escape(channels) << ','
            << csv_escape(e.labels ? e.labels->generic_string() : std::string());
        for (const auto& c : extra_columns) {
            auto it = e.columns.find(c);
            out << ',' << csv_escape(it == e.columns.end() ? std::string() : it->second);
        }
        out << '\n';
    }
}

void ensure_directory(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw CliError("io", "cannot create directory " + dir.string() + ": " + ec.message());
    }
}

Json energy_json(double data, double regularization, double total)
{
    return Json{{"data_term", data}, {"regularization_term", regularization}, {"total", total}};
}

void write_summary(const fs::path& out_dir, const std::string& command, const Json& summary)
{
    const fs::path path = out_dir / (command + "_summary.json");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw CliError("io", "cannot write " + path.string());
    }
    out << summary.dump(2) << '\n';
}

} // namespace maskreg::cli
