#pragma once

#include <maskreg/channels.h>
#include <maskreg/config.h>
#include <maskreg/volume.h>

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace maskreg::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

/// Failure with a machine-readable kind for the error record.
class CliError : public std::runtime_error
{
public:
    CliError(std::string kind, const std::string& what) : std::runtime_error(what), _kind(std::move(kind)) {}
    const std::string& kind() const { return _kind; }

private:
    std::string _kind;
};

std::vector<std::string> split_list(const std::string& text);

/// Throws CliError("missing_input") unless every path exists.
void require_files(const std::vector<fs::path>& paths);

struct ChannelLayout
{
    std::vector<std::string> names{"ff", "wf", "sat", "muscle"};
    std::vector<std::string> masks{"sat", "muscle"};
};

/// Reads one volume per path; channel i gets names[i] and is a mask when
/// its name is listed in layout.masks.
ChannelStack load_stack(const std::vector<fs::path>& paths, const ChannelLayout& layout,
                        const RegistrationConfig& config);

/// One subject row of a manifest CSV. Required column: subject. Optional:
/// channels (comma-separated list, quoted), labels, and any further columns.
/// Relative paths resolve against the manifest's directory.
struct ManifestEntry
{
    std::string subject;
    std::vector<fs::path> channels;
    std::optional<fs::path> labels;
    std::map<std::string, std::string> columns;

    /// Path in `column`; throws CliError("missing_input") when absent.
    fs::path path(const std::string& column) const;
};

/// Subject ids must be unique; every referenced file must exist.
std::vector<ManifestEntry> read_manifest(const fs::path& path);

/// Writes the manifest with a subject,channels,labels[,extra...] header.
void write_manifest(const std::vector<ManifestEntry>& entries, const std::vector<std::string>& extra_columns,
                    const fs::path& path);

void ensure_directory(const fs::path& dir);

Json energy_json(double data, double regularization, double total);

/// Writes `<out>/<command>_summary.json` (pretty, trailing newline).
void write_summary(const fs::path& out_dir, const std::string& command, const Json& summary);

class Stopwatch
{
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - _start).count();
    }

private:
    std::chrono::steady_clock::time_point _start = std::chrono::steady_clock::now();
};

} // namespace maskreg::cli
