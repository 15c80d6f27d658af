#pragma once

#include "maskreg/volume.h"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>

namespace maskreg {

/// Uncompressed MetaImage (.mha) with a LOCAL little-endian payload.
///
/// Written headers always carry exactly these lines, in this order:
///
///     ObjectType = Image
///     NDims = 3
///     DimSize = nx ny nz
///     ElementNumberOfChannels = 3        (displacement fields only)
///     ElementType = MET_FLOAT | MET_UCHAR | MET_USHORT
///     ElementSpacing = sx sy sz
///     Offset = ox oy oz
///     ElementByteOrderMSB = False
///     ElementDataFile = LOCAL
///
/// Label volumes additionally get a `<stem>.labels.csv` sidecar holding the
/// `label_id,name` dictionary.
class MetaImageError : public std::runtime_error
{
public:
    enum class Kind { MissingFile, UnsupportedElementType, SizeMismatch, Malformed, Io };

    MetaImageError(Kind kind, const std::string& what) : std::runtime_error(what), _kind(kind) {}

    Kind kind() const { return _kind; }

private:
    Kind _kind;
};

using AnyVolume = std::variant<ScalarVolume, LabelVolume>;

/// MET_FLOAT -> ScalarVolume, MET_UCHAR / MET_USHORT -> LabelVolume.
AnyVolume read_volume(const std::filesystem::path& path);

ScalarVolume read_scalar_volume(const std::filesystem::path& path);
LabelVolume read_label_volume(const std::filesystem::path& path);
DisplacementField read_field(const std::filesystem::path& path);

void write_volume(const ScalarVolume& vol, const std::filesystem::path& path);
void write_volume(const LabelVolume& vol, const std::filesystem::path& path);
void write_volume(const AnyVolume& vol, const std::filesystem::path& path);
void write_field(const DisplacementField& field, const std::filesystem::path& path);

/// `dir/stem.mha` -> `dir/stem.labels.csv`.
std::filesystem::path label_sidecar_path(const std::filesystem::path& volume_path);

LabelDictionary read_label_dictionary(const std::filesystem::path& csv_path);
void write_label_dictionary(const LabelDictionary& names, const std::filesystem::path& csv_path);

} // namespace maskreg
