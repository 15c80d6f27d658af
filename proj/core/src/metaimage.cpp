#include "maskreg/metaimage.h"
#include "maskreg/csv.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

namespace maskreg {

namespace {

using Kind = MetaImageError::Kind;

enum class Element { Float, UChar, UShort };

struct Header
{
    GridMeta meta;
    Element element = Element::Float;
    int channels = 1;
};

std::size_t element_size(Element e)
{
    switch (e) {
    case Element::Float: return 4;
    case Element::UChar: return 1;
    case Element::UShort: return 2;
    }
    return 0;
}

const char* element_name(Element e)
{
    switch (e) {
    case Element::Float: return "MET_FLOAT";
    case Element::UChar: return "MET_UCHAR";
    case Element::UShort: return "MET_USHORT";
    }
    return "";
}

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s)
{
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) {
        out.push_back(w);
    }
    return out;
}

template<typename T>
Vec3<T> parse_triple(const std::string& key, const std::string& value, const std::string& file)
{
    auto w = words(value);
    if (w.size() != 3) {
        throw MetaImageError(Kind::Malformed, file + ": " + key + " needs 3 values");
    }
    Vec3<T> out;
    for (int a = 0; a < 3; ++a) {
        try {
            double v = parse_real(w[a]);
            if constexpr (std::is_integral_v<T>) {
                if (v != double(T(v))) {
                    throw std::invalid_argument("non-integer");
                }
            }
            out[a] = T(v);
        }
        catch (const std::invalid_argument&) {
            throw MetaImageError(Kind::Malformed, file + ": bad value in " + key);
        }
    }
    return out;
}

Header read_header(std::istream& in, const std::string& file)
{
    std::map<std::string, std::string> kv;
    std::string line;
    bool done = false;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw MetaImageError(Kind::Malformed, file + ": header line without '='");
        }
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        kv[key] = value;
        if (key == "ElementDataFile") {
            done = true;
            break;
        }
    }
    if (!done) {
        throw MetaImageError(Kind::Malformed, file + ": missing ElementDataFile");
    }

    auto get = [&](const char* key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) {
            throw MetaImageError(Kind::Malformed, file + ": missing " + key);
        }
        return it->second;
    };

    if (get("ElementDataFile") != "LOCAL") {
        throw MetaImageError(Kind::Malformed, file + ": only ElementDataFile = LOCAL is supported");
    }
    if (get("NDims") != "3") {
        throw MetaImageError(Kind::Malformed, file + ": NDims must be 3");
    }
    if (auto it = kv.find("ObjectType"); it != kv.end() && it->second != "Image") {
        throw MetaImageError(Kind::Malformed, file + ": ObjectType must be Image");
    }
    for (const char* key : {"CompressedData", "ElementByteOrderMSB", "BinaryDataByteOrderMSB"}) {
        if (auto it = kv.find(key); it != kv.end() && it->second != "False") {
            throw MetaImageError(Kind::Malformed, file + ": " + key + " must be False");
        }
    }

    Header h;
    const auto& type = get("ElementType");
    if (type == "MET_FLOAT") {
        h.element = Element::Float;
    }
    else if (type == "MET_UCHAR") {
        h.element = Element::UChar;
    }
    else if (type == "MET_USHORT") {
        h.element = Element::UShort;
    }
    else {
        throw MetaImageError(Kind::UnsupportedElementType, file + ": unsupported ElementType " + type);
    }

    if (auto it = kv.find("ElementNumberOfChannels"); it != kv.end()) {
        if (it->second == "1") {
            h.channels = 1;
        }
        else if (it->second == "3") {
            h.channels = 3;
        }
        else {
            throw MetaImageError(Kind::UnsupportedElementType,
                                 file + ": unsupported ElementNumberOfChannels " + it->second);
        }
    }

    h.meta.dims = parse_triple<int>("DimSize", get("DimSize"), file);
    if (kv.count("ElementSpacing")) {
        h.meta.spacing = parse_triple<double>("ElementSpacing", kv["ElementSpacing"], file);
    }
    if (kv.count("Offset")) {
        h.meta.origin = parse_triple<double>("Offset", kv["Offset"], file);
    }
    try {
        h.meta.validate();
    }
    catch (const std::invalid_argument& e) {
        throw MetaImageError(Kind::Malformed, file + ": " + e.what());
    }
    return h;
}

std::string payload(std::istream& in)
{
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

std::uint32_t load_le32(const unsigned char* p)
{
    return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
           (std::uint32_t(p[3]) << 24);
}

void store_le32(std::uint32_t v, std::string& out)
{
    out += char(v & 0xff);
    out += char((v >> 8) & 0xff);
    out += char((v >> 16) & 0xff);
    out += char((v >> 24) & 0xff);
}

struct Loaded
{
    Header header;
    std::string bytes;
};

Loaded load(const std::filesystem::path& path)
{
    const std::string file = path.string();
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw MetaImageError(Kind::MissingFile, file + ": no such file");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MetaImageError(Kind::Io, file + ": cannot open");
    }
    Loaded l;
    l.header = read_header(in, file);
    l.bytes = payload(in);
    std::size_t expected =
        l.header.meta.voxel_count() * element_size(l.header.element) * std::size_t(l.header.channels);
    if (l.bytes.size() != expected) {
        throw MetaImageError(Kind::SizeMismatch,
                             file + ": payload has " + std::to_string(l.bytes.size()) +
                                 " bytes, DimSize implies " + std::to_string(expected));
    }
    return l;
}

std::vector<float> decode_floats(const std::string& bytes)
{
    std::vector<float> out(bytes.size() / 4);
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::bit_cast<float>(load_le32(p + 4 * i));
    }
    return out;
}

std::string header_text(const GridMeta& m, Element e, int channels)
{
    std::string h;
    h += "ObjectType = Image\n";
    h += "NDims = 3\n";
    h += "DimSize = " + std::to_string(m.dims.x) + " " + std::to_string(m.dims.y) + " " +
         std::to_string(m.dims.z) + "\n";
    if (channels != 1) {
        h += "ElementNumberOfChannels = " + std::to_string(channels) + "\n";
    }
    h += std::string("ElementType = ") + element_name(e) + "\n";
    h += "ElementSpacing = " + format_real(m.spacing.x) + " " + format_real(m.spacing.y) + " " +
         format_real(m.spacing.z) + "\n";
    h += "Offset = " + format_real(m.origin.x) + " " + format_real(m.origin.y) + " " +
         format_real(m.origin.z) + "\n";
    h += "ElementByteOrderMSB = False\n";
    h += "ElementDataFile = LOCAL\n";
    return h;
}

void write_bytes(const std::filesystem::path& path, const std::string& bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw MetaImageError(Kind::Io, path.string() + ": cannot open for writing");
    }
    out.write(bytes.data(), std::streamsize(bytes.size()));
    if (!out) {
        throw MetaImageError(Kind::Io, path.string() + ": write failed");
    }
}

LabelVolume to_labels(const Loaded& l, const std::filesystem::path& path)
{
    const auto n = l.header.meta.voxel_count();
    std::vector<std::uint16_t> labels(n);
    const auto* p = reinterpret_cast<const unsigned char*>(l.bytes.data());
    LabelStorage storage = LabelStorage::UChar;
    if (l.header.element == Element::UChar) {
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = p[i];
        }
    }
    else {
        storage = LabelStorage::UShort;
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = std::uint16_t(p[2 * i] | (p[2 * i + 1] << 8));
        }
    }
    LabelDictionary names;
    auto sidecar = label_sidecar_path(path);
    if (std::filesystem::exists(sidecar)) {
        names = read_label_dictionary(sidecar);
    }
    LabelVolume vol(l.header.meta, std::move(labels), std::move(names), storage);
    vol.complete_dictionary();
    return vol;
}

} // namespace

std::filesystem::path label_sidecar_path(const std::filesystem::path& volume_path)
{
    auto out = volume_path;
    out.replace_extension(".labels.csv");
    return out;
}

LabelDictionary read_label_dictionary(const std::filesystem::path& csv_path)
{
    CsvTable t = read_csv(csv_path);
    auto id_col = t.column("label_id");
    auto name_col = t.column("name");
    LabelDictionary names;
    for (const auto& row : t.rows) {
        double id = parse_real(row[id_col]);
        if (id < 0 || id > 65535 || id != double(int(id))) {
            throw std::runtime_error(csv_path.string() + ": bad label id");
        }
        if (!names.emplace(int(id), row[name_col]).second) {
            throw std::runtime_error(csv_path.string() + ": duplicate label id");
        }
    }
    return names;
}

void write_label_dictionary(const LabelDictionary& names, const std::filesystem::path& csv_path)
{
    std::string text = "label_id,name\n";
    for (const auto& [id, name] : names) {
        text += std::to_string(id) + "," + csv_escape(name) + "\n";
    }
    write_bytes(csv_path, text);
}

AnyVolume read_volume(const std::filesystem::path& path)
{
    Loaded l = load(path);
    if (l.header.channels != 1) {
        throw MetaImageError(Kind::UnsupportedElementType,
                             path.string() + ": multi-channel image; use read_field");
    }
    if (l.header.element == Element::Float) {
        return ScalarVolume(l.header.meta, decode_floats(l.bytes));
    }
    return to_labels(l, path);
}

ScalarVolume read_scalar_volume(const std::filesystem::path& path)
{
    auto v = read_volume(path);
    if (auto* s = std::get_if<ScalarVolume>(&v)) {
        return std::move(*s);
    }
    throw MetaImageError(Kind::UnsupportedElementType, path.string() + ": expected MET_FLOAT");
}

LabelVolume read_label_volume(const std::filesystem::path& path)
{
    auto v = read_volume(path);
    if (auto* s = std::get_if<LabelVolume>(&v)) {
        return std::move(*s);
    }
    throw MetaImageError(Kind::UnsupportedElementType,
                         path.string() + ": expected MET_UCHAR or MET_USHORT");
}

DisplacementField read_field(const std::filesystem::path& path)
{
    Loaded l = load(path);
    if (l.header.channels != 3 || l.header.element != Element::Float) {
        throw MetaImageError(Kind::UnsupportedElementType,
                             path.string() + ": displacement field must be 3-channel MET_FLOAT");
    }
    auto flat = decode_floats(l.bytes);
    std::vector<Vec3f> vectors(flat.size() / 3);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        vectors[i] = {flat[3 * i], flat[3 * i + 1], flat[3 * i + 2]};
    }
    return DisplacementField(l.header.meta, std::move(vectors));
}

void write_volume(const ScalarVolume& vol, const std::filesystem::path& path)
{
    std::string bytes = header_text(vol.meta(), Element::Float, 1);
    bytes.reserve(bytes.size() + 4 * vol.size());
    for (float v : vol.data()) {
        store_le32(std::bit_cast<std::uint32_t>(v), bytes);
    }
    write_bytes(path, bytes);
}

void write_volume(const LabelVolume& vol, const std::filesystem::path& path)
{
    bool wide = vol.storage() == LabelStorage::UShort;
    if (!wide) {
        for (auto v : vol.data()) {
            if (v > 255) {
                wide = true;
                break;
            }
        }
    }
    std::string bytes = header_text(vol.meta(), wide ? Element::UShort : Element::UChar, 1);
    bytes.reserve(bytes.size() + (wide ? 2 : 1) * vol.size());
    for (auto v : vol.data()) {
        bytes += char(v & 0xff);
        if (wide) {
            bytes += char(v >> 8);
        }
    }
    write_bytes(path, bytes);
    LabelDictionary names = vol.names();
    for (int id : vol.foreground_labels()) {
        names.try_emplace(id, vol.name_of(id));
    }
    write_label_dictionary(names, label_sidecar_path(path));
}

void write_volume(const AnyVolume& vol, const std::filesystem::path& path)
{
    std::visit([&](const auto& v) { write_volume(v, path); }, vol);
}

void write_field(const DisplacementField& field, const std::filesystem::path& path)
{
    std::string bytes = header_text(field.meta(), Element::Float, 3);
    bytes.reserve(bytes.size() + 12 * field.size());
    for (const auto& v : field.data()) {
        store_le32(std::bit_cast<std::uint32_t>(v.x), bytes);
        store_le32(std::bit_cast<std::uint32_t>(v.y), bytes);
        store_le32(std::bit_cast<std::uint32_t>(v.z), bytes);
    }
    write_bytes(path, bytes);
}

} // namespace maskreg
