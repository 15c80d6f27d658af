#pragma once

#include <maskreg/volume.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <unistd.h>

namespace maskreg::test {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir
{
public:
    TempDir()
    {
        static std::atomic<int> counter{0};
        _path = std::filesystem::temp_directory_path() /
            ("maskreg_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(_path);
        std::filesystem::create_directories(_path);
    }
    ~TempDir() { std::filesystem::remove_all(_path); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return _path; }
    std::filesystem::path operator/(const std::string& name) const { return _path / name; }

private:
    std::filesystem::path _path;
};

inline std::string file_bytes(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline ScalarVolume random_scalar(const GridMeta& meta, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0)
{
    std::uniform_real_distribution<double> u(lo, hi);
    ScalarVolume v(meta);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = float(u(rng));
    }
    return v;
}

inline DisplacementField random_field(const GridMeta& meta, std::mt19937_64& rng, double amplitude)
{
    std::uniform_real_distribution<double> u(-amplitude, amplitude);
    DisplacementField f(meta);
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = {float(u(rng)), float(u(rng)), float(u(rng))};
    }
    return f;
}

} // namespace maskreg::test
