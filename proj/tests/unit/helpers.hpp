#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "sudocrypt/media_io.hpp"

namespace testing {

inline sudocrypt::Image random_image(std::uint32_t w, std::uint32_t h, std::uint32_t c, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(0, 255);
    sudocrypt::Image img(w, h, c);
    for (auto& v : img.samples) v = static_cast<std::uint8_t>(dist(rng));
    return img;
}

inline sudocrypt::AudioClip random_clip(std::size_t samples, std::uint32_t channels, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(-32768, 32767);
    sudocrypt::AudioClip clip;
    clip.sample_rate = 8000;
    clip.channels = channels;
    clip.samples.resize(samples);
    for (auto& s : clip.samples) s = static_cast<std::int16_t>(dist(rng));
    return clip;
}

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("sudocrypt-" + tag + "-" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace testing
