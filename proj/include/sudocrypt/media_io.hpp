#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace sudocrypt {

using Bytes = std::vector<std::uint8_t>;

/// Row-major 8-bit raster, channels interleaved per pixel.
struct Image {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t channels = 1;
    std::vector<std::uint8_t> samples;

    Image() = default;
    Image(std::uint32_t w, std::uint32_t h, std::uint32_t c, std::uint8_t fill = 0)
        : width(w), height(h), channels(c), samples(std::size_t{w} * h * c, fill) {}

    std::size_t pixel_count() const noexcept { return std::size_t{width} * height; }
    std::size_t row_bytes() const noexcept { return std::size_t{width} * channels; }
    std::size_t offset(std::uint32_t x, std::uint32_t y) const noexcept { return (std::size_t{y} * width + x) * channels; }

    std::uint8_t& at(std::uint32_t x, std::uint32_t y, std::uint32_t c = 0) noexcept { return samples[offset(x, y) + c]; }
    std::uint8_t at(std::uint32_t x, std::uint32_t y, std::uint32_t c = 0) const noexcept { return samples[offset(x, y) + c]; }

    friend bool operator==(const Image&, const Image&) = default;
};

/// 16-bit PCM, interleaved when stereo.
struct AudioClip {
    std::uint32_t sample_rate = 0;
    std::uint32_t channels = 1;
    std::vector<std::int16_t> samples;

    friend bool operator==(const AudioClip&, const AudioClip&) = default;
};

struct VideoSequence {
    std::uint32_t fps_numerator = 25;
    std::uint32_t fps_denominator = 1;
    std::vector<Image> frames;

    friend bool operator==(const VideoSequence&, const VideoSequence&) = default;
};

/// Binary PGM (P5) and PPM (P6), maxval 255. Header comments are skipped.
Image read_image(std::span<const std::uint8_t> bytes);
/// P5 for 1 channel, P6 for 3. No comments are emitted.
Bytes write_image(const Image& img);

/// RIFF/WAVE, PCM format 1, 16 bits, 1 or 2 channels. Unknown chunks are skipped.
AudioClip read_wav(std::span<const std::uint8_t> bytes);
/// Minimal canonical RIFF: header, fmt chunk (16 bytes), data chunk.
Bytes write_wav(const AudioClip& clip);

/// Frame directory with manifest.txt:
///   SUDOCRYPT-VIDEO v1
///   fps <num> <den>
///   frames <count>
///   <count relative frame file names, display order>
VideoSequence read_video(const std::filesystem::path& dir);
/// Frames are written first, the manifest last.
void write_video(const VideoSequence& video, const std::filesystem::path& dir);

inline constexpr std::string_view kVideoManifest = "manifest.txt";

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace sudocrypt
