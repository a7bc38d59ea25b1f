#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "sudocrypt/media_io.hpp"

namespace sudocrypt {

/// Returned by snr/psnr when the two signals are identical.
inline constexpr double kInfiniteDb = std::numeric_limits<double>::infinity();

// Image metrics. Pairwise metrics throw DimensionError unless width, height
// and channels all agree.

/// Percentage of pixel positions where any channel differs.
double npcr(const Image& a, const Image& b);
/// Mean absolute per-sample difference over 255, as a percentage.
double uaci(const Image& a, const Image& b);
/// Entropy in bits of the 256-bin histogram pooled over all channels.
double shannon_entropy(const Image& img);
std::array<std::uint64_t, 256> histogram(const Image& img);
std::vector<double> channel_means(const Image& img);

/// Top-left region shared by both images. Channel counts must agree.
std::pair<Image, Image> crop_to_common(const Image& a, const Image& b);

struct ImageMetricsReport {
    double npcr = 0;
    double uaci = 0;
    double entropy_original = 0;
    double entropy_encrypted = 0;
    std::vector<double> channel_means_original;
    std::vector<double> channel_means_encrypted;
};

/// Entropy and means use the full images; npcr/uaci need equal shapes.
ImageMetricsReport analyze_images(const Image& original, const Image& encrypted);

// Audio metrics on samples normalized to s / 32768. Pairwise metrics throw
// DimensionError on length mismatch.

double mse(const AudioClip& a, const AudioClip& b);
/// 10 log10(sum a^2 / sum (a-b)^2); kInfiniteDb for identical signals.
double snr(const AudioClip& a, const AudioClip& b);
/// 10 log10(max a^2 / mse); kInfiniteDb for identical signals.
double psnr(const AudioClip& a, const AudioClip& b);
/// Sign changes between consecutive samples over (len - 1); zero counts as
/// nonnegative. Needs at least 2 samples.
double zcr(const AudioClip& a);
/// Needs at least 1 sample.
double rms(const AudioClip& a);
/// Percentage of positions whose samples differ.
double sample_change_rate(const AudioClip& a, const AudioClip& b);

struct AudioMetricsReport {
    double snr = 0;
    double psnr = 0;
    double mse = 0;
    double zcr_original = 0;
    double zcr_encrypted = 0;
    double rms_original = 0;
    double rms_encrypted = 0;
};

AudioMetricsReport analyze_audio(const AudioClip& original, const AudioClip& encrypted);

}  // namespace sudocrypt
