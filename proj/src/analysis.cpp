#include "sudocrypt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "sudocrypt/errors.hpp"

namespace sudocrypt {

namespace {

void require_same_shape(const Image& a, const Image& b) {
    if (a.width != b.width || a.height != b.height || a.channels != b.channels)
        throw DimensionError("images differ in shape: " + std::to_string(a.width) + "x" + std::to_string(a.height) + "x" +
                             std::to_string(a.channels) + " vs " + std::to_string(b.width) + "x" + std::to_string(b.height) + "x" +
                             std::to_string(b.channels));
}

void require_same_length(const AudioClip& a, const AudioClip& b) {
    if (a.samples.size() != b.samples.size())
        throw DimensionError("clips differ in length: " + std::to_string(a.samples.size()) + " vs " + std::to_string(b.samples.size()));
}

double normalized(std::int16_t s) { return static_cast<double>(s) / 32768.0; }

double sum_squared_error(const AudioClip& a, const AudioClip& b) {
    double sum = 0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const double d = normalized(a.samples[i]) - normalized(b.samples[i]);
        sum += d * d;
    }
    return sum;
}

}  // namespace

double npcr(const Image& a, const Image& b) {
    require_same_shape(a, b);
    if (a.pixel_count() == 0) return 0.0;
    const std::size_t c = a.channels;
    std::size_t changed = 0;
    for (std::size_t p = 0; p < a.pixel_count(); ++p)
        changed += !std::equal(a.samples.begin() + p * c, a.samples.begin() + (p + 1) * c, b.samples.begin() + p * c);
    return 100.0 * static_cast<double>(changed) / static_cast<double>(a.pixel_count());
}

double uaci(const Image& a, const Image& b) {
    require_same_shape(a, b);
    if (a.samples.empty()) return 0.0;
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) sum += static_cast<std::uint64_t>(std::abs(a.samples[i] - b.samples[i]));
    return 100.0 * static_cast<double>(sum) / (255.0 * static_cast<double>(a.samples.size()));
}

std::array<std::uint64_t, 256> histogram(const Image& img) {
    std::array<std::uint64_t, 256> h{};
    for (std::uint8_t s : img.samples) ++h[s];
    return h;
}

double shannon_entropy(const Image& img) {
    if (img.samples.empty()) return 0.0;
    const auto h = histogram(img);
    const double total = static_cast<double>(img.samples.size());
    double entropy = 0;
    for (std::uint64_t count : h) {
        if (count == 0) continue;
        const double p = static_cast<double>(count) / total;
        entropy -= p * std::log2(p);
    }
    return entropy;
}

std::vector<double> channel_means(const Image& img) {
    std::vector<double> means(img.channels, 0.0);
    if (img.pixel_count() == 0) return means;
    std::vector<std::uint64_t> sums(img.channels, 0);
    for (std::size_t i = 0; i < img.samples.size(); ++i) sums[i % img.channels] += img.samples[i];
    for (std::size_t c = 0; c < img.channels; ++c) means[c] = static_cast<double>(sums[c]) / static_cast<double>(img.pixel_count());
    return means;
}

std::pair<Image, Image> crop_to_common(const Image& a, const Image& b) {
    if (a.channels != b.channels) throw DimensionError("images differ in channel count");
    const std::uint32_t w = std::min(a.width, b.width), h = std::min(a.height, b.height);
    auto crop = [w, h](const Image& src) {
        Image out(w, h, src.channels);
        for (std::uint32_t y = 0; y < h; ++y)
            std::copy_n(src.samples.begin() + static_cast<std::ptrdiff_t>(src.offset(0, y)), out.row_bytes(),
                        out.samples.begin() + static_cast<std::ptrdiff_t>(out.offset(0, y)));
        return out;
    };
    return {crop(a), crop(b)};
}

ImageMetricsReport analyze_images(const Image& original, const Image& encrypted) {
    ImageMetricsReport r;
    r.npcr = npcr(original, encrypted);
    r.uaci = uaci(original, encrypted);
    r.entropy_original = shannon_entropy(original);
    r.entropy_encrypted = shannon_entropy(encrypted);
    r.channel_means_original = channel_means(original);
    r.channel_means_encrypted = channel_means(encrypted);
    return r;
}

double mse(const AudioClip& a, const AudioClip& b) {
    require_same_length(a, b);
    if (a.samples.empty()) throw DimensionError("MSE of empty clips");
    return sum_squared_error(a, b) / static_cast<double>(a.samples.size());
}

double snr(const AudioClip& a, const AudioClip& b) {
    require_same_length(a, b);
    const double noise = sum_squared_error(a, b);
    if (noise == 0.0) return kInfiniteDb;
    double signal = 0;
    for (std::int16_t s : a.samples) signal += normalized(s) * normalized(s);
    return 10.0 * std::log10(signal / noise);
}

double psnr(const AudioClip& a, const AudioClip& b) {
    const double err = mse(a, b);
    if (err == 0.0) return kInfiniteDb;
    double peak = 0;
    for (std::int16_t s : a.samples) peak = std::max(peak, normalized(s) * normalized(s));
    return 10.0 * std::log10(peak / err);
}

double zcr(const AudioClip& a) {
    if (a.samples.size() < 2) throw DimensionError("zero-crossing rate needs at least 2 samples");
    std::size_t crossings = 0;
    for (std::size_t i = 1; i < a.samples.size(); ++i) crossings += (a.samples[i - 1] >= 0) != (a.samples[i] >= 0);
    return static_cast<double>(crossings) / static_cast<double>(a.samples.size() - 1);
}

double rms(const AudioClip& a) {
    if (a.samples.empty()) throw DimensionError("RMS needs at least 1 sample");
    double sum = 0;
    for (std::int16_t s : a.samples) sum += normalized(s) * normalized(s);
    return std::sqrt(sum / static_cast<double>(a.samples.size()));
}

double sample_change_rate(const AudioClip& a, const AudioClip& b) {
    require_same_length(a, b);
    if (a.samples.empty()) return 0.0;
    std::size_t changed = 0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) changed += a.samples[i] != b.samples[i];
    return 100.0 * static_cast<double>(changed) / static_cast<double>(a.samples.size());
}

AudioMetricsReport analyze_audio(const AudioClip& original, const AudioClip& encrypted) {
    AudioMetricsReport r;
    r.mse = mse(original, encrypted);
    r.snr = snr(original, encrypted);
    r.psnr = psnr(original, encrypted);
    r.zcr_original = zcr(original);
    r.zcr_encrypted = zcr(encrypted);
    r.rms_original = rms(original);
    r.rms_encrypted = rms(encrypted);
    return r;
}

}  // namespace sudocrypt
