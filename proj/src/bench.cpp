#include "sudocrypt/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "sudocrypt/image_cipher.hpp"
#include "sudocrypt/keymat.hpp"
#include "sudocrypt/prng.hpp"
#include "sudocrypt/sudoku.hpp"

namespace sudocrypt {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kBenchTimestamp = 1700000000;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

// Fastest of `reps` runs; filters scheduler noise out of short timings.
template <typename F>
double best_of(int reps, F&& body) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < reps; ++i) best = std::min(best, body());
    return best;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

double unit(PrngState& s) { return static_cast<double>(draw(s) >> 11) * 0x1.0p-53; }

double time_encryption(const Image& img, std::uint32_t iterations) {
    KeyMaterial k = derive_from_timestamp(kBenchTimestamp, 9, iterations);
    const auto start = Clock::now();
    (void)encrypt_image(img, k);
    return seconds_since(start);
}

}  // namespace

Image synthetic_image(std::uint32_t width, std::uint32_t height, std::uint32_t channels, std::uint64_t seed) {
    PrngState s{seed};
    struct Blob {
        double x, y, radius, gain;
    };
    std::vector<Blob> blobs(6);
    for (auto& b : blobs) b = {unit(s) * width, unit(s) * height, (0.1 + 0.3 * unit(s)) * std::max(width, height), 60 + 80 * unit(s)};
    std::vector<double> phase(channels), freq(channels);
    for (std::uint32_t c = 0; c < channels; ++c) {
        phase[c] = unit(s) * 2 * std::numbers::pi;
        freq[c] = 2 + 4 * unit(s);
    }

    Image img(width, height, channels);
    for (std::uint32_t y = 0; y < height; ++y) {
        for (std::uint32_t x = 0; x < width; ++x) {
            const double u = static_cast<double>(x) / width, v = static_cast<double>(y) / height;
            double glow = 0;
            for (const auto& b : blobs) {
                const double dx = x - b.x, dy = y - b.y;
                glow += b.gain * std::exp(-(dx * dx + dy * dy) / (2 * b.radius * b.radius));
            }
            for (std::uint32_t c = 0; c < channels; ++c) {
                double value = 40 + 90 * (c % 2 == 0 ? u : v) + 30 * std::sin(freq[c] * (u + v) + phase[c]) + glow * (0.6 + 0.2 * c);
                value += 6 * (unit(s) - 0.5);
                img.at(x, y, c) = static_cast<std::uint8_t>(std::clamp(std::lround(value), 0L, 255L));
            }
        }
    }
    return img;
}

Image random_image(std::uint32_t width, std::uint32_t height, std::uint32_t channels, std::uint64_t seed) {
    PrngState s{seed};
    Image img(width, height, channels);
    for (auto& v : img.samples) v = static_cast<std::uint8_t>(draw(s) >> 56);
    return img;
}

AudioClip synthetic_clip(std::size_t frames, std::uint32_t channels, std::uint32_t sample_rate, std::uint64_t seed) {
    PrngState s{seed};
    const double f1 = 180 + 400 * unit(s), f2 = 900 + 1500 * unit(s);
    AudioClip clip;
    clip.sample_rate = sample_rate;
    clip.channels = channels;
    clip.samples.resize(frames * channels);
    for (std::size_t i = 0; i < frames; ++i) {
        const double t = static_cast<double>(i) / sample_rate;
        for (std::uint32_t c = 0; c < channels; ++c) {
            const double v = 0.45 * std::sin(2 * std::numbers::pi * f1 * t + c) + 0.2 * std::sin(2 * std::numbers::pi * f2 * t) +
                             0.05 * (unit(s) - 0.5);
            clip.samples[i * channels + c] = static_cast<std::int16_t>(std::lround(std::clamp(v, -1.0, 1.0) * 32767));
        }
    }
    return clip;
}

std::optional<BenchSuite> bench_suite_from_string(std::string_view s) noexcept {
    if (s == "keygen") return BenchSuite::keygen;
    if (s == "iterations") return BenchSuite::iterations;
    if (s == "images") return BenchSuite::images;
    if (s == "sudoku-sizes") return BenchSuite::sudoku_sizes;
    return std::nullopt;
}

std::string BenchTable::to_csv() const {
    auto join = [](const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ',';
            line += cells[i];
        }
        return line + "\n";
    };
    std::string out = join(header);
    for (const auto& r : rows) out += join(r);
    return out;
}

BenchTable run_bench(BenchSuite suite, const std::vector<BenchImage>& images) {
    BenchTable table;
    switch (suite) {
        case BenchSuite::keygen: {
            table.header = {"keys", "time_s"};
            for (std::size_t count : {10, 25, 50, 75, 100}) {
                const auto start = Clock::now();
                for (std::size_t i = 0; i < count; ++i) (void)derive_from_timestamp(kBenchTimestamp + i, 9);
                const double t = seconds_since(start);
                table.rows.push_back({std::to_string(count), fixed(t, 6)});
                table.seconds.push_back(t);
            }
            break;
        }
        case BenchSuite::sudoku_sizes: {
            table.header = {"size", "time_s"};
            constexpr std::uint64_t kSeeds = 10;
            for (std::size_t n : {4, 9, 16, 25}) {
                const double t = best_of(5, [n] {
                    const auto start = Clock::now();
                    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) (void)generate(n, kBenchTimestamp + seed);
                    return seconds_since(start) / kSeeds;
                });
                table.rows.push_back({std::to_string(n) + "x" + std::to_string(n), fixed(t, 6)});
                table.seconds.push_back(t);
            }
            break;
        }
        case BenchSuite::iterations: {
            table.header = {"iterations", "time_s"};
            const Image img = synthetic_image(512, 512, 3, 7);
            for (std::uint32_t rounds : {25u, 50u, 75u, 100u}) {
                const double t = best_of(3, [&] { return time_encryption(img, rounds); });
                table.rows.push_back({std::to_string(rounds), fixed(t, 6)});
                table.seconds.push_back(t);
            }
            break;
        }
        case BenchSuite::images: {
            table.header = {"image", "resolution", "sudoku", "time_s"};
            std::vector<BenchImage> set = images;
            if (set.empty()) {
                set.push_back({"synthetic-a", synthetic_image(256, 256, 1, 1)});
                set.push_back({"synthetic-b", synthetic_image(512, 512, 3, 2)});
                set.push_back({"synthetic-c", synthetic_image(1024, 1024, 3, 3)});
                set.push_back({"synthetic-d", synthetic_image(800, 1210, 3, 4)});
            }
            for (const auto& entry : set) {
                const double t = time_encryption(entry.image, 100);
                table.rows.push_back({entry.name, std::to_string(entry.image.width) + "x" + std::to_string(entry.image.height), "9x9",
                                      fixed(t, 6)});
                table.seconds.push_back(t);
            }
            break;
        }
    }
    return table;
}

}  // namespace sudocrypt
