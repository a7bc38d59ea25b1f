#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sudocrypt/media_io.hpp"

namespace sudocrypt {

/// Deterministic test picture: smooth gradients, a few soft blobs and mild
/// noise, so neighbouring pixels are correlated the way photographs are.
Image synthetic_image(std::uint32_t width, std::uint32_t height, std::uint32_t channels, std::uint64_t seed);

/// Uniformly random samples.
Image random_image(std::uint32_t width, std::uint32_t height, std::uint32_t channels, std::uint64_t seed);

/// Deterministic tone mixture with noise, 16-bit PCM.
AudioClip synthetic_clip(std::size_t frames, std::uint32_t channels, std::uint32_t sample_rate, std::uint64_t seed);

enum class BenchSuite { keygen, iterations, images, sudoku_sizes };

std::optional<BenchSuite> bench_suite_from_string(std::string_view s) noexcept;

struct BenchTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<double> seconds;  // timing column of each row

    /// Comma-separated, header row first, LF line endings.
    std::string to_csv() const;
};

struct BenchImage {
    std::string name;
    Image image;
};

/// keygen:       9x9 keys derived from consecutive timestamps, counts 10..100.
/// iterations:   one 512x512 RGB image, 9x9 grid, 25/50/75/100 rounds.
/// images:       100 rounds, 9x9 grid, over `images` (synthetic set if empty).
/// sudoku_sizes: mean generation time per grid for n = 4, 9, 16, 25.
BenchTable run_bench(BenchSuite suite, const std::vector<BenchImage>& images = {});

}  // namespace sudocrypt
