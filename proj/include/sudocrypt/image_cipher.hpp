#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "sudocrypt/keymat.hpp"
#include "sudocrypt/media_io.hpp"
#include "sudocrypt/prng.hpp"

namespace sudocrypt {

// Encryption order; decryption visits them in reverse.
enum class Stage : std::size_t { threshold = 0, pad_shuffle = 1, block_transform = 2, rotate = 3 };

inline constexpr std::array<Stage, 4> kStages{Stage::threshold, Stage::pad_shuffle, Stage::block_transform, Stage::rotate};

std::string_view to_string(Stage s) noexcept;

struct StageRecord {
    Stage stage;
    std::uint32_t round;
    std::chrono::nanoseconds duration;
    std::optional<Image> output;  // filled only when the trace retains images
};

struct StageTrace {
    bool retain_images = false;
    std::vector<StageRecord> records;

    /// Summed duration per stage, indexed by Stage.
    std::array<std::chrono::nanoseconds, 4> totals() const;
};

// Stage primitives. Each is a bijection on its domain and returns a new image.

/// s -> (s + r) mod 256 on every sample. Throws InvalidArgument unless 1 <= r <= 255.
Image threshold_encrypt(const Image& img, unsigned r);
/// s -> (s - r) mod 256.
Image threshold_decrypt(const Image& img, unsigned r);

/// Zero-pads right and bottom to the next multiples of n. Throws InvalidArgument for n < 2.
Image pad_image(const Image& img, std::size_t n);
/// Keeps the top-left width x height region.
Image crop_image(const Image& img, std::uint32_t width, std::uint32_t height);

/// Output row i is input row p[i], p = derive_permutation(seed, height).
Image row_shuffle(const Image& img, std::uint64_t seed);
Image row_unshuffle(const Image& img, std::uint64_t seed);

/// Inside every n x n tile: columns permuted by `perm`, then rows permuted by `perm`,
/// i.e. out(i, j) = in(perm[i], perm[j]) in tile coordinates. Throws InvalidArgument
/// unless both dimensions are multiples of perm.size().
Image block_transform(const Image& img, const Permutation& perm);
Image block_untransform(const Image& img, const Permutation& perm);

/// Source (x, y) lands on (H-1-y, x); output is H wide and W tall.
Image rotate_cw(const Image& img);
Image rotate_ccw(const Image& img);

/// Row-shuffle seed used in round t.
std::uint64_t round_seed(std::uint64_t shuffle_seed, std::uint32_t round) noexcept;

/// Ciphertext dimensions produced from a plaintext of the given size.
ImageShape ciphertext_shape(std::uint32_t width, std::uint32_t height, std::uint32_t channels, const KeyMaterial& k);

/// Full pipeline without key binding. Shared by the image and video ciphers.
Image encrypt_raster(const Image& img, const KeyMaterial& k, StageTrace* trace = nullptr);
/// Inverse of encrypt_raster for a plaintext of original_width x original_height.
Image decrypt_raster(const Image& img, const KeyMaterial& k, std::uint32_t original_width, std::uint32_t original_height,
                     StageTrace* trace = nullptr);

/// Encrypts `img` and binds media = image and the plaintext shape into `k`.
/// Throws KeyMismatch if `k` is bound to other media or a different shape,
/// TamperedKey if `k` breaks its invariants.
Image encrypt_image(const Image& img, KeyMaterial& k, StageTrace* trace = nullptr);

/// Throws KeyMismatch when `k` carries no image shape or the ciphertext
/// dimensions do not match it.
Image decrypt_image(const Image& img, const KeyMaterial& k, StageTrace* trace = nullptr);

}  // namespace sudocrypt
