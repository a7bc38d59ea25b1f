#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "sudocrypt/sudoku.hpp"

namespace sudocrypt {

enum class Media {
    unbound,  // fresh key, not yet used by any cipher
    image,
    audio_shuffle,
    audio_xor,
    video,
};

std::string_view to_string(Media m) noexcept;
std::optional<Media> media_from_string(std::string_view s) noexcept;

struct ImageShape {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t channels = 0;
    friend bool operator==(const ImageShape&, const ImageShape&) = default;
};

struct AudioShape {
    std::uint64_t length = 0;  // interleaved sample count
    std::uint32_t channels = 0;
    std::uint32_t sample_rate = 0;
    friend bool operator==(const AudioShape&, const AudioShape&) = default;
};

struct VideoShape {
    std::uint64_t frame_count = 0;
    std::uint32_t fps_numerator = 0;
    std::uint32_t fps_denominator = 0;
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t channels = 0;
    friend bool operator==(const VideoShape&, const VideoShape&) = default;
};

/// Plaintext shape recorded at encryption time; monostate until a cipher binds it.
using MediaShape = std::variant<std::monostate, ImageShape, AudioShape, VideoShape>;

/// Everything a decryptor needs besides the ciphertext.
struct KeyMaterial {
    std::uint64_t timestamp = 0;
    Media media = Media::unbound;
    unsigned threshold = 1;           // 1..255
    std::uint64_t shuffle_seed = 0;
    std::size_t perm_row = 0;         // row of `grid` used as the block permutation
    std::uint32_t iterations = 1;
    MediaShape shape;
    SudokuGrid grid;

    bool has_shape() const noexcept { return !std::holds_alternative<std::monostate>(shape); }

    friend bool operator==(const KeyMaterial&, const KeyMaterial&) = default;
};

/// threshold = ts mod 254 + 1, grid = generate(n, ts), shuffle_seed = next_u64(ts),
/// perm_row = ts mod n. Media and shape stay unbound.
KeyMaterial derive_from_timestamp(std::uint64_t timestamp, std::size_t n, std::uint32_t iterations = 1);

/// Throws TamperedKey when a field violates its range or the shape does not fit
/// the media type. With `require_solved` the grid must pass strict validation.
void check_invariants(const KeyMaterial& k, bool require_solved = true);

/// Canonical key file bytes:
///   SUDOCRYPT-KEY v1
///   timestamp <u64>
///   media <unbound|image|audio-shuffle|audio-xor|video>
///   threshold <1..255>
///   shuffle_seed <u64>
///   perm_row <idx>
///   iterations <k>
///   dims <w> <h> <c> | samples <len> <c> <rate> | frames <count> <num> <den> <w> <h> <c> | shape none
///   sudoku n=<N>
///   <N rows>
std::string serialize(const KeyMaterial& k);

/// Inverse of serialize. An unsolved grid is completed with solve(); a grid that
/// breaks a constraint or cannot be completed raises TamperedKey. Syntax errors
/// raise KeyParseError carrying the line number.
KeyMaterial parse_key(std::string_view text);

}  // namespace sudocrypt
