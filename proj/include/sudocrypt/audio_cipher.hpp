#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "sudocrypt/keymat.hpp"
#include "sudocrypt/media_io.hpp"
#include "sudocrypt/prng.hpp"
#include "sudocrypt/sudoku.hpp"

namespace sudocrypt {

/// How a flat sample stream splits into blocks of the grid size.
struct BlockLayout {
    std::size_t block_size = 0;
    std::size_t num_full_blocks = 0;
    std::size_t tail_length = 0;   // < block_size
    std::uint32_t channels = 1;    // plaintext channel count

    std::size_t total() const noexcept { return num_full_blocks * block_size + tail_length; }
    std::size_t padded_length() const noexcept { return (num_full_blocks + (tail_length ? 1 : 0)) * block_size; }

    friend bool operator==(const BlockLayout&, const BlockLayout&) = default;
};

BlockLayout make_layout(std::size_t length, std::size_t block_size, std::uint32_t channels = 1);

/// Every full block of perm.size() samples is gathered through perm:
/// out[start + j] = in[start + perm[j]]. The tail is copied unchanged.
/// Stereo is handled as one interleaved stream.
AudioClip shuffle_encrypt(const AudioClip& clip, const Permutation& perm);
AudioClip shuffle_decrypt(const AudioClip& clip, const Permutation& perm);

/// XORs a rows x n matrix (row-major) with grid.at(i mod n, j) on the 16-bit
/// pattern of each sample. Self-inverse.
void xor_mask(std::span<std::int16_t> matrix, const SudokuGrid& grid);

struct XorEncrypted {
    AudioClip clip;
    BlockLayout layout;
};

/// Zero-pad to a multiple of n, XOR with the grid, transpose rows x n to n x rows,
/// flatten. The result keeps the input channel count when the padded length
/// divides evenly into frames, otherwise it is emitted as mono.
XorEncrypted xor_encrypt(const AudioClip& clip, const SudokuGrid& grid);

/// Throws KeyMismatch if the clip length differs from layout.padded_length().
AudioClip xor_decrypt(const AudioClip& clip, const SudokuGrid& grid, const BlockLayout& layout);

/// Keyed entry points. `mode` must be Media::audio_shuffle or Media::audio_xor;
/// a key already bound to audio keeps its own mode and rejects a different one.
AudioClip encrypt_audio(const AudioClip& clip, KeyMaterial& k, Media mode);
AudioClip decrypt_audio(const AudioClip& clip, const KeyMaterial& k);

}  // namespace sudocrypt
