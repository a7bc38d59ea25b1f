#include "sudocrypt/audio_cipher.hpp"

#include <string>

#include "sudocrypt/errors.hpp"

namespace sudocrypt {

namespace {

AudioClip permute_blocks(const AudioClip& clip, const Permutation& perm) {
    const std::size_t n = perm.size();
    if (n == 0) throw InvalidArgument("empty block permutation");
    AudioClip out = clip;
    const std::size_t blocks = clip.samples.size() / n;
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t start = b * n;
        for (std::size_t j = 0; j < n; ++j) out.samples[start + j] = clip.samples[start + perm[j]];
    }
    return out;
}

std::uint32_t output_channels(std::size_t length, std::uint32_t channels) {
    return length % channels == 0 ? channels : 1;
}

}  // namespace

BlockLayout make_layout(std::size_t length, std::size_t block_size, std::uint32_t channels) {
    if (block_size == 0) throw InvalidArgument("block size must be positive");
    return BlockLayout{block_size, length / block_size, length % block_size, channels};
}

AudioClip shuffle_encrypt(const AudioClip& clip, const Permutation& perm) { return permute_blocks(clip, perm); }

AudioClip shuffle_decrypt(const AudioClip& clip, const Permutation& perm) {
    return permute_blocks(clip, invert_permutation(perm));
}

void xor_mask(std::span<std::int16_t> matrix, const SudokuGrid& grid) {
    const std::size_t n = grid.n();
    if (n == 0 || matrix.size() % n != 0) throw InvalidArgument("XOR matrix length is not a multiple of the grid size");
    const std::size_t rows = matrix.size() / n;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            auto& s = matrix[i * n + j];
            const auto bits = static_cast<std::uint16_t>(s) ^ static_cast<std::uint16_t>(grid.at(i % n, j));
            s = static_cast<std::int16_t>(bits);
        }
    }
}

XorEncrypted xor_encrypt(const AudioClip& clip, const SudokuGrid& grid) {
    const std::size_t n = grid.n();
    const BlockLayout layout = make_layout(clip.samples.size(), n, clip.channels);
    const std::size_t padded = layout.padded_length();
    const std::size_t rows = padded / n;

    std::vector<std::int16_t> matrix(clip.samples);
    matrix.resize(padded, 0);
    xor_mask(matrix, grid);

    XorEncrypted out;
    out.layout = layout;
    out.clip.sample_rate = clip.sample_rate;
    out.clip.channels = output_channels(padded, clip.channels);
    out.clip.samples.resize(padded);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < n; ++j) out.clip.samples[j * rows + i] = matrix[i * n + j];
    return out;
}

AudioClip xor_decrypt(const AudioClip& clip, const SudokuGrid& grid, const BlockLayout& layout) {
    const std::size_t n = grid.n();
    if (layout.block_size != n) throw KeyMismatch("layout block size does not match the grid");
    const std::size_t padded = layout.padded_length();
    if (clip.samples.size() != padded)
        throw KeyMismatch("ciphertext has " + std::to_string(clip.samples.size()) + " samples, key expects " + std::to_string(padded));
    const std::size_t rows = padded / n;

    std::vector<std::int16_t> matrix(padded);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < n; ++j) matrix[i * n + j] = clip.samples[j * rows + i];
    xor_mask(matrix, grid);
    matrix.resize(layout.total());

    AudioClip out;
    out.sample_rate = clip.sample_rate;
    out.channels = layout.channels;
    out.samples = std::move(matrix);
    return out;
}

AudioClip encrypt_audio(const AudioClip& clip, KeyMaterial& k, Media mode) {
    check_invariants(k);
    if (mode != Media::audio_shuffle && mode != Media::audio_xor) throw InvalidArgument("audio mode must be audio-shuffle or audio-xor");
    if (clip.samples.empty()) throw InvalidArgument("cannot encrypt an empty clip");
    if (k.media != Media::unbound && k.media != mode)
        throw KeyMismatch("key is bound to " + std::string(to_string(k.media)) + ", not " + std::string(to_string(mode)));
    const AudioShape shape{clip.samples.size(), clip.channels, clip.sample_rate};
    if (k.has_shape()) {
        const auto* bound = std::get_if<AudioShape>(&k.shape);
        if (!bound || *bound != shape) throw KeyMismatch("key shape does not match the plaintext clip");
    }

    AudioClip out = mode == Media::audio_shuffle ? shuffle_encrypt(clip, row_permutation(k.grid, k.perm_row))
                                                 : xor_encrypt(clip, k.grid).clip;
    k.media = mode;
    k.shape = shape;
    return out;
}

AudioClip decrypt_audio(const AudioClip& clip, const KeyMaterial& k) {
    check_invariants(k);
    if (k.media != Media::audio_shuffle && k.media != Media::audio_xor)
        throw KeyMismatch("key is bound to " + std::string(to_string(k.media)) + ", not audio");
    const auto* shape = std::get_if<AudioShape>(&k.shape);
    if (!shape) throw KeyMismatch("key carries no audio shape");

    if (k.media == Media::audio_shuffle) {
        if (clip.samples.size() != shape->length) throw KeyMismatch("ciphertext length does not match key");
        AudioClip out = shuffle_decrypt(clip, row_permutation(k.grid, k.perm_row));
        out.channels = shape->channels;
        out.sample_rate = shape->sample_rate;
        return out;
    }
    AudioClip out = xor_decrypt(clip, k.grid, make_layout(shape->length, k.grid.n(), shape->channels));
    out.sample_rate = shape->sample_rate;
    return out;
}

}  // namespace sudocrypt
