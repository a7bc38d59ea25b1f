#include "sudocrypt/image_cipher.hpp"

#include <algorithm>
#include <cstring>
#include <string>

#include "sudocrypt/errors.hpp"

namespace sudocrypt {

namespace {

using Clock = std::chrono::steady_clock;

std::uint32_t round_up(std::uint32_t v, std::size_t n) {
    const auto m = static_cast<std::uint32_t>(n);
    return (v + m - 1) / m * m;
}

// Times one stage and appends it to the trace, if any.
template <typename F>
Image timed(StageTrace* trace, Stage stage, std::uint32_t round, F&& body) {
    const auto start = Clock::now();
    Image out = body();
    if (trace) {
        StageRecord rec{stage, round, std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start), std::nullopt};
        if (trace->retain_images) rec.output = out;
        trace->records.push_back(std::move(rec));
    }
    return out;
}

Image shift_samples(const Image& img, std::uint8_t delta) {
    Image out = img;
    for (auto& s : out.samples) s = static_cast<std::uint8_t>(s + delta);
    return out;
}

void check_threshold(unsigned r) {
    if (r < 1 || r > 255) throw InvalidArgument("threshold " + std::to_string(r) + " outside 1..255");
}

Image permute_rows(const Image& img, const Permutation& p) {
    Image out(img.width, img.height, img.channels);
    const std::size_t stride = img.row_bytes();
    for (std::size_t i = 0; i < p.size(); ++i)
        std::memcpy(out.samples.data() + i * stride, img.samples.data() + p[i] * stride, stride);
    return out;
}

// out(i, j) = in(p[i], p[j]) inside each tile of side p.size().
Image permute_tiles(const Image& img, const Permutation& p) {
    const std::size_t n = p.size();
    if (n == 0 || img.width % n != 0 || img.height % n != 0)
        throw InvalidArgument("image " + std::to_string(img.width) + "x" + std::to_string(img.height) +
                              " is not tiled by block size " + std::to_string(n));
    Image out(img.width, img.height, img.channels);
    const std::size_t c = img.channels;
    for (std::uint32_t y = 0; y < img.height; ++y) {
        const std::size_t tile_y = y - y % n;
        const auto src_y = static_cast<std::uint32_t>(tile_y + p[y % n]);
        const std::uint8_t* src_row = img.samples.data() + img.offset(0, src_y);
        std::uint8_t* dst = out.samples.data() + out.offset(0, y);
        for (std::size_t tile_x = 0; tile_x < img.width; tile_x += n) {
            for (std::size_t j = 0; j < n; ++j) {
                std::memcpy(dst, src_row + (tile_x + p[j]) * c, c);
                dst += c;
            }
        }
    }
    return out;
}

void bind_or_check(KeyMaterial& k, const Image& img) {
    if (k.media != Media::unbound && k.media != Media::image)
        throw KeyMismatch("key is bound to " + std::string(to_string(k.media)) + ", not image");
    const ImageShape shape{img.width, img.height, img.channels};
    if (k.has_shape()) {
        const auto* bound = std::get_if<ImageShape>(&k.shape);
        if (!bound || *bound != shape) throw KeyMismatch("key shape does not match the plaintext image");
    }
    k.media = Media::image;
    k.shape = shape;
}

}  // namespace

std::string_view to_string(Stage s) noexcept {
    switch (s) {
        case Stage::threshold: return "threshold";
        case Stage::pad_shuffle: return "pad_shuffle";
        case Stage::block_transform: return "block_transform";
        case Stage::rotate: return "rotate";
    }
    return "unknown";
}

std::array<std::chrono::nanoseconds, 4> StageTrace::totals() const {
    std::array<std::chrono::nanoseconds, 4> sums{};
    for (const auto& r : records) sums[static_cast<std::size_t>(r.stage)] += r.duration;
    return sums;
}

Image threshold_encrypt(const Image& img, unsigned r) {
    check_threshold(r);
    return shift_samples(img, static_cast<std::uint8_t>(r));
}

Image threshold_decrypt(const Image& img, unsigned r) {
    check_threshold(r);
    return shift_samples(img, static_cast<std::uint8_t>(256 - r));
}

Image pad_image(const Image& img, std::size_t n) {
    if (n < 2) throw InvalidArgument("block size must be at least 2");
    const std::uint32_t w = round_up(img.width, n), h = round_up(img.height, n);
    if (w == img.width && h == img.height) return img;
    Image out(w, h, img.channels, 0);
    for (std::uint32_t y = 0; y < img.height; ++y)
        std::memcpy(out.samples.data() + out.offset(0, y), img.samples.data() + img.offset(0, y), img.row_bytes());
    return out;
}

Image crop_image(const Image& img, std::uint32_t width, std::uint32_t height) {
    if (width > img.width || height > img.height) throw InvalidArgument("crop region exceeds image");
    if (width == img.width && height == img.height) return img;
    Image out(width, height, img.channels);
    for (std::uint32_t y = 0; y < height; ++y)
        std::memcpy(out.samples.data() + out.offset(0, y), img.samples.data() + img.offset(0, y), out.row_bytes());
    return out;
}

Image row_shuffle(const Image& img, std::uint64_t seed) {
    if (img.height == 0) return img;
    return permute_rows(img, derive_permutation(seed, img.height));
}

Image row_unshuffle(const Image& img, std::uint64_t seed) {
    if (img.height == 0) return img;
    return permute_rows(img, invert_permutation(derive_permutation(seed, img.height)));
}

Image block_transform(const Image& img, const Permutation& perm) { return permute_tiles(img, perm); }

Image block_untransform(const Image& img, const Permutation& perm) { return permute_tiles(img, invert_permutation(perm)); }

Image rotate_cw(const Image& img) {
    Image out(img.height, img.width, img.channels);
    const std::size_t c = img.channels;
    for (std::uint32_t y = 0; y < img.height; ++y)
        for (std::uint32_t x = 0; x < img.width; ++x)
            std::memcpy(&out.at(img.height - 1 - y, x), img.samples.data() + img.offset(x, y), c);
    return out;
}

Image rotate_ccw(const Image& img) {
    Image out(img.height, img.width, img.channels);
    const std::size_t c = img.channels;
    for (std::uint32_t y = 0; y < out.height; ++y)
        for (std::uint32_t x = 0; x < out.width; ++x)
            std::memcpy(&out.at(x, y), img.samples.data() + img.offset(img.width - 1 - y, x), c);
    return out;
}

std::uint64_t round_seed(std::uint64_t shuffle_seed, std::uint32_t round) noexcept {
    return next_u64(PrngState{shuffle_seed + round}).second;
}

ImageShape ciphertext_shape(std::uint32_t width, std::uint32_t height, std::uint32_t channels, const KeyMaterial& k) {
    const std::size_t n = k.grid.n();
    ImageShape s{round_up(width, n), round_up(height, n), channels};
    if (k.iterations % 2 == 1) std::swap(s.width, s.height);
    return s;
}

Image encrypt_raster(const Image& img, const KeyMaterial& k, StageTrace* trace) {
    if (img.width == 0 || img.height == 0) throw InvalidArgument("cannot encrypt an empty image");
    const Permutation block = row_permutation(k.grid, k.perm_row);
    Image cur = img;
    for (std::uint32_t t = 0; t < k.iterations; ++t) {
        cur = timed(trace, Stage::threshold, t, [&] { return threshold_encrypt(cur, k.threshold); });
        cur = timed(trace, Stage::pad_shuffle, t, [&] {
            return row_shuffle(t == 0 ? pad_image(cur, k.grid.n()) : cur, round_seed(k.shuffle_seed, t));
        });
        cur = timed(trace, Stage::block_transform, t, [&] { return block_transform(cur, block); });
        cur = timed(trace, Stage::rotate, t, [&] { return rotate_cw(cur); });
    }
    return cur;
}

Image decrypt_raster(const Image& img, const KeyMaterial& k, std::uint32_t original_width, std::uint32_t original_height,
                     StageTrace* trace) {
    const ImageShape expect = ciphertext_shape(original_width, original_height, img.channels, k);
    if (img.width != expect.width || img.height != expect.height)
        throw KeyMismatch("ciphertext is " + std::to_string(img.width) + "x" + std::to_string(img.height) + ", key expects " +
                          std::to_string(expect.width) + "x" + std::to_string(expect.height));
    const Permutation block = row_permutation(k.grid, k.perm_row);
    Image cur = img;
    for (std::uint32_t t = k.iterations; t-- > 0;) {
        cur = timed(trace, Stage::rotate, t, [&] { return rotate_ccw(cur); });
        cur = timed(trace, Stage::block_transform, t, [&] { return block_untransform(cur, block); });
        cur = timed(trace, Stage::pad_shuffle, t, [&] {
            Image rows = row_unshuffle(cur, round_seed(k.shuffle_seed, t));
            return t == 0 ? crop_image(rows, original_width, original_height) : rows;
        });
        cur = timed(trace, Stage::threshold, t, [&] { return threshold_decrypt(cur, k.threshold); });
    }
    return cur;
}

Image encrypt_image(const Image& img, KeyMaterial& k, StageTrace* trace) {
    check_invariants(k);
    KeyMaterial bound = k;
    bind_or_check(bound, img);
    Image out = encrypt_raster(img, bound, trace);
    k = std::move(bound);
    return out;
}

Image decrypt_image(const Image& img, const KeyMaterial& k, StageTrace* trace) {
    check_invariants(k);
    if (k.media != Media::image) throw KeyMismatch("key is bound to " + std::string(to_string(k.media)) + ", not image");
    const auto* shape = std::get_if<ImageShape>(&k.shape);
    if (!shape) throw KeyMismatch("key carries no image shape");
    if (shape->channels != img.channels) throw KeyMismatch("ciphertext channel count does not match key");
    return decrypt_raster(img, k, shape->width, shape->height, trace);
}

}  // namespace sudocrypt
