#include "sudocrypt/video_cipher.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "sudocrypt/errors.hpp"
#include "sudocrypt/image_cipher.hpp"

namespace sudocrypt {

namespace {

// Runs body(i) for every frame index; frames are independent, so the result
// is the same for any schedule.
template <typename F>
std::vector<Image> map_frames(std::size_t count, const VideoOptions& opts, F&& body) {
    std::vector<Image> out(count);
    std::vector<FrameJob> jobs(count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            const auto start = std::chrono::steady_clock::now();
            try {
                out[i] = body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = count;
            }
            jobs[i] = {i, std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start)};
        }
    };

    unsigned threads = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    if (opts.jobs) *opts.jobs = std::move(jobs);
    return out;
}

}  // namespace

VideoSequence encrypt_video(const VideoSequence& video, KeyMaterial& k, const VideoOptions& opts) {
    check_invariants(k);
    if (k.media != Media::unbound && k.media != Media::video)
        throw KeyMismatch("key is bound to " + std::string(to_string(k.media)) + ", not video");
    if (video.fps_numerator == 0 || video.fps_denominator == 0) throw InvalidArgument("fps must be positive");
    if (video.frames.empty()) throw InvalidArgument("cannot encrypt a video without frames");
    const Image& first = video.frames.front();
    for (const Image& f : video.frames)
        if (f.width != first.width || f.height != first.height || f.channels != first.channels)
            throw FormatError("video frames differ in shape");

    const VideoShape shape{video.frames.size(), video.fps_numerator, video.fps_denominator, first.width, first.height, first.channels};
    if (k.has_shape()) {
        const auto* bound = std::get_if<VideoShape>(&k.shape);
        if (!bound || *bound != shape) throw KeyMismatch("key shape does not match the plaintext video");
    }

    VideoSequence out;
    out.fps_numerator = video.fps_numerator;
    out.fps_denominator = video.fps_denominator;
    out.frames = map_frames(video.frames.size(), opts, [&](std::size_t i) { return encrypt_raster(video.frames[i], k); });
    k.media = Media::video;
    k.shape = shape;
    return out;
}

VideoSequence decrypt_video(const VideoSequence& video, const KeyMaterial& k, const VideoOptions& opts) {
    check_invariants(k);
    if (k.media != Media::video) throw KeyMismatch("key is bound to " + std::string(to_string(k.media)) + ", not video");
    const auto* shape = std::get_if<VideoShape>(&k.shape);
    if (!shape) throw KeyMismatch("key carries no video shape");
    if (video.frames.size() != shape->frame_count)
        throw KeyMismatch("video has " + std::to_string(video.frames.size()) + " frames, key expects " + std::to_string(shape->frame_count));
    for (const Image& f : video.frames)
        if (f.channels != shape->channels) throw KeyMismatch("frame channel count does not match key");

    VideoSequence out;
    out.fps_numerator = shape->fps_numerator;
    out.fps_denominator = shape->fps_denominator;
    out.frames = map_frames(video.frames.size(), opts,
                            [&](std::size_t i) { return decrypt_raster(video.frames[i], k, shape->width, shape->height); });
    return out;
}

}  // namespace sudocrypt
