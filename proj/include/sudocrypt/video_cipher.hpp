#pragma once

#include <chrono>
#include <cstddef>
#include <vector>

#include "sudocrypt/keymat.hpp"
#include "sudocrypt/media_io.hpp"

namespace sudocrypt {

struct FrameJob {
    std::size_t index = 0;
    std::chrono::nanoseconds duration{};
};

struct VideoOptions {
    unsigned threads = 1;              // 0 picks std::thread::hardware_concurrency()
    std::vector<FrameJob>* jobs = nullptr;  // per-frame timings, in frame order
};

/// Encrypts every frame with the image pipeline under one key and binds
/// media = video plus the frame shape into `k`. Output does not depend on
/// the thread count. Throws FormatError for frames of mixed shape.
VideoSequence encrypt_video(const VideoSequence& video, KeyMaterial& k, const VideoOptions& opts = {});

/// Throws KeyMismatch if the frame count or frame shape disagrees with `k`.
VideoSequence decrypt_video(const VideoSequence& video, const KeyMaterial& k, const VideoOptions& opts = {});

}  // namespace sudocrypt
