#include "sudocrypt/media_io.hpp"

#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "sudocrypt/errors.hpp"

namespace sudocrypt {

namespace fs = std::filesystem;

namespace {

bool is_space(std::uint8_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

// Cursor over a netpbm header.
class PnmHeaderReader {
public:
    explicit PnmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (is_space(bytes_[pos_])) {
                ++pos_;
            } else {
                return;
            }
        }
    }

    std::uint64_t number(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
            v = v * 10 + (bytes_[pos_] - '0');
            if (v > 0xFFFFFFFFu) throw FormatError(std::string("netpbm ") + what + " too large");
            ++pos_;
        }
        if (pos_ == start) throw FormatError(std::string("netpbm header: missing ") + what);
        return v;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    void single_space() {
        if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) throw FormatError("netpbm header: missing separator before raster");
        ++pos_;
    }

    std::size_t pos() const noexcept { return pos_; }
    void advance(std::size_t n) noexcept { pos_ += n; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

void put_u16(Bytes& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(Bytes& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_tag(Bytes& out, const char (&tag)[5]) { out.insert(out.end(), tag, tag + 4); }

std::uint16_t get_u16(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
           (static_cast<std::uint32_t>(b[at + 2]) << 16) | (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char (&tag)[5]) {
    return std::memcmp(b.data() + at, tag, 4) == 0;
}

std::vector<std::string> read_lines(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
    }
    return lines;
}

std::uint64_t manifest_number(std::string_view word, std::size_t line_no) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
    if (ec != std::errc{} || p != word.data() + word.size())
        throw FormatError("video manifest line " + std::to_string(line_no) + ": bad number '" + std::string(word) + "'");
    return v;
}

std::string frame_name(std::size_t index, std::uint32_t channels) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "frame_%06zu.%s", index, channels == 1 ? "pgm" : "ppm");
    return buf;
}

}  // namespace

Image read_image(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] < '1' || bytes[1] > '7') throw FormatError("not a Netpbm file");
    if (bytes[1] != '5' && bytes[1] != '6')
        throw UnsupportedFormat("Netpbm variant P" + std::string(1, static_cast<char>(bytes[1])) + " not supported (expected P5 or P6)");
    const std::uint32_t channels = bytes[1] == '5' ? 1 : 3;
    PnmHeaderReader reader(bytes);
    reader.advance(2);
    const auto width = reader.number("width");
    const auto height = reader.number("height");
    const auto maxval = reader.number("maxval");
    if (width == 0 || height == 0) throw FormatError("netpbm image has zero dimension");
    if (maxval != 255) throw UnsupportedFormat("netpbm maxval " + std::to_string(maxval) + " (only 255 supported)");
    reader.single_space();

    Image img;
    img.width = static_cast<std::uint32_t>(width);
    img.height = static_cast<std::uint32_t>(height);
    img.channels = channels;
    const std::size_t payload = img.pixel_count() * channels;
    if (bytes.size() - reader.pos() < payload)
        throw FormatError("netpbm raster truncated: need " + std::to_string(payload) + " bytes, have " +
                          std::to_string(bytes.size() - reader.pos()));
    img.samples.assign(bytes.begin() + static_cast<std::ptrdiff_t>(reader.pos()),
                       bytes.begin() + static_cast<std::ptrdiff_t>(reader.pos() + payload));
    return img;
}

Bytes write_image(const Image& img) {
    if (img.channels != 1 && img.channels != 3) throw InvalidArgument("netpbm writer supports 1 or 3 channels");
    if (img.samples.size() != img.pixel_count() * img.channels) throw InvalidArgument("image sample count does not match dims");
    const std::string header = std::string(img.channels == 1 ? "P5" : "P6") + "\n" + std::to_string(img.width) + " " +
                               std::to_string(img.height) + "\n255\n";
    Bytes out(header.begin(), header.end());
    out.insert(out.end(), img.samples.begin(), img.samples.end());
    return out;
}

AudioClip read_wav(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE")) throw FormatError("not a RIFF/WAVE file");

    bool have_fmt = false;
    AudioClip clip;
    std::uint16_t block_align = 0;
    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const std::uint32_t size = get_u32(bytes, pos + 4);
        const std::size_t body = pos + 8;
        if (size > bytes.size() - body) throw FormatError("WAV chunk extends past end of file");

        if (tag_is(bytes, pos, "fmt ")) {
            if (size < 16) throw FormatError("WAV fmt chunk too short");
            const std::uint16_t format = get_u16(bytes, body);
            const std::uint16_t channels = get_u16(bytes, body + 2);
            const std::uint32_t rate = get_u32(bytes, body + 4);
            block_align = get_u16(bytes, body + 12);
            const std::uint16_t bits = get_u16(bytes, body + 14);
            if (format != 1) throw UnsupportedFormat("WAV format code " + std::to_string(format) + " (only PCM supported)");
            if (bits != 16) throw UnsupportedFormat("WAV bit depth " + std::to_string(bits) + " (only 16 supported)");
            if (channels < 1 || channels > 2) throw UnsupportedFormat("WAV with " + std::to_string(channels) + " channels");
            if (block_align != channels * 2) throw FormatError("WAV block align inconsistent with channel count");
            if (rate == 0) throw FormatError("WAV sample rate is zero");
            clip.channels = channels;
            clip.sample_rate = rate;
            have_fmt = true;
        } else if (tag_is(bytes, pos, "data")) {
            if (!have_fmt) throw FormatError("WAV data chunk precedes fmt chunk");
            if (size % block_align != 0) throw FormatError("WAV data size is not a whole number of frames");
            clip.samples.resize(size / 2);
            for (std::size_t i = 0; i < clip.samples.size(); ++i)
                clip.samples[i] = static_cast<std::int16_t>(get_u16(bytes, body + 2 * i));
            return clip;
        }
        pos = body + size + (size & 1);
    }
    throw FormatError(have_fmt ? "WAV file has no data chunk" : "WAV file has no fmt chunk");
}

Bytes write_wav(const AudioClip& clip) {
    if (clip.channels < 1 || clip.channels > 2) throw InvalidArgument("WAV writer supports 1 or 2 channels");
    if (clip.samples.size() % clip.channels != 0) throw InvalidArgument("sample count not divisible by channel count");
    const std::uint64_t data_bytes = clip.samples.size() * 2;
    if (data_bytes > 0xFFFFFFFFu - 36) throw InvalidArgument("clip too long for RIFF");

    Bytes out;
    out.reserve(44 + data_bytes);
    put_tag(out, "RIFF");
    put_u32(out, static_cast<std::uint32_t>(36 + data_bytes));
    put_tag(out, "WAVE");
    put_tag(out, "fmt ");
    put_u32(out, 16);
    put_u16(out, 1);
    put_u16(out, static_cast<std::uint16_t>(clip.channels));
    put_u32(out, clip.sample_rate);
    put_u32(out, clip.sample_rate * clip.channels * 2);
    put_u16(out, static_cast<std::uint16_t>(clip.channels * 2));
    put_u16(out, 16);
    put_tag(out, "data");
    put_u32(out, static_cast<std::uint32_t>(data_bytes));
    for (std::int16_t s : clip.samples) put_u16(out, static_cast<std::uint16_t>(s));
    return out;
}

VideoSequence read_video(const fs::path& dir) {
    const auto lines = read_lines(dir / kVideoManifest);
    if (lines.empty() || lines[0] != "SUDOCRYPT-VIDEO v1") throw FormatError("video manifest: bad magic line");
    if (lines.size() < 3) throw FormatError("video manifest truncated");

    VideoSequence video;
    const std::string_view fps_line = lines[1];
    if (!fps_line.starts_with("fps ")) throw FormatError("video manifest line 2: expected 'fps <num> <den>'");
    const std::string_view fps = fps_line.substr(4);
    const std::size_t space = fps.find(' ');
    if (space == std::string_view::npos) throw FormatError("video manifest line 2: expected 'fps <num> <den>'");
    const auto num = manifest_number(fps.substr(0, space), 2);
    const auto den = manifest_number(fps.substr(space + 1), 2);
    if (num == 0 || den == 0 || num > 0xFFFFFFFFu || den > 0xFFFFFFFFu) throw FormatError("video manifest: fps out of range");
    video.fps_numerator = static_cast<std::uint32_t>(num);
    video.fps_denominator = static_cast<std::uint32_t>(den);

    if (!lines[2].starts_with("frames ")) throw FormatError("video manifest line 3: expected 'frames <count>'");
    const auto count = manifest_number(std::string_view(lines[2]).substr(7), 3);
    if (lines.size() < 3 + count) throw FormatError("video manifest lists fewer frames than declared");

    video.frames.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const fs::path frame_path = dir / lines[3 + i];
        if (!fs::is_regular_file(frame_path)) throw FormatError("video frame missing: " + frame_path.string());
        Image frame = read_image(read_file(frame_path));
        if (!video.frames.empty()) {
            const Image& first = video.frames.front();
            if (frame.width != first.width || frame.height != first.height || frame.channels != first.channels)
                throw FormatError("video frame " + std::to_string(i) + " differs in shape from frame 0");
        }
        video.frames.push_back(std::move(frame));
    }
    return video;
}

void write_video(const VideoSequence& video, const fs::path& dir) {
    if (video.fps_numerator == 0 || video.fps_denominator == 0) throw InvalidArgument("fps must be positive");
    for (const Image& f : video.frames) {
        const Image& first = video.frames.front();
        if (f.width != first.width || f.height != first.height || f.channels != first.channels)
            throw FormatError("video frames differ in shape");
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

    std::string manifest = "SUDOCRYPT-VIDEO v1\nfps " + std::to_string(video.fps_numerator) + " " +
                           std::to_string(video.fps_denominator) + "\nframes " + std::to_string(video.frames.size()) + "\n";
    for (std::size_t i = 0; i < video.frames.size(); ++i) {
        const std::string name = frame_name(i, video.frames[i].channels);
        write_file(dir / name, write_image(video.frames[i]));
        manifest += name + "\n";
    }
    write_file(dir / kVideoManifest, manifest);
}

Bytes read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for " + path.string());
}

void write_file(const fs::path& path, std::string_view text) {
    write_file(path, std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace sudocrypt
