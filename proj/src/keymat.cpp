#include "sudocrypt/keymat.hpp"

#include <charconv>
#include <vector>

#include "sudocrypt/errors.hpp"

namespace sudocrypt {

namespace {

constexpr std::string_view kMagic = "SUDOCRYPT-KEY v1";
constexpr std::size_t kShapeLine = 8;

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    while (!text.empty()) {
        const std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    return lines;
}

std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) words.push_back(line.substr(start, i - start));
    }
    return words;
}

std::uint64_t parse_u64(std::string_view word, std::size_t line_no) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
    if (ec != std::errc{} || p != word.data() + word.size())
        throw KeyParseError(line_no, "expected unsigned integer, got '" + std::string(word) + "'");
    return v;
}

std::uint32_t parse_u32(std::string_view word, std::size_t line_no) {
    const std::uint64_t v = parse_u64(word, line_no);
    if (v > 0xFFFFFFFFu) throw KeyParseError(line_no, "value out of 32-bit range");
    return static_cast<std::uint32_t>(v);
}

// "<keyword> <u64>" on the given line.
std::uint64_t keyed_u64(const std::vector<std::string_view>& lines, std::size_t line_no, std::string_view keyword) {
    if (line_no > lines.size()) throw KeyParseError(line_no, "missing '" + std::string(keyword) + "' line");
    const auto words = split_words(lines[line_no - 1]);
    if (words.size() != 2 || words[0] != keyword) throw KeyParseError(line_no, "expected '" + std::string(keyword) + " <value>'");
    return parse_u64(words[1], line_no);
}

MediaShape parse_shape(std::string_view line, std::size_t line_no) {
    const auto w = split_words(line);
    if (w.size() == 2 && w[0] == "shape" && w[1] == "none") return std::monostate{};
    if (!w.empty() && w[0] == "dims") {
        if (w.size() != 4) throw KeyParseError(line_no, "expected 'dims <w> <h> <channels>'");
        return ImageShape{parse_u32(w[1], line_no), parse_u32(w[2], line_no), parse_u32(w[3], line_no)};
    }
    if (!w.empty() && w[0] == "samples") {
        if (w.size() != 4) throw KeyParseError(line_no, "expected 'samples <len> <channels> <rate>'");
        return AudioShape{parse_u64(w[1], line_no), parse_u32(w[2], line_no), parse_u32(w[3], line_no)};
    }
    if (!w.empty() && w[0] == "frames") {
        if (w.size() != 7) throw KeyParseError(line_no, "expected 'frames <count> <fps_num> <fps_den> <w> <h> <channels>'");
        return VideoShape{parse_u64(w[1], line_no), parse_u32(w[2], line_no), parse_u32(w[3], line_no),
                          parse_u32(w[4], line_no), parse_u32(w[5], line_no), parse_u32(w[6], line_no)};
    }
    throw KeyParseError(line_no, "expected a shape line (dims, samples, frames or 'shape none')");
}

std::string shape_line(const MediaShape& shape) {
    struct Visitor {
        std::string operator()(std::monostate) const { return "shape none"; }
        std::string operator()(const ImageShape& s) const {
            return "dims " + std::to_string(s.width) + " " + std::to_string(s.height) + " " + std::to_string(s.channels);
        }
        std::string operator()(const AudioShape& s) const {
            return "samples " + std::to_string(s.length) + " " + std::to_string(s.channels) + " " + std::to_string(s.sample_rate);
        }
        std::string operator()(const VideoShape& s) const {
            return "frames " + std::to_string(s.frame_count) + " " + std::to_string(s.fps_numerator) + " " +
                   std::to_string(s.fps_denominator) + " " + std::to_string(s.width) + " " + std::to_string(s.height) + " " +
                   std::to_string(s.channels);
        }
    };
    return std::visit(Visitor{}, shape);
}

bool channels_ok(std::uint32_t c) { return c >= 1 && c <= 4; }

}  // namespace

std::string_view to_string(Media m) noexcept {
    switch (m) {
        case Media::unbound: return "unbound";
        case Media::image: return "image";
        case Media::audio_shuffle: return "audio-shuffle";
        case Media::audio_xor: return "audio-xor";
        case Media::video: return "video";
    }
    return "unbound";
}

std::optional<Media> media_from_string(std::string_view s) noexcept {
    for (Media m : {Media::unbound, Media::image, Media::audio_shuffle, Media::audio_xor, Media::video})
        if (to_string(m) == s) return m;
    return std::nullopt;
}

KeyMaterial derive_from_timestamp(std::uint64_t timestamp, std::size_t n, std::uint32_t iterations) {
    if (!SudokuGrid::is_supported_size(n)) throw InvalidArgument("grid size " + std::to_string(n) + " is not supported");
    if (iterations == 0) throw InvalidArgument("iterations must be positive");
    KeyMaterial k;
    k.timestamp = timestamp;
    k.threshold = static_cast<unsigned>(timestamp % 254) + 1;
    k.grid = generate(n, timestamp);
    k.shuffle_seed = next_u64(PrngState{timestamp}).second;
    k.perm_row = static_cast<std::size_t>(timestamp % n);
    k.iterations = iterations;
    return k;
}

void check_invariants(const KeyMaterial& k, bool require_solved) {
    if (k.threshold < 1 || k.threshold > 255) throw TamperedKey("threshold " + std::to_string(k.threshold) + " outside 1..255");
    if (k.grid.n() == 0) throw TamperedKey("key has no grid");
    if (k.perm_row >= k.grid.n()) throw TamperedKey("perm_row " + std::to_string(k.perm_row) + " outside grid");
    if (k.iterations == 0) throw TamperedKey("iterations must be positive");
    const ValidationMode mode = require_solved ? ValidationMode::strict : ValidationMode::partial;
    if (!validate(k.grid, mode)) throw TamperedKey("Sudoku grid violates its constraints");

    struct Checker {
        Media media;
        void operator()(std::monostate) const {}
        void operator()(const ImageShape& s) const {
            if (media != Media::image) throw TamperedKey("image shape on a non-image key");
            if (s.width == 0 || s.height == 0 || !channels_ok(s.channels)) throw TamperedKey("image shape fields out of range");
        }
        void operator()(const AudioShape& s) const {
            if (media != Media::audio_shuffle && media != Media::audio_xor) throw TamperedKey("audio shape on a non-audio key");
            if (s.length == 0 || s.sample_rate == 0 || s.channels < 1 || s.channels > 2)
                throw TamperedKey("audio shape fields out of range");
        }
        void operator()(const VideoShape& s) const {
            if (media != Media::video) throw TamperedKey("video shape on a non-video key");
            if (s.fps_numerator == 0 || s.fps_denominator == 0 || s.width == 0 || s.height == 0 || !channels_ok(s.channels))
                throw TamperedKey("video shape fields out of range");
        }
    };
    std::visit(Checker{k.media}, k.shape);
    if (k.media == Media::unbound && k.has_shape()) throw TamperedKey("unbound key carries a shape");
}

std::string serialize(const KeyMaterial& k) {
    std::string out;
    out += kMagic;
    out += "\ntimestamp " + std::to_string(k.timestamp);
    out += "\nmedia ";
    out += to_string(k.media);
    out += "\nthreshold " + std::to_string(k.threshold);
    out += "\nshuffle_seed " + std::to_string(k.shuffle_seed);
    out += "\nperm_row " + std::to_string(k.perm_row);
    out += "\niterations " + std::to_string(k.iterations);
    out += "\n" + shape_line(k.shape) + "\n";
    out += to_text(k.grid);
    return out;
}

KeyMaterial parse_key(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw KeyParseError(1, "empty key file");
    if (lines[0] != kMagic) throw KeyParseError(1, "expected '" + std::string(kMagic) + "'");

    KeyMaterial k;
    k.timestamp = keyed_u64(lines, 2, "timestamp");

    if (lines.size() < 3) throw KeyParseError(3, "missing 'media' line");
    const auto media_words = split_words(lines[2]);
    if (media_words.size() != 2 || media_words[0] != "media") throw KeyParseError(3, "expected 'media <type>'");
    const auto media = media_from_string(media_words[1]);
    if (!media) throw KeyParseError(3, "unknown media '" + std::string(media_words[1]) + "'");
    k.media = *media;

    const std::uint64_t threshold = keyed_u64(lines, 4, "threshold");
    if (threshold < 1 || threshold > 255) throw TamperedKey("threshold " + std::to_string(threshold) + " outside 1..255");
    k.threshold = static_cast<unsigned>(threshold);
    k.shuffle_seed = keyed_u64(lines, 5, "shuffle_seed");
    k.perm_row = static_cast<std::size_t>(keyed_u64(lines, 6, "perm_row"));
    const std::uint64_t iterations = keyed_u64(lines, 7, "iterations");
    if (iterations == 0 || iterations > 0xFFFFFFFFu) throw TamperedKey("iterations out of range");
    k.iterations = static_cast<std::uint32_t>(iterations);

    if (lines.size() < kShapeLine) throw KeyParseError(kShapeLine, "missing shape line");
    k.shape = parse_shape(lines[kShapeLine - 1], kShapeLine);

    const std::span<const std::string_view> grid_lines(lines.data() + kShapeLine, lines.size() - kShapeLine);
    k.grid = grid_from_text(grid_lines, kShapeLine + 1);

    check_invariants(k, false);
    if (k.grid.empty_count() > 0) {
        auto solved = solve(k.grid);
        if (!solved) throw TamperedKey("Sudoku grid has no solution");
        k.grid = std::move(*solved);
    }
    return k;
}

}  // namespace sudocrypt
