#include <doctest.h>

#include <string>

#include "helpers.hpp"
#include "sudocrypt/errors.hpp"
#include "sudocrypt/media_io.hpp"

using namespace sudocrypt;

namespace {

Bytes bytes_of(const std::string& s) { return Bytes(s.begin(), s.end()); }

void put_u16(Bytes& b, std::uint16_t v) {
    b.push_back(v & 0xff);
    b.push_back(v >> 8);
}

void put_u32(Bytes& b, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back((v >> (8 * i)) & 0xff);
}

Bytes wav_header(std::uint16_t format, std::uint16_t channels, std::uint16_t bits, std::uint32_t data_bytes) {
    Bytes b = bytes_of("RIFF");
    put_u32(b, 36 + data_bytes);
    for (char ch : std::string("WAVEfmt ")) b.push_back(ch);
    put_u32(b, 16);
    put_u16(b, format);
    put_u16(b, channels);
    put_u32(b, 8000);
    put_u32(b, 8000 * channels * bits / 8);
    put_u16(b, channels * bits / 8);
    put_u16(b, bits);
    for (char ch : std::string("data")) b.push_back(ch);
    put_u32(b, data_bytes);
    return b;
}

}  // namespace

TEST_SUITE("media_io") {
    TEST_CASE("minimal PGM") {
        Bytes b = bytes_of("P5\n1 1\n255\n");
        b.push_back(7);
        const auto img = read_image(b);
        CHECK(img.width == 1);
        CHECK(img.height == 1);
        CHECK(img.channels == 1);
        CHECK(img.samples == std::vector<std::uint8_t>{7});
        CHECK(write_image(img) == b);
    }

    TEST_CASE("header comments and whitespace") {
        Bytes b = bytes_of("P6 # colour\n# a comment line\n2\t1\n255\n");
        for (int i = 0; i < 6; ++i) b.push_back(static_cast<std::uint8_t>(10 * i));
        const auto img = read_image(b);
        CHECK(img.width == 2);
        CHECK(img.channels == 3);
        CHECK(img.at(1, 0, 2) == 50);
    }

    TEST_CASE("bad images") {
        Bytes short_raster = bytes_of("P6\n2 2\n255\n");
        short_raster.resize(short_raster.size() + 11, 0);
        CHECK_THROWS_AS(read_image(short_raster), FormatError);
        CHECK_THROWS_AS(read_image(bytes_of("P3\n1 1\n255\n0 0 0\n")), UnsupportedFormat);
        CHECK_THROWS_AS(read_image(bytes_of("P5\n1 1\n65535\n\0\0")), UnsupportedFormat);
        CHECK_THROWS_AS(read_image(bytes_of("P5\n0 1\n255\n")), FormatError);
        CHECK_THROWS_AS(read_image(bytes_of("GIF89a")), FormatError);
        CHECK_THROWS_AS(read_image(Bytes{}), FormatError);
    }

    TEST_CASE("random image round trips") {
        for (std::uint32_t c : {1u, 3u}) {
            const auto img = testing::random_image(97, 53, c, 3 + c);
            const auto encoded = write_image(img);
            CHECK(read_image(encoded) == img);
            CHECK(encoded[1] == (c == 1 ? '5' : '6'));
        }
    }

    TEST_CASE("WAV round trip") {
        AudioClip clip;
        clip.sample_rate = 8000;
        clip.channels = 1;
        clip.samples = {0, 1, -1};
        const auto bytes = write_wav(clip);
        CHECK(bytes.size() == 44 + 6);
        CHECK(read_wav(bytes) == clip);

        const auto stereo = testing::random_clip(2 * 1000, 2, 9);
        CHECK(read_wav(write_wav(stereo)) == stereo);
    }

    TEST_CASE("WAV extra chunks are skipped") {
        Bytes b = bytes_of("RIFF");
        put_u32(b, 0);
        for (char ch : std::string("WAVE")) b.push_back(ch);
        for (char ch : std::string("LIST")) b.push_back(ch);
        put_u32(b, 3);
        b.insert(b.end(), {'a', 'b', 'c', 0});  // odd chunk padded to even
        const auto canonical = write_wav(AudioClip{8000, 1, {5, -5}});
        b.insert(b.end(), canonical.begin() + 12, canonical.end());
        CHECK(read_wav(b).samples == std::vector<std::int16_t>{5, -5});
    }

    TEST_CASE("unsupported WAV") {
        auto b24 = wav_header(1, 1, 24, 3);
        b24.insert(b24.end(), {1, 2, 3});
        CHECK_THROWS_AS(read_wav(b24), UnsupportedFormat);
        auto flt = wav_header(3, 1, 16, 2);
        flt.insert(flt.end(), {0, 0});
        CHECK_THROWS_AS(read_wav(flt), UnsupportedFormat);
        auto trunc = wav_header(1, 1, 16, 100);
        trunc.insert(trunc.end(), {0, 0});
        CHECK_THROWS_AS(read_wav(trunc), FormatError);
        CHECK_THROWS_AS(read_wav(bytes_of("RIFX")), FormatError);
    }

    TEST_CASE("video directory round trip") {
        for (std::size_t count : {1u, 10u}) {
            testing::TempDir dir("video");
            VideoSequence v;
            v.fps_numerator = 30000;
            v.fps_denominator = 1001;
            for (std::size_t i = 0; i < count; ++i) v.frames.push_back(testing::random_image(16, 12, 3, 100 + i));
            write_video(v, dir.path());
            CHECK(std::filesystem::exists(dir / std::string(kVideoManifest)));
            CHECK(read_video(dir.path()) == v);
        }
    }

    TEST_CASE("broken video directories") {
        testing::TempDir dir("video-bad");
        VideoSequence v;
        v.frames = {testing::random_image(8, 8, 1, 1), testing::random_image(8, 8, 1, 2)};
        write_video(v, dir.path());
        std::filesystem::remove(dir / "frame_000001.pgm");
        CHECK_THROWS_AS(read_video(dir.path()), FormatError);

        testing::TempDir mixed("video-mixed");
        write_video(v, mixed.path());
        write_file(mixed / "frame_000001.pgm", write_image(testing::random_image(4, 8, 1, 3)));
        CHECK_THROWS_AS(read_video(mixed.path()), FormatError);

        testing::TempDir empty("video-empty");
        CHECK_THROWS_AS(read_video(empty.path()), FormatError);
    }

    TEST_CASE("file helpers") {
        testing::TempDir dir("files");
        write_file(dir / "a.bin", std::string_view("hello"));
        CHECK(read_file(dir / "a.bin") == bytes_of("hello"));
        CHECK_THROWS_AS(read_file(dir / "missing.bin"), IoError);
        CHECK_THROWS_AS(write_file(dir / "no" / "such" / "dir.bin", std::string_view("x")), IoError);
    }
}
