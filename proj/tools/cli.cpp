#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>

#include "sudocrypt/analysis.hpp"
#include "sudocrypt/audio_cipher.hpp"
#include "sudocrypt/bench.hpp"
#include "sudocrypt/errors.hpp"
#include "sudocrypt/image_cipher.hpp"
#include "sudocrypt/keymat.hpp"
#include "sudocrypt/media_io.hpp"
#include "sudocrypt/video_cipher.hpp"

namespace sudocrypt::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

enum class Container { image, audio, video };

struct RunConfig {
    std::string input;
    std::string output;
    std::string key;
    std::string original;
    std::string encrypted;
    std::string trace;
    std::string csv;
    std::string suite;
    std::string mode;  // audio: shuffle | xor
    std::vector<std::string> bench_images;
    std::size_t size = 9;
    std::optional<std::uint64_t> timestamp;
    std::uint32_t iterations = 1;
    unsigned threads = 1;
    bool frozen_key = false;
    bool crop = false;
};

std::string format(double v, int digits = 4) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

double ms(std::chrono::nanoseconds d) { return std::chrono::duration<double, std::milli>(d).count(); }

std::string lower_ext(const fs::path& p) {
    std::string ext = p.extension().string();
    for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return ext;
}

Container detect(const fs::path& p) {
    if (fs::is_directory(p)) return Container::video;
    const std::string ext = lower_ext(p);
    if (ext == ".wav") return Container::audio;
    if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") return Container::image;
    const Bytes head = read_file(p);
    if (head.size() >= 4 && std::equal(head.begin(), head.begin() + 4, "RIFF")) return Container::audio;
    if (head.size() >= 2 && head[0] == 'P' && (head[1] == '5' || head[1] == '6')) return Container::image;
    throw FormatError("cannot tell the media type of " + p.string());
}

Container container_of(Media m) {
    switch (m) {
        case Media::image: return Container::image;
        case Media::audio_shuffle:
        case Media::audio_xor: return Container::audio;
        case Media::video: return Container::video;
        case Media::unbound: break;
    }
    throw KeyMismatch("key is not bound to any media");
}

const char* container_name(Container c) {
    switch (c) {
        case Container::image: return "image";
        case Container::audio: return "audio";
        case Container::video: return "video";
    }
    return "?";
}

KeyMaterial load_key(const fs::path& p) {
    const Bytes bytes = read_file(p);
    return parse_key(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

// Replaces the key file through a sibling temporary.
void store_key(const fs::path& p, const KeyMaterial& k) {
    fs::path tmp = p;
    tmp += ".tmp";
    write_file(tmp, serialize(k));
    std::error_code ec;
    fs::rename(tmp, p, ec);
    if (ec) throw IoError("cannot replace " + p.string() + ": " + ec.message());
}

void print_stage_table(std::ostream& out, const StageTrace& trace) {
    const auto totals = trace.totals();
    out << "stage            ms\n";
    for (Stage s : kStages) {
        char line[96];
        std::snprintf(line, sizeof line, "%-16s %.3f\n", std::string(to_string(s)).c_str(), ms(totals[static_cast<std::size_t>(s)]));
        out << line;
    }
}

std::string stage_csv(const StageTrace& trace) {
    std::string csv = "stage,milliseconds\n";
    const auto totals = trace.totals();
    for (Stage s : kStages) csv += std::string(to_string(s)) + "," + format(ms(totals[static_cast<std::size_t>(s)]), 3) + "\n";
    return csv;
}

std::string frame_csv(const std::vector<FrameJob>& jobs) {
    std::string csv = "stage,milliseconds\n";
    for (const auto& j : jobs) csv += "frame_" + std::to_string(j.index) + "," + format(ms(j.duration), 3) + "\n";
    return csv;
}

Media audio_mode(const RunConfig& cfg, const KeyMaterial& k) {
    if (cfg.mode == "xor") return Media::audio_xor;
    if (cfg.mode == "shuffle") return Media::audio_shuffle;
    if (k.media == Media::audio_shuffle || k.media == Media::audio_xor) return k.media;
    return Media::audio_shuffle;
}

int cmd_keygen(const RunConfig& cfg, std::ostream& out) {
    const std::uint64_t ts = cfg.timestamp.value_or(static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch()).count()));
    const auto start = Clock::now();
    const KeyMaterial k = derive_from_timestamp(ts, cfg.size, cfg.iterations);
    const auto elapsed = Clock::now() - start;
    write_file(cfg.output, serialize(k));
    out << "timestamp " << ts << "\n";
    out << "grid generation: " << format(ms(elapsed), 3) << " ms (" << cfg.size << "x" << cfg.size << ")\n";
    return kExitOk;
}

int cmd_encrypt(const RunConfig& cfg, std::ostream& out) {
    KeyMaterial key = load_key(cfg.key);
    if (cfg.frozen_key && !key.has_shape()) throw KeyMismatch("--frozen-key given but the key carries no shape");
    const Container kind = detect(cfg.input);
    if (key.media != Media::unbound && container_of(key.media) != kind)
        throw KeyMismatch(std::string("key is bound to ") + std::string(to_string(key.media)) + ", input is " + container_name(kind));

    const KeyMaterial before = key;
    const auto start = Clock::now();
    switch (kind) {
        case Container::image: {
            const Image img = read_image(read_file(cfg.input));
            StageTrace trace;
            const Image enc = encrypt_image(img, key, &trace);
            write_file(cfg.output, write_image(enc));
            print_stage_table(out, trace);
            if (!cfg.trace.empty()) write_file(cfg.trace, stage_csv(trace));
            break;
        }
        case Container::audio: {
            const AudioClip clip = read_wav(read_file(cfg.input));
            const AudioClip enc = encrypt_audio(clip, key, audio_mode(cfg, key));
            write_file(cfg.output, write_wav(enc));
            break;
        }
        case Container::video: {
            const VideoSequence video = read_video(cfg.input);
            std::vector<FrameJob> jobs;
            const VideoSequence enc = encrypt_video(video, key, {cfg.threads, &jobs});
            write_video(enc, cfg.output);
            out << "frames " << jobs.size() << "\n";
            if (!cfg.trace.empty()) write_file(cfg.trace, frame_csv(jobs));
            break;
        }
    }
    out << "total: " << format(ms(Clock::now() - start), 3) << " ms\n";
    if (cfg.frozen_key) {
        if (key != before) throw KeyMismatch("--frozen-key given but encryption would change the key");
    } else if (key != before) {
        store_key(cfg.key, key);
    }
    return kExitOk;
}

int cmd_decrypt(const RunConfig& cfg, std::ostream& out) {
    const KeyMaterial key = load_key(cfg.key);
    if (!key.has_shape()) throw KeyMismatch("key carries no plaintext shape; encrypt with it first");
    const Container kind = container_of(key.media);
    const Container found = detect(cfg.input);
    if (found != kind) throw KeyMismatch(std::string("key is bound to ") + std::string(to_string(key.media)) + ", input is " + container_name(found));

    const auto start = Clock::now();
    switch (kind) {
        case Container::image: {
            StageTrace trace;
            const Image dec = decrypt_image(read_image(read_file(cfg.input)), key, &trace);
            write_file(cfg.output, write_image(dec));
            print_stage_table(out, trace);
            if (!cfg.trace.empty()) write_file(cfg.trace, stage_csv(trace));
            break;
        }
        case Container::audio:
            write_file(cfg.output, write_wav(decrypt_audio(read_wav(read_file(cfg.input)), key)));
            break;
        case Container::video: {
            std::vector<FrameJob> jobs;
            write_video(decrypt_video(read_video(cfg.input), key, {cfg.threads, &jobs}), cfg.output);
            if (!cfg.trace.empty()) write_file(cfg.trace, frame_csv(jobs));
            break;
        }
    }
    out << "total: " << format(ms(Clock::now() - start), 3) << " ms\n";
    return kExitOk;
}

std::vector<std::string> channel_labels(std::uint32_t channels) {
    if (channels == 1) return {"gray"};
    if (channels == 3) return {"red", "green", "blue"};
    std::vector<std::string> labels;
    for (std::uint32_t c = 0; c < channels; ++c) labels.push_back("c" + std::to_string(c));
    return labels;
}

struct ImageRow {
    std::string name;
    Image original;
    Image encrypted;
};

std::string analyze_image_rows(const std::vector<ImageRow>& rows, bool crop, std::ostream& out) {
    std::string csv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.original.channels != row.encrypted.channels) throw DimensionError("images differ in channel count");
        Image a = row.original, b = row.encrypted;
        if (a.width != b.width || a.height != b.height) {
            if (!crop)
                throw DimensionError("images differ in size (" + std::to_string(a.width) + "x" + std::to_string(a.height) + " vs " +
                                     std::to_string(b.width) + "x" + std::to_string(b.height) + "); pass --crop to compare the common region");
            std::tie(a, b) = crop_to_common(a, b);
        }
        ImageMetricsReport r = analyze_images(a, b);
        // Entropy and intensity describe the whole files, not the compared region.
        r.entropy_original = shannon_entropy(row.original);
        r.entropy_encrypted = shannon_entropy(row.encrypted);
        r.channel_means_original = channel_means(row.original);
        r.channel_means_encrypted = channel_means(row.encrypted);

        const auto labels = channel_labels(a.channels);
        if (i == 0) {
            csv = "image,width,height,npcr,uaci,entropy_original,entropy_encrypted";
            for (const auto& l : labels) csv += ",mean_original_" + l;
            for (const auto& l : labels) csv += ",mean_encrypted_" + l;
            csv += "\n";
        }
        csv += row.name + "," + std::to_string(a.width) + "," + std::to_string(a.height) + "," + format(r.npcr) + "," + format(r.uaci) +
               "," + format(r.entropy_original) + "," + format(r.entropy_encrypted);
        for (double m : r.channel_means_original) csv += "," + format(m, 2);
        for (double m : r.channel_means_encrypted) csv += "," + format(m, 2);
        csv += "\n";

        out << row.name << " (" << a.width << "x" << a.height << (a.width != row.original.width || a.height != row.original.height || a.width != row.encrypted.width || a.height != row.encrypted.height ? ", cropped" : "") << ")\n";
        out << "  NPCR               " << format(r.npcr) << " %\n";
        out << "  UACI               " << format(r.uaci) << " %\n";
        out << "  entropy original   " << format(r.entropy_original) << " bits\n";
        out << "  entropy encrypted  " << format(r.entropy_encrypted) << " bits\n";
        for (std::size_t c = 0; c < labels.size(); ++c)
            out << "  mean " << labels[c] << std::string(labels[c].size() < 13 ? 13 - labels[c].size() : 1, ' ')
                << format(r.channel_means_original[c], 2) << " -> " << format(r.channel_means_encrypted[c], 2) << "\n";
    }
    return csv;
}

std::string analyze_audio_files(const fs::path& orig_path, const fs::path& enc_path, std::ostream& out) {
    const AudioClip original = read_wav(read_file(orig_path));
    AudioClip encrypted = read_wav(read_file(enc_path));
    if (encrypted.samples.size() < original.samples.size())
        throw DimensionError("encrypted clip is shorter than the original");
    // XOR ciphertext carries block padding; compare the original span only.
    encrypted.samples.resize(original.samples.size());
    const AudioMetricsReport r = analyze_audio(original, encrypted);
    out << orig_path.filename().string() << "\n";
    out << "  SNR            " << format(r.snr) << " dB\n";
    out << "  PSNR           " << format(r.psnr) << " dB\n";
    out << "  MSE            " << format(r.mse, 6) << "\n";
    out << "  ZCR            " << format(r.zcr_original) << " -> " << format(r.zcr_encrypted) << "\n";
    out << "  RMS            " << format(r.rms_original) << " -> " << format(r.rms_encrypted) << "\n";
    return "clip,snr_db,psnr_db,mse,zcr_original,zcr_encrypted,rms_original,rms_encrypted\n" + orig_path.filename().string() + "," +
           format(r.snr) + "," + format(r.psnr) + "," + format(r.mse, 6) + "," + format(r.zcr_original) + "," +
           format(r.zcr_encrypted) + "," + format(r.rms_original) + "," + format(r.rms_encrypted) + "\n";
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
    const Container a = detect(cfg.original);
    const Container b = detect(cfg.encrypted);
    if (a != b) throw FormatError(std::string("cannot compare ") + container_name(a) + " with " + container_name(b));

    std::string csv;
    switch (a) {
        case Container::image: {
            std::vector<ImageRow> rows;
            rows.push_back({fs::path(cfg.original).filename().string(), read_image(read_file(cfg.original)),
                            read_image(read_file(cfg.encrypted))});
            csv = analyze_image_rows(rows, cfg.crop, out);
            break;
        }
        case Container::audio: csv = analyze_audio_files(cfg.original, cfg.encrypted, out); break;
        case Container::video: {
            const VideoSequence va = read_video(cfg.original), vb = read_video(cfg.encrypted);
            if (va.frames.size() != vb.frames.size()) throw DimensionError("videos differ in frame count");
            std::vector<ImageRow> rows;
            for (std::size_t i = 0; i < va.frames.size(); ++i) rows.push_back({"frame_" + std::to_string(i), va.frames[i], vb.frames[i]});
            csv = analyze_image_rows(rows, cfg.crop, out);
            break;
        }
    }
    if (!cfg.csv.empty()) {
        write_file(cfg.csv, csv);
    } else {
        out << "\n" << csv;
    }
    return kExitOk;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out) {
    const auto suite = bench_suite_from_string(cfg.suite);
    if (!suite) throw InvalidArgument("unknown bench suite '" + cfg.suite + "'");
    std::vector<BenchImage> images;
    for (const auto& p : cfg.bench_images) images.push_back({fs::path(p).filename().string(), read_image(read_file(p))});
    const BenchTable table = run_bench(*suite, images);
    const std::string csv = table.to_csv();
    write_file(cfg.output, csv);
    out << csv;
    return kExitOk;
}

int report(std::ostream& err, const char* prefix, const std::exception& e, int code) {
    err << prefix << e.what() << "\n";
    return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sudoku-keyed permutation cipher for images, audio and video", "sudocrypt"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* keygen = app.add_subcommand("keygen", "derive a key file from a timestamp");
    keygen->add_option("--size", cfg.size, "Sudoku grid size")->required()->check([](const std::string& v) {
        try {
            return SudokuGrid::is_supported_size(std::stoul(v)) ? std::string{} : "grid size must be a perfect square in 4..64";
        } catch (const std::exception&) {
            return std::string("grid size must be an integer");
        }
    });
    keygen->add_option("--timestamp", cfg.timestamp, "unix seconds (default: now)");
    keygen->add_option("--iterations", cfg.iterations, "encryption rounds")->check(CLI::PositiveNumber);
    keygen->add_option("--out", cfg.output, "key file to write")->required();

    auto* encrypt = app.add_subcommand("encrypt", "encrypt an image, WAV clip or frame directory");
    encrypt->add_option("--in", cfg.input, "plaintext path")->required();
    encrypt->add_option("--key", cfg.key, "key file (updated with the plaintext shape)")->required();
    encrypt->add_option("--out", cfg.output, "ciphertext path")->required();
    encrypt->add_option("--mode", cfg.mode, "audio mode")->check(CLI::IsMember({"shuffle", "xor"}));
    encrypt->add_option("--trace", cfg.trace, "write stage timings as CSV");
    encrypt->add_option("--threads", cfg.threads, "video worker threads (0 = all cores)");
    encrypt->add_flag("--frozen-key", cfg.frozen_key, "never rewrite the key file");

    auto* decrypt = app.add_subcommand("decrypt", "decrypt with a bound key");
    decrypt->add_option("--in", cfg.input, "ciphertext path")->required();
    decrypt->add_option("--key", cfg.key, "key file")->required();
    decrypt->add_option("--out", cfg.output, "plaintext path")->required();
    decrypt->add_option("--trace", cfg.trace, "write stage timings as CSV");
    decrypt->add_option("--threads", cfg.threads, "video worker threads (0 = all cores)");

    auto* analyze = app.add_subcommand("analyze", "compare original and encrypted media");
    analyze->add_option("--original", cfg.original, "original media")->required();
    analyze->add_option("--encrypted", cfg.encrypted, "encrypted media")->required();
    analyze->add_flag("--crop", cfg.crop, "compare the common top-left region when image sizes differ");
    analyze->add_option("--csv", cfg.csv, "write the report as CSV");

    auto* bench = app.add_subcommand("bench", "timing sweeps");
    bench->add_option("--suite", cfg.suite, "keygen | iterations | images | sudoku-sizes")
        ->required()
        ->check(CLI::IsMember({"keygen", "iterations", "images", "sudoku-sizes"}));
    bench->add_option("--out", cfg.output, "CSV output")->required();
    bench->add_option("--image", cfg.bench_images, "images for the images suite (default: synthetic set)");

    std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(argv_rest.begin(), argv_rest.end());
    try {
        app.parse(argv_rest);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (keygen->parsed()) return cmd_keygen(cfg, out);
        if (encrypt->parsed()) return cmd_encrypt(cfg, out);
        if (decrypt->parsed()) return cmd_decrypt(cfg, out);
        if (analyze->parsed()) return cmd_analyze(cfg, out);
        if (bench->parsed()) return cmd_bench(cfg, out);
    } catch (const TamperedKey& e) {
        return report(err, "key validation failed: ", e, kExitKey);
    } catch (const KeyParseError& e) {
        return report(err, "key validation failed: malformed key file: ", e, kExitKey);
    } catch (const KeyMismatch& e) {
        return report(err, "key mismatch: ", e, kExitKey);
    } catch (const InvalidArgument& e) {
        return report(err, "invalid argument: ", e, kExitUsage);
    } catch (const Error& e) {
        return report(err, "error: ", e, kExitFormat);
    } catch (const std::exception& e) {
        return report(err, "error: ", e, kExitFormat);
    }
    return kExitUsage;
}

}  // namespace sudocrypt::cli
