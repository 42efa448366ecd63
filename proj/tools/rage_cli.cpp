// Command-line front end: encode, decode, query, stats, bench.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rage/container.hpp"
#include "rage/metrics.hpp"
#include "rage/random_access.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Exit codes: 0 ok, 2 usage, 3 I/O, 4 corrupt or malformed data.
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitData = 4;

uint64_t raw_bytes(uint16_t w, uint16_t h, uint8_t bpp) {
    return uint64_t(w) * h * (bpp / 8);
}

unsigned thread_budget() {
    const char* env = std::getenv("RAGE_THREADS");
    if (!env) return 1;
    const long v = std::strtol(env, nullptr, 10);
    return v < 1 ? 1 : static_cast<unsigned>(v);
}

std::vector<fs::path> corpus_images(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto ext = entry.path().extension();
        if (ext == ".ppm" || ext == ".pam") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty())
        throw rage::ArgumentError("no .ppm/.pam images in " + dir.string());
    return files;
}

// Runs fn(i) for i in [0, count) on up to RAGE_THREADS workers.
void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
    const unsigned workers = std::min<size_t>(thread_budget(), count);
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                fn(i);
        });
    for (auto& th : pool) th.join();
}

int cmd_encode(const std::string& in, const std::string& out, double psnr_thr) {
    const rage::ImageBuffer img = rage::load_image(in);
    const rage::CompressedImage comp = rage::encode(img, psnr_thr);
    rage::write_rage(comp, out);
    const auto breakdown = comp.size_breakdown();
    const uint64_t file_bytes = fs::file_size(out);
    const double cr =
        rage::compression_ratio(file_bytes, raw_bytes(img.width, img.height, img.bpp));
    std::printf(
        "%s: %ux%u %u bpp -> %llu bytes, CR %.4f (dict %llu, rle %llu, "
        "pairs %llu, offsets %llu bits)\n",
        out.c_str(), img.width, img.height, img.bpp,
        static_cast<unsigned long long>(file_bytes), cr,
        static_cast<unsigned long long>(breakdown.dict_bits),
        static_cast<unsigned long long>(breakdown.rle_bits),
        static_cast<unsigned long long>(breakdown.pair_bits),
        static_cast<unsigned long long>(breakdown.offset_bits));
    return 0;
}

int cmd_decode(const std::string& in, const std::string& out) {
    rage::store_image(rage::decode(rage::read_rage(in)), out);
    return 0;
}

int cmd_query(const std::string& in, const std::string& out,
              const std::vector<uint32_t>& rect) {
    const rage::CompressedImage comp = rage::read_rage(in);
    const rage::QueryRect r{rect[0], rect[1], rect[2], rect[3]};
    rage::store_image(rage::query_image(comp, r), out);
    return 0;
}

int cmd_stats(const std::string& in, const std::string& format) {
    const rage::CompressedImage comp = rage::read_rage(in);
    const auto b = comp.size_breakdown();
    const uint64_t file_bytes = fs::file_size(in);
    const double cr = rage::compression_ratio(
        file_bytes, raw_bytes(comp.width, comp.height, comp.bpp()));
    if (format == "json") {
        json j{{"width", comp.width},
               {"height", comp.height},
               {"bpp", comp.bpp()},
               {"lossy", comp.lossy()},
               {"base_count", comp.base_count},
               {"base_bits", comp.selection.base_bits()},
               {"id_bits", comp.id_bits()},
               {"dict_bits", b.dict_bits},
               {"rle_bits", b.rle_bits},
               {"pair_bits", b.pair_bits},
               {"offset_bits", b.offset_bits},
               {"payload_bits", b.total_bits()},
               {"file_bytes", file_bytes},
               {"cr", cr}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "field,value\n"
                  << "width," << comp.width << "\n"
                  << "height," << comp.height << "\n"
                  << "bpp," << unsigned(comp.bpp()) << "\n"
                  << "lossy," << (comp.lossy() ? 1 : 0) << "\n"
                  << "base_count," << comp.base_count << "\n"
                  << "base_bits," << comp.selection.base_bits() << "\n"
                  << "id_bits," << comp.id_bits() << "\n"
                  << "dict_bits," << b.dict_bits << "\n"
                  << "rle_bits," << b.rle_bits << "\n"
                  << "pair_bits," << b.pair_bits << "\n"
                  << "offset_bits," << b.offset_bits << "\n"
                  << "payload_bits," << b.total_bits() << "\n"
                  << "file_bytes," << file_bytes << "\n"
                  << "cr," << cr << "\n";
    }
    return 0;
}

// Thresholds bracketing the usual 30 dB operating point.
const std::vector<double> kSweepGrid{50, 45, 40, 35, 30, 25, 20};

int cmd_bench(const std::string& dir, const std::string& mode, uint64_t seed) {
    const auto files = corpus_images(dir);
    std::mutex out_mutex;

    if (mode == "lossless") {
        std::vector<std::string> rows(files.size());
        parallel_for(files.size(), [&](size_t i) {
            const rage::ImageBuffer img = rage::load_image(files[i]);
            const rage::CompressedImage comp = rage::encode(img);
            const auto bytes = rage::serialize(comp);
            const double cr = rage::compression_ratio(
                bytes.size(), raw_bytes(img.width, img.height, img.bpp));

            // Decode throughput, best of three.
            double best_mpps = 0;
            double distortion = 0;
            for (int rep = 0; rep < 3; ++rep) {
                const auto t0 = std::chrono::steady_clock::now();
                const rage::ImageBuffer out = rage::decode(comp);
                const auto t1 = std::chrono::steady_clock::now();
                const double ns =
                    std::chrono::duration<double, std::nano>(t1 - t0).count();
                best_mpps = std::max(best_mpps, double(out.chunk_count()) * 1e3 / ns);
                distortion = rage::mse(img, out);
            }
            char buf[256];
            std::snprintf(buf, sizeof buf, "%s,%zu,%.6f,%.4f,%.2f",
                          files[i].filename().string().c_str(),
                          size_t(img.width) * img.height, cr, distortion,
                          best_mpps);
            rows[i] = buf;
        });
        std::cout << "image,n,cr,mse,decode_mpps\n";
        for (const auto& r : rows) std::cout << r << "\n";
        return 0;
    }

    if (mode == "lossy-sweep") {
        std::vector<std::string> rows(files.size());
        parallel_for(files.size(), [&](size_t i) {
            const rage::ImageBuffer img = rage::load_image(files[i]);
            std::string chunk;
            const auto add_row = [&](const char* thr_label, double thr) {
                const rage::CompressedImage comp = rage::encode(img, thr);
                const auto bytes = rage::serialize(comp);
                const double cr = rage::compression_ratio(
                    bytes.size(), raw_bytes(img.width, img.height, img.bpp));
                const rage::DistortionReport rep =
                    rage::distortion_report(img, rage::decode(comp));
                char buf[320];
                std::snprintf(buf, sizeof buf,
                              "%s,%s,%.6f,%.4f,%.4f,%.4f,%.4f,%.4f\n",
                              files[i].filename().string().c_str(), thr_label,
                              cr, rep.global_mse, rep.p5, rep.p25, rep.p75,
                              rep.p95);
                chunk += buf;
            };
            add_row("inf", rage::kLossless);
            for (double thr : kSweepGrid) {
                char label[32];
                std::snprintf(label, sizeof label, "%g", thr);
                add_row(label, thr);
            }
            rows[i] = chunk;
        });
        std::cout << "image,psnr_thr,cr,mse,p5,p25,p75,p95\n";
        for (const auto& r : rows) std::cout << r;
        return 0;
    }

    if (mode == "access") {
        // Timing mode stays sequential regardless of RAGE_THREADS.
        (void)seed;
        std::cout << "image,n,avg_seek_ns,avg_dtpp_ns\n";
        for (const auto& file : files) {
            const rage::ImageBuffer img = rage::load_image(file);
            const rage::CompressedImage comp = rage::encode(img);
            const rage::AccessStats stats = rage::measure_access(comp);
            std::lock_guard<std::mutex> lock(out_mutex);
            std::printf("%s,%zu,%.3f,%.3f\n", file.filename().string().c_str(),
                        size_t(img.width) * img.height,
                        stats.avg_seek_ns().value_or(-1),
                        stats.avg_decode_ns().value_or(-1));
        }
        return 0;
    }

    std::cerr << "unknown bench mode: " << mode << "\n";
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RAGE image codec: lossless/lossy compression with "
                 "pixel-granular random access"};
    app.require_subcommand(1);

    std::string in, out, format = "csv", mode = "lossless";
    double psnr_thr = rage::kLossless;
    std::vector<uint32_t> rect;
    uint64_t seed = 0;

    auto* enc = app.add_subcommand("encode", "compress a PPM/PAM image");
    enc->add_option("input", in, "input .ppm/.pam")->required();
    enc->add_option("output", out, "output .rage")->required();
    enc->add_option("--psnr-thr", psnr_thr,
                    "pruning threshold in dB (finite enables lossy mode)")
        ->check(CLI::PositiveNumber);

    auto* dec = app.add_subcommand("decode", "decompress to PPM/PAM");
    dec->add_option("input", in, "input .rage")->required();
    dec->add_option("output", out, "output .ppm/.pam")->required();

    auto* qry = app.add_subcommand("query", "extract a rectangle without full decode");
    qry->add_option("input", in, "input .rage")->required();
    qry->add_option("output", out, "output .ppm/.pam")->required();
    qry->add_option("--rect", rect, "x y w h")->expected(4)->required();

    auto* sts = app.add_subcommand("stats", "print size breakdown");
    sts->add_option("input", in, "input .rage")->required();
    sts->add_option("--format", format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* bch = app.add_subcommand("bench", "run a corpus benchmark");
    bch->add_option("corpus", in, "directory of .ppm/.pam images")->required();
    bch->add_option("--mode", mode, "lossless|lossy-sweep|access")
        ->check(CLI::IsMember({"lossless", "lossy-sweep", "access"}));
    bch->add_option("--seed", seed, "seed for randomized selections");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (enc->parsed()) return cmd_encode(in, out, psnr_thr);
        if (dec->parsed()) return cmd_decode(in, out);
        if (qry->parsed()) return cmd_query(in, out, rect);
        if (sts->parsed()) return cmd_stats(in, format);
        if (bch->parsed()) return cmd_bench(in, mode, seed);
    } catch (const rage::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const rage::CorruptError& e) {
        std::cerr << "corrupt data: " << e.what() << "\n";
        return kExitData;
    } catch (const rage::FormatError& e) {
        std::cerr << "bad image file: " << e.what() << "\n";
        return kExitData;
    } catch (const rage::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
