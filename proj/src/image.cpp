#include "rage/image.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

namespace rage {

namespace {

constexpr uint32_t kMaxDimension = 65535;

// Reads the next whitespace-delimited token, skipping '#' comments that run
// to end of line (standard netpbm header syntax).
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) continue;
        tok.push_back(static_cast<char>(c));
        while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#')
            tok.push_back(static_cast<char>(in.get()));
        return tok;
    }
    throw FormatError(FormatError::Kind::malformed_header,
                      "unexpected end of header");
}

uint32_t parse_dim(const std::string& tok, const char* what) {
    uint64_t v = 0;
    if (tok.empty()) throw FormatError(FormatError::Kind::malformed_header,
                                       std::string("missing ") + what);
    for (char ch : tok) {
        if (ch < '0' || ch > '9')
            throw FormatError(FormatError::Kind::malformed_header,
                              std::string("non-numeric ") + what);
        v = v * 10 + unsigned(ch - '0');
        if (v > std::numeric_limits<uint32_t>::max())
            throw FormatError(FormatError::Kind::malformed_header,
                              std::string(what) + " overflows");
    }
    return static_cast<uint32_t>(v);
}

void check_dims(uint32_t w, uint32_t h) {
    if (w == 0 || h == 0)
        throw FormatError(FormatError::Kind::malformed_header,
                          "zero image dimension");
    if (w > kMaxDimension || h > kMaxDimension)
        throw FormatError(FormatError::Kind::malformed_header,
                          "image dimension exceeds 65535");
}

ImageBuffer load_ppm(std::istream& in) {
    const uint32_t w = parse_dim(next_token(in), "width");
    const uint32_t h = parse_dim(next_token(in), "height");
    const uint32_t maxval = parse_dim(next_token(in), "maxval");
    check_dims(w, h);
    if (maxval != 255)
        throw FormatError(FormatError::Kind::unsupported_depth,
                          "PPM maxval " + std::to_string(maxval) +
                              " unsupported, channels must be 8-bit");
    // Exactly one whitespace byte separates the header from the raster.
    const int sep = in.get();
    if (sep == EOF || !std::isspace(sep))
        throw FormatError(FormatError::Kind::malformed_header,
                          "missing raster separator");

    ImageBuffer img;
    img.width = static_cast<uint16_t>(w);
    img.height = static_cast<uint16_t>(h);
    img.bpp = 24;
    img.pixels.resize(size_t(w) * h);
    std::vector<uint8_t> row(size_t(w) * 3);
    for (uint32_t y = 0; y < h; ++y) {
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(row.size()));
        if (static_cast<size_t>(in.gcount()) != row.size())
            throw FormatError(FormatError::Kind::truncated_data,
                              "truncated PPM pixel data");
        for (uint32_t x = 0; x < w; ++x) {
            img.pixels[size_t(y) * w + x] = (uint32_t(row[x * 3 + 0]) << 16) |
                                            (uint32_t(row[x * 3 + 1]) << 8) |
                                            uint32_t(row[x * 3 + 2]);
        }
    }
    return img;
}

ImageBuffer load_pam(std::istream& in) {
    uint32_t w = 0, h = 0, depth = 0, maxval = 0;
    bool have_w = false, have_h = false, have_depth = false, have_maxval = false;
    std::string tupltype;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "ENDHDR") {
            if (!have_w || !have_h || !have_depth || !have_maxval)
                throw FormatError(FormatError::Kind::malformed_header,
                                  "PAM header missing required field");
            if (depth != 4 || tupltype != "RGB_ALPHA")
                throw FormatError(FormatError::Kind::malformed_header,
                                  "PAM must be DEPTH 4 RGB_ALPHA");
            if (maxval != 255)
                throw FormatError(FormatError::Kind::unsupported_depth,
                                  "PAM maxval " + std::to_string(maxval) +
                                      " unsupported, channels must be 8-bit");
            check_dims(w, h);

            ImageBuffer img;
            img.width = static_cast<uint16_t>(w);
            img.height = static_cast<uint16_t>(h);
            img.bpp = 32;
            img.pixels.resize(size_t(w) * h);
            std::vector<uint8_t> row(size_t(w) * 4);
            for (uint32_t y = 0; y < h; ++y) {
                in.read(reinterpret_cast<char*>(row.data()),
                        static_cast<std::streamsize>(row.size()));
                if (static_cast<size_t>(in.gcount()) != row.size())
                    throw FormatError(FormatError::Kind::truncated_data,
                                      "truncated PAM pixel data");
                for (uint32_t x = 0; x < w; ++x) {
                    // File order R,G,B,A; chunk layout A|R|G|B.
                    img.pixels[size_t(y) * w + x] =
                        (uint32_t(row[x * 4 + 3]) << 24) |
                        (uint32_t(row[x * 4 + 0]) << 16) |
                        (uint32_t(row[x * 4 + 1]) << 8) |
                        uint32_t(row[x * 4 + 2]);
                }
            }
            return img;
        }
        std::string value;
        ls >> value;
        if (key == "WIDTH") {
            w = parse_dim(value, "width");
            have_w = true;
        } else if (key == "HEIGHT") {
            h = parse_dim(value, "height");
            have_h = true;
        } else if (key == "DEPTH") {
            depth = parse_dim(value, "depth");
            have_depth = true;
        } else if (key == "MAXVAL") {
            maxval = parse_dim(value, "maxval");
            have_maxval = true;
        } else if (key == "TUPLTYPE") {
            tupltype = value;
        }
        // Unknown keys are ignored.
    }
    throw FormatError(FormatError::Kind::malformed_header,
                      "PAM header missing ENDHDR");
}

}  // namespace

void ImageBuffer::validate() const {
    if (width == 0 || height == 0)
        throw ArgumentError("image has zero area");
    if (bpp != 24 && bpp != 32)
        throw ArgumentError("bpp must be 24 or 32");
    if (pixels.size() != chunk_count())
        throw ArgumentError("pixel count does not match dimensions");
    if (bpp == 24) {
        for (uint32_t p : pixels)
            if (p >> 24)
                throw ArgumentError("24 bpp chunk has bits above position 23");
    }
}

ImageBuffer load_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (!in)
        throw FormatError(FormatError::Kind::malformed_header,
                          "file too short for magic number");
    if (m0 == 'P' && m1 == '6') return load_ppm(in);
    if (m0 == 'P' && m1 == '7') return load_pam(in);
    throw FormatError(FormatError::Kind::malformed_header,
                      "not a PPM P6 or PAM P7 file");
}

void store_image(const ImageBuffer& img, const std::filesystem::path& path) {
    img.validate();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");

    const size_t w = img.width, h = img.height;
    if (img.bpp == 24) {
        out << "P6\n" << w << " " << h << "\n255\n";
        std::vector<uint8_t> row(w * 3);
        for (size_t y = 0; y < h; ++y) {
            for (size_t x = 0; x < w; ++x) {
                const uint32_t p = img.pixels[y * w + x];
                row[x * 3 + 0] = uint8_t(p >> 16);
                row[x * 3 + 1] = uint8_t(p >> 8);
                row[x * 3 + 2] = uint8_t(p);
            }
            out.write(reinterpret_cast<const char*>(row.data()),
                      static_cast<std::streamsize>(row.size()));
        }
    } else {
        out << "P7\nWIDTH " << w << "\nHEIGHT " << h
            << "\nDEPTH 4\nMAXVAL 255\nTUPLTYPE RGB_ALPHA\nENDHDR\n";
        std::vector<uint8_t> row(w * 4);
        for (size_t y = 0; y < h; ++y) {
            for (size_t x = 0; x < w; ++x) {
                const uint32_t p = img.pixels[y * w + x];
                row[x * 4 + 0] = uint8_t(p >> 16);
                row[x * 4 + 1] = uint8_t(p >> 8);
                row[x * 4 + 2] = uint8_t(p);
                row[x * 4 + 3] = uint8_t(p >> 24);
            }
            out.write(reinterpret_cast<const char*>(row.data()),
                      static_cast<std::streamsize>(row.size()));
        }
    }
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace rage
