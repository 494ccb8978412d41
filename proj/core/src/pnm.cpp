#include "rial/pnm.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "rial/error.hpp"

namespace rial {

namespace {

constexpr const char* kModule = "image-core";

// Reads the next header token, skipping whitespace and '#' comments.
bool next_token(std::istream& in, std::string& tok) {
    tok.clear();
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
        } else if (!std::isspace(c)) {
            break;
        }
    }
    if (c == EOF) {
        return false;
    }
    tok.push_back(static_cast<char>(c));
    while ((c = in.get()) != EOF && !std::isspace(c)) {
        tok.push_back(static_cast<char>(c));
    }
    return true;
}

int parse_header_int(std::istream& in, const char* what) {
    std::string tok;
    if (!next_token(in, tok)) {
        throw Error(kModule, "CorruptData", std::string("missing ") + what);
    }
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) {
            throw std::invalid_argument(tok);
        }
        return v;
    } catch (const std::exception&) {
        throw Error(kModule, "CorruptData", std::string("bad ") + what + " '" + tok + "'");
    }
}

int parse_plain_sample(std::istream& in, int maxval) {
    std::string tok;
    if (!next_token(in, tok)) {
        throw Error(kModule, "CorruptData", "truncated sample data");
    }
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size() || v < 0 || v > maxval) {
            throw std::invalid_argument(tok);
        }
        return v;
    } catch (const std::exception&) {
        throw Error(kModule, "CorruptData", "bad sample '" + tok + "'");
    }
}

}  // namespace

ColorImage load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(kModule, "UnreadableFile", path);
    }

    std::string magic;
    if (!next_token(in, magic)) {
        throw Error(kModule, "CorruptData", "empty file: " + path);
    }
    bool gray;
    bool raw;
    if (magic == "P2") {
        gray = true;
        raw = false;
    } else if (magic == "P3") {
        gray = false;
        raw = false;
    } else if (magic == "P5") {
        gray = true;
        raw = true;
    } else if (magic == "P6") {
        gray = false;
        raw = true;
    } else {
        throw Error(kModule, "UnsupportedFormat", "magic '" + magic + "' in " + path);
    }

    int width = parse_header_int(in, "width");
    int height = parse_header_int(in, "height");
    int maxval = parse_header_int(in, "maxval");
    if (width < 1 || height < 1) {
        throw Error(kModule, "CorruptData", "non-positive dimensions");
    }
    if (maxval < 1 || maxval > 65535) {
        throw Error(kModule, "CorruptData", "bad maxval");
    }
    if (maxval > 255) {
        throw Error(kModule, "UnsupportedFormat", "16-bit samples not supported");
    }

    const int channels = gray ? 1 : 3;
    const std::size_t samples = static_cast<std::size_t>(width) * height * channels;
    std::vector<std::uint8_t> data(samples);

    if (raw) {
        // Exactly one whitespace byte separates the header from raw samples.
        std::streamsize got = in.read(reinterpret_cast<char*>(data.data()),
                                      static_cast<std::streamsize>(samples))
                                  .gcount();
        if (got != static_cast<std::streamsize>(samples)) {
            throw Error(kModule, "CorruptData", "truncated pixel data in " + path);
        }
        for (auto& v : data) {
            if (v > maxval) {
                throw Error(kModule, "CorruptData", "sample above maxval");
            }
        }
    } else {
        for (std::size_t i = 0; i < samples; ++i) {
            data[i] = static_cast<std::uint8_t>(parse_plain_sample(in, maxval));
        }
    }

    ColorImage out(width, height);
    if (gray) {
        for (std::size_t i = 0; i < data.size(); ++i) {
            out.pixels[i * 3 + 0] = data[i];
            out.pixels[i * 3 + 1] = data[i];
            out.pixels[i * 3 + 2] = data[i];
        }
    } else {
        out.pixels = std::move(data);
    }
    return out;
}

void save_pgm(const GrayImage& img, const std::string& path, bool binary) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(kModule, "UnreadableFile", path);
    }
    if (binary) {
        out << "P5\n" << img.width << " " << img.height << "\n255\n";
        out.write(reinterpret_cast<const char*>(img.pixels.data()),
                  static_cast<std::streamsize>(img.pixels.size()));
    } else {
        out << "P2\n" << img.width << " " << img.height << "\n255\n";
        for (int y = 0; y < img.height; ++y) {
            for (int x = 0; x < img.width; ++x) {
                out << int(img.at(x, y)) << (x + 1 == img.width ? '\n' : ' ');
            }
        }
    }
    if (!out) {
        throw Error(kModule, "UnreadableFile", "write failed: " + path);
    }
}

void save_ppm(const ColorImage& img, const std::string& path, bool binary) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(kModule, "UnreadableFile", path);
    }
    if (binary) {
        out << "P6\n" << img.width << " " << img.height << "\n255\n";
        out.write(reinterpret_cast<const char*>(img.pixels.data()),
                  static_cast<std::streamsize>(img.pixels.size()));
    } else {
        out << "P3\n" << img.width << " " << img.height << "\n255\n";
        for (int y = 0; y < img.height; ++y) {
            for (int x = 0; x < img.width; ++x) {
                const std::uint8_t* p = img.at(x, y);
                out << int(p[0]) << ' ' << int(p[1]) << ' ' << int(p[2])
                    << (x + 1 == img.width ? '\n' : ' ');
            }
        }
    }
    if (!out) {
        throw Error(kModule, "UnreadableFile", "write failed: " + path);
    }
}

}  // namespace rial
