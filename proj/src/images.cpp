#include "vnscale/images.hpp"

#include "vnscale/error.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <regex>

namespace vnscale {

namespace {

// Next whitespace-delimited token of a PNM header, skipping '#' comments.
std::string pnm_token(std::istream& is) {
    std::string tok;
    int ch;
    while ((ch = is.get()) != EOF) {
        if (ch == '#') {
            while ((ch = is.get()) != EOF && ch != '\n') {
            }
            continue;
        }
        if (std::isspace(ch)) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(static_cast<char>(ch));
    }
    return tok;
}

Index pnm_int(std::istream& is, const std::filesystem::path& p) {
    const std::string tok = pnm_token(is);
    try {
        std::size_t used = 0;
        const long v = std::stol(tok, &used);
        if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw Error(p.string() + ": bad PGM header field '" + tok + "'");
    }
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

bool is_integer(const std::string& s) {
    return !s.empty() && s.size() < 18 && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

GrayImage read_pgm(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    if (!is) throw Error("cannot read " + p.string());
    const std::string magic = pnm_token(is);
    if (magic != "P5" && magic != "P2") throw Error(p.string() + ": not a PGM file");

    GrayImage img;
    img.width = pnm_int(is, p);
    img.height = pnm_int(is, p);
    const Index maxval = pnm_int(is, p);
    if (img.width < 1 || img.height < 1) throw Error(p.string() + ": empty image");
    if (maxval < 1 || maxval > 255) throw Error(p.string() + ": only 8-bit PGM is supported");

    img.pixels.resize(static_cast<std::size_t>(img.width * img.height));
    if (magic == "P5") {
        is.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
        if (is.gcount() != static_cast<std::streamsize>(img.pixels.size())) throw Error(p.string() + ": truncated");
    } else {
        for (auto& px : img.pixels) {
            const Index v = pnm_int(is, p);
            if (v > maxval) throw Error(p.string() + ": pixel exceeds maxval");
            px = static_cast<std::uint8_t>(v);
        }
    }
    return img;
}

GrayImage read_png(const std::filesystem::path& p) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, p.string().c_str())) {
        throw Error(p.string() + ": " + image.message);
    }
    if ((image.format & (PNG_FORMAT_FLAG_COLOR | PNG_FORMAT_FLAG_LINEAR)) != 0) {
        png_image_free(&image);
        throw Error(p.string() + ": only 8-bit grayscale PNG is supported");
    }
    image.format = PNG_FORMAT_GRAY;
    GrayImage img;
    img.width = image.width;
    img.height = image.height;
    img.pixels.resize(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, img.pixels.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw Error(p.string() + ": " + msg);
    }
    return img;
}

GrayImage read_image(const std::filesystem::path& p) {
    const std::string ext = lower(p.extension().string());
    if (ext == ".pgm") return read_pgm(p);
    if (ext == ".png") return read_png(p);
    throw Error(p.string() + ": unsupported image type");
}

void write_pgm(const std::filesystem::path& p, const GrayImage& img) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw Error("cannot write " + p.string());
    os << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    os.write(reinterpret_cast<const char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
}

PointCloud ingest_images(const std::filesystem::path& dir, const IngestOptions& opts) {
    if (!std::filesystem::is_directory(dir)) throw InvalidArgument(dir.string() + " is not a directory");

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string ext = lower(entry.path().extension().string());
        if (entry.is_regular_file() && (ext == ".pgm" || ext == ".png")) files.push_back(entry.path());
    }
    if (files.empty()) throw InvalidArgument(dir.string() + " contains no .pgm or .png images");
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });

    const std::regex pattern(opts.label_pattern);
    std::vector<std::string> keys;
    bool all_matched = true;

    PointCloud cloud;
    Index width = 0, height = 0;
    for (std::size_t i = 0; i < files.size(); ++i) {
        const GrayImage img = read_image(files[i]);
        if (i == 0) {
            width = img.width;
            height = img.height;
            cloud.points.resize(static_cast<Index>(files.size()), width * height);
        } else if (img.width != width || img.height != height) {
            throw InvalidArgument(files[i].filename().string() + " is " + std::to_string(img.width) + "x" +
                                  std::to_string(img.height) + ", expected " + std::to_string(width) + "x" +
                                  std::to_string(height));
        }
        for (std::size_t px = 0; px < img.pixels.size(); ++px) {
            cloud.points(static_cast<Index>(i), static_cast<Index>(px)) = img.pixels[px];
        }

        std::smatch m;
        const std::string name = files[i].filename().string();
        if (all_matched && std::regex_search(name, m, pattern) && m.size() > 1) {
            keys.push_back(m[1].str());
        } else {
            all_matched = false;
        }
    }

    if (all_matched) {
        const bool numeric = std::all_of(keys.begin(), keys.end(), is_integer);
        auto less = [numeric](const std::string& a, const std::string& b) {
            return numeric ? std::stoll(a) < std::stoll(b) : a < b;
        };
        std::map<std::string, int, decltype(less)> ids(less);
        for (const auto& k : keys) ids.emplace(k, 0);
        int next = 0;
        for (auto& [k, id] : ids) id = next++;
        std::vector<int> labels;
        labels.reserve(keys.size());
        for (const auto& k : keys) labels.push_back(ids.at(k));
        cloud.labels = std::move(labels);
    }

    const auto dups = find_duplicate_points(cloud);
    if (!dups.empty()) {
        std::vector<std::pair<long, long>> pairs(dups.begin(), dups.end());
        throw DuplicatePoints(std::move(pairs));
    }
    return cloud;
}

}  // namespace vnscale
