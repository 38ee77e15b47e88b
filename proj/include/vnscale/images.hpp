#pragma once

#include "vnscale/geometry.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace vnscale {

/// 8-bit grayscale image, row-major.
struct GrayImage {
    Index width = 0;
    Index height = 0;
    std::vector<std::uint8_t> pixels;
};

/// Reads binary (P5) or ASCII (P2) PGM with maxval <= 255.
GrayImage read_pgm(const std::filesystem::path& p);

/// Reads an 8-bit grayscale PNG. Other colour types are rejected.
GrayImage read_png(const std::filesystem::path& p);

/// Dispatches on extension (.pgm / .png).
GrayImage read_image(const std::filesystem::path& p);

void write_pgm(const std::filesystem::path& p, const GrayImage& img);

struct IngestOptions {
    /// Regex whose first capture group identifies the object in a filename.
    std::string label_pattern = R"(obj(\d+))";
};

/// One point per image (pixels flattened row-major, raw 0-255 intensities), files
/// taken in lexicographic order. Labels are contiguous ids assigned in sorted
/// order of the captured object key; they are omitted if any filename does not
/// match. Throws InvalidArgument on an empty directory or mixed dimensions, Error
/// on unreadable files and DuplicatePoints on identical images.
PointCloud ingest_images(const std::filesystem::path& dir, const IngestOptions& opts = {});

}  // namespace vnscale
