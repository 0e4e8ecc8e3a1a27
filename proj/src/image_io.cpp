#include "dgs/image_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace dgs {

namespace {

void write_or_throw(std::ofstream& f, const char* data, size_t n, const std::string& path) {
    f.write(data, static_cast<std::streamsize>(n));
    if (!f) throw std::runtime_error("image_io: failed writing " + path);
}

std::ifstream open_input(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("image_io: cannot open " + path);
    return f;
}

struct PnmHeader {
    std::string magic;
    int width = 0, height = 0, maxval = 0;
};

PnmHeader read_header(std::ifstream& f, const std::string& path) {
    PnmHeader h;
    f >> h.magic >> h.width >> h.height >> h.maxval;
    if (!f || h.width <= 0 || h.height <= 0)
        throw std::runtime_error("image_io: malformed header in " + path);
    f.get();  // single whitespace after maxval
    return h;
}

}  // namespace

void write_ppm(const std::string& path, const ColorImage& img) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("image_io: cannot create " + path);
    f << "P6\n" << img.width() << " " << img.height() << "\n255\n";
    std::vector<uint8_t> row(static_cast<size_t>(img.width()) * 3);
    for (int v = 0; v < img.height(); ++v) {
        for (int u = 0; u < img.width(); ++u) {
            const Vec3& c = img.at(u, v);
            row[3 * u + 0] = quantize8(c.x());
            row[3 * u + 1] = quantize8(c.y());
            row[3 * u + 2] = quantize8(c.z());
        }
        write_or_throw(f, reinterpret_cast<const char*>(row.data()), row.size(), path);
    }
}

ColorImage read_ppm(const std::string& path) {
    std::ifstream f = open_input(path);
    PnmHeader h = read_header(f, path);
    if (h.magic != "P6" || h.maxval != 255)
        throw std::runtime_error("image_io: expected 8-bit P6 in " + path);
    ColorImage img(h.width, h.height);
    std::vector<uint8_t> row(static_cast<size_t>(h.width) * 3);
    for (int v = 0; v < h.height; ++v) {
        f.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size()));
        if (!f) throw std::runtime_error("image_io: truncated file " + path);
        for (int u = 0; u < h.width; ++u) {
            img.at(u, v) =
                Vec3(row[3 * u] / 255.0, row[3 * u + 1] / 255.0, row[3 * u + 2] / 255.0);
        }
    }
    return img;
}

void write_pgm16(const std::string& path, const DepthImage& depth_meters) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("image_io: cannot create " + path);
    f << "P5\n" << depth_meters.width() << " " << depth_meters.height() << "\n65535\n";
    std::vector<uint8_t> row(static_cast<size_t>(depth_meters.width()) * 2);
    for (int v = 0; v < depth_meters.height(); ++v) {
        for (int u = 0; u < depth_meters.width(); ++u) {
            const uint16_t mm = quantize_depth_mm(depth_meters.at(u, v));
            row[2 * u] = static_cast<uint8_t>(mm >> 8);  // big-endian per netpbm
            row[2 * u + 1] = static_cast<uint8_t>(mm & 0xff);
        }
        write_or_throw(f, reinterpret_cast<const char*>(row.data()), row.size(), path);
    }
}

DepthImage read_pgm16(const std::string& path) {
    std::ifstream f = open_input(path);
    PnmHeader h = read_header(f, path);
    if (h.magic != "P5" || h.maxval != 65535)
        throw std::runtime_error("image_io: expected 16-bit P5 in " + path);
    DepthImage img(h.width, h.height);
    std::vector<uint8_t> row(static_cast<size_t>(h.width) * 2);
    for (int v = 0; v < h.height; ++v) {
        f.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size()));
        if (!f) throw std::runtime_error("image_io: truncated file " + path);
        for (int u = 0; u < h.width; ++u) {
            const uint16_t mm = static_cast<uint16_t>((row[2 * u] << 8) | row[2 * u + 1]);
            img.at(u, v) = mm / 1000.0;
        }
    }
    return img;
}

void write_pgm8(const std::string& path, const Image<uint8_t>& img) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("image_io: cannot create " + path);
    f << "P5\n" << img.width() << " " << img.height() << "\n255\n";
    write_or_throw(f, reinterpret_cast<const char*>(img.data()), img.size(), path);
}

Image<uint8_t> read_pgm8(const std::string& path) {
    std::ifstream f = open_input(path);
    PnmHeader h = read_header(f, path);
    if (h.magic != "P5" || h.maxval != 255)
        throw std::runtime_error("image_io: expected 8-bit P5 in " + path);
    Image<uint8_t> img(h.width, h.height);
    f.read(reinterpret_cast<char*>(img.data()), static_cast<std::streamsize>(img.size()));
    if (!f) throw std::runtime_error("image_io: truncated file " + path);
    return img;
}

}  // namespace dgs
