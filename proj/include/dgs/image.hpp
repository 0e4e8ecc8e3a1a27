#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "dgs/types.hpp"

namespace dgs {

/// Row-major H x W buffer, origin top-left. u is the column, v is the row.
template <typename T>
class Image {
public:
    Image() = default;
    Image(int width, int height, const T& fill = T{})
        : width_(width), height_(height), data_(static_cast<size_t>(width) * height, fill) {}

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return data_.empty(); }
    size_t size() const { return data_.size(); }

    T& at(int u, int v) {
        assert(u >= 0 && u < width_ && v >= 0 && v < height_);
        return data_[static_cast<size_t>(v) * width_ + u];
    }
    const T& at(int u, int v) const {
        assert(u >= 0 && u < width_ && v >= 0 && v < height_);
        return data_[static_cast<size_t>(v) * width_ + u];
    }

    T& operator[](size_t i) { return data_[i]; }
    const T& operator[](size_t i) const { return data_[i]; }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    void fill(const T& value) { std::fill(data_.begin(), data_.end(), value); }

    template <typename U>
    bool same_size(const Image<U>& other) const {
        return width_ == other.width() && height_ == other.height();
    }

    bool operator==(const Image& other) const {
        return width_ == other.width_ && height_ == other.height_ && data_ == other.data_;
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

using Mask = Image<uint8_t>;
using DepthImage = Image<double>;
using ColorImage = Image<Vec3>;
using LabelImage = Image<int32_t>;

inline size_t mask_count(const Mask& m) {
    size_t n = 0;
    for (size_t i = 0; i < m.size(); ++i) n += (m[i] != 0);
    return n;
}

inline Mask mask_and(const Mask& a, const Mask& b) {
    Mask out(a.width(), a.height());
    for (size_t i = 0; i < a.size(); ++i) out[i] = (a[i] && b[i]) ? 1 : 0;
    return out;
}

inline Mask mask_or(const Mask& a, const Mask& b) {
    Mask out(a.width(), a.height());
    for (size_t i = 0; i < a.size(); ++i) out[i] = (a[i] || b[i]) ? 1 : 0;
    return out;
}

inline Mask mask_not(const Mask& a) {
    Mask out(a.width(), a.height());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] ? 0 : 1;
    return out;
}

/// a with the pixels of b removed.
inline Mask mask_minus(const Mask& a, const Mask& b) {
    Mask out(a.width(), a.height());
    for (size_t i = 0; i < a.size(); ++i) out[i] = (a[i] && !b[i]) ? 1 : 0;
    return out;
}

inline size_t mask_intersection_count(const Mask& a, const Mask& b) {
    size_t n = 0;
    for (size_t i = 0; i < a.size(); ++i) n += (a[i] && b[i]);
    return n;
}

}  // namespace dgs
