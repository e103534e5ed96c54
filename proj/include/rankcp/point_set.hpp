#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace rankcp {

// Row-major block of `size()` points in R^dim.
class PointSet {
public:
    PointSet() = default;

    explicit PointSet(std::size_t dim) : dim_(dim) {
        if (dim == 0) throw std::invalid_argument("PointSet: dimension must be positive");
    }

    PointSet(std::size_t dim, std::vector<double> values) : dim_(dim), values_(std::move(values)) {
        if (dim == 0) throw std::invalid_argument("PointSet: dimension must be positive");
        if (values_.size() % dim != 0)
            throw std::invalid_argument("PointSet: value count is not a multiple of the dimension");
    }

    // One-dimensional convenience constructor.
    static PointSet scalars(std::vector<double> values) { return PointSet(1, std::move(values)); }

    static PointSet from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        if (rows.size() == 0) throw std::invalid_argument("PointSet: no rows");
        PointSet out(rows.begin()->size());
        for (const auto& r : rows) out.push_back(std::span<const double>(r.begin(), r.size()));
        return out;
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return dim_ == 0 ? 0 : values_.size() / dim_; }
    bool empty() const noexcept { return values_.empty(); }

    std::span<const double> operator[](std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
    std::span<double> operator[](std::size_t i) { return {values_.data() + i * dim_, dim_}; }

    void push_back(std::span<const double> point) {
        if (point.size() != dim_) throw std::invalid_argument("PointSet: point dimension mismatch");
        values_.insert(values_.end(), point.begin(), point.end());
    }

    void reserve(std::size_t n) { values_.reserve(n * dim_); }

    // Rows [first, last).
    PointSet slice(std::size_t first, std::size_t last) const {
        if (first > last || last > size()) throw std::out_of_range("PointSet: slice out of range");
        return PointSet(dim_, std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(first * dim_),
                                                  values_.begin() + static_cast<std::ptrdiff_t>(last * dim_)));
    }

    // Rows reordered so that row k of the result is row order[k] of this set.
    PointSet gather(std::span<const std::size_t> order) const {
        PointSet out(dim_);
        out.reserve(order.size());
        for (auto i : order) out.push_back((*this)[i]);
        return out;
    }

    const std::vector<double>& values() const noexcept { return values_; }

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> values_;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        s += diff * diff;
    }
    return s;
}

}  // namespace rankcp
