#pragma once

#include "weylbott/numeric.hpp"

#include <vector>
#include <string>
#include <compare>

namespace weylbott {

// A point of the ambient Euclidean space of a root system, in exact rational
// coordinates. The Bourbaki realizations used here are orthonormal, so the
// invariant scalar product is the standard dot product.
class Weight {
public:
    Weight() = default;
    explicit Weight(std::vector<Rat> coords) : coords_(std::move(coords)) {}
    static Weight zero(std::size_t dim) { return Weight(std::vector<Rat>(dim, Rat(0))); }

    std::size_t dim() const { return coords_.size(); }
    const Rat& operator[](std::size_t i) const { return coords_[i]; }
    Rat& operator[](std::size_t i) { return coords_[i]; }
    const std::vector<Rat>& coords() const { return coords_; }

    Weight& operator+=(const Weight& o);
    Weight& operator-=(const Weight& o);
    Weight& operator*=(const Rat& c);

    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator*(const Rat& c, Weight a) { return a *= c; }
    Weight operator-() const;

    bool operator==(const Weight& o) const { return coords_ == o.coords_; }
    bool operator<(const Weight& o) const { return coords_ < o.coords_; }

    bool is_zero() const;

    std::string str() const;

private:
    std::vector<Rat> coords_;
};

Rat dot(const Weight& a, const Weight& b);

// 2(a,b)/(b,b) -- the pairing of a against the coroot of b.
Rat coroot_pairing(const Weight& a, const Weight& root);

// reflection of w in the hyperplane orthogonal to root
Weight reflect(const Weight& w, const Weight& root);

// Small dense matrix over the rationals, used for accumulated reflection
// products and linear weight maps.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}
    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Rat& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Rat& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    Weight apply(const Weight& w) const;
    RatMatrix operator*(const RatMatrix& o) const;
    Rat det() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> data_;
};

// matrix of the reflection along `root` acting on the ambient space
RatMatrix reflection_matrix(const Weight& root, std::size_t dim);

} // namespace weylbott
