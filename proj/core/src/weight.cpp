#include "weylbott/weight.hpp"

#include <sstream>
#include <cassert>

namespace weylbott {

Weight& Weight::operator+=(const Weight& o) {
    assert(coords_.size() == o.coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
}

Weight& Weight::operator-=(const Weight& o) {
    assert(coords_.size() == o.coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
}

Weight& Weight::operator*=(const Rat& c) {
    for (auto& x : coords_) x *= c;
    return *this;
}

Weight Weight::operator-() const {
    Weight r = *this;
    for (auto& x : r.coords_) x = -x;
    return r;
}

bool Weight::is_zero() const {
    for (const auto& x : coords_)
        if (x != 0) return false;
    return true;
}

std::string Weight::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) os << ",";
        os << coords_[i].str();
    }
    os << ")";
    return os.str();
}

Rat dot(const Weight& a, const Weight& b) {
    assert(a.dim() == b.dim());
    Rat s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

Rat coroot_pairing(const Weight& a, const Weight& root) {
    return 2 * dot(a, root) / dot(root, root);
}

Weight reflect(const Weight& w, const Weight& root) {
    Weight r = w;
    Rat c = coroot_pairing(w, root);
    for (std::size_t i = 0; i < r.dim(); ++i) r[i] -= c * root[i];
    return r;
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Weight RatMatrix::apply(const Weight& w) const {
    assert(w.dim() == cols_);
    std::vector<Rat> out(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out[i] += at(i, j) * w[j];
    return Weight(std::move(out));
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    assert(cols_ == o.rows_);
    RatMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

Rat RatMatrix::det() const {
    assert(rows_ == cols_);
    RatMatrix m = *this;
    Rat d = 1;
    for (std::size_t c = 0; c < cols_; ++c) {
        std::size_t pivot = c;
        while (pivot < rows_ && m.at(pivot, c) == 0) ++pivot;
        if (pivot == rows_) return 0;
        if (pivot != c) {
            for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(pivot, j), m.at(c, j));
            d = -d;
        }
        d *= m.at(c, c);
        for (std::size_t r = c + 1; r < rows_; ++r) {
            if (m.at(r, c) == 0) continue;
            Rat f = m.at(r, c) / m.at(c, c);
            for (std::size_t j = c; j < cols_; ++j) m.at(r, j) -= f * m.at(c, j);
        }
    }
    return d;
}

RatMatrix reflection_matrix(const Weight& root, std::size_t dim) {
    RatMatrix m = RatMatrix::identity(dim);
    Rat nn = dot(root, root);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            m.at(i, j) -= 2 * root[i] * root[j] / nn;
    return m;
}

} // namespace weylbott
