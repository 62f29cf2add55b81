#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace bellbox {

// Dense matrix over the rationals, row-major. Only what the rank and LP
// certifications need.
class RationalMatrix {
public:
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix from_rows(std::vector<std::vector<Rational>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows.front().size() : 0;
        RationalMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = std::move(rows[i][j]);
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    [[nodiscard]] const Rational& at(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> data_;
};

// Rank over Q by Gaussian elimination. Pivot choice prefers the entry with
// the smallest denominator, then the smallest |numerator|, which keeps
// coefficient growth down on the 0/±1 matrices this library produces; any
// rule gives the same rank since the arithmetic is exact.
inline std::size_t exact_rank(RationalMatrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rows;
        for (std::size_t r = rank; r < rows; ++r) {
            const Rational& e = m.at(r, col);
            if (sign(e) == 0) continue;
            if (pivot == rows) {
                pivot = r;
                continue;
            }
            const Rational& p = m.at(pivot, col);
            const int dc = cmp(e.get_den(), p.get_den());
            if (dc < 0 || (dc == 0 && cmp(abs(e.get_num()), abs(p.get_num())) < 0)) pivot = r;
        }
        if (pivot == rows) continue;
        m.swap_rows(rank, pivot);

        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (sign(m.at(r, col)) == 0) continue;
            const Rational factor = m.at(r, col) / m.at(rank, col);
            m.at(r, col) = 0;
            for (std::size_t c2 = col + 1; c2 < cols; ++c2) {
                if (sign(m.at(rank, c2)) != 0) m.at(r, c2) -= factor * m.at(rank, c2);
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace bellbox
