#pragma once

// Dense GF(2) vectors and matrices packed into 64-bit words.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace invforge::gf2 {

class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}
    static BitVec from_word(std::uint64_t w, std::size_t size);

    std::size_t size() const { return size_; }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i, bool b = true) {
        const std::uint64_t m = std::uint64_t{1} << (i & 63);
        words_[i >> 6] = b ? (words_[i >> 6] | m) : (words_[i >> 6] & ~m);
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    BitVec& operator^=(const BitVec& o);
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
    bool operator==(const BitVec&) const = default;

    bool none() const;
    std::size_t count() const;
    /// Index of the lowest set bit, or size() when none.
    std::size_t first() const;
    bool dot(const BitVec& o) const;

    std::span<const std::uint64_t> words() const { return words_; }
    /// Low 64 bits; convenient for vectors of width <= 64.
    std::uint64_t word() const { return words_.empty() ? 0 : words_[0]; }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {}
    static BitMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool b = true) { rows_[r].set(c, b); }
    const BitVec& row(std::size_t r) const { return rows_[r]; }
    BitVec& row(std::size_t r) { return rows_[r]; }

    BitMatrix transpose() const;
    BitVec apply(const BitVec& v) const;  // M * v
    friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);
    friend BitMatrix operator+(BitMatrix a, const BitMatrix& b);
    bool operator==(const BitMatrix&) const = default;

private:
    std::size_t cols_ = 0;
    std::vector<BitVec> rows_;
};

BitMatrix power(const BitMatrix& m, std::uint64_t k);

/// Incrementally maintained reduced row-echelon basis of a row space.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t width) : width_(width) {}

    /// Adds v to the span; returns false when v was already in it.
    bool insert(BitVec v);
    bool contains(BitVec v) const;
    std::size_t rank() const { return rows_.size(); }
    std::size_t width() const { return width_; }
    /// Fully reduced rows sorted by pivot column.
    std::vector<BitVec> reduced() const;
    /// Pivot columns of reduced(), same order.
    std::vector<std::size_t> pivots() const;

private:
    BitVec reduce(BitVec v) const;
    std::size_t width_;
    std::vector<BitVec> rows_;         // rows_[i] has its lowest set bit at pivots_[i]
    std::vector<std::size_t> pivots_;
};

/// Basis of {x : r . x = 0 for every row r in the span}, in reduced
/// row-echelon form (column 0 is the leading position).
std::vector<BitVec> nullspace(const EchelonBasis& rows);
std::vector<BitVec> nullspace(const BitMatrix& m);

std::size_t rank(const BitMatrix& m);

/// Reduced row-echelon form of the span of `vectors`.
std::vector<BitVec> rref(std::span<const BitVec> vectors, std::size_t width);

/// One solution x of M x = b, if any.
std::optional<BitVec> solve(const BitMatrix& m, const BitVec& b);

}  // namespace invforge::gf2
