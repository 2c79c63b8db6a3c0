#include "invforge/gf2.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace invforge::gf2 {

BitVec BitVec::from_word(std::uint64_t w, std::size_t size) {
    BitVec v(size);
    if (size < 64) w &= (std::uint64_t{1} << size) - 1;
    if (!v.words_.empty()) v.words_[0] = w;
    return v;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (o.size_ != size_) throw std::invalid_argument("BitVec: width mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
}

bool BitVec::none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t BitVec::count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::size_t BitVec::first() const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if (words_[i] != 0) return 64 * i + static_cast<std::size_t>(std::countr_zero(words_[i]));
    }
    return size_;
}

bool BitVec::dot(const BitVec& o) const {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & o.words_[i];
    return std::popcount(acc) & 1;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (get(r, c)) t.set(c, r);
        }
    }
    return t;
}

BitVec BitMatrix::apply(const BitVec& v) const {
    BitVec out(rows());
    for (std::size_t r = 0; r < rows(); ++r) out.set(r, rows_[r].dot(v));
    return out;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("BitMatrix: shape mismatch");
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        BitVec acc(b.cols());
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.get(r, k)) acc ^= b.row(k);
        }
        out.row(r) = std::move(acc);
    }
    return out;
}

BitMatrix operator+(BitMatrix a, const BitMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("BitMatrix: shape mismatch");
    for (std::size_t r = 0; r < a.rows(); ++r) a.row(r) ^= b.row(r);
    return a;
}

BitMatrix power(const BitMatrix& m, std::uint64_t k) {
    BitMatrix result = BitMatrix::identity(m.rows());
    BitMatrix base = m;
    while (k != 0) {
        if (k & 1U) result = result * base;
        k >>= 1;
        if (k != 0) base = base * base;
    }
    return result;
}

// ------------------------------------------------------------ echelon basis

BitVec EchelonBasis::reduce(BitVec v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (v.get(pivots_[i])) v ^= rows_[i];
    }
    return v;
}

bool EchelonBasis::insert(BitVec v) {
    if (v.size() != width_) throw std::invalid_argument("EchelonBasis: width mismatch");
    v = reduce(std::move(v));
    const std::size_t p = v.first();
    if (p == width_) return false;
    // keep every stored row free of the new pivot so reduce() stays one pass
    for (auto& r : rows_) {
        if (r.get(p)) r ^= v;
    }
    const auto pos = static_cast<std::size_t>(std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin());
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), p);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
    return true;
}

bool EchelonBasis::contains(BitVec v) const { return reduce(std::move(v)).none(); }

std::vector<BitVec> EchelonBasis::reduced() const { return rows_; }
std::vector<std::size_t> EchelonBasis::pivots() const { return pivots_; }

std::vector<BitVec> nullspace(const EchelonBasis& rows) {
    const std::size_t n = rows.width();
    const auto reduced = rows.reduced();
    const auto pivots = rows.pivots();
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;

    // For free column f: x_f = 1, other free columns 0, x_p = row_p[f].
    std::vector<BitVec> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        BitVec x(n);
        x.set(f);
        for (std::size_t i = 0; i < reduced.size(); ++i) {
            if (reduced[i].get(f)) x.set(pivots[i]);
        }
        basis.push_back(std::move(x));
    }
    return rref(basis, n);
}

std::vector<BitVec> nullspace(const BitMatrix& m) {
    EchelonBasis rows(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) rows.insert(m.row(r));
    return nullspace(rows);
}

std::size_t rank(const BitMatrix& m) {
    EchelonBasis rows(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) rows.insert(m.row(r));
    return rows.rank();
}

std::vector<BitVec> rref(std::span<const BitVec> vectors, std::size_t width) {
    EchelonBasis b(width);
    for (const auto& v : vectors) b.insert(v);
    return b.reduced();
}

std::optional<BitVec> solve(const BitMatrix& m, const BitVec& b) {
    // Eliminate on the augmented matrix [M | b].
    const std::size_t n = m.cols();
    EchelonBasis rows(n + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        BitVec aug(n + 1);
        for (std::size_t c = 0; c < n; ++c) aug.set(c, m.get(r, c));
        aug.set(n, b.get(r));
        rows.insert(std::move(aug));
    }
    const auto reduced = rows.reduced();
    const auto pivots = rows.pivots();
    BitVec x(n);
    for (std::size_t i = 0; i < reduced.size(); ++i) {
        if (pivots[i] == n) return std::nullopt;  // 0 = 1
        x.set(pivots[i], reduced[i].get(n));
    }
    return x;
}

}  // namespace invforge::gf2
