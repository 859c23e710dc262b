#include "segredefect/matrix.hpp"

#include <gmpxx.h>
#include <omp.h>

#include <string>
#include <utility>

namespace segredefect {

DenseMatrix::DenseMatrix(std::size_t r, std::size_t c, std::uint64_t cell_cap) : rows(r), cols(c) {
    std::uint64_t cells = std::uint64_t(r) * c;
    if (r != 0 && cells / r != c) throw SizeOverflow("matrix size overflows 64 bits");
    if (cells > cell_cap)
        throw SizeOverflow("matrix with " + std::to_string(cells) +
                           " cells exceeds the cap of " + std::to_string(cell_cap));
    entries.assign(std::size_t(cells), 0);
}

namespace {

// dst[j] = (dst[j] + c * src[j]) mod 127, exploiting 2^7 = 1 (mod 127).
// All intermediates fit in 16 bits: 126 + 126*126 = 16002.
void axpy_row_127(FieldElem* dst, const FieldElem* src, FieldElem c, std::size_t len) {
    for (std::size_t j = 0; j < len; ++j) {
        std::uint16_t t = std::uint16_t(dst[j] + std::uint16_t(c * src[j]));
        t = std::uint16_t((t & 127u) + (t >> 7));
        t = std::uint16_t((t & 127u) + (t >> 7));
        if (t >= 127u) t = std::uint16_t(t - 127u);
        dst[j] = t;
    }
}

// Exact n mod p for n < 2^32 with one precomputed 64-bit constant.
struct FastMod {
    std::uint64_t magic;
    std::uint32_t p;
    explicit FastMod(std::uint32_t prime) : magic(~std::uint64_t(0) / prime + 1), p(prime) {}
    std::uint32_t operator()(std::uint32_t n) const {
        return std::uint32_t((unsigned __int128)(magic * n) * p >> 64);
    }
};

void axpy_row_generic(FieldElem* dst, const FieldElem* src, FieldElem c, std::size_t len,
                      const FastMod& mod) {
    for (std::size_t j = 0; j < len; ++j) {
        std::uint32_t t = std::uint32_t(dst[j]) + std::uint32_t(c) * src[j];
        dst[j] = FieldElem(mod(t));
    }
}

} // namespace

std::size_t rank_mod_p(const DenseMatrix& M, std::uint32_t p, int workers) {
    require_prime(p);
    if (M.rows == 0 || M.cols == 0) return 0;

    std::vector<FieldElem> a(M.entries);
    const std::size_t rows = M.rows, cols = M.cols;
    const FastMod mod(p);
    const bool mersenne127 = (p == 127);
    const int nt = workers > 0 ? workers : omp_get_max_threads();

    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        // partial pivot search by first nonzero
        std::size_t piv = r;
        while (piv < rows && a[piv * cols + col] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = col; j < cols; ++j)
                std::swap(a[piv * cols + j], a[r * cols + j]);

        const FieldElem inv = ff_inv(a[r * cols + col], p);
        const FieldElem* prow = a.data() + r * cols + col;
        const std::size_t len = cols - col;

#pragma omp parallel for schedule(static) num_threads(nt)
        for (std::size_t i = r + 1; i < rows; ++i) {
            FieldElem f = a[i * cols + col];
            if (f == 0) continue;
            FieldElem c = FieldElem(p - ff_mul(f, inv, p));
            FieldElem* drow = a.data() + i * cols + col;
            if (mersenne127)
                axpy_row_127(drow, prow, c, len);
            else
                axpy_row_generic(drow, prow, c, len, mod);
        }
        ++r;
    }
    return r;
}

DenseMatrix reduce_mod_p(const std::vector<std::vector<long long>>& M, std::uint32_t p,
                         std::uint64_t cell_cap) {
    require_prime(p);
    std::size_t rows = M.size();
    std::size_t cols = rows ? M[0].size() : 0;
    DenseMatrix out(rows, cols, cell_cap);
    for (std::size_t i = 0; i < rows; ++i) {
        if (M[i].size() != cols) throw Error("ragged integer matrix");
        for (std::size_t j = 0; j < cols; ++j)
            out.at(i, j) = ff_normalize(M[i][j], p);
    }
    return out;
}

std::size_t rank_rational_oracle(const std::vector<std::vector<long long>>& M) {
    std::size_t rows = M.size();
    std::size_t cols = rows ? M[0].size() : 0;
    if (rows == 0 || cols == 0) return 0;

    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        if (M[i].size() != cols) throw Error("ragged integer matrix");
        for (std::size_t j = 0; j < cols; ++j)
            a[i][j] = M[i][j];
    }

    // Bareiss fraction-free elimination: entries stay minors of the input.
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t piv = r;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r) a[piv].swap(a[r]);

        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                a[i][j] = (a[r][col] * a[i][j] - a[i][col] * a[r][j]) / prev;
            }
            a[i][col] = 0;
        }
        prev = a[r][col];
        ++r;
    }
    return r;
}

} // namespace segredefect
