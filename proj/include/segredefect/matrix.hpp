#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "segredefect/field.hpp"

namespace segredefect {

inline constexpr std::uint64_t kDefaultCellCap = std::uint64_t(1) << 32;

// Dense row-major matrix over GF(p). The prime itself is carried by the
// callers; entries are expected to be already reduced into [0, p-1].
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<FieldElem> entries; // rows * cols, row-major

    DenseMatrix() = default;
    // Throws SizeOverflow when rows*cols exceeds cell_cap.
    DenseMatrix(std::size_t r, std::size_t c, std::uint64_t cell_cap = kDefaultCellCap);

    FieldElem& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    FieldElem at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
    FieldElem* row(std::size_t r) { return entries.data() + r * cols; }
    const FieldElem* row(std::size_t r) const { return entries.data() + r * cols; }
};

// Rank over GF(p) by in-place Gaussian elimination on a working copy.
// Row updates below a pivot may run in parallel (`workers` threads,
// 0 = library default); the returned value does not depend on the schedule.
std::size_t rank_mod_p(const DenseMatrix& M, std::uint32_t p, int workers = 0);

// Reduce an integer matrix mod p into a DenseMatrix.
DenseMatrix reduce_mod_p(const std::vector<std::vector<long long>>& M, std::uint32_t p,
                         std::uint64_t cell_cap = kDefaultCellCap);

// Exact characteristic-zero rank via fraction-free (Bareiss) elimination
// with arbitrary-precision integers. Test oracle for rank_mod_p.
std::size_t rank_rational_oracle(const std::vector<std::vector<long long>>& M);

} // namespace segredefect
