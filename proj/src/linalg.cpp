#include "fcq/linalg.hpp"

#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fcq {

namespace {

// Find a pivot in column c at or below row r; returns rows when none.
size_t find_pivot(const FpMatrix& m, size_t r, size_t c) {
    for (size_t i = r; i < m.rows; ++i)
        if (m(i, c)) return i;
    return m.rows;
}

void swap_rows(FpMatrix& m, size_t i, size_t j) {
    if (i == j) return;
    for (size_t c = 0; c < m.cols; ++c) std::swap(m(i, c), m(j, c));
}

void normalize_row(FpMatrix& m, size_t r, size_t c) {
    uint32_t inv = fp_inv(m(r, c), m.p);
    for (size_t k = c; k < m.cols; ++k) m(r, k) = fp_mul(m(r, k), inv, m.p);
}

inline void eliminate_row(FpMatrix& m, size_t i, size_t r, size_t c) {
    uint32_t f = m(i, c);
    if (!f) return;
    const int p = m.p;
    uint32_t nf = fp_neg(f, p);
    uint32_t* dst = &m.a[i * m.cols];
    const uint32_t* src = &m.a[r * m.cols];
    for (size_t k = c; k < m.cols; ++k) dst[k] = (dst[k] + nf * src[k]) % p;
}

}  // namespace

size_t rank_serial(FpMatrix m) {
    size_t r = 0;
    for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
        size_t piv = find_pivot(m, r, c);
        if (piv == m.rows) continue;
        swap_rows(m, r, piv);
        normalize_row(m, r, c);
        for (size_t i = r + 1; i < m.rows; ++i) eliminate_row(m, i, r, c);
        ++r;
    }
    return r;
}

size_t rank_parallel(FpMatrix m) {
    size_t r = 0;
    for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
        size_t piv = find_pivot(m, r, c);
        if (piv == m.rows) continue;
        swap_rows(m, r, piv);
        normalize_row(m, r, c);
        const long long lo = static_cast<long long>(r + 1), hi = static_cast<long long>(m.rows);
#pragma omp parallel for schedule(static) if (hi - lo > 64)
        for (long long i = lo; i < hi; ++i) eliminate_row(m, static_cast<size_t>(i), r, c);
        ++r;
    }
    return r;
}

std::vector<uint32_t> FpBasis::reduce(std::vector<uint32_t> v) const {
    if (v.size() != dim_) throw DomainError("FpBasis: vector of wrong length");
    for (size_t k = 0; k < rows_.size(); ++k) {
        uint32_t f = v[piv_[k]];
        if (!f) continue;
        uint32_t nf = fp_neg(f, p_);
        const auto& row = rows_[k];
        for (size_t j = piv_[k]; j < dim_; ++j)
            if (row[j]) v[j] = (v[j] + nf * row[j]) % p_;
    }
    return v;
}

bool FpBasis::contains(const std::vector<uint32_t>& v) const {
    for (uint32_t c : reduce(v))
        if (c) return false;
    return true;
}

bool FpBasis::insert(std::vector<uint32_t> v) {
    v = reduce(std::move(v));
    size_t pv = 0;
    while (pv < dim_ && !v[pv]) ++pv;
    if (pv == dim_) return false;
    uint32_t inv = fp_inv(v[pv], p_);
    for (size_t j = pv; j < dim_; ++j) v[j] = fp_mul(v[j], inv, p_);
    // Keep the basis fully reduced so reduce() works in one pass.
    for (auto& row : rows_) {
        uint32_t f = row[pv];
        if (!f) continue;
        uint32_t nf = fp_neg(f, p_);
        for (size_t j = pv; j < dim_; ++j)
            if (v[j]) row[j] = (row[j] + nf * v[j]) % p_;
    }
    rows_.push_back(std::move(v));
    piv_.push_back(pv);
    return true;
}

}  // namespace fcq
