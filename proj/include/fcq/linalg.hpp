#ifndef FCQ_LINALG_HPP
#define FCQ_LINALG_HPP

#include <cstdint>
#include <vector>

#include "fcq/fp.hpp"

namespace fcq {

/// Dense row-major matrix over F_p.
struct FpMatrix {
    int p = 3;
    size_t rows = 0, cols = 0;
    std::vector<uint32_t> a;

    FpMatrix() = default;
    FpMatrix(int p_, size_t r, size_t c) : p(p_), rows(r), cols(c), a(r * c, 0) {}
    uint32_t& operator()(size_t i, size_t j) { return a[i * cols + j]; }
    uint32_t operator()(size_t i, size_t j) const { return a[i * cols + j]; }
};

/// Rank by Gaussian elimination; reference implementation.
size_t rank_serial(FpMatrix m);
/// Same elimination with the row updates of each pivot step spread over threads.
size_t rank_parallel(FpMatrix m);

/**
 * Incrementally maintained row echelon basis of a subspace of F_p^dim.
 * insert() reduces a vector against the basis and keeps it if nonzero.
 */
class FpBasis {
public:
    FpBasis(int p, size_t dim) : p_(p), dim_(dim) {}
    bool insert(std::vector<uint32_t> v);
    /// Reduce v against the basis; zero result means v is in the span.
    std::vector<uint32_t> reduce(std::vector<uint32_t> v) const;
    bool contains(const std::vector<uint32_t>& v) const;
    size_t size() const { return rows_.size(); }
    size_t dim() const { return dim_; }
    const std::vector<std::vector<uint32_t>>& rows() const { return rows_; }

private:
    int p_;
    size_t dim_;
    std::vector<std::vector<uint32_t>> rows_;
    std::vector<size_t> piv_;
};

}  // namespace fcq

#endif
