#pragma once

#include <cstdint>
#include <vector>

#include "crysta/errors.hpp"

namespace crysta {

class IntMatrix {
public:
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0) {}
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int64_t& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
    int64_t at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

private:
    int rows_, cols_;
    std::vector<int64_t> a_;
};

struct SmithResult {
    int rank = 0;
    std::vector<int64_t> divisors;  // positive, d1 | d2 | ... | d_rank
};

/// Exact integer Smith normal form by elimination with minimal-|pivot|
/// selection. Throws overflow_guard when an intermediate value would leave
/// the int64 range (detected, never wrapped).
SmithResult smith_normal_form(IntMatrix m);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

}  // namespace crysta
