#include "crysta/smith.hpp"

#include <algorithm>
#include <cstdlib>

namespace crysta {

namespace {

[[noreturn]] void overflow() {
    throw GemError(ErrorCode::overflow_guard, "integer overflow during matrix reduction");
}

int64_t checked_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) overflow();
    return r;
}

int64_t checked_sub(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) overflow();
    return r;
}

void row_axpy(IntMatrix& m, int dst, int src, int64_t q, int from_col) {
    if (q == 0) return;
    for (int c = from_col; c < m.cols(); ++c)
        m.at(dst, c) = checked_sub(m.at(dst, c), checked_mul(q, m.at(src, c)));
}

void col_axpy(IntMatrix& m, int dst, int src, int64_t q, int from_row) {
    if (q == 0) return;
    for (int r = from_row; r < m.rows(); ++r)
        m.at(r, dst) = checked_sub(m.at(r, dst), checked_mul(q, m.at(r, src)));
}

}  // namespace

SmithResult smith_normal_form(IntMatrix m) {
    SmithResult out;
    const int nr = m.rows(), nc = m.cols();
    int t = 0;
    while (t < nr && t < nc) {
        // Pivot: minimal nonzero absolute value in the trailing submatrix.
        int pr = -1, pc = -1;
        int64_t pv = 0;
        for (int r = t; r < nr; ++r)
            for (int c = t; c < nc; ++c) {
                int64_t v = m.at(r, c);
                if (v != 0 && (pr < 0 || std::abs(v) < std::abs(pv))) {
                    pr = r;
                    pc = c;
                    pv = v;
                }
            }
        if (pr < 0) break;
        if (pr != t)
            for (int c = t; c < nc; ++c) std::swap(m.at(pr, c), m.at(t, c));
        if (pc != t)
            for (int r = t; r < nr; ++r) std::swap(m.at(r, pc), m.at(r, t));

        bool clean = true;
        for (int r = t + 1; r < nr; ++r) {
            int64_t q = m.at(r, t) / m.at(t, t);
            row_axpy(m, r, t, q, t);
            if (m.at(r, t) != 0) clean = false;
        }
        for (int c = t + 1; c < nc; ++c) {
            int64_t q = m.at(t, c) / m.at(t, t);
            col_axpy(m, c, t, q, t);
            if (m.at(t, c) != 0) clean = false;
        }
        if (!clean) continue;  // remainders left; pick a smaller pivot next round

        // Divisibility: the pivot must divide the whole trailing submatrix.
        bool divides = true;
        for (int r = t + 1; r < nr && divides; ++r)
            for (int c = t + 1; c < nc; ++c)
                if (m.at(r, c) % m.at(t, t) != 0) {
                    row_axpy(m, t, r, -1, t);  // pull the offending row up and redo
                    divides = false;
                    break;
                }
        if (!divides) continue;
        ++t;
    }
    out.rank = t;
    for (int i = 0; i < t; ++i) out.divisors.push_back(std::abs(m.at(i, i)));
    return out;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            int64_t v = a.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < b.cols(); ++j) {
                int64_t delta = checked_mul(v, b.at(k, j));
                int64_t sum;
                if (__builtin_add_overflow(r.at(i, j), delta, &sum))
                    throw GemError(ErrorCode::overflow_guard, "integer overflow in matrix product");
                r.at(i, j) = sum;
            }
        }
    return r;
}

}  // namespace crysta
