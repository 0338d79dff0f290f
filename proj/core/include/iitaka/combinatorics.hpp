#pragma once

#include <stdexcept>
#include <vector>

#include "iitaka/rational.hpp"

namespace iitaka {

inline long binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer acc(1);
    for (long i = 0; i < k; ++i) {
        acc *= n - i;
        acc /= i + 1;
    }
    if (!acc.fits_slong_p()) throw std::overflow_error("binomial: result exceeds long");
    return acc.get_si();
}

/// All exponent vectors (a_1..a_r) with a_i >= 0 and sum = m, in lexicographic
/// descending order: (m,0,..), (m-1,1,0,..), ..., (0,..,0,m).
inline std::vector<std::vector<int>> exponent_multisets(int r, int m) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(r), 0);
    // recursive enumeration, largest first in each slot
    auto rec = [&](auto&& self, int slot, int remaining) -> void {
        if (slot == r - 1) {
            cur[static_cast<std::size_t>(slot)] = remaining;
            out.push_back(cur);
            return;
        }
        for (int a = remaining; a >= 0; --a) {
            cur[static_cast<std::size_t>(slot)] = a;
            self(self, slot + 1, remaining - a);
        }
    };
    if (r >= 1) rec(rec, 0, m);
    return out;
}

}  // namespace iitaka
