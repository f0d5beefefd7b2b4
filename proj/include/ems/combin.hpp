#pragma once

#include <functional>
#include <vector>

#include "ems/rational.hpp"

namespace ems {

inline Int binom(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Calls f on every k-subset of {0..n-1}, lexicographically.
template <typename F>
void for_each_combination(size_t n, size_t k, F&& f) {
    if (k > n) return;
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        f(idx);
        size_t i = k;
        while (i-- > 0) {
            if (idx[i] + (k - i) < n) {
                ++idx[i];
                for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
        if (k == 0) return;
    }
}

}  // namespace ems
