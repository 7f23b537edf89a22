#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>

#include "vertex_set.hpp"

namespace tetraham {

using Rank = std::uint64_t;

namespace detail {

inline constexpr int kMaxChoose = 5;

struct BinomialTable {
    std::array<std::array<Rank, kMaxChoose + 1>, kMaxVertices + 2> c{};
    constexpr BinomialTable()
    {
        for (int n = 0; n < kMaxVertices + 2; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= kMaxChoose; ++k)
                c[n][k] = n == 0 ? 0 : c[n - 1][k - 1] + c[n - 1][k];
        }
    }
};

inline constexpr BinomialTable kBinomials{};

}  // namespace detail

/// C(n, k) for 0 <= n <= kMaxVertices + 1 and 0 <= k <= 5.
constexpr Rank binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    return detail::kBinomials.c[n][k];
}

template <int K>
using Subset = std::array<int, K>;

template <int K>
constexpr Subset<K> sorted(Subset<K> s)
{
    std::sort(s.begin(), s.end());
    return s;
}

/// Colexicographic rank of a strictly increasing K-subset.
template <int K>
constexpr Rank colex_rank(const Subset<K>& s)
{
    Rank r = 0;
    for (int i = 0; i < K; ++i)
        r += binomial(s[i], i + 1);
    return r;
}

/// Inverse of colex_rank: the K-subset with the given rank (any n large enough).
template <int K>
constexpr Subset<K> colex_unrank(Rank r)
{
    Subset<K> s{};
    for (int i = K; i >= 1; --i) {
        // largest v with C(v, i) <= r
        int lo = i - 1, hi = kMaxVertices;
        while (lo < hi) {
            int mid = (lo + hi + 1) / 2;
            if (binomial(mid, i) <= r)
                lo = mid;
            else
                hi = mid - 1;
        }
        s[i - 1] = lo;
        r -= binomial(lo, i);
    }
    return s;
}

/// True when the entries are pairwise distinct.
template <int K>
constexpr bool all_distinct(const Subset<K>& s)
{
    for (int i = 0; i < K; ++i)
        for (int j = i + 1; j < K; ++j)
            if (s[i] == s[j])
                return false;
    return true;
}

/// The K-1 subsets obtained by dropping one entry (in input order).
template <int K>
constexpr std::array<Subset<K - 1>, K> faces(const Subset<K>& s)
{
    std::array<Subset<K - 1>, K> out{};
    for (int drop = 0; drop < K; ++drop) {
        int j = 0;
        for (int i = 0; i < K; ++i)
            if (i != drop)
                out[drop][j++] = s[i];
    }
    return out;
}

}  // namespace tetraham
