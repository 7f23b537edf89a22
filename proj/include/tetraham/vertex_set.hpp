#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace tetraham {

/// Largest vertex count any structure in the library accepts.
inline constexpr int kMaxVertices = 256;

inline void check_vertex_count(int n)
{
    if (n < 0)
        throw std::invalid_argument("vertex count must be non-negative");
    if (n > kMaxVertices)
        throw std::length_error("vertex count " + std::to_string(n) +
                                " exceeds the supported maximum of " +
                                std::to_string(kMaxVertices));
}

/// Word-packed subset of {0, ..., kMaxVertices - 1}.
class VertexSet {
public:
    static constexpr int kWords = kMaxVertices / 64;

    constexpr VertexSet() = default;

    VertexSet(std::initializer_list<int> vs)
    {
        for (int v : vs)
            insert(v);
    }

    static VertexSet range(int n)
    {
        check_vertex_count(n);
        VertexSet s;
        for (int w = 0; w < kWords; ++w) {
            int lo = w * 64;
            if (n >= lo + 64)
                s.words_[w] = ~std::uint64_t{0};
            else if (n > lo)
                s.words_[w] = (std::uint64_t{1} << (n - lo)) - 1;
        }
        return s;
    }

    /// Vertices strictly greater than v, within [0, n).
    static VertexSet above(int v, int n)
    {
        VertexSet s = range(n);
        for (int u = 0; u <= v && u < n; ++u)
            s.erase(u);
        return s;
    }

    template <typename Range>
    static VertexSet of(const Range& r)
    {
        VertexSet s;
        for (int v : r)
            s.insert(v);
        return s;
    }

    void insert(int v) { words_[index(v)] |= bit(v); }
    void erase(int v) { words_[index(v)] &= ~bit(v); }
    bool contains(int v) const
    {
        return v >= 0 && v < kMaxVertices && (words_[v >> 6] & bit(v)) != 0;
    }

    int size() const
    {
        int c = 0;
        for (auto w : words_)
            c += std::popcount(w);
        return c;
    }

    bool empty() const
    {
        for (auto w : words_)
            if (w)
                return false;
        return true;
    }

    /// Smallest member, or -1 when empty.
    int first() const
    {
        for (int w = 0; w < kWords; ++w)
            if (words_[w])
                return w * 64 + std::countr_zero(words_[w]);
        return -1;
    }

    /// Smallest member strictly greater than v, or -1.
    int next(int v) const
    {
        int start = v + 1;
        if (start >= kMaxVertices)
            return -1;
        int w = start >> 6;
        std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (start & 63));
        while (true) {
            if (cur)
                return w * 64 + std::countr_zero(cur);
            if (++w == kWords)
                return -1;
            cur = words_[w];
        }
    }

    /// Largest member, or -1.
    int last() const
    {
        for (int w = kWords - 1; w >= 0; --w)
            if (words_[w])
                return w * 64 + 63 - std::countl_zero(words_[w]);
        return -1;
    }

    /// The k-th smallest member (0-based); requires k < size().
    int nth(int k) const
    {
        for (int w = 0; w < kWords; ++w) {
            int c = std::popcount(words_[w]);
            if (k < c) {
                std::uint64_t x = words_[w];
                for (int i = 0; i < k; ++i)
                    x &= x - 1;
                return w * 64 + std::countr_zero(x);
            }
            k -= c;
        }
        throw std::out_of_range("VertexSet::nth index out of range");
    }

    bool intersects(const VertexSet& o) const
    {
        for (int w = 0; w < kWords; ++w)
            if (words_[w] & o.words_[w])
                return true;
        return false;
    }

    bool is_subset_of(const VertexSet& o) const
    {
        for (int w = 0; w < kWords; ++w)
            if (words_[w] & ~o.words_[w])
                return false;
        return true;
    }

    VertexSet& operator&=(const VertexSet& o)
    {
        for (int w = 0; w < kWords; ++w)
            words_[w] &= o.words_[w];
        return *this;
    }
    VertexSet& operator|=(const VertexSet& o)
    {
        for (int w = 0; w < kWords; ++w)
            words_[w] |= o.words_[w];
        return *this;
    }
    VertexSet& operator-=(const VertexSet& o)
    {
        for (int w = 0; w < kWords; ++w)
            words_[w] &= ~o.words_[w];
        return *this;
    }

    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
    friend bool operator==(const VertexSet&, const VertexSet&) = default;

    template <typename F>
    void for_each(F&& f) const
    {
        for (int w = 0; w < kWords; ++w) {
            std::uint64_t x = words_[w];
            while (x) {
                f(w * 64 + std::countr_zero(x));
                x &= x - 1;
            }
        }
    }

    std::vector<int> to_vector() const
    {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for_each([&](int v) { out.push_back(v); });
        return out;
    }

    class iterator {
    public:
        using value_type = int;
        using difference_type = std::ptrdiff_t;
        iterator() = default;
        iterator(const VertexSet* s, int v) : set_(s), v_(v) {}
        int operator*() const { return v_; }
        iterator& operator++()
        {
            v_ = set_->next(v_);
            return *this;
        }
        iterator operator++(int)
        {
            auto t = *this;
            ++*this;
            return t;
        }
        bool operator==(const iterator& o) const { return v_ == o.v_; }

    private:
        const VertexSet* set_ = nullptr;
        int v_ = -1;
    };

    iterator begin() const { return {this, first()}; }
    iterator end() const { return {this, -1}; }

private:
    static int index(int v)
    {
        if (v < 0 || v >= kMaxVertices)
            throw std::out_of_range("vertex " + std::to_string(v) + " outside supported range");
        return v >> 6;
    }
    static std::uint64_t bit(int v) { return std::uint64_t{1} << (v & 63); }

    std::array<std::uint64_t, kWords> words_{};
};

}  // namespace tetraham
