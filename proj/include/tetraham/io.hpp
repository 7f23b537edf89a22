#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hypergraph.hpp"

namespace tetraham {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {}
    int line() const { return line_; }

private:
    int line_;
};

// Text format:
//   k n m
//   a b c        (m lines, strictly increasing, one edge per line)
// '#' starts a comment that runs to the end of the line.

template <int K>
void write_text(std::ostream& os, const UniformGraph<K>& g)
{
    os << K << ' ' << g.n() << ' ' << g.edge_count() << '\n';
    g.for_each_edge([&](const Subset<K>& e) {
        for (int i = 0; i < K; ++i)
            os << (i ? " " : "") << e[i];
        os << '\n';
    });
}

template <int K>
std::string to_text(const UniformGraph<K>& g)
{
    std::ostringstream os;
    write_text(os, g);
    return os.str();
}

namespace detail {

/// Next non-blank line with comments stripped; false at end of input.
inline bool next_content_line(std::istream& is, std::string& out, int& line_no)
{
    std::string raw;
    while (std::getline(is, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        if (raw.find_first_not_of(" \t\r") != std::string::npos) {
            out = raw;
            return true;
        }
    }
    return false;
}

}  // namespace detail

/// Reads the uniformity from the header without consuming the stream.
inline int peek_arity(const std::string& text)
{
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    if (!detail::next_content_line(is, line, line_no))
        throw ParseError(line_no, "missing header line");
    std::istringstream ls(line);
    int k = 0;
    if (!(ls >> k))
        throw ParseError(line_no, "header must start with the uniformity");
    return k;
}

template <int K>
UniformGraph<K> read_text(std::istream& is)
{
    std::string line;
    int line_no = 0;
    if (!detail::next_content_line(is, line, line_no))
        throw ParseError(line_no, "missing header line");
    std::istringstream hs(line);
    long long k = 0, n = 0, m = 0;
    std::string extra;
    if (!(hs >> k >> n >> m) || (hs >> extra))
        throw ParseError(line_no, "header must be \"k n m\"");
    if (k != K)
        throw ParseError(line_no, "expected uniformity " + std::to_string(K) + ", found " +
                                      std::to_string(k));
    if (n < 0 || m < 0)
        throw ParseError(line_no, "negative count in header");
    if (n > kMaxVertices)
        throw ParseError(line_no, "vertex count " + std::to_string(n) +
                                      " exceeds the supported maximum of " +
                                      std::to_string(kMaxVertices));
    UniformGraph<K> g(static_cast<int>(n));
    for (long long i = 0; i < m; ++i) {
        if (!detail::next_content_line(is, line, line_no))
            throw ParseError(line_no, "expected " + std::to_string(m) + " edges, found " +
                                          std::to_string(i));
        std::istringstream es(line);
        Subset<K> e{};
        for (int j = 0; j < K; ++j) {
            long long v = 0;
            if (!(es >> v))
                throw ParseError(line_no, "edge line needs " + std::to_string(K) + " vertices");
            if (v < 0 || v >= n)
                throw ParseError(line_no, "vertex " + std::to_string(v) + " out of range");
            e[j] = static_cast<int>(v);
        }
        if (es >> extra)
            throw ParseError(line_no, "trailing data on edge line");
        for (int j = 0; j + 1 < K; ++j)
            if (e[j] >= e[j + 1])
                throw ParseError(line_no, "edge vertices must be strictly increasing");
        if (!g.add_edge(e))
            throw ParseError(line_no, "duplicate edge");
    }
    if (detail::next_content_line(is, line, line_no))
        throw ParseError(line_no, "more edge lines than the header announces");
    return g;
}

template <int K>
UniformGraph<K> from_text(const std::string& text)
{
    std::istringstream is(text);
    return read_text<K>(is);
}

template <int K>
UniformGraph<K> load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return read_text<K>(in);
}

template <int K>
void save(const std::string& path, const UniformGraph<K>& g)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    write_text(out, g);
}

}  // namespace tetraham
