#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace sdc {

using Vertex = int;

/// A simplex given by its strictly increasing vertex list. The empty list is
/// the empty face.
using Face = std::vector<Vertex>;

/// Sorts and deduplicates a vertex list into a Face.
inline Face make_face(std::vector<Vertex> vs)
{
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

inline Face make_face(std::initializer_list<Vertex> vs)
{
    return make_face(std::vector<Vertex>(vs));
}

inline int face_dim(const Face& f)
{
    return static_cast<int>(f.size()) - 1;
}

/// a ⊆ b for sorted faces.
inline bool is_subface(const Face& a, const Face& b)
{
    return a.size() <= b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool contains_vertex(const Face& f, Vertex v)
{
    return std::binary_search(f.begin(), f.end(), v);
}

inline bool disjoint(const Face& a, const Face& b)
{
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j)
            return false;
        if (*i < *j)
            ++i;
        else
            ++j;
    }
    return true;
}

inline Face face_union(const Face& a, const Face& b)
{
    Face out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Face face_difference(const Face& a, const Face& b)
{
    Face out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Face face_intersection(const Face& a, const Face& b)
{
    Face out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Face with_vertex(const Face& f, Vertex v)
{
    Face out = f;
    out.insert(std::upper_bound(out.begin(), out.end(), v), v);
    return out;
}

inline Face without_vertex(const Face& f, Vertex v)
{
    Face out;
    out.reserve(f.size());
    for (Vertex w : f)
        if (w != v)
            out.push_back(w);
    return out;
}

/// Order used for canonical storage: by dimension, then lexicographic.
struct DimLexLess {
    bool operator()(const Face& a, const Face& b) const
    {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    }
};

struct FaceHash {
    std::size_t operator()(const Face& f) const noexcept
    {
        std::uint64_t h = 1469598103934665603ULL;
        for (Vertex v : f) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) + 0x9e3779b97f4a7c15ULL;
            h *= 1099511628211ULL;
        }
        h ^= f.size();
        return static_cast<std::size_t>(h);
    }
};

using FaceSet = std::unordered_set<Face, FaceHash>;
template <typename T>
using FaceMap = std::unordered_map<Face, T, FaceHash>;

/// Calls fn on every nonempty subset of f (including f itself).
template <typename Fn>
void for_each_nonempty_subface(const Face& f, Fn&& fn)
{
    const std::size_t n = f.size();
    if (n >= 31)
        return;
    Face buf;
    buf.reserve(n);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        buf.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i))
                buf.push_back(f[i]);
        fn(buf);
    }
}

std::string to_string(const Face& f);

} // namespace sdc
