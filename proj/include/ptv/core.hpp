#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ptv {

using Label = std::int64_t;

enum class ErrorCode {
    TripleOvershared,
    BadTuple,
    SlotReused,
    SelfGluedFace,
    BadPermutation,
    BadGluing,
    InvalidId,
    ComplexNotClosed,
    InconsistentSkeleton,
    NotFourValent,
    LinkNotSphere,
    BoundaryFace,
    SameTetrahedron,
    EdgeDegreeNot3,
    SingularEdge,
    RepeatedTetrahedron,
    NoLegalMove,
    ColorOutOfRange,
    InvalidRoot,
    NotClosed,
    Overflow,
    NotBoundary,
    PartitionInvalid,
    NotClosedSurfaceComplex,
    NotTorusBoundary,
    GridIncompatible,
    UnknownExample,
    Format,
};

constexpr std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::TripleOvershared: return "TripleOvershared";
    case ErrorCode::BadTuple: return "BadTuple";
    case ErrorCode::SlotReused: return "SlotReused";
    case ErrorCode::SelfGluedFace: return "SelfGluedFace";
    case ErrorCode::BadPermutation: return "BadPermutation";
    case ErrorCode::BadGluing: return "BadGluing";
    case ErrorCode::InvalidId: return "InvalidId";
    case ErrorCode::ComplexNotClosed: return "ComplexNotClosed";
    case ErrorCode::InconsistentSkeleton: return "InconsistentSkeleton";
    case ErrorCode::NotFourValent: return "NotFourValent";
    case ErrorCode::LinkNotSphere: return "LinkNotSphere";
    case ErrorCode::BoundaryFace: return "BoundaryFace";
    case ErrorCode::SameTetrahedron: return "SameTetrahedron";
    case ErrorCode::EdgeDegreeNot3: return "EdgeDegreeNot3";
    case ErrorCode::SingularEdge: return "SingularEdge";
    case ErrorCode::RepeatedTetrahedron: return "RepeatedTetrahedron";
    case ErrorCode::NoLegalMove: return "NoLegalMove";
    case ErrorCode::ColorOutOfRange: return "ColorOutOfRange";
    case ErrorCode::InvalidRoot: return "InvalidRoot";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NotBoundary: return "NotBoundary";
    case ErrorCode::PartitionInvalid: return "PartitionInvalid";
    case ErrorCode::NotClosedSurfaceComplex: return "NotClosedSurfaceComplex";
    case ErrorCode::NotTorusBoundary: return "NotTorusBoundary";
    case ErrorCode::GridIncompatible: return "GridIncompatible";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::Format: return "Format";
    }
    return "Unknown";
}

/// Domain error carrying a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Permutation of the four vertex slots of a tetrahedron.
struct Perm4 {
    std::array<std::uint8_t, 4> image{0, 1, 2, 3};

    constexpr Perm4() = default;
    constexpr Perm4(int a, int b, int c, int d)
        : image{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)}
    {
    }

    constexpr int operator[](int i) const { return image[static_cast<std::size_t>(i)]; }

    constexpr Perm4 inverse() const
    {
        Perm4 out;
        for (int i = 0; i < 4; ++i) {
            out.image[image[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
        }
        return out;
    }

    /// (this ∘ other)[i] = this[other[i]]
    constexpr Perm4 operator*(const Perm4& other) const
    {
        Perm4 out;
        for (int i = 0; i < 4; ++i) {
            out.image[static_cast<std::size_t>(i)] = image[other.image[static_cast<std::size_t>(i)]];
        }
        return out;
    }

    constexpr bool is_valid() const
    {
        unsigned seen = 0;
        for (auto v : image) {
            if (v > 3) return false;
            seen |= 1u << v;
        }
        return seen == 0xF;
    }

    constexpr bool operator==(const Perm4&) const = default;

    /// Index in 0..23 under lexicographic order of images.
    constexpr int index() const
    {
        int idx = 0;
        for (int i = 0; i < 4; ++i) {
            int smaller = 0;
            for (int j = i + 1; j < 4; ++j) {
                if (image[static_cast<std::size_t>(j)] < image[static_cast<std::size_t>(i)]) ++smaller;
            }
            constexpr std::array<int, 4> fact{6, 2, 1, 1};
            idx += smaller * fact[static_cast<std::size_t>(i)];
        }
        return idx;
    }

    static constexpr Perm4 from_index(int idx)
    {
        std::array<int, 4> pool{0, 1, 2, 3};
        int size = 4;
        Perm4 out;
        constexpr std::array<int, 4> fact{6, 2, 1, 1};
        for (int i = 0; i < 4; ++i) {
            int q = idx / fact[static_cast<std::size_t>(i)];
            idx %= fact[static_cast<std::size_t>(i)];
            out.image[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(pool[static_cast<std::size_t>(q)]);
            for (int j = q; j + 1 < size; ++j) pool[static_cast<std::size_t>(j)] = pool[static_cast<std::size_t>(j + 1)];
            --size;
        }
        return out;
    }
};

// Edge slot e of a tetrahedron joins vertex slots kEdgeVertices[e][0] < kEdgeVertices[e][1].
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr int edge_index(int a, int b)
{
    if (a > b) {
        int tmp = a;
        a = b;
        b = tmp;
    }
    constexpr std::array<std::array<int, 4>, 4> table{{{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}}};
    return table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

/// Vertex slots of face f (the face opposite slot f), ascending.
constexpr std::array<int, 3> face_vertices(int f)
{
    std::array<int, 3> out{};
    int k = 0;
    for (int v = 0; v < 4; ++v) {
        if (v != f) out[static_cast<std::size_t>(k++)] = v;
    }
    return out;
}

/// Position of slot v within face_vertices(f).
constexpr int face_position(int f, int v) { return v < f ? v : v - 1; }

/// The two vertex slots not on edge e, ascending.
constexpr std::array<int, 2> edge_complement(int e)
{
    std::array<int, 2> out{};
    int k = 0;
    for (int v = 0; v < 4; ++v) {
        if (v != kEdgeVertices[static_cast<std::size_t>(e)][0] && v != kEdgeVertices[static_cast<std::size_t>(e)][1]) {
            out[static_cast<std::size_t>(k++)] = v;
        }
    }
    return out;
}

} // namespace ptv
