#pragma once

#include "gysin/exactq.hpp"

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

namespace gysin {

// Hypersurface labels 1..l are bits 0..l-1 of a Mask.
using Mask = std::uint32_t;

constexpr int kMaxLabels = 20;

inline int popcount(Mask m) { return __builtin_popcount(m); }
std::vector<int> mask_bits(Mask m);
Mask bits_mask(const std::vector<int>& bits);

struct RankInfo {
    int codim = 0;
    bool nonempty = true;
};

// Ground set with a rank oracle. codim(I) is the codimension of the
// stratum cut out by the members of I; nonempty=false marks an empty
// intersection (only possible for hypersurface arrangements).
struct Arrangement {
    int size = 0;
    std::function<RankInfo(Mask)> rank_oracle;

    RankInfo info(Mask m) const { return rank_oracle(m); }
    int codim(Mask m) const { return rank_oracle(m).codim; }
    bool nonempty(Mask m) const { return rank_oracle(m).nonempty; }
};

// Central arrangement from nonzero, pairwise non-proportional covectors.
Arrangement from_vectors(int n, const std::vector<std::vector<Rational>>& normals);

bool is_independent(const Arrangement& arr, Mask I);

// All i with codim(I|{i}) == codim(I) and nonempty; only valid for
// nonempty I-strata.
Mask closure(const Arrangement& arr, Mask I);

// Minimal dependent subsets with nonempty strata, in lexicographic order
// of their sorted element lists.
std::vector<Mask> circuits(const Arrangement& arr);

struct Flat {
    Mask members = 0;
    int codim = 0;
};

struct FlatPoset {
    std::vector<Flat> flats;  // sorted by (codim, members)
    std::unordered_map<Mask, int> index_of;
    std::vector<std::vector<int>> by_codim;
    int max_codim = 0;

    int find(Mask members) const;
    // true if stratum(a) contains stratum(b), i.e. members(a) subset of members(b)
    bool stratum_contains(int a, int b) const {
        return (flats[a].members & ~flats[b].members) == 0;
    }
};

FlatPoset flats(const Arrangement& arr);

// Shuffle sign: x_{I u J} = sgn(I,J) x_I ^ x_J for disjoint I, J.
int sgn(Mask I, Mask J);

// Independent sets with the given closure containing no broken circuit,
// lexicographic. Pass the precomputed circuits of arr.
std::vector<Mask> nbc_sets(const Arrangement& arr, const std::vector<Mask>& circs, Mask flat_members,
                           int flat_codim);

}  // namespace gysin
