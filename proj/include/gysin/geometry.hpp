#pragma once

#include "gysin/exactq.hpp"
#include "gysin/matroid.hpp"
#include "gysin/oslib.hpp"

#include <map>
#include <string>
#include <vector>

namespace gysin {

// Explicit multiplication table of a small graded ring with a labeled basis.
struct SmallRing {
    std::vector<int> deg;
    std::vector<std::string> label;
    std::vector<std::vector<SparseVec>> mul;  // dim x dim
    int unit = 0;
    int point_class = 0;  // top-degree generator
    int cdim = 0;         // complex dimension (top degree = 2*cdim)

    int dim() const { return static_cast<int>(deg.size()); }
};

// Basis {1, a_1..a_g, b_1..b_g, pt} with a_i b_i = pt = -b_i a_i.
SmallRing curve_ring(int genus);
// Basis {1, h, ..., h^d} of projective d-space.
SmallRing projective_ring(int d);

// Cohomology ring of a stratum: a tensor power of a SmallRing with Koszul
// signs. Basis indices are mixed-radix words over the factor basis.
struct CohomologyRing {
    SmallRing factor;
    int nfactors = 1;

    int dim() const;
    int deg(int idx) const;
    std::string label(int idx) const;
    int unit() const { return 0; }  // factor unit must be index 0
    int point_class() const;
    int cdim() const { return factor.cdim * nfactors; }

    std::vector<int> decompose(int idx) const;
    int compose(const std::vector<int>& word) const;
    // Basis element with cls in the given slot and units elsewhere.
    int embed(int slot, int cls) const;

    SparseVec cup(int x, int y) const;
    SparseVec cup(const SparseVec& x, const SparseVec& y) const;
    std::vector<int> basis_of_degree(int k) const;
};

struct Graph {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;

    void validate() const;
};

// Connected blocks of (V, selected edges), each sorted, ordered by least
// vertex; singletons included.
std::vector<std::vector<int>> graph_blocks(int vertices,
                                           const std::vector<std::pair<int, int>>& edges,
                                           Mask used);

// A strata poset where each stratum carries a cohomology ring, restriction
// maps to deeper strata and codimension-1 Gysin maps, stored as sparse
// column families over the ring bases.
struct GeometricArrangement {
    Arrangement arr;
    FlatPoset poset;
    std::vector<CohomologyRing> ring;          // per flat
    std::vector<std::string> stratum_name;     // per flat
    int ambient_cdim = 0;

    // restriction(S,T): members(S) subset of members(T); H(S) -> H(T)
    std::map<std::pair<int, int>, std::vector<SparseVec>> restriction_cols;
    // gysin(S,T): members(T) subset of members(S), codim(S) = codim(T)+1;
    // H^k(S) -> H^{k+2}(T)
    std::map<std::pair<int, int>, std::vector<SparseVec>> gysin_cols;

    const std::vector<SparseVec>& restriction(int S, int T) const;
    const std::vector<SparseVec>& gysin(int S, int T) const;
    bool has_gysin(int S, int T) const { return gysin_cols.count({S, T}) > 0; }

    SparseVec restrict_class(int S, int T, const SparseVec& x) const;
};

// Configuration-space geometry: X = Y^V for a genus-g curve Y, one
// hypersurface per graph edge (the diagonal y_v = y_v'). diag_sign flips
// the symplectic part of the diagonal class; only tests use -1.
GeometricArrangement curve_power_geometry(int genus, const Graph& graph, int diag_sign = +1);

// The class [Delta] of the diagonal of Y x Y placed in two tensor slots.
SparseVec diagonal_class(const CohomologyRing& ring, int slot_a, int slot_b, int genus,
                         int diag_sign = +1);

GeometricArrangement projective_geometry(int n, const std::vector<std::vector<Rational>>& covectors);

// Hard-coded blow-up of the three-concurrent-lines surface pair: base
// geometry, blown-up geometry, and the data of the induced model map.
struct BlowupDemoData {
    GeometricArrangement base;   // P^2 with three lines through a point
    GeometricArrangement blown;  // exceptional E and three strict transforms
    IntMatrix mult;              // blown labels x base labels
    // (blown flat, base flat) pairs with pullback columns per base class
    struct Pairing {
        int target_flat;
        int source_flat;
        std::vector<SparseVec> pullback_cols;
    };
    std::vector<Pairing> pairings;
};

BlowupDemoData blown_up_surface_geometry();

}  // namespace gysin
