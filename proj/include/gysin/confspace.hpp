#pragma once

#include "gysin/model.hpp"
#include "gysin/polynomial.hpp"

#include <memory>

namespace gysin {

// Element of N(Y, Gamma) in normal form: a combination of classes
// f_I^*(c) G_I indexed like the Gysin model basis (flat of I, class c on
// the stratum, nbc index of I).
using BlochElement = ModelElement;

// The dga generated by H(Y^V) and degree-1 classes G_e with dG_e the
// diagonal class, reduced to the normal-form basis. Products and the
// differential are computed through the ambient ring of Y^V and pushed
// onto stratum splittings, independently of the Gysin model's
// restrict-then-cup route.
struct BlochModel {
    int genus = 0;
    Graph graph;
    std::shared_ptr<const GysinModel> model;  // same basis, same geometry
    int ambient_flat = 0;
    std::map<int, std::vector<ModelGen>> basis_by_degree;

    const CohomologyRing& ambient_ring() const { return model->geom.ring[ambient_flat]; }
    int dim_degree(int n) const;

    // f_I^* pullback of a stratum class to the ambient ring: each block
    // class lands at the slot of the block's least vertex.
    SparseVec split_pullback(int flat, int cls) const;

    BlochElement unit() const;
    BlochElement ambient_class(int cls) const;  // classes of H(Y^V)
    BlochElement edge_class(int edge) const;    // G_e
};

BlochModel build_bloch_model(int genus, const Graph& graph, long long cap = 200000);

BlochElement bloch_product(const BlochModel& bm, const BlochElement& a, const BlochElement& b);
BlochElement bloch_differential(const BlochModel& bm, const BlochElement& x);

// The dga morphism N -> M with G_e the generator of H^0(Delta_e) and
// H(Y^V) included in weight-equals-degree bidegrees; computed by genuine
// model products.
ModelElement alpha(const BlochModel& bm, const BlochElement& x);
// Pullback along the stratum splittings, normal form; inverse of alpha.
BlochElement beta(const BlochModel& bm, const ModelElement& y);

Polynomial chromatic_polynomial(const Graph& graph);

}  // namespace gysin
