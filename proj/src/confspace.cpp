#include "gysin/confspace.hpp"

#include <algorithm>

namespace gysin {

int BlochModel::dim_degree(int n) const {
    auto it = basis_by_degree.find(n);
    return it == basis_by_degree.end() ? 0 : static_cast<int>(it->second.size());
}

SparseVec BlochModel::split_pullback(int flat, int cls) const {
    const CohomologyRing& amb = ambient_ring();
    const CohomologyRing& rs = model->geom.ring[flat];
    auto blocks = graph_blocks(graph.vertices, graph.edges, model->os.poset.flats[flat].members);
    auto word = rs.decompose(cls);
    SparseVec acc = {{amb.unit(), Rational(1)}};
    for (size_t b = 0; b < word.size(); ++b) {
        SparseVec placed = {{amb.embed(blocks[b][0], word[b]), Rational(1)}};
        acc = amb.cup(acc, placed);
        if (acc.empty()) break;
    }
    return acc;
}

BlochElement BlochModel::unit() const { return model->unit(); }

BlochElement BlochModel::ambient_class(int cls) const {
    BlochElement e;
    e.add(ambient_flat, cls, 0, Rational(1));
    return e;
}

BlochElement BlochModel::edge_class(int edge) const {
    Mask m = Mask(1) << edge;
    int f = model->os.flat_of_independent(m);
    BlochElement e;
    e.add(f, model->geom.ring[f].unit(), model->os.nbc_index[f].at(m), Rational(1));
    return e;
}

BlochModel build_bloch_model(int genus, const Graph& graph, long long cap) {
    BlochModel bm;
    bm.genus = genus;
    bm.graph = graph;
    GeometricArrangement geo = curve_power_geometry(genus, graph);
    bm.model = std::make_shared<GysinModel>(build_model(geo, cap));
    bm.ambient_flat = bm.model->os.poset.find(closure(bm.model->os.arr, 0));
    for (const auto& [qn, level] : bm.model->levels) {
        auto& v = bm.basis_by_degree[qn.second];
        v.insert(v.end(), level.gens.begin(), level.gens.end());
    }
    return bm;
}

namespace {

// Push an ambient class u onto the stratum of the independent edge set K
// and emit coeff * f_K^*(restriction of u) G_{K'} over the nbc rewrite of
// K; the Kunneth-lemma reduction in matrix form.
void push_term(const BlochModel& bm, const SparseVec& u, Mask K, const Rational& coeff,
               BlochElement& out) {
    if (coeff == 0 || u.empty()) return;
    const GysinModel& m = *bm.model;
    int ft = m.os.flat_of_independent(K);
    SparseVec rest = m.geom.restrict_class(bm.ambient_flat, ft, u);
    if (rest.empty()) return;
    const SparseVec& osred = m.os.reduce_monomial(ft, K);
    for (const auto& [ot, oc] : osred)
        for (const auto& [ct, rc] : rest) out.add(ft, ct, ot, Rational(coeff * oc * rc));
}

}  // namespace

BlochElement bloch_product(const BlochModel& bm, const BlochElement& a, const BlochElement& b) {
    BlochElement out;
    const GysinModel& m = *bm.model;
    const CohomologyRing& amb = bm.ambient_ring();
    for (const auto& [ka, ca] : a.terms) {
        auto [fa, clsa, oa] = ka;
        Mask I = m.os.nbc[fa][oa];
        SparseVec ua = bm.split_pullback(fa, clsa);
        for (const auto& [kb, cb] : b.terms) {
            auto [fb, clsb, ob] = kb;
            Mask J = m.os.nbc[fb][ob];
            if (I & J) continue;
            Mask K = I | J;
            if (m.os.arr.codim(K) != popcount(K)) continue;  // contains a loop
            // move f_J^*(c') across G_I
            int kdeg = m.geom.ring[fb].deg(clsb);
            int sign = ((popcount(I) * kdeg) % 2 == 0) ? 1 : -1;
            SparseVec ub = bm.split_pullback(fb, clsb);
            SparseVec u = amb.cup(ua, ub);
            push_term(bm, u, K, Rational(ca * cb * sign * sgn(I, J)), out);
        }
    }
    return out;
}

BlochElement bloch_differential(const BlochModel& bm, const BlochElement& x) {
    BlochElement out;
    const GysinModel& m = *bm.model;
    const CohomologyRing& amb = bm.ambient_ring();
    for (const auto& [k, c] : x.terms) {
        auto [f, cls, o] = k;
        Mask I = m.os.nbc[f][o];
        int kdeg = m.geom.ring[f].deg(cls);
        int sign0 = (kdeg % 2 == 0) ? 1 : -1;
        SparseVec u = bm.split_pullback(f, cls);
        for (int e : mask_bits(I)) {
            auto [va, vb] = bm.graph.edges[e];
            SparseVec diag =
                diagonal_class(amb, std::min(va, vb), std::max(va, vb), bm.genus);
            SparseVec ue = amb.cup(u, diag);
            Mask I0 = I & ~(Mask(1) << e);
            push_term(bm, ue, I0, Rational(c * sign0 * sgn(Mask(1) << e, I0)), out);
        }
    }
    return out;
}

ModelElement alpha(const BlochModel& bm, const BlochElement& x) {
    const GysinModel& m = *bm.model;
    ModelElement out;
    for (const auto& [k, c] : x.terms) {
        auto [f, cls, o] = k;
        Mask I = m.os.nbc[f][o];
        // algebra map: image of f_I^*(c), then the G_e generators in order
        ModelElement acc;
        for (const auto& [acls, ac] : bm.split_pullback(f, cls))
            acc.add(bm.ambient_flat, acls, 0, ac);
        for (int e : mask_bits(I)) acc = model_product(m, acc, bm.edge_class(e));
        out = out.plus(acc.scaled(c));
    }
    return out;
}

BlochElement beta(const BlochModel& bm, const ModelElement& y) {
    // The normal-form basis is indexed exactly like the model basis; the
    // pullback along f_I of a class on the stratum is the basis element
    // itself.
    (void)bm;
    return y;
}

Polynomial chromatic_polynomial(const Graph& graph) {
    graph.validate();
    if (graph.edges.empty()) {
        std::vector<long long> c(graph.vertices + 1, 0);
        c[graph.vertices] = 1;  // k^V
        return Polynomial(std::move(c));
    }
    // delete-contract on the first edge
    Graph del = graph;
    auto [a, b] = del.edges.front();
    del.edges.erase(del.edges.begin());

    Graph con;
    con.vertices = graph.vertices - 1;
    // relabel: merge b into a, shift vertices above b down
    auto relabel = [&](int v) {
        if (v == b) v = a;
        return v > b ? v - 1 : v;
    };
    for (size_t i = 1; i < graph.edges.size(); ++i) {
        int x = relabel(graph.edges[i].first), y = relabel(graph.edges[i].second);
        if (x == y) continue;
        auto e = std::minmax(x, y);
        if (std::find(con.edges.begin(), con.edges.end(), std::make_pair(e.first, e.second)) ==
            con.edges.end())
            con.edges.emplace_back(e.first, e.second);
    }
    return poly_sub(chromatic_polynomial(del), chromatic_polynomial(con));
}

}  // namespace gysin
