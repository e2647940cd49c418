#include "gysin/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace gysin {

SmallRing curve_ring(int genus) {
    SmallRing r;
    int g = genus;
    int d = 2 * g + 2;
    r.deg.assign(d, 1);
    r.label.assign(d, "");
    r.deg[0] = 0;
    r.deg[d - 1] = 2;
    r.label[0] = "1";
    r.label[d - 1] = "pt";
    for (int i = 0; i < g; ++i) {
        r.label[1 + i] = "a" + std::to_string(i + 1);
        r.label[1 + g + i] = "b" + std::to_string(i + 1);
    }
    r.unit = 0;
    r.point_class = d - 1;
    r.cdim = 1;
    r.mul.assign(d, std::vector<SparseVec>(d));
    for (int i = 0; i < d; ++i) {
        r.mul[0][i] = {{i, Rational(1)}};
        r.mul[i][0] = {{i, Rational(1)}};
    }
    r.mul[0][0] = {{0, Rational(1)}};
    for (int i = 0; i < g; ++i) {
        r.mul[1 + i][1 + g + i] = {{d - 1, Rational(1)}};   // a_i b_i = pt
        r.mul[1 + g + i][1 + i] = {{d - 1, Rational(-1)}};  // b_i a_i = -pt
    }
    return r;
}

SmallRing projective_ring(int d) {
    SmallRing r;
    r.deg.resize(d + 1);
    r.label.resize(d + 1);
    for (int i = 0; i <= d; ++i) {
        r.deg[i] = 2 * i;
        r.label[i] = i == 0 ? "1" : (i == 1 ? "h" : "h^" + std::to_string(i));
    }
    r.unit = 0;
    r.point_class = d;
    r.cdim = d;
    r.mul.assign(d + 1, std::vector<SparseVec>(d + 1));
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j)
            if (i + j <= d) r.mul[i][j] = {{i + j, Rational(1)}};
    return r;
}

int CohomologyRing::dim() const {
    int d = 1;
    for (int i = 0; i < nfactors; ++i) d *= factor.dim();
    return d;
}

std::vector<int> CohomologyRing::decompose(int idx) const {
    std::vector<int> w(nfactors);
    int fd = factor.dim();
    for (int i = nfactors - 1; i >= 0; --i) {
        w[i] = idx % fd;
        idx /= fd;
    }
    return w;
}

int CohomologyRing::compose(const std::vector<int>& word) const {
    int idx = 0;
    for (int i = 0; i < nfactors; ++i) idx = idx * factor.dim() + word[i];
    return idx;
}

int CohomologyRing::embed(int slot, int cls) const {
    std::vector<int> w(nfactors, factor.unit);
    w[slot] = cls;
    return compose(w);
}

int CohomologyRing::deg(int idx) const {
    int d = 0;
    for (int c : decompose(idx)) d += factor.deg[c];
    return d;
}

int CohomologyRing::point_class() const {
    std::vector<int> w(nfactors, factor.point_class);
    return compose(w);
}

std::string CohomologyRing::label(int idx) const {
    auto w = decompose(idx);
    std::string out;
    for (int i = 0; i < nfactors; ++i) {
        if (i) out += "*";
        out += factor.label[w[i]];
    }
    return out;
}

SparseVec CohomologyRing::cup(int x, int y) const {
    auto xs = decompose(x), ys = decompose(y);
    // Koszul sign: move each y_i past the x_j with j > i.
    long long sgnexp = 0;
    for (int i = 0; i < nfactors; ++i)
        for (int j = i + 1; j < nfactors; ++j)
            sgnexp += static_cast<long long>(factor.deg[ys[i]]) * factor.deg[xs[j]];
    Rational coeff((sgnexp % 2 == 0) ? 1 : -1);
    std::vector<std::pair<std::vector<int>, Rational>> partial = {{{}, coeff}};
    for (int i = 0; i < nfactors; ++i) {
        const SparseVec& p = factor.mul[xs[i]][ys[i]];
        if (p.empty()) return {};
        std::vector<std::pair<std::vector<int>, Rational>> next;
        for (auto& [word, c] : partial)
            for (const auto& [cls, pc] : p) {
                auto w2 = word;
                w2.push_back(cls);
                next.emplace_back(std::move(w2), Rational(c * pc));
            }
        partial = std::move(next);
    }
    SparseVec out;
    for (auto& [word, c] : partial) out.emplace_back(compose(word), c);
    return sv_normalize(std::move(out));
}

SparseVec CohomologyRing::cup(const SparseVec& x, const SparseVec& y) const {
    SparseVec out;
    for (const auto& [xi, xc] : x)
        for (const auto& [yi, yc] : y) {
            SparseVec p = cup(xi, yi);
            for (auto& [pi, pc] : p) out.emplace_back(pi, Rational(xc * yc * pc));
        }
    return sv_normalize(std::move(out));
}

std::vector<int> CohomologyRing::basis_of_degree(int k) const {
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i)
        if (deg(i) == k) out.push_back(i);
    return out;
}

void Graph::validate() const {
    std::vector<std::pair<int, int>> seen;
    for (auto [a, b] : edges) {
        if (a == b) throw std::runtime_error("graph has a self-loop");
        if (a < 0 || b < 0 || a >= vertices || b >= vertices)
            throw std::runtime_error("graph edge endpoint out of range");
        auto e = std::minmax(a, b);
        if (std::find(seen.begin(), seen.end(), std::make_pair(e.first, e.second)) != seen.end())
            throw std::runtime_error("graph has a multiple edge");
        seen.emplace_back(e.first, e.second);
    }
}

const std::vector<SparseVec>& GeometricArrangement::restriction(int S, int T) const {
    auto it = restriction_cols.find({S, T});
    if (it == restriction_cols.end()) throw std::logic_error("no restriction stored for flat pair");
    return it->second;
}

const std::vector<SparseVec>& GeometricArrangement::gysin(int S, int T) const {
    auto it = gysin_cols.find({S, T});
    if (it == gysin_cols.end()) throw std::logic_error("no gysin map stored for flat pair");
    return it->second;
}

SparseVec GeometricArrangement::restrict_class(int S, int T, const SparseVec& x) const {
    if (S == T) return x;
    const auto& cols = restriction(S, T);
    SparseVec out;
    for (const auto& [i, c] : x) out = sv_axpy(out, c, cols[i]);
    return out;
}

namespace {

struct Partition {
    // blocks sorted by least vertex; each block sorted
    std::vector<std::vector<int>> blocks;
    std::vector<int> block_of;  // vertex -> block position
};

Partition edge_partition(int vertices, const std::vector<std::pair<int, int>>& edges, Mask used) {
    std::vector<int> parent(vertices);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
        if (used & (Mask(1) << e)) {
            int a = find(edges[e].first), b = find(edges[e].second);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < vertices; ++v) groups[find(v)].push_back(v);
    Partition p;
    p.block_of.assign(vertices, -1);
    for (auto& [root, vs] : groups) {
        for (int v : vs) p.block_of[v] = static_cast<int>(p.blocks.size());
        p.blocks.push_back(vs);
    }
    return p;
}

}  // namespace

std::vector<std::vector<int>> graph_blocks(int vertices,
                                           const std::vector<std::pair<int, int>>& edges,
                                           Mask used) {
    return edge_partition(vertices, edges, used).blocks;
}

SparseVec diagonal_class(const CohomologyRing& ring, int slot_a, int slot_b, int genus,
                         int diag_sign) {
    const SmallRing& f = ring.factor;
    SparseVec out;
    auto put = [&](int ca, int cb, int coeff) {
        int x = ring.embed(slot_a, ca);
        int y = ring.embed(slot_b, cb);
        SparseVec p = ring.cup(x, y);
        for (auto& [i, c] : p) out.emplace_back(i, Rational(c * coeff));
    };
    put(f.unit, f.point_class, 1);
    put(f.point_class, f.unit, 1);
    for (int i = 0; i < genus; ++i) {
        put(1 + i, 1 + genus + i, -diag_sign);  // -a_i (x) b_i
        put(1 + genus + i, 1 + i, diag_sign);   // +b_i (x) a_i
    }
    return sv_normalize(std::move(out));
}

GeometricArrangement curve_power_geometry(int genus, const Graph& graph, int diag_sign) {
    graph.validate();
    if (static_cast<int>(graph.edges.size()) > kMaxLabels)
        throw std::runtime_error("too many hypersurfaces (cap 20)");
    GeometricArrangement geo;
    int V = graph.vertices;
    auto edges = graph.edges;
    geo.arr.size = static_cast<int>(edges.size());
    geo.arr.rank_oracle = [V, edges](Mask I) -> RankInfo {
        Partition p = edge_partition(V, edges, I);
        return {V - static_cast<int>(p.blocks.size()), true};
    };
    geo.poset = flats(geo.arr);
    geo.ambient_cdim = V;

    SmallRing base = curve_ring(genus);
    int nf = static_cast<int>(geo.poset.flats.size());
    std::vector<Partition> part(nf);
    for (int f = 0; f < nf; ++f) {
        part[f] = edge_partition(V, edges, geo.poset.flats[f].members);
        geo.ring.push_back({base, static_cast<int>(part[f].blocks.size())});
        std::string name = "Y^{";
        for (size_t b = 0; b < part[f].blocks.size(); ++b) {
            if (b) name += "|";
            for (size_t v = 0; v < part[f].blocks[b].size(); ++v) {
                if (v) name += ",";
                name += std::to_string(part[f].blocks[b][v]);
            }
        }
        name += "}";
        geo.stratum_name.push_back(name);
    }

    // Restrictions: identify the coordinates, multiplying classes that land
    // in the same factor (in source-block order, so Koszul signs come out
    // of cup alone).
    for (int S = 0; S < nf; ++S) {
        for (int T = 0; T < nf; ++T) {
            if ((geo.poset.flats[S].members & ~geo.poset.flats[T].members) != 0) continue;
            const CohomologyRing& rs = geo.ring[S];
            const CohomologyRing& rt = geo.ring[T];
            std::vector<int> slot_of_block(part[S].blocks.size());
            for (size_t b = 0; b < part[S].blocks.size(); ++b)
                slot_of_block[b] = part[T].block_of[part[S].blocks[b][0]];
            std::vector<SparseVec> cols(rs.dim());
            for (int x = 0; x < rs.dim(); ++x) {
                auto w = rs.decompose(x);
                SparseVec acc = {{rt.unit(), Rational(1)}};
                for (size_t b = 0; b < w.size(); ++b) {
                    SparseVec cls = {{rt.embed(slot_of_block[b], w[b]), Rational(1)}};
                    acc = rt.cup(acc, cls);
                    if (acc.empty()) break;
                }
                cols[x] = std::move(acc);
            }
            geo.restriction_cols.emplace(std::make_pair(S, T), std::move(cols));
        }
    }

    // Gysin maps for codimension-1 inclusions: S has one block split into
    // two in T. Push forward via the least-vertex splitting and the
    // diagonal class.
    for (int S = 0; S < nf; ++S) {
        for (int T = 0; T < nf; ++T) {
            if (geo.poset.flats[S].codim != geo.poset.flats[T].codim + 1) continue;
            if ((geo.poset.flats[T].members & ~geo.poset.flats[S].members) != 0) continue;
            const CohomologyRing& rs = geo.ring[S];
            const CohomologyRing& rt = geo.ring[T];
            // For each S-block, the T-block of its least vertex; the split
            // block contributes two T-blocks.
            int split_a = -1, split_b = -1;
            std::vector<int> keep_slot(part[S].blocks.size());
            for (size_t b = 0; b < part[S].blocks.size(); ++b) {
                std::vector<int> tb;
                for (int v : part[S].blocks[b]) {
                    int t = part[T].block_of[v];
                    if (std::find(tb.begin(), tb.end(), t) == tb.end()) tb.push_back(t);
                }
                keep_slot[b] = part[T].block_of[part[S].blocks[b][0]];
                if (tb.size() == 2) {
                    split_a = std::min(tb[0], tb[1]);
                    split_b = std::max(tb[0], tb[1]);
                }
            }
            if (split_a < 0) throw std::logic_error("covering pair without a split block");
            SparseVec diag = diagonal_class(rt, split_a, split_b, genus, diag_sign);
            std::vector<SparseVec> cols(rs.dim());
            for (int x = 0; x < rs.dim(); ++x) {
                auto w = rs.decompose(x);
                SparseVec acc = {{rt.unit(), Rational(1)}};
                for (size_t b = 0; b < w.size(); ++b) {
                    SparseVec cls = {{rt.embed(keep_slot[b], w[b]), Rational(1)}};
                    acc = rt.cup(acc, cls);
                    if (acc.empty()) break;
                }
                cols[x] = rt.cup(acc, diag);
            }
            geo.gysin_cols.emplace(std::make_pair(S, T), std::move(cols));
        }
    }
    return geo;
}

GeometricArrangement projective_geometry(int n, const std::vector<std::vector<Rational>>& covectors) {
    for (const auto& v : covectors)
        if (static_cast<int>(v.size()) != n + 1)
            throw std::runtime_error("projective covector must have length n+1");
    Arrangement lin = from_vectors(n + 1, covectors);
    GeometricArrangement geo;
    geo.arr.size = lin.size;
    auto inner = lin.rank_oracle;
    geo.arr.rank_oracle = [inner, n](Mask I) -> RankInfo {
        RankInfo ri = inner(I);
        if (ri.codim > n) return {0, false};  // empty projective stratum
        return ri;
    };
    geo.poset = flats(geo.arr);
    geo.ambient_cdim = n;
    int nf = static_cast<int>(geo.poset.flats.size());
    for (int f = 0; f < nf; ++f) {
        int c = geo.poset.flats[f].codim;
        geo.ring.push_back({projective_ring(n - c), 1});
        geo.stratum_name.push_back("P^" + std::to_string(n - c));
    }
    for (int S = 0; S < nf; ++S)
        for (int T = 0; T < nf; ++T) {
            Mask ms = geo.poset.flats[S].members, mt = geo.poset.flats[T].members;
            int ds = geo.ring[S].factor.cdim, dt = geo.ring[T].factor.cdim;
            if ((ms & ~mt) == 0) {
                std::vector<SparseVec> cols(ds + 1);
                for (int a = 0; a <= ds; ++a)
                    cols[a] = (a <= dt) ? SparseVec{{a, Rational(1)}} : SparseVec{};
                geo.restriction_cols.emplace(std::make_pair(S, T), std::move(cols));
            }
            if ((mt & ~ms) == 0 && geo.poset.flats[S].codim == geo.poset.flats[T].codim + 1) {
                std::vector<SparseVec> cols(ds + 1);
                for (int a = 0; a <= ds; ++a) cols[a] = {{a + 1, Rational(1)}};
                geo.gysin_cols.emplace(std::make_pair(S, T), std::move(cols));
            }
        }
    return geo;
}

namespace {

SmallRing blowup_surface_ring() {
    // 0:1, 1:h, 2:e, 3:pt with h^2 = pt, e^2 = -pt, he = 0
    SmallRing r;
    r.deg = {0, 2, 2, 4};
    r.label = {"1", "h", "e", "pt"};
    r.unit = 0;
    r.point_class = 3;
    r.cdim = 2;
    r.mul.assign(4, std::vector<SparseVec>(4));
    for (int i = 0; i < 4; ++i) {
        r.mul[0][i] = {{i, Rational(1)}};
        r.mul[i][0] = {{i, Rational(1)}};
    }
    r.mul[0][0] = {{0, Rational(1)}};
    r.mul[1][1] = {{3, Rational(1)}};
    r.mul[2][2] = {{3, Rational(-1)}};
    return r;
}

}  // namespace

BlowupDemoData blown_up_surface_geometry() {
    BlowupDemoData d;
    // Base: three lines through a point in P^2.
    std::vector<std::vector<Rational>> covs = {
        {Rational(1), Rational(0), Rational(0)},
        {Rational(0), Rational(1), Rational(0)},
        {Rational(1), Rational(-1), Rational(0)},
    };
    d.base = projective_geometry(2, covs);

    // Blown-up arrangement: label 0 = E, labels 1..3 = strict transforms.
    GeometricArrangement& b = d.blown;
    b.arr.size = 4;
    b.arr.rank_oracle = [](Mask I) -> RankInfo {
        int k = popcount(I);
        if (k <= 1) return {k, true};
        if (k == 2 && (I & 1)) return {2, true};  // E meets each strict transform
        return {0, false};
    };
    b.poset = flats(b.arr);
    b.ambient_cdim = 2;

    SmallRing amb = blowup_surface_ring();
    SmallRing line = projective_ring(1);
    SmallRing point = projective_ring(0);
    int nf = static_cast<int>(b.poset.flats.size());
    b.ring.resize(nf);
    b.stratum_name.resize(nf);
    auto flat_id = [&](Mask m) { return b.poset.find(m); };
    for (int f = 0; f < nf; ++f) {
        const Flat& fl = b.poset.flats[f];
        if (fl.codim == 0) {
            b.ring[f] = {amb, 1};
            b.stratum_name[f] = "X~";
        } else if (fl.codim == 1) {
            b.ring[f] = {line, 1};
            b.stratum_name[f] = (fl.members == 1) ? "E" : "L~" + std::to_string(mask_bits(fl.members)[0]);
        } else {
            b.ring[f] = {point, 1};
            b.stratum_name[f] = "E&L~" + std::to_string(mask_bits(fl.members & ~Mask(1))[0]);
        }
    }

    int fX = flat_id(0);
    int fE = flat_id(1);
    // Restrictions.
    auto add_restr = [&](int S, int T, std::vector<SparseVec> cols) {
        b.restriction_cols.emplace(std::make_pair(S, T), std::move(cols));
    };
    auto add_gysin = [&](int S, int T, std::vector<SparseVec> cols) {
        b.gysin_cols.emplace(std::make_pair(S, T), std::move(cols));
    };
    for (int f = 0; f < nf; ++f) add_restr(f, f, [&] {
        std::vector<SparseVec> cols(b.ring[f].dim());
        for (int i = 0; i < b.ring[f].dim(); ++i) cols[i] = {{i, Rational(1)}};
        return cols;
    }());
    // X~ -> E: 1->1, h->0, e->-p, pt->0.  X~ -> L~i: 1->1, h->p, e->p, pt->0.
    add_restr(fX, fE, {{{0, Rational(1)}}, {}, {{1, Rational(-1)}}, {}});
    for (int i = 1; i <= 3; ++i) {
        int fL = flat_id(Mask(1) << i);
        add_restr(fX, fL, {{{0, Rational(1)}}, {{1, Rational(1)}}, {{1, Rational(1)}}, {}});
        int fP = flat_id((Mask(1) << i) | 1);
        add_restr(fX, fP, {{{0, Rational(1)}}, {}, {}, {}});
        add_restr(fE, fP, {{{0, Rational(1)}}, {}});
        add_restr(fL, fP, {{{0, Rational(1)}}, {}});
        // Gysin into the surface: [E] = e, [L~i] = h - e.
        add_gysin(fL, fX, {{{1, Rational(1)}, {2, Rational(-1)}}, {{3, Rational(1)}}});
        // Points into E and L~i.
        add_gysin(fP, fE, {{{1, Rational(1)}}});
        add_gysin(fP, fL, {{{1, Rational(1)}}});
    }
    add_gysin(fE, fX, {{{2, Rational(1)}}, {{3, Rational(1)}}});

    // Multiplicity matrix of the blow-up: every L_i contains the center.
    d.mult = IntMatrix(4, 3);
    for (int j = 0; j < 3; ++j) {
        d.mult.a[0][j] = 1;
        d.mult.a[j + 1][j] = 1;
    }

    // Stratum correspondence with pullbacks. Base flats: ambient, lines
    // L_i = {i+1 in 1-based}, point P = {1,2,3}.
    auto base_flat = [&](Mask m) { return d.base.poset.find(m); };
    int bX = base_flat(closure(d.base.arr, 0));
    int bP = base_flat(7);
    // pi^*: H(P^2) -> H(X~): 1->1, h->h, h^2->pt
    d.pairings.push_back({fX, bX, {{{0, Rational(1)}}, {{1, Rational(1)}}, {{3, Rational(1)}}}});
    for (int i = 1; i <= 3; ++i) {
        int bL = base_flat(closure(d.base.arr, Mask(1) << (i - 1)));
        int fL = flat_id(Mask(1) << i);
        int fP = flat_id((Mask(1) << i) | 1);
        // L~i -> L_i is an isomorphism.
        d.pairings.push_back({fL, bL, {{{0, Rational(1)}}, {{1, Rational(1)}}}});
        // E -> P -> L_i kills the point class.
        d.pairings.push_back({fE, bL, {{{0, Rational(1)}}, {}}});
        // E & L~i -> P.
        d.pairings.push_back({fP, bP, {{{0, Rational(1)}}}});
    }
    return d;
}

}  // namespace gysin
