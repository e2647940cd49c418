#include "gysin/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gysin {

void ModelElement::add(int flat, int cls, int os, const Rational& c) {
    if (c == 0) return;
    auto key = std::make_tuple(flat, cls, os);
    auto it = terms.find(key);
    if (it == terms.end())
        terms.emplace(key, c);
    else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

ModelElement ModelElement::scaled(const Rational& c) const {
    ModelElement out;
    if (c == 0) return out;
    for (const auto& [k, v] : terms) out.terms.emplace(k, Rational(v * c));
    return out;
}

ModelElement ModelElement::plus(const ModelElement& other) const {
    ModelElement out = *this;
    for (const auto& [k, v] : other.terms)
        out.add(std::get<0>(k), std::get<1>(k), std::get<2>(k), v);
    return out;
}

const ModelLevel* GysinModel::level(int q, int n) const {
    auto it = levels.find({q, n});
    return it == levels.end() ? nullptr : &it->second;
}

int GysinModel::level_dim(int q, int n) const {
    const ModelLevel* l = level(q, n);
    return l ? l->dim() : 0;
}

const SparseMatrix& GysinModel::differential(int q, int n) const {
    static const SparseMatrix empty(0, 0);
    auto it = diff.find({q, n});
    return it == diff.end() ? empty : it->second;
}

std::pair<int, int> GysinModel::gen_position(int flat, int cls) const {
    int p = os.poset.flats[flat].codim;
    int k = geom.ring[flat].deg(cls);
    return {k + 2 * p, k + p};
}

SparseVec GysinModel::to_vec(int q, int n, const ModelElement& e) const {
    const ModelLevel* l = level(q, n);
    SparseVec v;
    for (const auto& [key, c] : e.terms) {
        auto [f, cls, o] = key;
        if (gen_position(f, cls) != std::make_pair(q, n))
            throw std::invalid_argument("element not homogeneous at (q,n)");
        if (!l) throw std::invalid_argument("element supported outside model levels");
        v.emplace_back(l->index.at(key), c);
    }
    return sv_normalize(std::move(v));
}

ModelElement GysinModel::from_vec(int q, int n, const SparseVec& v) const {
    const ModelLevel* l = level(q, n);
    ModelElement e;
    for (const auto& [i, c] : v) {
        const ModelGen& g = l->gens[i];
        e.add(g.flat, g.cls, g.os, c);
    }
    return e;
}

ModelElement GysinModel::unit() const {
    ModelElement e;
    int ambient = os.poset.find(closure(os.arr, 0));
    e.add(ambient, geom.ring[ambient].unit(), 0, Rational(1));
    return e;
}

GysinModel build_model(const GeometricArrangement& geom, long long cap) {
    GysinModel m;
    m.geom = geom;
    m.os = build_os(geom.arr);

    long long total = 0;
    for (int f = 0; f < static_cast<int>(m.os.poset.flats.size()); ++f) {
        int p = m.os.poset.flats[f].codim;
        const CohomologyRing& ring = m.geom.ring[f];
        int aw = m.os.dim_flat(f);
        for (int cls = 0; cls < ring.dim(); ++cls) {
            int k = ring.deg(cls);
            int q = k + 2 * p, n = k + p;
            auto& level = m.levels[{q, n}];
            for (int o = 0; o < aw; ++o) {
                level.index.emplace(std::make_tuple(f, cls, o), level.dim());
                level.gens.push_back({f, cls, o});
                ++total;
            }
            m.max_q = std::max(m.max_q, q);
        }
        if (total > cap) throw CapExceededError("instance too large");
    }
    m.total_dim = total;

    // Differential: (-1)^q times gysin tensor the delta component.
    for (const auto& [qn, level] : m.levels) {
        auto [q, n] = qn;
        const ModelLevel* next = m.level(q, n + 1);
        MatrixBuilder b(next ? next->dim() : 0, level.dim());
        for (int col = 0; col < level.dim(); ++col) {
            const ModelGen& g = level.gens[col];
            Mask I = m.os.nbc[g.flat][g.os];
            for (int i : mask_bits(I)) {
                Mask I0 = I & ~(Mask(1) << i);
                int f2 = m.os.flat_of_independent(I0);
                Rational s(sgn(Mask(1) << i, I0) * ((q % 2 == 0) ? 1 : -1));
                const SparseVec& osred = m.os.reduce_monomial(f2, I0);
                const SparseVec& gys = m.geom.gysin(g.flat, f2)[g.cls];
                for (const auto& [o2, oc] : osred)
                    for (const auto& [c2, gc] : gys)
                        b.add(next->index.at(std::make_tuple(f2, c2, o2)), col,
                              Rational(s * oc * gc));
            }
        }
        m.diff.emplace(qn, b.build());
    }
    return m;
}

BettiTable weight_betti(const GysinModel& model) {
    BettiTable t;
    t.max_q = model.max_q;
    std::map<std::pair<int, int>, int> rk;
    for (const auto& [qn, d] : model.diff) rk[qn] = rank(d);
    int maxn = 0;
    for (const auto& [qn, level] : model.levels) {
        auto [q, n] = qn;
        maxn = std::max(maxn, n);
        int dim = level.dim();
        auto it = rk.find({q, n});
        int out_rank = it == rk.end() ? 0 : it->second;
        auto it2 = rk.find({q, n - 1});
        int in_rank = it2 == rk.end() ? 0 : it2->second;
        int betti = dim - out_rank - in_rank;
        if (betti < 0) throw std::logic_error("negative Betti number");
        if (betti > 0) t.entries.emplace(std::make_pair(n, q), betti);
    }
    t.total_by_degree.assign(maxn + 1, 0);
    for (const auto& [nq, d] : t.entries) t.total_by_degree[nq.first] += d;
    t.euler = 0;
    for (size_t n = 0; n < t.total_by_degree.size(); ++n)
        t.euler += (n % 2 == 0 ? 1 : -1) * t.total_by_degree[n];
    return t;
}

ModelElement model_product(const GysinModel& model, const ModelElement& a, const ModelElement& b) {
    ModelElement out;
    const OSAlgebra& os = model.os;
    for (const auto& [ka, ca] : a.terms) {
        auto [fa, clsa, oa] = ka;
        int p = os.poset.flats[fa].codim;
        Mask I = os.nbc[fa][oa];
        for (const auto& [kb, cb] : b.terms) {
            auto [fb, clsb, ob] = kb;
            Mask J = os.nbc[fb][ob];
            if (I & J) continue;
            Mask K = I | J;
            RankInfo ri = os.arr.info(K);
            if (!ri.nonempty || ri.codim != popcount(K)) continue;
            int ft = os.flat_of_independent(K);
            auto [qb, nb] = model.gen_position(fb, clsb);
            int sign = ((p * qb) % 2 == 0) ? 1 : -1;
            Rational c = ca * cb * sign * sgn(I, J);
            // restrict both classes to the intersection stratum and cup
            SparseVec ra = model.geom.restrict_class(fa, ft, {{clsa, Rational(1)}});
            SparseVec rb = model.geom.restrict_class(fb, ft, {{clsb, Rational(1)}});
            SparseVec cupped = model.geom.ring[ft].cup(ra, rb);
            if (cupped.empty()) continue;
            const SparseVec& osred = os.reduce_monomial(ft, K);
            for (const auto& [ot, oc] : osred)
                for (const auto& [ct, gc] : cupped)
                    out.add(ft, ct, ot, Rational(c * oc * gc));
        }
    }
    return out;
}

CohomologySpace model_cohomology_basis(const GysinModel& model, int q, int n) {
    CohomologySpace sp;
    sp.q = q;
    sp.n = n;
    sp.model = &model;
    int dim = model.level_dim(q, n);
    sp.ech = EchelonBasis(dim);
    if (dim == 0) return sp;
    // Image of the incoming differential first, untracked.
    const SparseMatrix& din = model.differential(q, n - 1);
    if (din.rows() == dim) {
        SparseMatrix cols = din.transpose();
        for (int i = 0; i < cols.rows(); ++i) sp.ech.insert(cols.row(i), false);
    }
    for (const SparseVec& k : kernel_basis(model.differential(q, n))) {
        // Tracked; representatives are the normalized reduced remainders.
        SparseVec rem = sp.ech.reduce(k);
        if (rem.empty()) continue;
        SparseVec rep = sv_scale(rem, Rational(1 / rem.front().second));
        sp.ech.insert(rep, true);
        sp.reps.push_back(model.from_vec(q, n, rep));
    }
    return sp;
}

std::vector<Rational> CohomologySpace::reduce(const ModelElement& z) const {
    SparseVec v = model->to_vec(q, n, z);
    const SparseMatrix& d = model->differential(q, n);
    if (d.cols() > 0) {
        std::vector<Rational> dense = sv_dense(v, d.cols());
        for (const Rational& x : d.apply(dense))
            if (x != 0) throw std::runtime_error("not closed");
    }
    std::vector<Rational> coords;
    SparseVec rem = ech.reduce(v, &coords);
    if (!rem.empty()) throw std::logic_error("cocycle failed to reduce");
    return coords;
}

const SparseMatrix& ModelMap::block(int q, int n) const {
    static const SparseMatrix empty(0, 0);
    auto it = blocks.find({q, n});
    return it == blocks.end() ? empty : it->second;
}

ModelElement ModelMap::apply(const ModelElement& x) const {
    // Split by (q, n) and apply blocks.
    std::map<std::pair<int, int>, ModelElement> parts;
    for (const auto& [k, c] : x.terms) {
        auto [f, cls, o] = k;
        parts[source->gen_position(f, cls)].add(f, cls, o, c);
    }
    ModelElement out;
    for (auto& [qn, part] : parts) {
        auto [q, n] = qn;
        SparseVec v = source->to_vec(q, n, part);
        const SparseMatrix& B = block(q, n);
        if (B.rows() == 0) {
            if (!v.empty() && target->level_dim(q, n) != 0)
                throw std::logic_error("model map missing block");
            continue;
        }
        std::vector<Rational> dense = sv_dense(v, B.cols());
        std::vector<Rational> img = B.apply(dense);
        SparseVec sv;
        for (size_t i = 0; i < img.size(); ++i)
            if (img[i] != 0) sv.emplace_back(static_cast<int>(i), img[i]);
        out = out.plus(target->from_vec(q, n, sv));
    }
    return out;
}

ModelMap model_map(std::shared_ptr<const GysinModel> source,
                   std::shared_ptr<const GysinModel> target,
                   const std::vector<StratumPairing>& pairings, const IntMatrix& mult) {
    ModelMap mm;
    mm.source = source;
    mm.target = target;

    // Codimensions must match within each pairing.
    for (const auto& p : pairings)
        if (source->os.poset.flats[p.source_flat].codim != target->os.poset.flats[p.target_flat].codim)
            throw std::invalid_argument("stratum correspondence pairs different codimensions");

    OSMap osmap = os_functorial_map(source->os, target->os, mult);

    std::map<int, std::vector<const StratumPairing*>> by_source;
    for (const auto& p : pairings) by_source[p.source_flat].push_back(&p);

    for (const auto& [qn, level] : source->levels) {
        auto [q, n] = qn;
        const ModelLevel* tl = target->level(q, n);
        MatrixBuilder b(tl ? tl->dim() : 0, level.dim());
        for (int col = 0; col < level.dim(); ++col) {
            const ModelGen& g = level.gens[col];
            const OSElement& img = osmap.image.at({g.flat, g.os});
            auto it = by_source.find(g.flat);
            // Every target flat carrying part of the OS image must be paired.
            for (const auto& [key, oc] : img.terms) {
                bool covered = false;
                if (it != by_source.end())
                    for (const StratumPairing* p : it->second)
                        if (p->target_flat == key.first) covered = true;
                if (!covered) throw std::logic_error("incomplete stratum correspondence");
            }
            if (it == by_source.end()) continue;
            for (const StratumPairing* p : it->second) {
                const SparseVec& pb = p->pullback_cols[g.cls];
                for (const auto& [key, oc] : img.terms) {
                    if (key.first != p->target_flat) continue;
                    for (const auto& [tcls, pc] : pb)
                        b.add(tl->index.at(std::make_tuple(p->target_flat, tcls, key.second)), col,
                              Rational(oc * pc));
                }
            }
        }
        mm.blocks.emplace(qn, b.build());
    }

    // Chain map check at every (q, n) with a nonzero source level.
    for (const auto& [qn, level] : source->levels) {
        auto [q, n] = qn;
        int src_n = level.dim();
        int src_n1 = source->level_dim(q, n + 1);
        int tgt_n = target->level_dim(q, n);
        int tgt_n1 = target->level_dim(q, n + 1);
        auto sized = [](const SparseMatrix& m, int r, int c) {
            return (m.rows() == r && m.cols() == c) ? m : SparseMatrix(r, c);
        };
        SparseMatrix ds = sized(source->differential(q, n), src_n1, src_n);
        SparseMatrix dt = sized(target->differential(q, n), tgt_n1, tgt_n);
        SparseMatrix Fn = sized(mm.block(q, n), tgt_n, src_n);
        SparseMatrix Fn1 = sized(mm.block(q, n + 1), tgt_n1, src_n1);
        if (!(dt.multiply(Fn) == Fn1.multiply(ds))) {
            std::ostringstream msg;
            msg << "not a chain map at (q=" << q << ", n=" << n << "): d*F != F*d";
            throw std::runtime_error(msg.str());
        }
    }
    return mm;
}

QuasiIsoReport verify_quasi_iso(const ModelMap& map) {
    QuasiIsoReport rep;
    std::set<std::pair<int, int>> keys;
    for (const auto& [qn, l] : map.source->levels) keys.insert(qn);
    for (const auto& [qn, l] : map.target->levels) keys.insert(qn);
    for (auto [q, n] : keys) {
        CohomologySpace src = model_cohomology_basis(*map.source, q, n);
        int dim_src = static_cast<int>(src.reps.size());

        int tdim = map.target->level_dim(q, n);
        EchelonBasis ech(tdim);
        const SparseMatrix& din = map.target->differential(q, n - 1);
        if (din.rows() == tdim && tdim > 0) {
            SparseMatrix cols = din.transpose();
            for (int i = 0; i < cols.rows(); ++i) ech.insert(cols.row(i));
        }
        // target cohomology dimension
        int dim_tgt = 0;
        if (tdim > 0) {
            int out_rank = rank(map.target->differential(q, n));
            dim_tgt = tdim - ech.rank() - out_rank;
        }
        int image_dim = 0;
        for (const ModelElement& z : src.reps) {
            ModelElement fz = map.apply(z);
            SparseVec v = fz.is_zero() ? SparseVec{} : map.target->to_vec(q, n, fz);
            if (ech.insert(v)) ++image_dim;
        }
        QuasiIsoRow row{q, n, dim_src, dim_tgt, image_dim == dim_src, image_dim == dim_tgt};
        if (!row.iso()) rep.all_iso = false;
        rep.rows.push_back(row);
    }
    return rep;
}

BlowupComputation blowup_map(long long cap) {
    BlowupComputation bc;
    bc.data = blown_up_surface_geometry();
    bc.base = std::make_shared<GysinModel>(build_model(bc.data.base, cap));
    bc.blown = std::make_shared<GysinModel>(build_model(bc.data.blown, cap));
    std::vector<StratumPairing> pairings;
    for (const auto& p : bc.data.pairings)
        pairings.push_back({p.target_flat, p.source_flat, p.pullback_cols});
    bc.map = model_map(bc.base, bc.blown, pairings, bc.data.mult);
    return bc;
}

}  // namespace gysin
