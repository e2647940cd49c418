#include "gysin/oslib.hpp"

#include <algorithm>
#include <cassert>

namespace gysin {

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
    std::vector<long long> c(std::max(a.coeff.size(), b.coeff.size()), 0);
    for (size_t i = 0; i < a.coeff.size(); ++i) c[i] += a.coeff[i];
    for (size_t i = 0; i < b.coeff.size(); ++i) c[i] += b.coeff[i];
    return Polynomial(std::move(c));
}

Polynomial poly_sub(const Polynomial& a, const Polynomial& b) {
    std::vector<long long> c(std::max(a.coeff.size(), b.coeff.size()), 0);
    for (size_t i = 0; i < a.coeff.size(); ++i) c[i] += a.coeff[i];
    for (size_t i = 0; i < b.coeff.size(); ++i) c[i] -= b.coeff[i];
    return Polynomial(std::move(c));
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    if (a.coeff.empty() || b.coeff.empty()) return Polynomial();
    std::vector<long long> c(a.coeff.size() + b.coeff.size() - 1, 0);
    for (size_t i = 0; i < a.coeff.size(); ++i)
        for (size_t j = 0; j < b.coeff.size(); ++j) c[i + j] += a.coeff[i] * b.coeff[j];
    return Polynomial(std::move(c));
}

std::string poly_to_string(const Polynomial& p, const std::string& var) {
    if (p.coeff.empty()) return "0";
    std::string out;
    for (int k = 0; k <= p.degree(); ++k) {
        long long c = p.coeff[k];
        if (c == 0) continue;
        if (!out.empty()) {
            out += (c > 0) ? " + " : " - ";
            c = std::abs(c);
        } else if (c < 0) {
            out += "-";
            c = -c;
        }
        if (k == 0)
            out += std::to_string(c);
        else {
            if (c != 1) out += std::to_string(c);
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out.empty() ? "0" : out;
}

void OSElement::add(int flat, int idx, const Rational& c) {
    if (c == 0) return;
    auto key = std::make_pair(flat, idx);
    auto it = terms.find(key);
    if (it == terms.end())
        terms.emplace(key, c);
    else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

OSElement OSElement::scaled(const Rational& c) const {
    OSElement out;
    if (c == 0) return out;
    for (const auto& [k, v] : terms) out.terms.emplace(k, Rational(v * c));
    return out;
}

OSElement OSElement::plus(const OSElement& other) const {
    OSElement out = *this;
    for (const auto& [k, v] : other.terms) out.add(k.first, k.second, v);
    return out;
}

int OSAlgebra::flat_of_independent(Mask I) const {
    Mask cl = closure(arr, I);
    int f = poset.find(cl);
    if (f < 0) throw std::logic_error("closure not in flat poset");
    return f;
}

const SparseVec& OSAlgebra::reduce_monomial(int flat, Mask I) const {
    auto it = rewrite[flat].find(I);
    if (it == rewrite[flat].end()) throw std::logic_error("monomial not in rewrite table");
    return it->second;
}

OSElement OSAlgebra::monomial(Mask I) const {
    OSElement out;
    RankInfo ri = arr.info(I);
    if (!ri.nonempty || ri.codim != popcount(I)) return out;  // null or dependent
    int f = flat_of_independent(I);
    for (const auto& [idx, c] : reduce_monomial(f, I)) out.add(f, idx, c);
    return out;
}

int OSAlgebra::dim_degree(int k) const {
    if (k < 0 || k > poset.max_codim) return 0;
    int d = 0;
    for (int f : poset.by_codim[k]) d += dim_flat(f);
    return d;
}

int OSAlgebra::total_dim() const {
    int d = 0;
    for (int k = 0; k <= poset.max_codim; ++k) d += dim_degree(k);
    return d;
}

namespace {

bool lex_less(Mask a, Mask b) {
    std::vector<int> va = mask_bits(a), vb = mask_bits(b);
    return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
}

void for_each_subset(const std::vector<int>& pool, int k, const std::function<void(Mask)>& fn) {
    int n = static_cast<int>(pool.size());
    if (k > n) return;
    if (k == 0) {
        fn(0);
        return;
    }
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        Mask I = 0;
        for (int i : idx) I |= Mask(1) << pool[i];
        fn(I);
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
}

}  // namespace

OSAlgebra build_os(const Arrangement& arr) {
    if (arr.size > kMaxLabels) throw std::runtime_error("too many hypersurfaces (cap 20)");
    OSAlgebra os;
    os.arr = arr;
    os.poset = flats(arr);
    os.circuit_list = circuits(arr);

    int nf = static_cast<int>(os.poset.flats.size());
    os.nbc.resize(nf);
    os.nbc_index.resize(nf);
    os.rewrite.resize(nf);

    std::vector<Mask> broken;
    broken.reserve(os.circuit_list.size());
    for (Mask c : os.circuit_list) broken.push_back(c & ~(Mask(1) << mask_bits(c).front()));

    for (int f = 0; f < nf; ++f) {
        const Flat& fl = os.poset.flats[f];
        std::vector<int> members = mask_bits(fl.members);
        int c = fl.codim;

        // Independent c-subsets of the members; their closure is the flat.
        std::vector<Mask> indep;
        for_each_subset(members, c, [&](Mask I) {
            if (arr.codim(I) == c) indep.push_back(I);
        });
        std::sort(indep.begin(), indep.end(), lex_less);

        std::vector<Mask> nbc_masks, non_nbc;
        for (Mask I : indep) {
            bool has_bc = false;
            for (Mask b : broken)
                if ((b & ~I) == 0) {
                    has_bc = true;
                    break;
                }
            (has_bc ? non_nbc : nbc_masks).push_back(I);
        }
        os.nbc[f] = nbc_masks;
        for (size_t i = 0; i < nbc_masks.size(); ++i)
            os.nbc_index[f].emplace(nbc_masks[i], static_cast<int>(i));

        // Columns: non-nbc monomials first, then the nbc basis; relations
        // come from the dependent (c+1)-subsets of the members that still
        // have codimension c.
        std::unordered_map<Mask, int> col_of;
        int ncols = static_cast<int>(indep.size());
        for (size_t i = 0; i < non_nbc.size(); ++i) col_of.emplace(non_nbc[i], static_cast<int>(i));
        for (size_t i = 0; i < nbc_masks.size(); ++i)
            col_of.emplace(nbc_masks[i], static_cast<int>(non_nbc.size() + i));

        std::vector<SparseVec> rel_rows;
        for_each_subset(members, c + 1, [&](Mask D) {
            if (arr.codim(D) != c) return;
            SparseVec row;
            for (int i : mask_bits(D)) {
                Mask I = D & ~(Mask(1) << i);
                if (arr.codim(I) != c) continue;  // still dependent, term is zero
                row.emplace_back(col_of.at(I), Rational(sgn(Mask(1) << i, I)));
            }
            if (!row.empty()) rel_rows.push_back(sv_normalize(std::move(row)));
        });

        int nrel = static_cast<int>(rel_rows.size());
        RrefResult rr = rref(SparseMatrix::from_rows(nrel, ncols, std::move(rel_rows)));
        if (rr.rank != static_cast<int>(non_nbc.size()))
            throw std::logic_error("nbc basis does not complement the relation space");
        for (int p : rr.pivots)
            if (p >= static_cast<int>(non_nbc.size()))
                throw std::logic_error("relation pivot landed on an nbc monomial");

        for (size_t i = 0; i < nbc_masks.size(); ++i)
            os.rewrite[f].emplace(nbc_masks[i], SparseVec{{static_cast<int>(i), Rational(1)}});
        for (int r = 0; r < rr.rank; ++r) {
            Mask pm = non_nbc[rr.pivots[r]];
            SparseVec expr;
            for (const auto& [col, v] : rr.rows[r]) {
                if (col == rr.pivots[r]) continue;
                expr.emplace_back(col - static_cast<int>(non_nbc.size()), Rational(-v));
            }
            os.rewrite[f].emplace(pm, sv_normalize(std::move(expr)));
        }
    }
    return os;
}

OSElement os_product(const OSAlgebra& os, const OSElement& a, const OSElement& b) {
    OSElement out;
    for (const auto& [ka, ca] : a.terms) {
        Mask I = os.nbc[ka.first][ka.second];
        for (const auto& [kb, cb] : b.terms) {
            Mask J = os.nbc[kb.first][kb.second];
            if (I & J) continue;
            Mask K = I | J;
            RankInfo ri = os.arr.info(K);
            if (!ri.nonempty || ri.codim != popcount(K)) continue;
            int f = os.flat_of_independent(K);
            Rational c = ca * cb * sgn(I, J);
            for (const auto& [idx, v] : os.reduce_monomial(f, K)) out.add(f, idx, Rational(c * v));
        }
    }
    return out;
}

void os_delta_basis(const OSAlgebra& os, int flat, int idx, OSElement& out) {
    Mask I = os.nbc[flat][idx];
    for (int i : mask_bits(I)) {
        Mask I0 = I & ~(Mask(1) << i);
        int f = os.flat_of_independent(I0);
        Rational s(sgn(Mask(1) << i, I0));
        for (const auto& [j, v] : os.reduce_monomial(f, I0)) out.add(f, j, Rational(s * v));
    }
}

OSElement os_delta(const OSAlgebra& os, const OSElement& a) {
    OSElement out;
    for (const auto& [k, c] : a.terms) {
        OSElement part;
        os_delta_basis(os, k.first, k.second, part);
        for (const auto& [kk, v] : part.terms) out.add(kk.first, kk.second, Rational(c * v));
    }
    return out;
}

Polynomial poincare_polynomial(const OSAlgebra& os) {
    std::vector<long long> c(os.poset.max_codim + 1, 0);
    for (int k = 0; k <= os.poset.max_codim; ++k) c[k] = os.dim_degree(k);
    return Polynomial(std::move(c));
}

DeletionRestriction deletion_restriction(const OSAlgebra& os) {
    int l = os.arr.size;
    if (l == 0) throw std::runtime_error("deletion-restriction needs at least one hypersurface");
    Arrangement parent = os.arr;
    Mask last = Mask(1) << (l - 1);

    Arrangement del;
    del.size = l - 1;
    del.rank_oracle = [parent](Mask I) { return parent.rank_oracle(I); };

    DeletionRestriction dr;
    // Classes of L_l cap L_i, keyed by the closure of {i, l}; ordered by
    // smallest representative.
    std::vector<Mask> class_key;
    dr.lambda.assign(l - 1, -1);
    for (int i = 0; i < l - 1; ++i) {
        Mask pair = (Mask(1) << i) | last;
        RankInfo ri = parent.info(pair);
        if (!ri.nonempty) continue;
        Mask key = closure(parent, pair);
        auto it = std::find(class_key.begin(), class_key.end(), key);
        if (it == class_key.end()) {
            dr.lambda[i] = static_cast<int>(class_key.size());
            class_key.push_back(key);
        } else {
            dr.lambda[i] = static_cast<int>(it - class_key.begin());
        }
    }
    int l2 = static_cast<int>(class_key.size());
    std::vector<Mask> preimage(l2, 0);
    for (int i = 0; i < l - 1; ++i)
        if (dr.lambda[i] >= 0) preimage[dr.lambda[i]] |= Mask(1) << i;

    Arrangement res;
    res.size = l2;
    res.rank_oracle = [parent, preimage, last](Mask J) -> RankInfo {
        Mask P = last;
        for (int j = 0; j < static_cast<int>(preimage.size()); ++j)
            if (J & (Mask(1) << j)) P |= preimage[j];
        RankInfo ri = parent.rank_oracle(P);
        if (!ri.nonempty) return {0, false};
        return {ri.codim - 1, true};
    };

    dr.deleted = build_os(del);
    dr.restricted = build_os(res);
    return dr;
}

namespace {

// Degree-k basis of an OS algebra as (flat, idx) pairs in poset order.
std::vector<std::pair<int, int>> degree_basis(const OSAlgebra& os, int k) {
    std::vector<std::pair<int, int>> out;
    if (k < 0 || k > os.poset.max_codim) return out;
    for (int f : os.poset.by_codim[k])
        for (int i = 0; i < os.dim_flat(f); ++i) out.emplace_back(f, i);
    return out;
}

std::map<std::pair<int, int>, int> basis_index(const std::vector<std::pair<int, int>>& basis) {
    std::map<std::pair<int, int>, int> out;
    for (size_t i = 0; i < basis.size(); ++i) out.emplace(basis[i], static_cast<int>(i));
    return out;
}

}  // namespace

SparseMatrix DeletionRestriction::inclusion_matrix(const OSAlgebra& os, int k) const {
    auto src = degree_basis(deleted, k);
    auto dst = degree_basis(os, k);
    auto dst_idx = basis_index(dst);
    MatrixBuilder b(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (size_t c = 0; c < src.size(); ++c) {
        Mask I = deleted.nbc[src[c].first][src[c].second];
        OSElement img = os.monomial(I);
        for (const auto& [key, v] : img.terms) b.add(dst_idx.at(key), static_cast<int>(c), v);
    }
    return b.build();
}

SparseMatrix DeletionRestriction::restriction_matrix(const OSAlgebra& os, int k) const {
    auto src = degree_basis(os, k);
    auto dst = degree_basis(restricted, k - 1);
    auto dst_idx = basis_index(dst);
    Mask last = Mask(1) << (os.arr.size - 1);
    MatrixBuilder b(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (size_t c = 0; c < src.size(); ++c) {
        Mask I = os.nbc[src[c].first][src[c].second];
        if (!(I & last)) continue;
        std::vector<int> imgs;
        for (int i : mask_bits(I & ~last)) imgs.push_back(lambda[i]);
        // Sort the mapped labels, tracking the permutation sign.
        int sign = 1;
        for (size_t x = 0; x < imgs.size(); ++x)
            for (size_t y = x + 1; y < imgs.size(); ++y)
                if (imgs[x] > imgs[y]) {
                    std::swap(imgs[x], imgs[y]);
                    sign = -sign;
                }
        Mask J = 0;
        for (int j : imgs) J |= Mask(1) << j;
        OSElement img = restricted.monomial(J).scaled(Rational(sign));
        for (const auto& [key, v] : img.terms) b.add(dst_idx.at(key), static_cast<int>(c), v);
    }
    return b.build();
}

Integer IntMatrix::minor_det(const std::vector<int>& ri, const std::vector<int>& ci) const {
    int k = static_cast<int>(ri.size());
    if (k != static_cast<int>(ci.size())) throw std::invalid_argument("minor must be square");
    if (k == 0) return Integer(1);
    // Fraction-free elimination with sign tracking.
    std::vector<std::vector<Integer>> m(k, std::vector<Integer>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m[i][j] = a[ri[i]][ci[j]];
    Integer den(1);
    int sign = 1;
    for (int col = 0; col < k; ++col) {
        int piv = -1;
        for (int r = col; r < k; ++r)
            if (m[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return Integer(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            sign = -sign;
        }
        for (int r = col + 1; r < k; ++r) {
            for (int c2 = col + 1; c2 < k; ++c2)
                m[r][c2] = (m[col][col] * m[r][c2] - m[r][col] * m[col][c2]) / den;
            m[r][col] = 0;
        }
        den = m[col][col];
    }
    return sign > 0 ? m[k - 1][k - 1] : Integer(-m[k - 1][k - 1]);
}

IntMatrix IntMatrix::multiply(const IntMatrix& other) const {
    if (cols != other.rows) throw std::invalid_argument("matrix dimension mismatch");
    IntMatrix out(rows, other.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            if (a[i][k] == 0) continue;
            for (int j = 0; j < other.cols; ++j) out.a[i][j] += a[i][k] * other.a[k][j];
        }
    return out;
}

OSElement OSMap::apply(const OSElement& x) const {
    OSElement out;
    for (const auto& [k, c] : x.terms) {
        auto it = image.find(k);
        if (it == image.end()) throw std::logic_error("OSMap missing basis image");
        for (const auto& [kk, v] : it->second.terms) out.add(kk.first, kk.second, Rational(c * v));
    }
    return out;
}

OSMap os_functorial_map(const OSAlgebra& source, const OSAlgebra& target, const IntMatrix& m) {
    if (m.rows != target.arr.size || m.cols != source.arr.size)
        throw std::invalid_argument("multiplicity matrix shape mismatch");
    for (const auto& row : m.a)
        for (const auto& e : row)
            if (e < 0) throw std::runtime_error("negative multiplicity");

    OSMap out;
    for (int f = 0; f < static_cast<int>(source.poset.flats.size()); ++f) {
        for (int idx = 0; idx < source.dim_flat(f); ++idx) {
            Mask J = source.nbc[f][idx];
            std::vector<int> jbits = mask_bits(J);
            int k = static_cast<int>(jbits.size());
            // Candidate rows: union of the supports of the J-columns.
            std::vector<int> support;
            for (int i = 0; i < m.rows; ++i) {
                bool used = false;
                for (int j : jbits)
                    if (m.a[i][j] != 0) {
                        used = true;
                        break;
                    }
                if (used) support.push_back(i);
            }
            OSElement img;
            for_each_subset(support, k, [&](Mask pool_mask) {
                // pool_mask indexes into `support` positions via bits of actual labels;
                // for_each_subset already produces label masks from the pool.
                std::vector<int> ibits = mask_bits(pool_mask);
                Integer det = m.minor_det(ibits, jbits);
                if (det == 0) return;
                OSElement mono = target.monomial(pool_mask);
                for (const auto& [kk, v] : mono.terms)
                    img.add(kk.first, kk.second, Rational(v * Rational(det)));
            });
            out.image.emplace(std::make_pair(f, idx), std::move(img));
        }
    }
    return out;
}

}  // namespace gysin
