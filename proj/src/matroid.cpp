#include "gysin/matroid.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

namespace gysin {

std::vector<int> mask_bits(Mask m) {
    std::vector<int> out;
    for (int i = 0; m; ++i, m >>= 1)
        if (m & 1) out.push_back(i);
    return out;
}

Mask bits_mask(const std::vector<int>& bits) {
    Mask m = 0;
    for (int b : bits) m |= Mask(1) << b;
    return m;
}

namespace {

// Rank of the covector submatrix indexed by I, by fraction-free
// elimination over the integers (covectors are pre-cleared to primitive
// integer form).
int int_rank(std::vector<std::vector<Integer>> rows, int ncols) {
    int rank = 0;
    int nrows = static_cast<int>(rows.size());
    for (int col = 0; col < ncols && rank < nrows; ++col) {
        int piv = -1;
        for (int r = rank; r < nrows; ++r)
            if (rows[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        for (int r = rank + 1; r < nrows; ++r) {
            if (rows[r][col] == 0) continue;
            Integer a = rows[rank][col], b = rows[r][col];
            Integer g(0);
            for (int c = col; c < ncols; ++c) {
                rows[r][c] = a * rows[r][c] - b * rows[rank][c];
                g = gcd(g, rows[r][c]);
            }
            if (g > 1)
                for (int c = col; c < ncols; ++c) rows[r][c] /= g;
        }
        ++rank;
    }
    return rank;
}

struct VectorOracleState {
    std::vector<std::vector<Integer>> covectors;
    int dim;
    std::unordered_map<Mask, int> cache;
    std::mutex mu;
};

}  // namespace

Arrangement from_vectors(int n, const std::vector<std::vector<Rational>>& normals) {
    int l = static_cast<int>(normals.size());
    if (l > kMaxLabels) throw std::runtime_error("too many hypersurfaces (cap 20)");
    auto st = std::make_shared<VectorOracleState>();
    st->dim = n;
    for (const auto& v : normals) {
        if (static_cast<int>(v.size()) != n) throw std::runtime_error("covector length mismatch");
        Integer den(1);
        for (const auto& c : v) den = lcm(den, denominator(c));
        std::vector<Integer> iv(n);
        Integer content(0);
        for (int i = 0; i < n; ++i) {
            iv[i] = numerator(v[i]) * (den / denominator(v[i]));
            content = gcd(content, iv[i]);
        }
        if (content == 0) throw std::runtime_error("degenerate hyperplane");
        for (auto& e : iv) e /= content;
        // Fix the sign of the first nonzero entry so proportional pairs compare equal.
        for (const auto& e : iv) {
            if (e == 0) continue;
            if (e < 0)
                for (auto& x : iv) x = -x;
            break;
        }
        for (const auto& w : st->covectors)
            if (w == iv) throw std::runtime_error("repeated hyperplane");
        st->covectors.push_back(std::move(iv));
    }
    Arrangement arr;
    arr.size = l;
    arr.rank_oracle = [st](Mask I) -> RankInfo {
        {
            std::lock_guard<std::mutex> lk(st->mu);
            auto it = st->cache.find(I);
            if (it != st->cache.end()) return {it->second, true};
        }
        std::vector<std::vector<Integer>> rows;
        for (int b : mask_bits(I)) rows.push_back(st->covectors[b]);
        int r = int_rank(std::move(rows), st->dim);
        std::lock_guard<std::mutex> lk(st->mu);
        st->cache.emplace(I, r);
        return {r, true};
    };
    return arr;
}

bool is_independent(const Arrangement& arr, Mask I) {
    RankInfo ri = arr.info(I);
    if (!ri.nonempty) throw std::runtime_error("empty stratum");
    return ri.codim == popcount(I);
}

Mask closure(const Arrangement& arr, Mask I) {
    RankInfo ri = arr.info(I);
    if (!ri.nonempty) throw std::runtime_error("empty stratum");
    Mask cl = I;
    for (int i = 0; i < arr.size; ++i) {
        Mask bit = Mask(1) << i;
        if (I & bit) continue;
        RankInfo e = arr.info(I | bit);
        if (e.nonempty && e.codim == ri.codim) cl |= bit;
    }
    return cl;
}

namespace {

bool lex_less(Mask a, Mask b) {
    // Lexicographic on the sorted element lists.
    std::vector<int> va = mask_bits(a), vb = mask_bits(b);
    return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
}

}  // namespace

std::vector<Mask> circuits(const Arrangement& arr) {
    if (arr.size > kMaxLabels) throw std::runtime_error("too many hypersurfaces (cap 20)");
    RankInfo full = arr.info((Mask(1) << arr.size) - 1);
    int maxsz = arr.size;
    if (full.nonempty) maxsz = std::min(maxsz, full.codim + 1);
    std::vector<Mask> out;
    // Size order; a set containing a smaller circuit is not minimal.
    std::vector<Mask> subsets;
    for (int size = 2; size <= maxsz; ++size) {
        subsets.clear();
        Mask limit = Mask(1) << arr.size;
        for (Mask I = 0; I < limit; ++I) {
            if (popcount(I) != size) continue;
            bool contains_known = false;
            for (Mask c : out)
                if ((c & ~I) == 0) {
                    contains_known = true;
                    break;
                }
            if (contains_known) continue;
            RankInfo ri = arr.info(I);
            if (ri.nonempty && ri.codim < size) subsets.push_back(I);
        }
        out.insert(out.end(), subsets.begin(), subsets.end());
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

int FlatPoset::find(Mask members) const {
    auto it = index_of.find(members);
    return it == index_of.end() ? -1 : it->second;
}

FlatPoset flats(const Arrangement& arr) {
    if (arr.size > kMaxLabels) throw std::runtime_error("too many hypersurfaces (cap 20)");
    FlatPoset poset;
    Mask ambient = closure(arr, 0);
    poset.flats.push_back({ambient, 0});
    poset.index_of.emplace(ambient, 0);
    poset.by_codim.push_back({0});
    std::vector<int> frontier = {0};
    int codim = 0;
    while (!frontier.empty()) {
        ++codim;
        std::vector<Mask> next;
        for (int fi : frontier) {
            Mask base = poset.flats[fi].members;
            int base_codim = poset.flats[fi].codim;
            for (int i = 0; i < arr.size; ++i) {
                Mask bit = Mask(1) << i;
                if (base & bit) continue;
                RankInfo e = arr.info(base | bit);
                if (!e.nonempty || e.codim != base_codim + 1) continue;
                next.push_back(closure(arr, base | bit));
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (next.empty()) break;
        std::vector<int> level;
        for (Mask m : next) {
            if (poset.index_of.count(m)) continue;
            int id = static_cast<int>(poset.flats.size());
            poset.flats.push_back({m, codim});
            poset.index_of.emplace(m, id);
            level.push_back(id);
        }
        poset.by_codim.push_back(level);
        frontier = level;
    }
    while (!poset.by_codim.empty() && poset.by_codim.back().empty()) poset.by_codim.pop_back();
    poset.max_codim = static_cast<int>(poset.by_codim.size()) - 1;
    return poset;
}

int sgn(Mask I, Mask J) {
    if (I & J) throw std::runtime_error("sgn: sets overlap");
    int inv = 0;
    for (int i : mask_bits(I)) inv += popcount(J & ((Mask(1) << i) - 1));
    return (inv % 2 == 0) ? 1 : -1;
}

std::vector<Mask> nbc_sets(const Arrangement& arr, const std::vector<Mask>& circs, Mask flat_members,
                           int flat_codim) {
    std::vector<Mask> broken;
    broken.reserve(circs.size());
    for (Mask c : circs) {
        int least = mask_bits(c).front();
        broken.push_back(c & ~(Mask(1) << least));
    }
    std::vector<int> members = mask_bits(flat_members);
    int k = flat_codim;
    std::vector<Mask> out;
    // All k-subsets of the flat's members.
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    if (k > static_cast<int>(members.size())) return out;
    if (k == 0) return {Mask(0)};
    while (true) {
        Mask I = 0;
        for (int i : idx) I |= Mask(1) << members[i];
        RankInfo ri = arr.info(I);
        if (ri.nonempty && ri.codim == k) {
            bool has_bc = false;
            for (Mask b : broken)
                if ((b & ~I) == 0) {
                    has_bc = true;
                    break;
                }
            if (!has_bc) out.push_back(I);
        }
        // next combination
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == static_cast<int>(members.size()) - k + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

}  // namespace gysin
