#include "gysin/exactq.hpp"

#include <algorithm>
#include <list>

namespace gysin {

std::string rat_to_string(const Rational& r) { return r.str(); }

Rational rat_from_string(std::string_view s) {
    auto bad = [&] { throw std::runtime_error("invalid rational: '" + std::string(s) + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return Rational(Integer(std::string(s)));
        Integer num(std::string(s.substr(0, slash)));
        Integer den(std::string(s.substr(slash + 1)));
        if (den == 0) bad();
        if (den < 0) {
            num = -num;
            den = -den;
        }
        return Rational(num, den);  // canonicalizes
    } catch (const std::exception&) {
        bad();
    }
    return Rational();
}

SparseVec sv_normalize(SparseVec v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    out.reserve(v.size());
    for (auto& [i, c] : v) {
        if (!out.empty() && out.back().first == i)
            out.back().second += c;
        else
            out.emplace_back(i, c);
        if (!out.empty() && out.back().second == 0) out.pop_back();
    }
    return out;
}

SparseVec sv_scale(const SparseVec& v, const Rational& a) {
    if (a == 0) return {};
    SparseVec out;
    out.reserve(v.size());
    for (const auto& [i, c] : v) out.emplace_back(i, Rational(c * a));
    return out;
}

SparseVec sv_axpy(const SparseVec& x, const Rational& a, const SparseVec& y) {
    if (a == 0) return x;
    SparseVec out;
    out.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            out.emplace_back(y[j].first, Rational(a * y[j].second));
            ++j;
        } else {
            Rational c = x[i].second + a * y[j].second;
            if (c != 0) out.emplace_back(x[i].first, c);
            ++i, ++j;
        }
    }
    while (!out.empty() && out.back().second == 0) out.pop_back();
    return out;
}

bool sv_equal(const SparseVec& a, const SparseVec& b) { return a == b; }

std::vector<Rational> sv_dense(const SparseVec& v, int n) {
    std::vector<Rational> out(n, Rational(0));
    for (const auto& [i, c] : v) out[i] = c;
    return out;
}

SparseMatrix::SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_(rows) {}

SparseMatrix::SparseMatrix(int rows, int cols, const std::map<std::pair<int, int>, Rational>& entries)
    : rows_(rows), cols_(cols), row_(rows) {
    for (const auto& [rc, v] : entries) {
        auto [i, j] = rc;
        if (i < 0 || i >= rows || j < 0 || j >= cols)
            throw std::out_of_range("matrix entry out of bounds");
        if (v != 0) row_[i].emplace_back(j, v);
    }
    for (auto& r : row_) r = sv_normalize(std::move(r));
}

SparseMatrix SparseMatrix::from_rows(int rows, int cols, std::vector<SparseVec> r) {
    SparseMatrix m(rows, cols);
    if (static_cast<int>(r.size()) != rows) throw std::invalid_argument("row count mismatch");
    for (int i = 0; i < rows; ++i) {
        m.row_[i] = sv_normalize(std::move(r[i]));
        if (!m.row_[i].empty() && (m.row_[i].back().first >= cols || m.row_[i].front().first < 0))
            throw std::out_of_range("matrix entry out of bounds");
    }
    return m;
}

Rational SparseMatrix::entry(int i, int j) const {
    for (const auto& [c, v] : row_[i])
        if (c == j) return v;
    return Rational(0);
}

long long SparseMatrix::nonzeros() const {
    long long n = 0;
    for (const auto& r : row_) n += static_cast<long long>(r.size());
    return n;
}

SparseMatrix SparseMatrix::transpose() const {
    std::vector<SparseVec> t(cols_);
    for (int i = 0; i < rows_; ++i)
        for (const auto& [j, v] : row_[i]) t[j].emplace_back(i, v);
    return from_rows(cols_, rows_, std::move(t));
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("matrix dimension mismatch");
    std::vector<SparseVec> out(rows_);
    for (int i = 0; i < rows_; ++i) {
        SparseVec acc;
        for (const auto& [k, v] : row_[i]) acc = sv_axpy(acc, v, other.row_[k]);
        out[i] = std::move(acc);
    }
    return from_rows(rows_, other.cols_, std::move(out));
}

std::vector<Rational> SparseMatrix::apply(const std::vector<Rational>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("vector dimension mismatch");
    std::vector<Rational> out(rows_, Rational(0));
    for (int i = 0; i < rows_; ++i)
        for (const auto& [j, c] : row_[i]) out[i] += c * v[j];
    return out;
}

bool SparseMatrix::operator==(const SparseMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && row_ == other.row_;
}

void MatrixBuilder::add(int i, int j, const Rational& v) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw std::out_of_range("matrix entry out of bounds");
    if (v == 0) return;
    auto it = entries_.find({i, j});
    if (it == entries_.end())
        entries_.emplace(std::make_pair(i, j), v);
    else {
        it->second += v;
        if (it->second == 0) entries_.erase(it);
    }
}

SparseMatrix MatrixBuilder::build() const { return SparseMatrix(rows_, cols_, entries_); }

namespace {

using IntRow = std::vector<std::pair<int, Integer>>;

// Clear denominators and divide out the content; leading coefficient kept
// positive for determinism of intermediates (the final RREF is canonical
// anyway).
IntRow to_primitive(const SparseVec& v) {
    IntRow out;
    if (v.empty()) return out;
    Integer den(1);
    for (const auto& [i, c] : v) den = lcm(den, denominator(c));
    Integer content(0);
    out.reserve(v.size());
    for (const auto& [i, c] : v) {
        Integer e = numerator(c) * (den / denominator(c));
        content = gcd(content, e);
        out.emplace_back(i, std::move(e));
    }
    if (out.front().second < 0) content = -content;
    if (content != 1)
        for (auto& [i, e] : out) e /= content;
    return out;
}

// a_lead * r - r_lead * a where both rows lead at the same column; result
// re-normalized to primitive.
IntRow eliminate_lead(const IntRow& r, const IntRow& piv) {
    const Integer& rl = r.front().second;
    const Integer& pl = piv.front().second;
    IntRow out;
    out.reserve(r.size() + piv.size());
    Integer content(0);
    size_t i = 1, j = 1;  // leading entries cancel
    while (i < r.size() || j < piv.size()) {
        int ci = i < r.size() ? r[i].first : INT32_MAX;
        int cj = j < piv.size() ? piv[j].first : INT32_MAX;
        Integer e;
        int col;
        if (ci < cj) {
            col = ci;
            e = pl * r[i].second;
            ++i;
        } else if (cj < ci) {
            col = cj;
            e = -rl * piv[j].second;
            ++j;
        } else {
            col = ci;
            e = pl * r[i].second - rl * piv[j].second;
            ++i, ++j;
        }
        if (e != 0) {
            content = gcd(content, e);
            out.emplace_back(col, std::move(e));
        }
    }
    if (!out.empty()) {
        if (out.front().second < 0) content = -content;
        if (content != 1)
            for (auto& [c, e] : out) e /= content;
    }
    return out;
}

}  // namespace

RrefResult rref(const SparseMatrix& m) {
    // Bucket the working rows by leading column.
    std::vector<std::vector<IntRow>> by_lead(m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        IntRow r = to_primitive(m.row(i));
        if (!r.empty()) by_lead[r.front().first].push_back(std::move(r));
    }

    std::vector<IntRow> echelon;
    std::vector<int> pivots;
    for (int col = 0; col < m.cols(); ++col) {
        auto& bucket = by_lead[col];
        if (bucket.empty()) continue;
        // Sparsest row as pivot keeps fill-in down; the result is unchanged.
        size_t best = 0;
        for (size_t k = 1; k < bucket.size(); ++k)
            if (bucket[k].size() < bucket[best].size()) best = k;
        IntRow piv = std::move(bucket[best]);
        bucket.erase(bucket.begin() + best);
        for (auto& r : bucket) {
            IntRow nr = eliminate_lead(r, piv);
            if (!nr.empty()) by_lead[nr.front().first].push_back(std::move(nr));
        }
        bucket.clear();
        echelon.push_back(std::move(piv));
        pivots.push_back(col);
    }

    // Backward pass, still over integers.
    for (int k = static_cast<int>(echelon.size()) - 1; k >= 0; --k) {
        int pc = pivots[k];
        for (int r = 0; r < k; ++r) {
            auto it = std::lower_bound(echelon[r].begin(), echelon[r].end(), pc,
                                       [](const auto& a, int c) { return a.first < c; });
            if (it == echelon[r].end() || it->first != pc) continue;
            // row <- piv_lead * row - coef * piv
            const Integer coef = it->second;
            const Integer pl = echelon[k].front().second;
            IntRow out;
            out.reserve(echelon[r].size() + echelon[k].size());
            Integer content(0);
            size_t i = 0, j = 0;
            const IntRow& a = echelon[r];
            const IntRow& p = echelon[k];
            while (i < a.size() || j < p.size()) {
                int ci = i < a.size() ? a[i].first : INT32_MAX;
                int cj = j < p.size() ? p[j].first : INT32_MAX;
                Integer e;
                int c;
                if (ci < cj) {
                    c = ci;
                    e = pl * a[i].second;
                    ++i;
                } else if (cj < ci) {
                    c = cj;
                    e = -coef * p[j].second;
                    ++j;
                } else {
                    c = ci;
                    e = pl * a[i].second - coef * p[j].second;
                    ++i, ++j;
                }
                if (e != 0) {
                    content = gcd(content, e);
                    out.emplace_back(c, std::move(e));
                }
            }
            if (!out.empty() && out.front().second < 0) content = -content;
            if (content != 1 && content != 0)
                for (auto& [c, e] : out) e /= content;
            echelon[r] = std::move(out);
        }
    }

    RrefResult res;
    res.rank = static_cast<int>(echelon.size());
    res.pivots = pivots;
    res.rows.reserve(echelon.size());
    for (auto& r : echelon) {
        Rational lead(r.front().second);
        SparseVec rv;
        rv.reserve(r.size());
        for (auto& [c, e] : r) rv.emplace_back(c, Rational(Rational(e) / lead));
        res.rows.push_back(std::move(rv));
    }
    std::vector<char> is_pivot(m.cols(), 0);
    for (int p : pivots) is_pivot[p] = 1;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) res.free_cols.push_back(c);
    return res;
}

int rank(const SparseMatrix& m) {
    // Forward pass only.
    std::vector<std::vector<IntRow>> by_lead(m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        IntRow r = to_primitive(m.row(i));
        if (!r.empty()) by_lead[r.front().first].push_back(std::move(r));
    }
    int rk = 0;
    for (int col = 0; col < m.cols(); ++col) {
        auto& bucket = by_lead[col];
        if (bucket.empty()) continue;
        size_t best = 0;
        for (size_t k = 1; k < bucket.size(); ++k)
            if (bucket[k].size() < bucket[best].size()) best = k;
        IntRow piv = std::move(bucket[best]);
        bucket.erase(bucket.begin() + best);
        for (auto& r : bucket) {
            IntRow nr = eliminate_lead(r, piv);
            if (!nr.empty()) by_lead[nr.front().first].push_back(std::move(nr));
        }
        bucket.clear();
        ++rk;
    }
    return rk;
}

int cokernel_dim(const SparseMatrix& m) { return m.rows() - rank(m); }

std::vector<SparseVec> kernel_basis(const SparseMatrix& m) {
    RrefResult r = rref(m);
    std::vector<SparseVec> basis;
    basis.reserve(r.free_cols.size());
    for (int f : r.free_cols) {
        SparseVec v;
        for (size_t k = 0; k < r.rows.size(); ++k) {
            for (const auto& [c, val] : r.rows[k]) {
                if (c == f) {
                    v.emplace_back(r.pivots[k], Rational(-val));
                    break;
                }
                if (c > f) break;
            }
        }
        v.emplace_back(f, Rational(1));
        basis.push_back(sv_normalize(std::move(v)));
    }
    return basis;
}

bool EchelonBasis::insert(const SparseVec& v, bool track) {
    std::vector<std::pair<int, Rational>> coords;
    SparseVec r = v;
    if (track) coords.emplace_back(tracked_, Rational(1));
    for (const auto& row : rows_) {
        if (r.empty()) break;
        Rational c(0);
        for (const auto& [col, val] : r) {
            if (col == row.pivot) {
                c = val;
                break;
            }
            if (col > row.pivot) break;
        }
        if (c == 0) continue;
        r = sv_axpy(r, Rational(-c), row.v);
        for (const auto& [ti, tv] : row.coords) coords.emplace_back(ti, Rational(-c * tv));
    }
    if (track) ++tracked_;
    if (r.empty()) return false;
    Rational lead = r.front().second;
    r = sv_scale(r, Rational(1 / lead));
    SparseVec cc;
    {
        SparseVec tmp(coords.begin(), coords.end());
        tmp = sv_normalize(std::move(tmp));
        cc = sv_scale(tmp, Rational(1 / lead));
    }
    Row nr{std::move(r), {cc.begin(), cc.end()}, 0};
    nr.pivot = nr.v.front().first;
    // Keep earlier rows reduced against the new pivot.
    for (auto& row : rows_) {
        Rational c(0);
        for (const auto& [col, val] : row.v) {
            if (col == nr.pivot) {
                c = val;
                break;
            }
            if (col > nr.pivot) break;
        }
        if (c == 0) continue;
        row.v = sv_axpy(row.v, Rational(-c), nr.v);
        SparseVec rc(row.coords.begin(), row.coords.end());
        for (const auto& [ti, tv] : nr.coords) rc.emplace_back(ti, Rational(-c * tv));
        rc = sv_normalize(std::move(rc));
        row.coords.assign(rc.begin(), rc.end());
    }
    auto pos = std::lower_bound(rows_.begin(), rows_.end(), nr.pivot,
                                [](const Row& a, int p) { return a.pivot < p; });
    rows_.insert(pos, std::move(nr));
    return true;
}

SparseVec EchelonBasis::reduce(const SparseVec& v, std::vector<Rational>* coords) const {
    SparseVec r = v;
    SparseVec acc;
    for (const auto& row : rows_) {
        if (r.empty()) break;
        Rational c(0);
        for (const auto& [col, val] : r) {
            if (col == row.pivot) {
                c = val;
                break;
            }
            if (col > row.pivot) break;
        }
        if (c == 0) continue;
        r = sv_axpy(r, Rational(-c), row.v);
        if (coords)
            for (const auto& [ti, tv] : row.coords) acc.emplace_back(ti, Rational(c * tv));
    }
    if (coords) {
        acc = sv_normalize(std::move(acc));
        coords->assign(tracked_, Rational(0));
        for (const auto& [ti, tv] : acc) (*coords)[ti] = tv;
    }
    return r;
}

bool EchelonBasis::contains(const SparseVec& v) const { return reduce(v).empty(); }

}  // namespace gysin
