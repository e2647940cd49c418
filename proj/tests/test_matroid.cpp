#include "doctest.h"
#include "gysin/matroid.hpp"

#include <algorithm>
#include <random>

using namespace gysin;

namespace {

Rational Q(long long x) { return Rational(x); }

std::vector<std::vector<Rational>> braid_normals(int n) {
    std::vector<std::vector<Rational>> covs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<Rational> v(n, Q(0));
            v[i] = Q(1);
            v[j] = Q(-1);
            covs.push_back(v);
        }
    return covs;
}

std::vector<std::vector<Rational>> boolean_normals(int n) {
    std::vector<std::vector<Rational>> covs;
    for (int i = 0; i < n; ++i) {
        std::vector<Rational> v(n, Q(0));
        v[i] = Q(1);
        covs.push_back(v);
    }
    return covs;
}

Arrangement concurrent_lines() {
    return from_vectors(2, {{Q(1), Q(0)}, {Q(0), Q(1)}, {Q(1), Q(-1)}});
}

// Brute-force minimal dependent sets straight from the oracle.
std::vector<Mask> circuits_oracle(const Arrangement& arr) {
    std::vector<Mask> dep;
    for (Mask I = 1; I < (Mask(1) << arr.size); ++I) {
        RankInfo ri = arr.info(I);
        if (ri.nonempty && ri.codim < popcount(I)) dep.push_back(I);
    }
    std::vector<Mask> out;
    for (Mask I : dep) {
        bool minimal = true;
        for (Mask J : dep)
            if (J != I && (J & ~I) == 0) minimal = false;
        if (minimal) out.push_back(I);
    }
    return out;
}

// Moebius function of the interval [0^, S] by recursive summation.
long long moebius(const FlatPoset& poset, int top) {
    std::vector<long long> mu(poset.flats.size(), 0);
    mu[0] = 1;  // ambient flat is the bottom
    for (int f = 1; f < static_cast<int>(poset.flats.size()); ++f) {
        if (!poset.stratum_contains(0, f)) continue;
        long long s = 0;
        for (int g = 0; g < static_cast<int>(poset.flats.size()); ++g)
            if (g != f && poset.stratum_contains(g, f) && poset.stratum_contains(0, g)) s += mu[g];
        mu[f] = -s;
    }
    return mu[top];
}

}  // namespace

TEST_CASE("from_vectors codim examples") {
    Arrangement a = concurrent_lines();
    CHECK(a.codim(0b111) == 2);

    Arrangement b = from_vectors(3, boolean_normals(3));
    CHECK(b.codim(0b111) == 3);

    Arrangement c = from_vectors(3, braid_normals(3));
    CHECK(c.codim(0b111) == 2);
}

TEST_CASE("from_vectors input validation") {
    CHECK_THROWS_WITH(from_vectors(2, {{Q(0), Q(0)}}), "degenerate hyperplane");
    CHECK_THROWS_WITH(from_vectors(2, {{Q(1), Q(1)}, {Q(2), Q(2)}}), "repeated hyperplane");
    CHECK_THROWS_WITH(from_vectors(2, {{Q(1), Q(1)}, {Q(-2), Q(-2)}}), "repeated hyperplane");
}

TEST_CASE("is_independent") {
    Arrangement c = from_vectors(3, braid_normals(3));
    CHECK(is_independent(c, 0b011));
    CHECK(!is_independent(c, 0b111));
    CHECK(is_independent(c, 0));
}

TEST_CASE("circuits") {
    CHECK(circuits(concurrent_lines()) == std::vector<Mask>{0b111});
    CHECK(circuits(from_vectors(3, boolean_normals(3))).empty());

    Arrangement braid4 = from_vectors(4, braid_normals(4));
    auto cs = circuits(braid4);
    auto oracle = circuits_oracle(braid4);
    std::sort(oracle.begin(), oracle.end());
    auto sorted = cs;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == oracle);
    CHECK(cs.size() == 7);  // 4 triangles + 3 four-cycles of K_4
    int size3 = 0, size4 = 0;
    for (Mask c : cs) (popcount(c) == 3 ? size3 : size4)++;
    CHECK(size3 == 4);
    CHECK(size4 == 3);
    // size-4 circuits contain no 3-circuit by minimality (checked above)
}

TEST_CASE("flats") {
    FlatPoset p = flats(concurrent_lines());
    REQUIRE(p.max_codim == 2);
    CHECK(p.by_codim[0].size() == 1);
    CHECK(p.by_codim[1].size() == 3);
    CHECK(p.by_codim[2].size() == 1);
    CHECK(p.flats[p.by_codim[2][0]].members == 0b111);

    FlatPoset b2 = flats(from_vectors(2, boolean_normals(2)));
    CHECK(b2.flats.size() == 4);

    FlatPoset braid3 = flats(from_vectors(3, braid_normals(3)));
    CHECK(braid3.by_codim[0].size() == 1);
    CHECK(braid3.by_codim[1].size() == 3);
    CHECK(braid3.by_codim[2].size() == 1);
}

TEST_CASE("sgn") {
    // I' = {1,2,3}: removing the 2nd smallest gives (-1)^(2-1)
    CHECK(sgn(Mask(0b010), Mask(0b101)) == -1);
    CHECK(sgn(0, Mask(0b110)) == 1);
    CHECK(sgn(Mask(0b100), Mask(0b011)) == 1);
    CHECK_THROWS(sgn(Mask(0b110), Mask(0b010)));

    // associativity of the wedge convention on disjoint triples
    std::mt19937 rng(7);
    for (int t = 0; t < 200; ++t) {
        Mask I = rng() & 0x3ff, J = rng() & 0x3ff, K = rng() & 0x3ff;
        J &= ~I;
        K &= ~(I | J);
        CHECK(sgn(I, J) * sgn(I | J, K) == sgn(J, K) * sgn(I, J | K));
    }
}

TEST_CASE("nbc sets") {
    Arrangement cl = concurrent_lines();
    auto circs = circuits(cl);
    auto top = nbc_sets(cl, circs, 0b111, 2);
    CHECK(top == std::vector<Mask>{0b011, 0b101});  // {1,2}, {1,3}

    Arrangement b3 = from_vectors(3, boolean_normals(3));
    auto btop = nbc_sets(b3, circuits(b3), 0b111, 3);
    CHECK(btop == std::vector<Mask>{0b111});

    // braid K_4: per-codim nbc counts 1, 6, 11, 6
    Arrangement braid4 = from_vectors(4, braid_normals(4));
    auto circs4 = circuits(braid4);
    FlatPoset p4 = flats(braid4);
    std::vector<int> counts(p4.max_codim + 1, 0);
    for (const Flat& f : p4.flats)
        counts[f.codim] +=
            static_cast<int>(nbc_sets(braid4, circs4, f.members, f.codim).size());
    CHECK(counts == std::vector<int>{1, 6, 11, 6});
}

TEST_CASE("moebius equals nbc count on every flat") {
    std::vector<Arrangement> zoo = {
        concurrent_lines(),
        from_vectors(3, boolean_normals(3)),
        from_vectors(3, braid_normals(3)),
        from_vectors(4, braid_normals(4)),
    };
    for (const Arrangement& arr : zoo) {
        FlatPoset p = flats(arr);
        auto circs = circuits(arr);
        for (int f = 0; f < static_cast<int>(p.flats.size()); ++f) {
            long long mu = moebius(p, f);
            long long nbc = static_cast<long long>(
                nbc_sets(arr, circs, p.flats[f].members, p.flats[f].codim).size());
            CHECK(std::abs(mu) == nbc);
        }
    }
}

TEST_CASE("exchange property spot-check") {
    Arrangement braid4 = from_vectors(4, braid_normals(4));
    std::mt19937 rng(11);
    int tried = 0;
    while (tried < 100) {
        Mask I = rng() & 0x3f, J = rng() & 0x3f;
        RankInfo ri = braid4.info(I), rj = braid4.info(J);
        if (ri.codim != popcount(I) || rj.codim != popcount(J)) continue;
        if (popcount(I) >= popcount(J)) continue;
        ++tried;
        bool found = false;
        for (int j : mask_bits(J & ~I))
            if (braid4.codim(I | (Mask(1) << j)) == popcount(I) + 1) found = true;
        CHECK(found);
    }
}

TEST_CASE("per-flat dimensions are independent of label order") {
    auto normals = braid_normals(4);
    Arrangement a = from_vectors(4, normals);
    std::reverse(normals.begin(), normals.end());
    Arrangement b = from_vectors(4, normals);
    auto dims = [](const Arrangement& arr) {
        FlatPoset p = flats(arr);
        auto circs = circuits(arr);
        std::map<std::pair<int, Mask>, int> out;  // keyed by codim only for multiset compare
        std::map<int, std::multiset<int>> per_codim;
        for (const Flat& f : p.flats)
            per_codim[f.codim].insert(
                static_cast<int>(nbc_sets(arr, circs, f.members, f.codim).size()));
        return per_codim;
    };
    CHECK(dims(a) == dims(b));
}

TEST_CASE("label cap") {
    std::vector<std::vector<Rational>> covs;
    for (int i = 0; i < 21; ++i) {
        std::vector<Rational> v(21, Q(0));
        v[i] = Q(1);
        covs.push_back(v);
    }
    CHECK_THROWS_WITH(from_vectors(21, covs), "too many hypersurfaces (cap 20)");
}
