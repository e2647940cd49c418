#include "doctest.h"
#include "gysin/oslib.hpp"

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

OSAlgebra concurrent_lines_os() {
    return build_os(from_vectors(2, {{Q(1), Q(0)}, {Q(0), Q(1)}, {Q(1), Q(-1)}}));
}

std::vector<int> dims(const OSAlgebra& os) {
    std::vector<int> out;
    for (int k = 0; k <= os.poset.max_codim; ++k) out.push_back(os.dim_degree(k));
    return out;
}

OSElement random_homogeneous(const OSAlgebra& os, int k, std::mt19937& rng) {
    OSElement e;
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int f : os.poset.by_codim[k])
        for (int i = 0; i < os.dim_flat(f); ++i) e.add(f, i, Q(coef(rng)));
    return e;
}

}  // namespace

TEST_CASE("build_os dimensions") {
    CHECK(dims(concurrent_lines_os()) == std::vector<int>{1, 3, 2});

    for (int n = 1; n <= 4; ++n) {
        OSAlgebra b = build_os(from_vectors(n, boolean_normals(n)));
        std::vector<int> expect;
        long long binom = 1;
        for (int k = 0; k <= n; ++k) {
            expect.push_back(static_cast<int>(binom));
            binom = binom * (n - k) / (k + 1);
        }
        CHECK(dims(b) == expect);
    }

    OSAlgebra braid4 = build_os(from_vectors(4, braid_normals(4)));
    CHECK(dims(braid4) == std::vector<int>{1, 6, 11, 6});
}

TEST_CASE("os_product examples") {
    OSAlgebra b3 = build_os(from_vectors(3, boolean_normals(3)));
    OSElement e1 = b3.monomial(0b001), e2 = b3.monomial(0b010);
    OSElement e12 = os_product(b3, e1, e2);
    CHECK(e12 == b3.monomial(0b011));
    CHECK(os_product(b3, e1, e1).is_zero());

    // three concurrent lines: e_2 e_3 = e_23 rewrites to e_13 - e_12
    OSAlgebra cl = concurrent_lines_os();
    OSElement p = os_product(cl, cl.monomial(0b010), cl.monomial(0b100));
    OSElement expect = cl.monomial(0b101).plus(cl.monomial(0b011).scaled(Q(-1)));
    CHECK(p == expect);
}

TEST_CASE("os_delta examples") {
    OSAlgebra b3 = build_os(from_vectors(3, boolean_normals(3)));
    OSElement d12 = os_delta(b3, b3.monomial(0b011));
    CHECK(d12 == b3.monomial(0b010).plus(b3.monomial(0b001).scaled(Q(-1))));
    CHECK(os_delta(b3, b3.monomial(0b001)) == b3.monomial(0));

    OSAlgebra cl = concurrent_lines_os();
    OSElement x = cl.monomial(0b011).plus(cl.monomial(0b101).scaled(Q(-1)));
    OSElement dx = os_delta(cl, x);
    CHECK(dx == cl.monomial(0b010).plus(cl.monomial(0b100).scaled(Q(-1))));
}

TEST_CASE("delta squared, Leibniz, graded commutativity on central arrangements") {
    std::mt19937 rng(3);
    std::vector<OSAlgebra> zoo;
    zoo.push_back(concurrent_lines_os());
    zoo.push_back(build_os(from_vectors(3, braid_normals(3))));
    zoo.push_back(build_os(from_vectors(4, braid_normals(4))));
    zoo.push_back(build_os(from_vectors(3, boolean_normals(3))));
    for (const OSAlgebra& os : zoo) {
        for (int trial = 0; trial < 8; ++trial) {
            for (int k = 0; k <= os.poset.max_codim; ++k) {
                OSElement a = random_homogeneous(os, k, rng);
                CHECK(os_delta(os, os_delta(os, a)).is_zero());
                for (int k2 = 0; k2 <= os.poset.max_codim; ++k2) {
                    OSElement b = random_homogeneous(os, k2, rng);
                    OSElement lhs = os_delta(os, os_product(os, a, b));
                    OSElement rhs = os_product(os, os_delta(os, a), b)
                                        .plus(os_product(os, a, os_delta(os, b))
                                                  .scaled(Q(k % 2 == 0 ? 1 : -1)));
                    CHECK(lhs == rhs);
                    OSElement ab = os_product(os, a, b);
                    OSElement ba = os_product(os, b, a).scaled(Q((k * k2) % 2 == 0 ? 1 : -1));
                    CHECK(ab == ba);
                }
            }
        }
    }
}

TEST_CASE("circuit relations rewrite to zero") {
    OSAlgebra cl = concurrent_lines_os();
    // e_12 - e_13 + e_23 = 0
    OSElement rel = cl.monomial(0b011)
                        .plus(cl.monomial(0b101).scaled(Q(-1)))
                        .plus(cl.monomial(0b110));
    CHECK(rel.is_zero());

    OSAlgebra braid4 = build_os(from_vectors(4, braid_normals(4)));
    for (Mask c : braid4.circuit_list) {
        OSElement sum;
        for (int i : mask_bits(c)) {
            Mask I0 = c & ~(Mask(1) << i);
            if (braid4.arr.codim(I0) != popcount(I0)) continue;
            sum = sum.plus(braid4.monomial(I0).scaled(Q(sgn(Mask(1) << i, I0))));
        }
        CHECK(sum.is_zero());
    }
}

TEST_CASE("poincare polynomials") {
    for (int n = 1; n <= 6; ++n) {
        OSAlgebra b = build_os(from_vectors(n, braid_normals(n)));
        Polynomial expect({1});
        for (int k = 1; k < n; ++k) expect = poly_mul(expect, Polynomial({1, k}));
        CHECK(poincare_polynomial(b) == expect);
    }
    CHECK(poly_to_string(poincare_polynomial(concurrent_lines_os())) == "1 + 3t + 2t^2");
}

TEST_CASE("deletion-restriction dimensions") {
    // Boolean B_2, delete L_2: dim A_1(L) = dim A_1(L') + dim A_0(L'')
    OSAlgebra b2 = build_os(from_vectors(2, boolean_normals(2)));
    DeletionRestriction dr2 = deletion_restriction(b2);
    CHECK(b2.dim_degree(1) == 2);
    CHECK(dr2.deleted.dim_degree(1) == 1);
    CHECK(dr2.restricted.dim_degree(0) == 1);

    // three concurrent lines, delete L_3 at k = 2
    OSAlgebra cl = concurrent_lines_os();
    DeletionRestriction drc = deletion_restriction(cl);
    CHECK(cl.dim_degree(2) == 2);
    CHECK(drc.deleted.dim_degree(2) == 1);
    CHECK(drc.restricted.dim_degree(1) == 1);
    CHECK(drc.restricted.arr.size == 1);  // both intersections give the same point

    // braid C^3: P(L,t) = P(L',t) + t P(L'',t)
    OSAlgebra braid3 = build_os(from_vectors(3, braid_normals(3)));
    DeletionRestriction dr3 = deletion_restriction(braid3);
    Polynomial lhs = poincare_polynomial(braid3);
    Polynomial rhs = poly_add(poincare_polynomial(dr3.deleted),
                              poly_mul(Polynomial({0, 1}), poincare_polynomial(dr3.restricted)));
    CHECK(lhs == rhs);
}

TEST_CASE("deletion-restriction exactness by rank bookkeeping") {
    std::vector<OSAlgebra> zoo;
    zoo.push_back(concurrent_lines_os());
    zoo.push_back(build_os(from_vectors(3, braid_normals(3))));
    zoo.push_back(build_os(from_vectors(4, braid_normals(4))));
    zoo.push_back(build_os(from_vectors(3, boolean_normals(3))));
    for (const OSAlgebra& os : zoo) {
        DeletionRestriction dr = deletion_restriction(os);
        for (int k = 0; k <= os.poset.max_codim + 1; ++k) {
            SparseMatrix inc = dr.inclusion_matrix(os, k);
            SparseMatrix res = dr.restriction_matrix(os, k);
            int dimL = os.dim_degree(k);
            int dimLp = dr.deleted.dim_degree(k);
            int dimLpp = dr.restricted.dim_degree(k - 1);
            CHECK(dimL == dimLp + dimLpp);
            CHECK(rank(inc) == dimLp);   // injective
            CHECK(rank(res) == dimLpp);  // surjective
            if (inc.cols() > 0 && res.rows() > 0)
                CHECK(res.multiply(inc).nonzeros() == 0);  // j o i = 0; ranks force exactness
        }
    }
}

TEST_CASE("functorial map: identity and minors") {
    OSAlgebra b3 = build_os(from_vectors(3, boolean_normals(3)));
    IntMatrix id(3, 3);
    for (int i = 0; i < 3; ++i) id.a[i][i] = 1;
    OSMap m = os_functorial_map(b3, b3, id);
    for (Mask I = 0; I < 8; ++I) CHECK(m.apply(b3.monomial(I)) == b3.monomial(I));

    // columns (1,1,0) and (0,1,1): e'_12 -> e_12 + e_13 + e_23
    OSAlgebra b2 = build_os(from_vectors(2, boolean_normals(2)));
    IntMatrix mm(3, 2);
    mm.a[0][0] = 1;
    mm.a[1][0] = 1;
    mm.a[1][1] = 1;
    mm.a[2][1] = 1;
    OSMap f = os_functorial_map(b2, b3, mm);
    OSElement img = f.apply(b2.monomial(0b11));
    OSElement expect = b3.monomial(0b011).plus(b3.monomial(0b101)).plus(b3.monomial(0b110));
    CHECK(img == expect);

    IntMatrix neg(3, 2);
    neg.a[0][0] = -1;
    CHECK_THROWS_WITH(os_functorial_map(b2, b3, neg), "negative multiplicity");
}

TEST_CASE("functorial maps compose") {
    // a relabeling followed by a uniform scaling; A(psi o phi) = A(phi) o A(psi)
    auto normals = braid_normals(3);
    OSAlgebra src = build_os(from_vectors(3, normals));
    std::vector<std::vector<Rational>> perm_normals = {normals[2], normals[0], normals[1]};
    OSAlgebra mid = build_os(from_vectors(3, perm_normals));
    IntMatrix P(3, 3);  // rows: src labels, cols: mid labels
    P.a[2][0] = 1;
    P.a[0][1] = 1;
    P.a[1][2] = 1;
    IntMatrix S(3, 3);  // rows: mid labels, cols: src labels
    S.a[0][0] = 2;
    S.a[1][1] = 2;
    S.a[2][2] = 2;
    OSMap a_P = os_functorial_map(mid, src, P);  // A(mid) -> A(src)
    OSMap a_S = os_functorial_map(src, mid, S);  // A(src) -> A(mid)
    IntMatrix C = P.multiply(S);
    OSMap a_C = os_functorial_map(src, src, C);
    for (Mask I = 0; I < 8; ++I) {
        OSElement via = a_P.apply(a_S.apply(src.monomial(I)));
        CHECK(via == a_C.apply(src.monomial(I)));
    }
}

TEST_CASE("null monomials vanish for hypersurface arrangements") {
    // two disjoint hypersurfaces: an abstract oracle with an empty pair
    Arrangement a;
    a.size = 2;
    a.rank_oracle = [](Mask I) -> RankInfo {
        if (popcount(I) <= 1) return {popcount(I), true};
        return {0, false};
    };
    OSAlgebra os = build_os(a);
    CHECK(os.monomial(0b11).is_zero());
    CHECK(os_product(os, os.monomial(0b01), os.monomial(0b10)).is_zero());
    CHECK(dims(os) == std::vector<int>{1, 2});
}
