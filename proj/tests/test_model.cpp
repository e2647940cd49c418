#include "doctest.h"
#include "gysin/confspace.hpp"
#include "gysin/model.hpp"

#include <random>

using namespace gysin;

namespace {

Rational Q(long long x) { return Rational(x); }

Graph complete_graph(int n) {
    Graph g;
    g.vertices = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.edges.emplace_back(i, j);
    return g;
}

GysinModel curve_model(int genus, const Graph& g) {
    return build_model(curve_power_geometry(genus, g));
}

std::vector<int> totals(const BettiTable& t) { return t.total_by_degree; }

ModelElement random_homogeneous(const GysinModel& m, int q, int n, std::mt19937& rng) {
    ModelElement e;
    const ModelLevel* l = m.level(q, n);
    if (!l) return e;
    std::uniform_int_distribution<int> coef(-2, 2);
    for (const ModelGen& g : l->gens) e.add(g.flat, g.cls, g.os, Q(coef(rng)));
    return e;
}

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long b = 1;
    for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
    return b;
}

}  // namespace

TEST_CASE("section 1.3 base model: weight complexes have the stated dimensions") {
    BlowupDemoData d = blown_up_surface_geometry();
    GysinModel base = build_model(d.base);
    // weight 2: Q^3 -> Q
    CHECK(base.level_dim(2, 1) == 3);
    CHECK(base.level_dim(2, 2) == 1);
    // weight 4: Q^2 -> Q^3 -> Q
    CHECK(base.level_dim(4, 2) == 2);
    CHECK(base.level_dim(4, 3) == 3);
    CHECK(base.level_dim(4, 4) == 1);

    GysinModel blown = build_model(d.blown);
    CHECK(blown.level_dim(2, 1) == 4);
    CHECK(blown.level_dim(2, 2) == 2);
    CHECK(blown.level_dim(4, 2) == 3);
    CHECK(blown.level_dim(4, 3) == 4);
    CHECK(blown.level_dim(4, 4) == 1);

    // both weight-4 complexes are acyclic
    for (const GysinModel* m : {&base, &blown}) {
        BettiTable t = weight_betti(*m);
        for (const auto& [nq, dim] : t.entries) CHECK(nq.second != 4);
    }

    // base weight-graded Betti: H^0 weight 0 dim 1; H^1 weight 2 dim 2
    BettiTable t = weight_betti(base);
    CHECK(t.at(0, 0) == 1);
    CHECK(t.at(1, 2) == 2);
    CHECK(totals(t) == std::vector<int>{1, 2, 0, 0, 0});
}

TEST_CASE("g=0 two-vertex model: M_2^1 = Q, M_2^2 = Q^2, d = diagonal class") {
    GysinModel m = curve_model(0, complete_graph(2));
    CHECK(m.level_dim(2, 1) == 1);
    CHECK(m.level_dim(2, 2) == 2);
    const SparseMatrix& d = m.differential(2, 1);
    REQUIRE(d.rows() == 2);
    REQUIRE(d.cols() == 1);
    // 1 -> +-(h(x)1 + 1(x)h): both entries equal and nonzero
    Rational a = d.entry(0, 0), b = d.entry(1, 0);
    CHECK(a == b);
    CHECK(a * a == 1);
}

TEST_CASE("weight betti of configuration spaces") {
    CHECK(totals(weight_betti(curve_model(0, complete_graph(2)))) ==
          std::vector<int>{1, 0, 1, 0, 0});
    CHECK(totals(weight_betti(curve_model(0, complete_graph(3)))) ==
          std::vector<int>{1, 0, 0, 1, 0, 0, 0});

    BettiTable e2 = weight_betti(curve_model(1, complete_graph(2)));
    CHECK(totals(e2) == std::vector<int>{1, 4, 5, 2, 0});
    // weights 0; 1; 2; 3 in degrees 0..3
    CHECK(e2.at(0, 0) == 1);
    CHECK(e2.at(1, 1) == 4);
    CHECK(e2.at(2, 2) == 5);
    CHECK(e2.at(3, 3) == 2);
}

TEST_CASE("torus betti from projective geometry") {
    // P^n minus n+1 coordinate hyperplanes is the algebraic torus
    for (int n = 1; n <= 3; ++n) {
        std::vector<std::vector<Rational>> covs;
        for (int i = 0; i <= n; ++i) {
            std::vector<Rational> v(n + 1, Q(0));
            v[i] = Q(1);
            covs.push_back(v);
        }
        BettiTable t = weight_betti(build_model(projective_geometry(n, covs)));
        std::vector<int> expect;
        for (int k = 0; k <= n; ++k) expect.push_back(static_cast<int>(binom(n, k)));
        expect.resize(totals(t).size(), 0);  // zeros up to the model's top degree
        CHECK(totals(t) == expect);
        for (const auto& [nq, dim] : t.entries) {
            CHECK(nq.second == 2 * nq.first);  // pure weight 2k
            CHECK(dim == binom(n, nq.first));
        }
    }
}

TEST_CASE("d squared is zero across the zoo") {
    std::vector<GysinModel> zoo;
    zoo.push_back(curve_model(0, complete_graph(3)));
    zoo.push_back(curve_model(1, complete_graph(3)));
    zoo.push_back(curve_model(2, complete_graph(2)));
    Graph path4;
    path4.vertices = 4;
    path4.edges = {{0, 1}, {1, 2}, {2, 3}};
    zoo.push_back(curve_model(1, path4));
    BlowupDemoData d = blown_up_surface_geometry();
    zoo.push_back(build_model(d.base));
    zoo.push_back(build_model(d.blown));
    for (const GysinModel& m : zoo) {
        for (const auto& [qn, mat] : m.diff) {
            auto [q, n] = qn;
            const SparseMatrix& next = m.differential(q, n + 1);
            if (next.rows() == 0 || mat.rows() == 0) continue;
            CHECK(next.multiply(mat).nonzeros() == 0);
        }
    }
}

TEST_CASE("model product: unit, examples from the three-lines surface") {
    BlowupDemoData d = blown_up_surface_geometry();
    GysinModel base = build_model(d.base);
    ModelElement unit = base.unit();
    std::mt19937 rng(23);
    for (const auto& [qn, level] : base.levels) {
        ModelElement x = random_homogeneous(base, qn.first, qn.second, rng);
        CHECK(model_product(base, unit, x) == x);
        CHECK(model_product(base, x, unit) == x);
    }

    // (H^0(L_1), e_1) * (H^0(L_2), e_2) lands in H^0(P) (x) e_12
    int fL1 = base.os.poset.find(0b001);
    int fL2 = base.os.poset.find(0b010);
    int fL3 = base.os.poset.find(0b100);
    int fP = base.os.poset.find(0b111);
    ModelElement a, b;
    a.add(fL1, 0, 0, Q(1));
    b.add(fL2, 0, 0, Q(1));
    ModelElement ab = model_product(base, a, b);
    ModelElement expect;
    expect.add(fP, 0, base.os.nbc_index[fP].at(0b011), Q(1));
    CHECK(ab == expect);

    // (H^0(L_2), e_2) * (H^0(L_3), e_3) = H^0(P) (x) (e_13 - e_12)
    ModelElement c;
    c.add(fL3, 0, 0, Q(1));
    ModelElement bc = model_product(base, b, c);
    ModelElement expect2;
    expect2.add(fP, 0, base.os.nbc_index[fP].at(0b101), Q(1));
    expect2.add(fP, 0, base.os.nbc_index[fP].at(0b011), Q(-1));
    CHECK(bc == expect2);
}

TEST_CASE("model product: graded Leibniz, commutativity, associativity") {
    std::mt19937 rng(31);
    std::vector<GysinModel> zoo;
    zoo.push_back(curve_model(1, complete_graph(2)));
    zoo.push_back(curve_model(1, complete_graph(3)));
    zoo.push_back(curve_model(0, complete_graph(3)));
    zoo.push_back(curve_model(2, complete_graph(2)));
    BlowupDemoData bd = blown_up_surface_geometry();
    zoo.push_back(build_model(bd.blown));
    for (const GysinModel& m : zoo) {
        std::vector<std::pair<int, int>> keys;
        for (const auto& [qn, l] : m.levels) keys.push_back(qn);
        std::uniform_int_distribution<int> pick(0, static_cast<int>(keys.size()) - 1);
        for (int t = 0; t < 30; ++t) {
            auto [q1, n1] = keys[pick(rng)];
            auto [q2, n2] = keys[pick(rng)];
            ModelElement a = random_homogeneous(m, q1, n1, rng);
            ModelElement b = random_homogeneous(m, q2, n2, rng);
            // commutativity: ab = (-1)^{n n'} ba
            ModelElement ab = model_product(m, a, b);
            ModelElement ba = model_product(m, b, a).scaled(Q((n1 * n2) % 2 == 0 ? 1 : -1));
            CHECK(ab == ba);
            // Leibniz: d(ab) = d(a) b + (-1)^{n1} a d(b)
            auto d = [&](const ModelElement& x) {
                ModelElement out;
                for (const auto& [k, c] : x.terms) {
                    auto [f, cls, o] = k;
                    auto [q, n] = m.gen_position(f, cls);
                    ModelElement one;
                    one.add(f, cls, o, c);
                    SparseVec v = m.to_vec(q, n, one);
                    const SparseMatrix& dm = m.differential(q, n);
                    if (dm.rows() == 0) continue;
                    std::vector<Rational> img = dm.apply(sv_dense(v, dm.cols()));
                    SparseVec sv;
                    for (size_t i = 0; i < img.size(); ++i)
                        if (img[i] != 0) sv.emplace_back(static_cast<int>(i), img[i]);
                    out = out.plus(m.from_vec(q, n + 1, sv));
                }
                return out;
            };
            ModelElement lhs = d(ab);
            ModelElement rhs =
                model_product(m, d(a), b)
                    .plus(model_product(m, a, d(b)).scaled(Q(n1 % 2 == 0 ? 1 : -1)));
            CHECK(lhs == rhs);
            // associativity on sampled triples
            auto [q3, n3] = keys[pick(rng)];
            ModelElement cc = random_homogeneous(m, q3, n3, rng);
            CHECK(model_product(m, model_product(m, a, b), cc) ==
                  model_product(m, a, model_product(m, b, cc)));
        }
    }
}

TEST_CASE("cohomology representatives") {
    BlowupDemoData d = blown_up_surface_geometry();
    auto base = std::make_shared<GysinModel>(build_model(d.base));
    // (q=2, n=1): kernel of the (1 1 1) gysin matrix is 2-dimensional
    CohomologySpace sp = model_cohomology_basis(*base, 2, 1);
    REQUIRE(sp.reps.size() == 2);
    for (const ModelElement& z : sp.reps) {
        auto coords = sp.reduce(z);
        int ones = 0;
        for (const auto& c : coords) ones += (c != 0);
        CHECK(ones == 1);
    }
    // the unit spans (0, 0)
    CohomologySpace sp0 = model_cohomology_basis(*base, 0, 0);
    REQUIRE(sp0.reps.size() == 1);
    CHECK(sp0.reps[0] == base->unit());
    // a boundary reduces to zero coordinates
    GysinModel e2 = curve_model(1, complete_graph(2));
    CohomologySpace sp2 = model_cohomology_basis(e2, 2, 2);
    REQUIRE(sp2.reps.size() == 5);
    const SparseMatrix& din = e2.differential(2, 1);
    SparseVec img;
    for (int i = 0; i < din.rows(); ++i)
        if (din.entry(i, 0) != 0) img.emplace_back(i, din.entry(i, 0));
    ModelElement bd = e2.from_vec(2, 2, img);
    for (const auto& c : sp2.reduce(bd)) CHECK(c == 0);
    // C(E,2) at (q=1, n=1): the four H^1 classes survive
    CHECK(model_cohomology_basis(e2, 1, 1).reps.size() == 4);
    // non-cocycle rejected
    GysinModel p2 = curve_model(0, complete_graph(2));
    ModelElement notcocycle;
    int fdiag = p2.os.poset.find(1);
    notcocycle.add(fdiag, 0, 0, Q(1));
    CHECK_THROWS_WITH(model_cohomology_basis(p2, 2, 1).reduce(notcocycle), "not closed");
}

TEST_CASE("blowup map reproduces the worked example") {
    BlowupComputation bc = blowup_map();

    // weight 2, degree 1: H^0(L_i) -> (1, 1) into H^0(E) + H^0(L~i)
    const SparseMatrix& F21 = bc.map.block(2, 1);
    REQUIRE(F21.rows() == 4);
    REQUIRE(F21.cols() == 3);
    // columns indexed by base lines; rows by blown codim-1 strata
    for (int c = 0; c < 3; ++c) {
        int nonzero = 0;
        for (int r = 0; r < 4; ++r)
            if (F21.entry(r, c) != 0) {
                CHECK(F21.entry(r, c) == 1);
                ++nonzero;
            }
        CHECK(nonzero == 2);
    }

    // weight 2, degree 2: pullback h -> h
    const SparseMatrix& F22 = bc.map.block(2, 2);
    REQUIRE(F22.cols() == 1);
    REQUIRE(F22.rows() == 2);

    // weight 4, degree 2: the (-1, 1) map on the quotient
    const SparseMatrix& F42 = bc.map.block(4, 2);
    REQUIRE(F42.rows() == 3);
    REQUIRE(F42.cols() == 2);
    for (int c = 0; c < 2; ++c) {
        std::multiset<Rational> vals;
        for (int r = 0; r < 3; ++r) vals.insert(F42.entry(r, c));
        CHECK(vals == std::multiset<Rational>{Q(-1), Q(0), Q(1)});
    }

    QuasiIsoReport rep = verify_quasi_iso(bc.map);
    CHECK(rep.all_iso);
    for (const auto& row : rep.rows)
        if (row.q == 4) CHECK((row.dim_src == 0 && row.dim_tgt == 0));  // acyclic rows
}

TEST_CASE("identity and zero model maps") {
    auto m = std::make_shared<GysinModel>(curve_model(1, complete_graph(2)));
    std::vector<StratumPairing> pairs;
    for (int f = 0; f < static_cast<int>(m->os.poset.flats.size()); ++f) {
        std::vector<SparseVec> cols(m->geom.ring[f].dim());
        for (int i = 0; i < m->geom.ring[f].dim(); ++i) cols[i] = {{i, Q(1)}};
        pairs.push_back({f, f, cols});
    }
    IntMatrix id(m->os.arr.size, m->os.arr.size);
    for (int i = 0; i < id.rows; ++i) id.a[i][i] = 1;
    ModelMap idmap = model_map(m, m, pairs, id);
    QuasiIsoReport rep = verify_quasi_iso(idmap);
    CHECK(rep.all_iso);

    // a zero map between models with cohomology fails the report
    auto p2 = std::make_shared<GysinModel>(curve_model(0, complete_graph(2)));
    std::vector<StratumPairing> zero_pairs;
    for (int f = 0; f < static_cast<int>(p2->os.poset.flats.size()); ++f)
        zero_pairs.push_back(
            {f, f, std::vector<SparseVec>(p2->geom.ring[f].dim(), SparseVec{})});
    IntMatrix zid(p2->os.arr.size, p2->os.arr.size);
    for (int i = 0; i < zid.rows; ++i) zid.a[i][i] = 1;
    // zero pullback with identity multiplicities is still a chain map here
    ModelMap zmap = model_map(p2, p2, zero_pairs, zid);
    QuasiIsoReport zrep = verify_quasi_iso(zmap);
    CHECK(!zrep.all_iso);
}

TEST_CASE("euler characteristic equals chromatic polynomial at 2-2g") {
    for (int g = 0; g <= 2; ++g)
        for (int n = 2; n <= 3; ++n) {
            Graph kn = complete_graph(n);
            BettiTable t = weight_betti(curve_model(g, kn));
            CHECK(t.euler == chromatic_polynomial(kn).eval(2 - 2 * g));
        }
}

TEST_CASE("BOS route agrees with the model route on compactified arrangements") {
    // central arrangement in C^n == P^n minus (projectivized arrangement + infinity)
    auto compactify = [](int n, std::vector<std::vector<Rational>> normals) {
        for (auto& v : normals) v.push_back(Q(0));
        std::vector<Rational> inf(n + 1, Q(0));
        inf[n] = Q(1);
        normals.push_back(inf);
        return projective_geometry(n, normals);
    };
    std::vector<std::pair<int, std::vector<std::vector<Rational>>>> instances;
    instances.push_back({2, {{Q(1), Q(0)}, {Q(0), Q(1)}, {Q(1), Q(-1)}}});
    instances.push_back({3, {{Q(1), Q(0), Q(0)}, {Q(0), Q(1), Q(0)}, {Q(0), Q(0), Q(1)}}});
    instances.push_back(
        {3, {{Q(1), Q(-1), Q(0)}, {Q(1), Q(0), Q(-1)}, {Q(0), Q(1), Q(-1)}}});
    for (const auto& [n, normals] : instances) {
        Polynomial p = poincare_polynomial(build_os(from_vectors(n, normals)));
        BettiTable t = weight_betti(build_model(compactify(n, normals)));
        for (int k = 0; k <= std::max<int>(p.degree(), static_cast<int>(t.total_by_degree.size())); ++k) {
            CHECK(t.at(k, 2 * k) == p.at(k));
            if (k < static_cast<int>(t.total_by_degree.size()))
                CHECK(t.total_by_degree[k] == p.at(k));  // pure weight 2k
        }
    }
}

TEST_CASE("cap produces the documented error") {
    CHECK_THROWS_AS(build_model(curve_power_geometry(2, complete_graph(4)), 10),
                    CapExceededError);
    CHECK_THROWS_WITH(build_model(curve_power_geometry(2, complete_graph(4)), 10),
                      "instance too large");
}
