#pragma once

#include "gysin/exactq.hpp"
#include "gysin/geometry.hpp"
#include "gysin/oslib.hpp"

#include <map>
#include <memory>
#include <tuple>

namespace gysin {

struct CapExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Basis element of M_q^n: stratum class cls of H^{2n-q}(S) tensor the
// os-th nbc monomial of A_S, for S the flat of codimension q-n.
struct ModelGen {
    int flat, cls, os;
    auto operator<=>(const ModelGen&) const = default;
};

struct ModelLevel {
    std::vector<ModelGen> gens;
    std::map<std::tuple<int, int, int>, int> index;

    int dim() const { return static_cast<int>(gens.size()); }
};

// Sparse element; (q, n) of a term is determined by its flat and class.
struct ModelElement {
    std::map<std::tuple<int, int, int>, Rational> terms;

    bool is_zero() const { return terms.empty(); }
    void add(int flat, int cls, int os, const Rational& c);
    ModelElement scaled(const Rational& c) const;
    ModelElement plus(const ModelElement& other) const;
    bool operator==(const ModelElement& o) const { return terms == o.terms; }
};

class GysinModel {
public:
    GeometricArrangement geom;
    OSAlgebra os;
    std::map<std::pair<int, int>, ModelLevel> levels;  // (q, n), nonempty only
    std::map<std::pair<int, int>, SparseMatrix> diff;  // d : M_q^n -> M_q^{n+1}
    long long total_dim = 0;
    int max_q = 0;

    const ModelLevel* level(int q, int n) const;
    int level_dim(int q, int n) const;
    const SparseMatrix& differential(int q, int n) const;  // zero-sized if absent

    // (q, n) of a basis generator.
    std::pair<int, int> gen_position(int flat, int cls) const;
    SparseVec to_vec(int q, int n, const ModelElement& e) const;
    ModelElement from_vec(int q, int n, const SparseVec& v) const;

    ModelElement unit() const;
};

GysinModel build_model(const GeometricArrangement& geom, long long cap = 200000);

struct BettiTable {
    std::map<std::pair<int, int>, int> entries;  // (n, q) -> dim, nonzero only
    std::vector<int> total_by_degree;
    long long euler = 0;
    int max_q = 0;

    int at(int n, int q) const {
        auto it = entries.find({n, q});
        return it == entries.end() ? 0 : it->second;
    }
    bool operator==(const BettiTable& o) const {
        return entries == o.entries && total_by_degree == o.total_by_degree && euler == o.euler;
    }
};

BettiTable weight_betti(const GysinModel& model);

ModelElement model_product(const GysinModel& model, const ModelElement& a, const ModelElement& b);

// Cocycle representatives of H^n(M_q) with a deterministic reduction onto
// them modulo the image of d.
struct CohomologySpace {
    int q = 0, n = 0;
    std::vector<ModelElement> reps;
    EchelonBasis ech{0};
    const GysinModel* model = nullptr;

    // Coordinates of a cocycle over reps modulo im d; throws "not closed"
    // on non-cocycles.
    std::vector<Rational> reduce(const ModelElement& z) const;
};

CohomologySpace model_cohomology_basis(const GysinModel& model, int q, int n);

struct ModelMap {
    std::shared_ptr<const GysinModel> source, target;
    std::map<std::pair<int, int>, SparseMatrix> blocks;  // per (q, n)

    const SparseMatrix& block(int q, int n) const;
    ModelElement apply(const ModelElement& x) const;
};

// Stratum correspondence entry: a target flat mapping onto a source flat
// of equal codimension, with the pullback on stratum cohomology.
struct StratumPairing {
    int target_flat;
    int source_flat;
    std::vector<SparseVec> pullback_cols;  // per source ring basis index
};

// Assembles the map M(source) -> M(target) induced by pullbacks and the
// multiplicity matrix, and verifies it is a chain map.
ModelMap model_map(std::shared_ptr<const GysinModel> source,
                   std::shared_ptr<const GysinModel> target,
                   const std::vector<StratumPairing>& pairings, const IntMatrix& mult);

struct QuasiIsoRow {
    int q, n;
    int dim_src, dim_tgt;
    bool injective, surjective;
    bool iso() const { return injective && surjective; }
};

struct QuasiIsoReport {
    std::vector<QuasiIsoRow> rows;
    bool all_iso = true;
};

QuasiIsoReport verify_quasi_iso(const ModelMap& map);

struct BlowupComputation {
    BlowupDemoData data;
    std::shared_ptr<const GysinModel> base, blown;
    ModelMap map;
};

BlowupComputation blowup_map(long long cap = 200000);

}  // namespace gysin
