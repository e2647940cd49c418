#pragma once

#include "gysin/confspace.hpp"
#include "gysin/model.hpp"
#include "gysin/oslib.hpp"
#include "gysin/polynomial.hpp"

#include <string>

#include "json.hpp"

namespace gysin {

using Json = nlohmann::json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- input files ----

struct ArrangementInput {
    int dim = 0;
    std::vector<std::vector<Rational>> normals;
};

struct GeometryInput {
    enum class Kind { CurvePower, Projective, BlowupDemo };
    Kind kind = Kind::BlowupDemo;
    int genus = 0;
    Graph graph;
    int dim = 0;
    std::vector<std::vector<Rational>> normals;

    GeometricArrangement build() const;
    std::string describe() const;
};

ArrangementInput parse_arrangement(const Json& j);
GeometryInput parse_geometry(const Json& j);
Json load_json(const std::string& text_or_path, bool is_inline);

// ---- reports ----

struct OsReport {
    int labels = 0;
    Polynomial poincare;
    struct FlatRow {
        std::vector<int> members;  // 1-based
        int codim = 0;
        int dim = 0;
        bool operator==(const FlatRow&) const = default;
    };
    std::vector<FlatRow> flats;
    std::vector<std::vector<int>> circuits;  // 1-based
    bool operator==(const OsReport&) const = default;
};

struct BettiReport {
    std::string geometry;
    std::vector<std::tuple<int, int, int>> entries;  // (n, q, dim)
    std::vector<int> totals;
    long long euler = 0;
    double runtime_ms = 0;  // not part of equality
    bool operator==(const BettiReport& o) const {
        return geometry == o.geometry && entries == o.entries && totals == o.totals &&
               euler == o.euler;
    }
};

struct ConfigReport {
    BettiReport betti;
    Polynomial chromatic;
    long long chromatic_at = 0;  // value at 2-2g
    bool chromatic_pass = false;
    std::string iso_check;  // "pass" | "fail" | "skipped"
    bool operator==(const ConfigReport&) const = default;
};

struct BlowupReport {
    struct ComplexRow {
        int q = 0;
        std::vector<int> dims_base, dims_blown;  // by ascending degree
        int start_n = 0;
        bool acyclic_base = false, acyclic_blown = false;
        bool operator==(const ComplexRow&) const = default;
    };
    std::vector<ComplexRow> complexes;                          // q = 2 and q = 4
    std::vector<std::tuple<int, int, SparseMatrix>> matrices;   // (q, n, block of M(pi))
    bool chain_map_ok = false;
    std::vector<std::tuple<int, int, int, int, bool>> quasi;    // (q, n, dim src, dim tgt, iso)
    bool all_iso = false;
    bool operator==(const BlowupReport&) const = default;
};

struct SelfcheckReport {
    struct Row {
        std::string name;
        bool pass = false;
        std::string detail;
        bool operator==(const Row&) const = default;
    };
    std::vector<Row> rows;
    bool all_pass = false;
    bool operator==(const SelfcheckReport&) const = default;
};

// ---- serialization (spec wire formats) ----

Json rational_to_json(const Rational& r);          // "p/q" string
Rational rational_from_json(const Json& j);
Json matrix_to_json(const SparseMatrix& m);
SparseMatrix matrix_from_json(const Json& j);
Json os_element_to_json(const OSAlgebra& os, const OSElement& e);
OSElement os_element_from_json(const OSAlgebra& os, const Json& j);
Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);
Json betti_table_to_json(const BettiTable& t);

Json to_json(const OsReport& r);
OsReport os_report_from_json(const Json& j);
Json to_json(const BettiReport& r);
BettiReport betti_report_from_json(const Json& j);
Json to_json(const ConfigReport& r);
ConfigReport config_report_from_json(const Json& j);
Json to_json(const BlowupReport& r);
BlowupReport blowup_report_from_json(const Json& j);
Json to_json(const SelfcheckReport& r);
SelfcheckReport selfcheck_report_from_json(const Json& j);

// ---- text renderers ----

std::string render_text(const OsReport& r);
std::string render_text(const BettiReport& r);
std::string render_text(const ConfigReport& r);
std::string render_text(const BlowupReport& r);
std::string render_text(const SelfcheckReport& r);

// ---- report builders ----

OsReport make_os_report(const OSAlgebra& os);
BettiReport make_betti_report(const std::string& geometry, const BettiTable& t, double runtime_ms);

}  // namespace gysin
