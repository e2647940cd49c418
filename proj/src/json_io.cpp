#include "gysin/json_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace gysin {

GeometricArrangement GeometryInput::build() const {
    switch (kind) {
        case Kind::CurvePower:
            return curve_power_geometry(genus, graph);
        case Kind::Projective:
            return projective_geometry(dim, normals);
        case Kind::BlowupDemo:
            return blown_up_surface_geometry().base;
    }
    throw std::logic_error("unknown geometry kind");
}

std::string GeometryInput::describe() const {
    std::ostringstream s;
    switch (kind) {
        case Kind::CurvePower:
            s << "curvepower genus " << genus << ", " << graph.vertices << " vertices, "
              << graph.edges.size() << " edges";
            break;
        case Kind::Projective:
            s << "projective P^" << dim << " with " << normals.size() << " hyperplanes";
            break;
        case Kind::BlowupDemo:
            s << "blowup-demo base (three lines through a point in P^2)";
            break;
    }
    return s.str();
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError("parse error at " + where + ": " + what);
}

std::vector<std::vector<Rational>> parse_normals(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of covectors");
    std::vector<std::vector<Rational>> out;
    for (const auto& row : j) {
        if (!row.is_array()) fail(where, "covector must be an array of rational strings");
        std::vector<Rational> v;
        for (const auto& x : row) v.push_back(rational_from_json(x));
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

ArrangementInput parse_arrangement(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) fail("$", "missing field 'kind'");
    if (j.at("kind") != "central") fail("$.kind", "expected \"central\"");
    if (!j.contains("dim") || !j.at("dim").is_number_integer()) fail("$.dim", "missing integer dim");
    if (!j.contains("normals")) fail("$.normals", "missing normals");
    ArrangementInput in;
    in.dim = j.at("dim").get<int>();
    in.normals = parse_normals(j.at("normals"), "$.normals");
    return in;
}

GeometryInput parse_geometry(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) fail("$", "missing field 'kind'");
    std::string kind = j.at("kind").get<std::string>();
    GeometryInput in;
    if (kind == "curvepower") {
        in.kind = GeometryInput::Kind::CurvePower;
        if (!j.contains("genus") || !j.at("genus").is_number_integer() || j.at("genus") < 0)
            fail("$.genus", "missing nonnegative integer genus");
        in.genus = j.at("genus").get<int>();
        if (!j.contains("graph") || !j.at("graph").is_object()) fail("$.graph", "missing graph");
        const Json& g = j.at("graph");
        if (!g.contains("vertices") || !g.at("vertices").is_number_integer())
            fail("$.graph.vertices", "missing integer vertex count");
        in.graph.vertices = g.at("vertices").get<int>();
        if (g.contains("edges")) {
            if (!g.at("edges").is_array()) fail("$.graph.edges", "expected array of pairs");
            for (const auto& e : g.at("edges")) {
                if (!e.is_array() || e.size() != 2) fail("$.graph.edges", "edge must be a pair");
                in.graph.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
            }
        }
        in.graph.validate();
    } else if (kind == "projective") {
        in.kind = GeometryInput::Kind::Projective;
        if (!j.contains("dim") || !j.at("dim").is_number_integer())
            fail("$.dim", "missing integer dim");
        in.dim = j.at("dim").get<int>();
        in.normals = parse_normals(j.at("normals"), "$.normals");
    } else if (kind == "blowup-demo") {
        in.kind = GeometryInput::Kind::BlowupDemo;
    } else {
        fail("$.kind", "expected curvepower | projective | blowup-demo, got \"" + kind + "\"");
    }
    return in;
}

Json load_json(const std::string& text_or_path, bool is_inline) {
    std::string text;
    if (is_inline) {
        text = text_or_path;
    } else {
        std::ifstream f(text_or_path);
        if (!f) throw ParseError("cannot open file: " + text_or_path);
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON in " + (is_inline ? std::string("--inline argument") : text_or_path));
    return j;
}

Json rational_to_json(const Rational& r) { return rat_to_string(r); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_string()) throw ParseError("rational must be a string like \"p/q\"");
    return rat_from_string(j.get<std::string>());
}

Json matrix_to_json(const SparseMatrix& m) {
    Json entries = Json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (const auto& [j2, v] : m.row(i)) entries.push_back({i, j2, rat_to_string(v)});
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

SparseMatrix matrix_from_json(const Json& j) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw ParseError("matrix needs rows, cols, entries");
    std::map<std::pair<int, int>, Rational> e;
    for (const auto& t : j.at("entries")) {
        if (!t.is_array() || t.size() != 3) throw ParseError("matrix entry must be [i, j, \"p/q\"]");
        e[{t[0].get<int>(), t[1].get<int>()}] = rational_from_json(t[2]);
    }
    return SparseMatrix(j.at("rows").get<int>(), j.at("cols").get<int>(), e);
}

Json os_element_to_json(const OSAlgebra& os, const OSElement& e) {
    Json terms = Json::array();
    for (const auto& [key, c] : e.terms) {
        Json members = Json::array();
        for (int b : mask_bits(os.poset.flats[key.first].members)) members.push_back(b + 1);
        terms.push_back(
            Json{{"flat", members}, {"basis", key.second}, {"coeff", rat_to_string(c)}});
    }
    return Json{{"terms", terms}};
}

OSElement os_element_from_json(const OSAlgebra& os, const Json& j) {
    OSElement e;
    for (const auto& t : j.at("terms")) {
        Mask m = 0;
        for (const auto& b : t.at("flat")) m |= Mask(1) << (b.get<int>() - 1);
        int f = os.poset.find(m);
        if (f < 0) throw ParseError("unknown flat in OS element");
        e.add(f, t.at("basis").get<int>(), rational_from_json(t.at("coeff")));
    }
    return e;
}

Json polynomial_to_json(const Polynomial& p) {
    Json a = Json::array();
    for (long long c : p.coeff) a.push_back(c);
    return a;
}

Polynomial polynomial_from_json(const Json& j) {
    std::vector<long long> c;
    for (const auto& x : j) c.push_back(x.get<long long>());
    return Polynomial(std::move(c));
}

Json betti_table_to_json(const BettiTable& t) {
    Json entries = Json::array();
    for (const auto& [nq, d] : t.entries)
        entries.push_back(Json{{"n", nq.first}, {"q", nq.second}, {"dim", d}});
    return Json{{"betti", entries}, {"totals", t.total_by_degree}, {"euler", t.euler}};
}

Json to_json(const OsReport& r) {
    Json flats = Json::array();
    for (const auto& f : r.flats)
        flats.push_back(Json{{"members", f.members}, {"codim", f.codim}, {"dim", f.dim}});
    return Json{{"labels", r.labels},
                {"poincare", polynomial_to_json(r.poincare)},
                {"poincare_text", poly_to_string(r.poincare)},
                {"flats", flats},
                {"circuits", r.circuits}};
}

OsReport os_report_from_json(const Json& j) {
    OsReport r;
    r.labels = j.at("labels").get<int>();
    r.poincare = polynomial_from_json(j.at("poincare"));
    for (const auto& f : j.at("flats"))
        r.flats.push_back({f.at("members").get<std::vector<int>>(), f.at("codim").get<int>(),
                           f.at("dim").get<int>()});
    r.circuits = j.at("circuits").get<std::vector<std::vector<int>>>();
    return r;
}

Json to_json(const BettiReport& r) {
    Json entries = Json::array();
    for (const auto& [n, q, d] : r.entries)
        entries.push_back(Json{{"n", n}, {"q", q}, {"dim", d}});
    return Json{{"geometry", r.geometry}, {"betti", entries},     {"totals", r.totals},
                {"euler", r.euler},       {"runtime_ms", r.runtime_ms}};
}

BettiReport betti_report_from_json(const Json& j) {
    BettiReport r;
    r.geometry = j.at("geometry").get<std::string>();
    for (const auto& e : j.at("betti"))
        r.entries.emplace_back(e.at("n").get<int>(), e.at("q").get<int>(), e.at("dim").get<int>());
    r.totals = j.at("totals").get<std::vector<int>>();
    r.euler = j.at("euler").get<long long>();
    r.runtime_ms = j.value("runtime_ms", 0.0);
    return r;
}

Json to_json(const ConfigReport& r) {
    Json j = to_json(r.betti);
    j["chromatic"] = polynomial_to_json(r.chromatic);
    j["chromatic_text"] = poly_to_string(r.chromatic, "k");
    j["chromatic_at"] = r.chromatic_at;
    j["chromatic_check"] = r.chromatic_pass ? "pass" : "fail";
    j["iso_check"] = r.iso_check;
    return j;
}

ConfigReport config_report_from_json(const Json& j) {
    ConfigReport r;
    r.betti = betti_report_from_json(j);
    r.chromatic = polynomial_from_json(j.at("chromatic"));
    r.chromatic_at = j.at("chromatic_at").get<long long>();
    r.chromatic_pass = j.at("chromatic_check") == "pass";
    r.iso_check = j.at("iso_check").get<std::string>();
    return r;
}

Json to_json(const BlowupReport& r) {
    Json complexes = Json::array();
    for (const auto& c : r.complexes)
        complexes.push_back(Json{{"q", c.q},
                                 {"start_n", c.start_n},
                                 {"dims_base", c.dims_base},
                                 {"dims_blown", c.dims_blown},
                                 {"acyclic_base", c.acyclic_base},
                                 {"acyclic_blown", c.acyclic_blown}});
    Json mats = Json::array();
    for (const auto& [q, n, m] : r.matrices)
        mats.push_back(Json{{"q", q}, {"n", n}, {"matrix", matrix_to_json(m)}});
    Json quasi = Json::array();
    for (const auto& [q, n, ds, dt, iso] : r.quasi)
        quasi.push_back(Json{{"q", q}, {"n", n}, {"dim_src", ds}, {"dim_tgt", dt}, {"iso", iso}});
    return Json{{"complexes", complexes},
                {"maps", mats},
                {"chain_map", r.chain_map_ok ? "pass" : "fail"},
                {"quasi_iso", quasi},
                {"all_iso", r.all_iso}};
}

BlowupReport blowup_report_from_json(const Json& j) {
    BlowupReport r;
    for (const auto& c : j.at("complexes")) {
        BlowupReport::ComplexRow row;
        row.q = c.at("q").get<int>();
        row.start_n = c.at("start_n").get<int>();
        row.dims_base = c.at("dims_base").get<std::vector<int>>();
        row.dims_blown = c.at("dims_blown").get<std::vector<int>>();
        row.acyclic_base = c.at("acyclic_base").get<bool>();
        row.acyclic_blown = c.at("acyclic_blown").get<bool>();
        r.complexes.push_back(std::move(row));
    }
    for (const auto& m : j.at("maps"))
        r.matrices.emplace_back(m.at("q").get<int>(), m.at("n").get<int>(),
                                matrix_from_json(m.at("matrix")));
    r.chain_map_ok = j.at("chain_map") == "pass";
    for (const auto& q : j.at("quasi_iso"))
        r.quasi.emplace_back(q.at("q").get<int>(), q.at("n").get<int>(),
                             q.at("dim_src").get<int>(), q.at("dim_tgt").get<int>(),
                             q.at("iso").get<bool>());
    r.all_iso = j.at("all_iso").get<bool>();
    return r;
}

Json to_json(const SelfcheckReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back(Json{{"name", row.name}, {"pass", row.pass}, {"detail", row.detail}});
    return Json{{"checks", rows}, {"all_pass", r.all_pass}};
}

SelfcheckReport selfcheck_report_from_json(const Json& j) {
    SelfcheckReport r;
    for (const auto& row : j.at("checks"))
        r.rows.push_back({row.at("name").get<std::string>(), row.at("pass").get<bool>(),
                          row.at("detail").get<std::string>()});
    r.all_pass = j.at("all_pass").get<bool>();
    return r;
}

// ---- text rendering ----

namespace {

std::string member_set(const std::vector<int>& v) {
    std::string s = "{";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + "}";
}

}  // namespace

std::string render_text(const OsReport& r) {
    std::ostringstream o;
    o << "arrangement with " << r.labels << " hypersurfaces\n";
    o << "poincare polynomial: " << poly_to_string(r.poincare) << "\n";
    o << "flats (members : codim : dim A_S):\n";
    for (const auto& f : r.flats)
        o << "  " << member_set(f.members) << " : " << f.codim << " : " << f.dim << "\n";
    o << "circuits:";
    if (r.circuits.empty()) o << " none";
    for (const auto& c : r.circuits) o << " " << member_set(c);
    o << "\n";
    return o.str();
}

namespace {

void render_betti_body(std::ostringstream& o, const BettiReport& r) {
    int max_q = 0;
    for (const auto& [n, q, d] : r.entries) max_q = std::max(max_q, q);
    o << "weight-graded Betti numbers of " << r.geometry << "\n";
    o << "  n : total |";
    for (int q = 0; q <= max_q; ++q) o << " q=" << q;
    o << "\n";
    for (size_t n = 0; n < r.totals.size(); ++n) {
        o << std::setw(3) << n << " : " << std::setw(5) << r.totals[n] << " |";
        for (int q = 0; q <= max_q; ++q) {
            int d = 0;
            for (const auto& [en, eq, ed] : r.entries)
                if (en == static_cast<int>(n) && eq == q) d = ed;
            o << std::setw(std::to_string(q).size() + 3) << d;
        }
        o << "\n";
    }
    o << "euler characteristic: " << r.euler << "\n";
    o << "runtime: " << std::fixed << std::setprecision(1) << r.runtime_ms << " ms\n";
}

}  // namespace

std::string render_text(const BettiReport& r) {
    std::ostringstream o;
    render_betti_body(o, r);
    return o.str();
}

std::string render_text(const ConfigReport& r) {
    std::ostringstream o;
    render_betti_body(o, r.betti);
    o << "chromatic polynomial: " << poly_to_string(r.chromatic, "k") << "\n";
    o << "chromatic value at 2-2g: " << r.chromatic_at
      << (r.chromatic_pass ? " == euler: pass" : " != euler: FAIL") << "\n";
    o << "alpha/beta isomorphism: " << r.iso_check << "\n";
    return o.str();
}

std::string render_text(const BlowupReport& r) {
    std::ostringstream o;
    o << "blow-up of three concurrent lines in a surface\n";
    for (const auto& c : r.complexes) {
        auto dims = [](const std::vector<int>& v) {
            std::string s;
            for (size_t i = 0; i < v.size(); ++i) {
                if (i) s += " -> ";
                s += "Q^" + std::to_string(v[i]);
            }
            return s;
        };
        o << "weight " << c.q << ":\n";
        o << "  M_" << c.q << "(X,L):  " << dims(c.dims_base)
          << (c.acyclic_base ? "   (acyclic)" : "") << "\n";
        o << "  M_" << c.q << "(X~,L~): " << dims(c.dims_blown)
          << (c.acyclic_blown ? "   (acyclic)" : "") << "\n";
    }
    o << "chain map d o M(pi) = M(pi) o d: " << (r.chain_map_ok ? "pass" : "FAIL") << "\n";
    o << "quasi-isomorphism by (q, n):\n";
    for (const auto& [q, n, ds, dt, iso] : r.quasi)
        o << "  q=" << q << " n=" << n << ": dim H = " << ds << " vs " << dt << " : "
          << (iso ? "iso" : "NOT iso") << "\n";
    o << "quasi-isomorphism overall: " << (r.all_iso ? "yes" : "NO") << "\n";
    return o.str();
}

std::string render_text(const SelfcheckReport& r) {
    std::ostringstream o;
    size_t w = 0;
    for (const auto& row : r.rows) w = std::max(w, row.name.size());
    for (const auto& row : r.rows) {
        o << (row.pass ? "[PASS] " : "[FAIL] ") << row.name;
        for (size_t i = row.name.size(); i < w + 2; ++i) o << ' ';
        o << row.detail << "\n";
    }
    o << (r.all_pass ? "self-check: all checks passed" : "self-check: FAILURES PRESENT") << "\n";
    return o.str();
}

OsReport make_os_report(const OSAlgebra& os) {
    OsReport r;
    r.labels = os.arr.size;
    r.poincare = poincare_polynomial(os);
    for (const Flat& f : os.poset.flats) {
        OsReport::FlatRow row;
        for (int b : mask_bits(f.members)) row.members.push_back(b + 1);
        row.codim = f.codim;
        row.dim = static_cast<int>(os.nbc[os.poset.find(f.members)].size());
        r.flats.push_back(std::move(row));
    }
    for (Mask c : os.circuit_list) {
        std::vector<int> cs;
        for (int b : mask_bits(c)) cs.push_back(b + 1);
        r.circuits.push_back(std::move(cs));
    }
    return r;
}

BettiReport make_betti_report(const std::string& geometry, const BettiTable& t, double runtime_ms) {
    BettiReport r;
    r.geometry = geometry;
    for (const auto& [nq, d] : t.entries) r.entries.emplace_back(nq.first, nq.second, d);
    r.totals = t.total_by_degree;
    r.euler = t.euler;
    r.runtime_ms = runtime_ms;
    return r;
}

}  // namespace gysin
