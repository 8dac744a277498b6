#include "weylforge/json_io.hpp"

#include "weylforge/errors.hpp"

#include <algorithm>
#include <set>

namespace wf {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) { fail("MalformedInput", where + ": " + what); }

const Json& expect(const Json& j, bool ok, const std::string& where, const char* what) {
    if (!ok) bad(where, std::string("expected ") + what);
    return j;
}

int as_int(const Json& j, const std::string& where) {
    expect(j, j.is_number_integer(), where, "integer");
    auto v = j.get<long long>();
    if (v < -(1LL << 30) || v > (1LL << 30)) bad(where, "integer out of range");
    return static_cast<int>(v);
}

int as_nonneg(const Json& j, const std::string& where) {
    int v = as_int(j, where);
    if (v < 0) bad(where, "negative value");
    return v;
}

const Json& as_array(const Json& j, const std::string& where) { return expect(j, j.is_array(), where, "array"); }

std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }
std::string dot(const std::string& where, const char* k) { return where + "." + k; }

// Truncation: absent or null means untruncated.
int trunc_from(const Json& j, const char* key, int none, const std::string& where) {
    if (!j.contains(key) || j[key].is_null()) return none;
    int t = as_int(j[key], dot(where, key));
    if (t <= 0) bad(dot(where, key), "truncation must be positive");
    return t;
}

Json trunc_json(int t, int none) { return t >= none ? Json(nullptr) : Json(t); }

std::vector<int> int_list(const Json& j, const std::string& where) {
    as_array(j, where);
    std::vector<int> r;
    for (std::size_t i = 0; i < j.size(); ++i) r.push_back(as_int(j[i], at(where, i)));
    return r;
}

Json matrix_elem(const MatWeyl& m, int row, int col, Json& terms) {
    const auto& a = m.at(row, col);
    for (const auto& [mono, c] : a.terms()) {
        Json x = Json::array(), y = Json::array();
        for (int i = 0; i < m.n(); ++i) {
            x.push_back(mono.a(i));
            y.push_back(mono.b(i));
        }
        terms.push_back({{"x", x}, {"y", y}, {"h", mono.c}, {"coef", to_string(c)}, {"row", row}, {"col", col}});
    }
    return terms;
}

std::string idx_name(int k, int n) { return (k < n ? "dx" : "dy") + std::to_string((k < n ? k : k - n) + 1); }

int idx_from(const Json& j, int n, const std::string& where) {
    expect(j, j.is_string(), where, "index string like \"dx1\"");
    std::string s = j.get<std::string>();
    if (s.size() < 3 || s[0] != 'd' || (s[1] != 'x' && s[1] != 'y')) bad(where, "bad index '" + s + "'");
    int k = 0;
    for (std::size_t i = 2; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9' || k > 1000) bad(where, "bad index '" + s + "'");
        k = 10 * k + (s[i] - '0');
    }
    if (k < 1 || k > n) bad(where, "index out of range '" + s + "'");
    return s[1] == 'x' ? k - 1 : n + k - 1;
}

template <bool IsVec>
Json formal_json(const Formal<IsVec>& a) {
    Json terms = Json::array();
    int n = a.n();
    for (const auto& [k, c] : a.terms()) {
        Json idx = Json::array();
        for (int b = 0; b < 2 * n; ++b)
            if (k.mask >> b & 1) {
                std::string s = idx_name(b, n);
                if (IsVec) s = "d/" + s.substr(1);
                idx.push_back(s);
            }
        terms.push_back({{"mono", k.mono}, {"idx", idx}, {"coef", to_json(c)}});
    }
    return {{"n", n}, {"dtrunc", trunc_json(a.trunc(), Formal<IsVec>::kNoTrunc)}, {"terms", terms}};
}

template <bool IsVec>
Formal<IsVec> formal_from(const Json& j, const std::string& where) {
    expect(j, j.is_object(), where, "object");
    check_keys(j, {"n", "dtrunc", "terms"}, where);
    int n = int_field(j, "n", where);
    if (n < 1 || 2 * n > 31) bad(dot(where, "n"), "variable count out of range");
    Formal<IsVec> r(n, trunc_from(j, "dtrunc", Formal<IsVec>::kNoTrunc, where));
    const Json& terms = as_array(field(j, "terms", where), dot(where, "terms"));
    for (std::size_t t = 0; t < terms.size(); ++t) {
        std::string w = at(dot(where, "terms"), t);
        expect(terms[t], terms[t].is_object(), w, "object");
        check_keys(terms[t], {"mono", "idx", "coef"}, w);
        Exps mono = int_list(field(terms[t], "mono", w), dot(w, "mono"));
        if (static_cast<int>(mono.size()) != 2 * n) bad(dot(w, "mono"), "length must be 2n");
        for (int v : mono)
            if (v < 0) bad(dot(w, "mono"), "negative exponent");
        const Json& idx = as_array(field(terms[t], "idx", w), dot(w, "idx"));
        std::vector<int> slots;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            Json s = idx[i];
            if (IsVec && s.is_string()) {
                std::string str = s.get<std::string>();
                if (str.rfind("d/", 0) == 0) s = "d" + str.substr(2);
            }
            slots.push_back(idx_from(s, n, at(dot(w, "idx"), i)));
        }
        // Sort into the canonical order, tracking the sign of the permutation.
        int sign = 1;
        for (std::size_t a = 0; a < slots.size(); ++a)
            for (std::size_t b = a + 1; b < slots.size(); ++b) {
                if (slots[a] == slots[b]) bad(dot(w, "idx"), "repeated index");
                if (slots[a] > slots[b]) sign = -sign;
            }
        std::uint32_t mask = 0;
        for (int s : slots) mask |= 1u << s;
        HUSeries c = series_from(field(terms[t], "coef", w), dot(w, "coef"));
        if (sign < 0) c = -c;
        r.add(mono, mask, c);
    }
    return r;
}

}  // namespace

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail("MalformedInput", "JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    expect(j, j.is_object(), where, "object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& kv : j.items())
        if (!ok.count(kv.key())) bad(where, "unknown field '" + kv.key() + "'");
}

const Json& field(const Json& j, const char* key, const std::string& where) {
    expect(j, j.is_object(), where, "object");
    if (!j.contains(key)) bad(where, std::string("missing field '") + key + "'");
    return j[key];
}

int int_field(const Json& j, const char* key, const std::string& where) {
    return as_int(field(j, key, where), dot(where, key));
}

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()), 10);
    expect(j, j.is_string(), where, "fraction string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        std::string msg = e.what();
        bad(where, msg.substr(msg.find(": ") + 2));
    }
}

Json to_json(const RVec& v) {
    Json r = Json::array();
    for (const auto& x : v) r.push_back(to_string(x));
    return r;
}

RVec rvec_from(const Json& j, const std::string& where) {
    as_array(j, where);
    RVec r;
    for (std::size_t i = 0; i < j.size(); ++i) r.push_back(rational_from(j[i], at(where, i)));
    return r;
}

Json to_json(const RMat& m) {
    Json r = Json::array();
    for (const auto& row : m) r.push_back(to_json(row));
    return r;
}

RMat rmat_from(const Json& j, const std::string& where) {
    as_array(j, where);
    RMat r;
    for (std::size_t i = 0; i < j.size(); ++i) {
        r.push_back(rvec_from(j[i], at(where, i)));
        if (r.back().size() != r.front().size()) bad(at(where, i), "ragged matrix");
    }
    return r;
}

Json to_json(const HUSeries& s) {
    Json terms = Json::array();
    for (const auto& [k, c] : s.terms()) terms.push_back({{"h", k.first}, {"u", k.second}, {"coef", to_string(c)}});
    Json r = {{"h_trunc", trunc_json(s.h_trunc(), HUSeries::kNoTrunc)},
              {"u_trunc", trunc_json(s.u_trunc(), HUSeries::kNoTrunc)},
              {"terms", terms}};
    if (s.ring() == HUSeries::Ring::Z) r["ring"] = "z";
    return r;
}

HUSeries series_from(const Json& j, const std::string& where) {
    // A bare fraction string is a constant.
    if (j.is_string() || j.is_number_integer()) return HUSeries::constant(rational_from(j, where));
    check_keys(j, {"h_trunc", "u_trunc", "ring", "terms"}, where);
    HUSeries::Ring ring = HUSeries::Ring::HU;
    if (j.contains("ring")) {
        const Json& r = j["ring"];
        if (r == "z")
            ring = HUSeries::Ring::Z;
        else if (r != "hu")
            bad(dot(where, "ring"), "expected \"hu\" or \"z\"");
    }
    auto trunc = [&](const char* key) {
        if (!j.contains(key) || j[key].is_null()) return HUSeries::kNoTrunc;
        return as_int(j[key], dot(where, key));
    };
    HUSeries s(trunc("h_trunc"), trunc("u_trunc"), ring);
    const Json& terms = as_array(field(j, "terms", where), dot(where, "terms"));
    for (std::size_t t = 0; t < terms.size(); ++t) {
        std::string w = at(dot(where, "terms"), t);
        check_keys(terms[t], {"h", "u", "coef"}, w);
        int h = int_field(terms[t], "h", w);
        int u = terms[t].contains("u") ? int_field(terms[t], "u", w) : 0;
        if (ring == HUSeries::Ring::Z && u != 0) bad(w, "z-series terms carry no u");
        s.add_term(h, u, rational_from(field(terms[t], "coef", w), dot(w, "coef")));
    }
    return s;
}

Json to_json(const MatWeyl& m) {
    Json terms = Json::array();
    for (int i = 0; i < m.e(); ++i)
        for (int k = 0; k < m.e(); ++k) matrix_elem(m, i, k, terms);
    const auto& a = m.at(0, 0);
    return {{"n", m.n()}, {"e", m.e()}, {"cmin", a.cmin()}, {"wtrunc", trunc_json(m.wtrunc(), WeylElement::kNoTrunc)},
            {"terms", terms}};
}

Json to_json(const WeylElement& a) { return to_json(MatWeyl::scalar(1, a)); }

MatWeyl matweyl_from(const Json& j, const std::string& where) {
    check_keys(j, {"n", "e", "cmin", "wtrunc", "terms"}, where);
    int n = int_field(j, "n", where);
    if (n < 1 || n > kMaxVars) bad(dot(where, "n"), "variable count must be in 1.." + std::to_string(kMaxVars));
    int e = j.contains("e") ? int_field(j, "e", where) : 1;
    if (e < 1 || e > 64) bad(dot(where, "e"), "rank out of range");
    int cmin = j.contains("cmin") ? int_field(j, "cmin", where) : 0;
    int wtrunc = trunc_from(j, "wtrunc", WeylElement::kNoTrunc, where);
    MatWeyl m(e, n, wtrunc, cmin);
    const Json& terms = as_array(field(j, "terms", where), dot(where, "terms"));
    for (std::size_t t = 0; t < terms.size(); ++t) {
        std::string w = at(dot(where, "terms"), t);
        check_keys(terms[t], {"x", "y", "h", "coef", "row", "col"}, w);
        auto x = int_list(field(terms[t], "x", w), dot(w, "x"));
        auto y = int_list(field(terms[t], "y", w), dot(w, "y"));
        if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n) bad(w, "exponent lists must have length n");
        WMono mono;
        for (int i = 0; i < n; ++i) {
            if (x[i] < 0 || x[i] > 255 || y[i] < 0 || y[i] > 255) bad(w, "exponent out of range 0..255");
            mono.a(i) = static_cast<std::uint8_t>(x[i]);
            mono.b(i) = static_cast<std::uint8_t>(y[i]);
        }
        mono.c = terms[t].contains("h") ? int_field(terms[t], "h", w) : 0;
        if (mono.c < cmin) bad(dot(w, "h"), "h-exponent below cmin");
        int row = terms[t].contains("row") ? int_field(terms[t], "row", w) : 0;
        int col = terms[t].contains("col") ? int_field(terms[t], "col", w) : 0;
        if (row < 0 || row >= e || col < 0 || col >= e) bad(w, "row/col out of range");
        m.at(row, col).add(mono, rational_from(field(terms[t], "coef", w), dot(w, "coef")));
    }
    return m;
}

WeylElement weyl_from(const Json& j, const std::string& where) {
    MatWeyl m = matweyl_from(j, where);
    if (m.e() != 1) bad(dot(where, "e"), "expected a scalar element (e = 1)");
    return m.at(0, 0);
}

Json to_json(const ModuleElement& m) {
    Json comps = Json::array();
    for (const auto& c : m.comp) comps.push_back(to_json(c));
    return {{"q", m.q}, {"components", comps}};
}

ModuleElement module_element_from(const Json& j, const std::string& where) {
    check_keys(j, {"q", "components"}, where);
    ModuleElement m;
    m.q = as_nonneg(field(j, "q", where), dot(where, "q"));
    const Json& comps = as_array(field(j, "components", where), dot(where, "components"));
    if (comps.empty()) bad(dot(where, "components"), "need at least one component");
    for (std::size_t i = 0; i < comps.size(); ++i) {
        m.comp.push_back(weyl_from(comps[i], at(dot(where, "components"), i)));
        if (m.comp.back().n() != m.comp.front().n()) bad(at(dot(where, "components"), i), "variable count mismatch");
    }
    if (m.q > m.comp.front().n()) bad(dot(where, "q"), "q exceeds n");
    if (!m.valid()) bad(where, "components must be free of y_1..y_q");
    return m;
}

Json to_json(const FormalForm& a) { return formal_json(a); }
Json to_json(const PolyVec& v) { return formal_json(v); }
FormalForm form_from(const Json& j, const std::string& where) { return formal_from<false>(j, where); }
PolyVec polyvec_from(const Json& j, const std::string& where) { return formal_from<true>(j, where); }

Json to_json(const LieAlgebra& g) {
    Json sc = Json::array();
    for (int i = 0; i < g.dim(); ++i)
        for (int k = i + 1; k < g.dim(); ++k)
            for (int l = 0; l < g.dim(); ++l)
                if (!is_zero(g.bracket(i, k)[l])) sc.push_back({i, k, l, to_string(g.bracket(i, k)[l])});
    Json r = {{"dim", g.dim()}, {"sc", sc}, {"h", g.h()}};
    if (!g.labels().empty()) r["labels"] = g.labels();
    if (!g.trivial_module()) {
        Json act = Json::array();
        for (int i = 0; i < g.dim(); ++i) act.push_back(to_json(g.act(i)));
        r["vdim"] = g.vdim();
        r["action"] = act;
    }
    return r;
}

LieAlgebra lie_from(const Json& j, const std::string& where) {
    check_keys(j, {"dim", "sc", "h", "labels", "vdim", "action"}, where);
    int dim = int_field(j, "dim", where);
    if (dim < 1 || dim > 64) bad(dot(where, "dim"), "dimension out of range");
    std::vector<std::vector<RVec>> sc(dim, std::vector<RVec>(dim, RVec(dim, Rational(0))));
    const Json& list = as_array(field(j, "sc", where), dot(where, "sc"));
    for (std::size_t t = 0; t < list.size(); ++t) {
        std::string w = at(dot(where, "sc"), t);
        if (!list[t].is_array() || list[t].size() != 4) bad(w, "expected [i, j, k, \"c\"]");
        int a = as_int(list[t][0], w), b = as_int(list[t][1], w), c = as_int(list[t][2], w);
        if (a < 0 || b < 0 || c < 0 || a >= dim || b >= dim || c >= dim) bad(w, "index out of range");
        if (a == b) bad(w, "[e_i, e_i] must vanish");
        Rational v = rational_from(list[t][3], w);
        sc[a][b][c] += v;
        sc[b][a][c] -= v;
    }
    std::vector<int> h;
    if (j.contains("h")) h = int_list(j["h"], dot(where, "h"));
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        const Json& l = as_array(j["labels"], dot(where, "labels"));
        for (std::size_t i = 0; i < l.size(); ++i) {
            expect(l[i], l[i].is_string(), at(dot(where, "labels"), i), "string");
            labels.push_back(l[i].get<std::string>());
        }
    }
    int vdim = j.contains("vdim") ? int_field(j, "vdim", where) : 1;
    std::vector<RMat> action;
    if (j.contains("action")) {
        const Json& a = as_array(j["action"], dot(where, "action"));
        for (std::size_t i = 0; i < a.size(); ++i) action.push_back(rmat_from(a[i], at(dot(where, "action"), i)));
    }
    return LieAlgebra(dim, sc, h, labels, vdim, action);
}

Json to_json(const Cochain& c) {
    Json table = Json::object();
    for (const auto& [idx, v] : c.table) {
        std::string key;
        for (std::size_t i = 0; i < idx.size(); ++i) key += (i ? "," : "") + std::to_string(idx[i]);
        table[key] = to_json(v);
    }
    return {{"degree", c.degree}, {"vdim", c.vdim}, {"table", table}};
}

Cochain cochain_from(const Json& j, const std::string& where) {
    check_keys(j, {"degree", "vdim", "table"}, where);
    Cochain c;
    c.degree = as_nonneg(field(j, "degree", where), dot(where, "degree"));
    c.vdim = j.contains("vdim") ? int_field(j, "vdim", where) : 1;
    if (c.vdim < 1) bad(dot(where, "vdim"), "must be positive");
    const Json& table = field(j, "table", where);
    expect(table, table.is_object(), dot(where, "table"), "object keyed by index tuples");
    for (const auto& kv : table.items()) {
        std::string w = dot(where, "table") + "[\"" + kv.key() + "\"]";
        std::vector<int> idx;
        std::string key = kv.key();
        std::size_t pos = 0;
        while (!key.empty() && pos <= key.size()) {
            std::size_t comma = key.find(',', pos);
            std::string part = key.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos || part.size() > 6)
                bad(w, "key must be comma-separated indices");
            idx.push_back(std::stoi(part));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (static_cast<int>(idx.size()) != c.degree) bad(w, "tuple length differs from degree");
        RVec v = rvec_from(kv.value(), w);
        if (static_cast<int>(v.size()) != c.vdim) bad(w, "value length differs from vdim");
        int sign = 1;
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a + 1; b < idx.size(); ++b) {
                if (idx[a] == idx[b]) bad(w, "repeated index");
                if (idx[a] > idx[b]) sign = -sign;
            }
        std::vector<int> sorted = idx;
        std::sort(sorted.begin(), sorted.end());
        RVec cur = c.at(sorted);
        for (std::size_t i = 0; i < v.size(); ++i) cur[i] += sign * v[i];
        c.set(sorted, cur);
    }
    return c;
}

Json to_json(const FinAlgebra& A) {
    Json mult = Json::array();
    for (int i = 0; i < A.dim(); ++i)
        for (int k = 0; k < A.dim(); ++k)
            for (int l = 0; l < A.dim(); ++l)
                if (!is_zero(A.mul(i, k)[l])) mult.push_back({i, k, l, to_string(A.mul(i, k)[l])});
    return {{"dim", A.dim()}, {"unit", to_json(A.unit())}, {"mult", mult}};
}

FinAlgebra finalg_from(const Json& j, const std::string& where) {
    check_keys(j, {"dim", "unit", "mult"}, where);
    int dim = int_field(j, "dim", where);
    if (dim < 1 || dim > 64) bad(dot(where, "dim"), "dimension out of range");
    RVec unit = rvec_from(field(j, "unit", where), dot(where, "unit"));
    if (static_cast<int>(unit.size()) != dim) bad(dot(where, "unit"), "length differs from dim");
    std::vector<std::vector<RVec>> mult(dim, std::vector<RVec>(dim, RVec(dim, Rational(0))));
    const Json& list = as_array(field(j, "mult", where), dot(where, "mult"));
    for (std::size_t t = 0; t < list.size(); ++t) {
        std::string w = at(dot(where, "mult"), t);
        if (!list[t].is_array() || list[t].size() != 4) bad(w, "expected [i, j, k, \"c\"]");
        int a = as_int(list[t][0], w), b = as_int(list[t][1], w), c = as_int(list[t][2], w);
        if (a < 0 || b < 0 || c < 0 || a >= dim || b >= dim || c >= dim) bad(w, "index out of range");
        mult[a][b][c] += rational_from(list[t][3], w);
    }
    return FinAlgebra(dim, unit, mult);
}

Json to_json(const ChainTensor& c) {
    Json terms = Json::object();
    for (const auto& [w, s] : c.terms()) {
        std::string key;
        for (std::size_t i = 0; i < w.size(); ++i) key += (i ? "," : "") + std::to_string(w[i]);
        terms[key] = to_json(s);
    }
    return {{"terms", terms}};
}

ChainTensor chain_from(const Json& j, const std::string& where) {
    check_keys(j, {"terms"}, where);
    const Json& terms = field(j, "terms", where);
    expect(terms, terms.is_object(), dot(where, "terms"), "object keyed by index words");
    ChainTensor c;
    for (const auto& kv : terms.items()) {
        std::string w = dot(where, "terms") + "[\"" + kv.key() + "\"]";
        std::vector<int> word;
        std::string key = kv.key();
        std::size_t pos = 0;
        while (true) {
            std::size_t comma = key.find(',', pos);
            std::string part = key.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos || part.size() > 6)
                bad(w, "key must be comma-separated indices");
            word.push_back(std::stoi(part));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        c.add(word, series_from(kv.value(), w));
    }
    return c;
}

Json to_json(const ChernClassExpr& c) {
    Json gens = Json::array();
    for (const auto& [n, k] : c.generators()) gens.push_back({{"name", n}, {"degree", k}});
    Json terms = Json::array();
    for (const auto& [m, s] : c.terms()) {
        Json mono = Json::array();
        for (const auto& [n, k] : m) mono.push_back({n, k});
        terms.push_back({{"mono", mono}, {"coef", to_json(s)}});
    }
    return {{"d", c.d()}, {"generators", gens}, {"terms", terms}};
}

ChernClassExpr chern_from(const Json& j, const std::string& where) {
    check_keys(j, {"d", "generators", "terms"}, where);
    int d = as_nonneg(field(j, "d", where), dot(where, "d"));
    ChernClassExpr c(d);
    const Json& gens = as_array(field(j, "generators", where), dot(where, "generators"));
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::string w = at(dot(where, "generators"), i);
        check_keys(gens[i], {"name", "degree"}, w);
        const Json& name = field(gens[i], "name", w);
        expect(name, name.is_string(), dot(w, "name"), "string");
        int k = int_field(gens[i], "degree", w);
        if (k < 1) bad(dot(w, "degree"), "must be positive");
        c.declare(name.get<std::string>(), k);
    }
    const Json& terms = as_array(field(j, "terms", where), dot(where, "terms"));
    for (std::size_t t = 0; t < terms.size(); ++t) {
        std::string w = at(dot(where, "terms"), t);
        check_keys(terms[t], {"mono", "coef"}, w);
        const Json& mono = as_array(field(terms[t], "mono", w), dot(w, "mono"));
        ChernClassExpr::Mono m;
        for (std::size_t i = 0; i < mono.size(); ++i) {
            std::string wi = at(dot(w, "mono"), i);
            if (!mono[i].is_array() || mono[i].size() != 2 || !mono[i][0].is_string()) bad(wi, "expected [\"name\", power]");
            std::string name = mono[i][0].get<std::string>();
            if (!c.generators().count(name)) bad(wi, "undeclared generator '" + name + "'");
            int k = as_int(mono[i][1], wi);
            if (k < 1) bad(wi, "power must be positive");
            m.push_back({name, k});
        }
        std::sort(m.begin(), m.end());
        for (std::size_t i = 1; i < m.size(); ++i)
            if (m[i].first == m[i - 1].first) bad(dot(w, "mono"), "repeated generator");
        c.add(m, series_from(field(terms[t], "coef", w), dot(w, "coef")));
    }
    return c;
}

}  // namespace wf
