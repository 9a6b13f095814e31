#include "torind/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "torind/error.hpp"

namespace torind::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::Malformed, where + ": " + what);
}

// Strict object access: every key must be consumed or done() rejects it.
class Fields {
public:
    Fields(const json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j.is_object()) fail(where_, "expected an object");
    }

    const json& req(const std::string& key) {
        auto it = j_.find(key);
        if (it == j_.end()) fail(where_, "missing field '" + key + "'");
        seen_.insert(key);
        return *it;
    }
    const json* opt(const std::string& key) {
        auto it = j_.find(key);
        if (it == j_.end()) return nullptr;
        seen_.insert(key);
        return &*it;
    }
    std::string at(const std::string& key) const { return where_ + "." + key; }
    const std::string& where() const { return where_; }

    void done() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) fail(where_, "unknown field '" + it.key() + "'");
    }

private:
    const json& j_;
    std::string where_;
    std::set<std::string> seen_;
};

long long as_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<long long>();
}

std::size_t as_index(const json& j, const std::string& where, std::size_t bound) {
    const long long v = as_int(j, where);
    if (v < 0 || static_cast<unsigned long long>(v) >= bound)
        fail(where, "index " + std::to_string(v) + " out of range [0, " + std::to_string(bound) + ")");
    return static_cast<std::size_t>(v);
}

const json& as_array(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array");
    return j;
}

std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

std::string item(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

void check_header(Fields& f, const std::string& kind) {
    const json& schema = f.req("schema");
    if (!schema.is_string() || schema.get<std::string>() != kSchema)
        fail(f.at("schema"), std::string("expected \"") + kSchema + "\"");
    const std::string k = as_string(f.req("kind"), f.at("kind"));
    if (k != kind) fail(f.at("kind"), "expected \"" + kind + "\", got \"" + k + "\"");
}

std::string doc_name(const Document& doc) { return doc.path.empty() ? std::string("<input>") : doc.path.string(); }

Matrix parse_matrix(const PrimeField& field, const json& j, const std::string& where, std::optional<std::size_t> size) {
    as_array(j, where);
    const std::size_t rows = j.size();
    if (size && rows != *size) fail(where, "expected " + std::to_string(*size) + " rows");
    Matrix m(field, rows, rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = as_array(j[r], item(where, r));
        if (row.size() != rows) fail(item(where, r), "matrix must be square");
        for (std::size_t c = 0; c < rows; ++c) m.at(r, c) = field.from_int(as_int(row[c], item(item(where, r), c)));
    }
    return m;
}

// Sparse [[index, coefficient]] list into a dense vector.
Vec parse_sparse(const PrimeField& field, const json& j, const std::string& where, std::size_t dim) {
    as_array(j, where);
    Vec v(dim, 0);
    for (std::size_t t = 0; t < j.size(); ++t) {
        const std::string w = item(where, t);
        const json& term = as_array(j[t], w);
        if (term.size() != 2) fail(w, "expected [index, coefficient]");
        const std::size_t i = as_index(term[0], w + "[0]", dim);
        v[i] = field.add(v[i], field.from_int(as_int(term[1], w + "[1]")));
    }
    return v;
}

}  // namespace

Document load_document(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Malformed, path.string() + ": cannot open");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return {json::parse(buf.str()), path};
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Malformed, path.string() + ": " + e.what());
    }
}

std::uint32_t resolve_prime(const json& doc, std::optional<std::uint32_t> requested, const std::string& where) {
    std::optional<std::uint32_t> own;
    if (doc.is_object() && doc.contains("p")) {
        const long long v = as_int(doc["p"], where + ".p");
        if (v < 2 || v > 0x7fffffff || !la::is_prime(static_cast<std::uint32_t>(v)))
            fail(where + ".p", std::to_string(v) + " is not a supported prime");
        own = static_cast<std::uint32_t>(v);
    }
    if (own && requested && *own != *requested)
        fail(where + ".p", "document says p = " + std::to_string(*own) + " but --char " + std::to_string(*requested));
    const std::uint32_t p = own ? *own : requested ? *requested : PrimeField::kDefaultPrime;
    if (!la::is_prime(p)) fail(where, std::to_string(p) + " is not prime");
    return p;
}

RingPtr parse_ring(const Document& doc, std::optional<std::uint32_t> p) {
    const std::string name = doc_name(doc);
    Fields f(doc.value, name);
    check_header(f, "ring");
    f.opt("p");
    const std::uint32_t prime = resolve_prime(doc.value, p, name);
    const json& vars = f.req("vars");
    std::vector<std::string> names;
    std::size_t n = 0;
    if (vars.is_array()) {
        for (std::size_t i = 0; i < vars.size(); ++i) names.push_back(as_string(vars[i], item(f.at("vars"), i)));
        n = names.size();
    } else {
        const long long c = as_int(vars, f.at("vars"));
        if (c < 1 || c > 16) fail(f.at("vars"), "between 1 and 16 variables");
        n = static_cast<std::size_t>(c);
    }
    const json& gens = as_array(f.req("gens"), f.at("gens"));
    std::vector<Exponent> exps;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        const std::string w = item(f.at("gens"), g);
        const json& e = as_array(gens[g], w);
        if (e.size() != n) fail(w, "expected " + std::to_string(n) + " exponents");
        Exponent ex;
        for (std::size_t i = 0; i < n; ++i) {
            const long long v = as_int(e[i], item(w, i));
            if (v < 0 || v > 64) fail(item(w, i), "exponent out of range");
            ex.push_back(static_cast<int>(v));
        }
        exps.push_back(std::move(ex));
    }
    f.done();
    return make_ring(PrimeField(prime), n, std::move(exps), std::move(names));
}

namespace {

// Polynomial over `target`, whose variables are positions `vars` of the
// document ring (exponents may be given over either ring).
RingElement parse_polynomial(const json& j, const std::string& where, const RingPtr& target,
                             const std::vector<std::size_t>& vars, std::size_t full_vars) {
    as_array(j, where);
    Polynomial poly;
    for (std::size_t t = 0; t < j.size(); ++t) {
        const std::string w = item(where, t);
        const json& term = as_array(j[t], w);
        if (term.size() != 2) fail(w, "expected [coefficient, exponents]");
        const long long c = as_int(term[0], w + "[0]");
        const json& e = as_array(term[1], w + "[1]");
        Exponent ex(target->num_vars(), 0);
        if (e.size() == target->num_vars()) {
            for (std::size_t i = 0; i < e.size(); ++i) ex[i] = static_cast<int>(as_int(e[i], item(w + "[1]", i)));
        } else if (e.size() == full_vars) {
            std::vector<bool> core(full_vars, false);
            for (std::size_t i = 0; i < vars.size(); ++i) {
                ex[i] = static_cast<int>(as_int(e[vars[i]], item(w + "[1]", vars[i])));
                core[vars[i]] = true;
            }
            for (std::size_t i = 0; i < full_vars; ++i)
                if (!core[i] && as_int(e[i], item(w + "[1]", i)) != 0)
                    fail(w, "modules are extended from the core ring; free variables must not appear");
        } else {
            fail(w + "[1]", "wrong number of exponents");
        }
        for (int v : ex)
            if (v < 0) fail(w + "[1]", "negative exponent");
        poly.terms.emplace_back(c, std::move(ex));
    }
    return to_ring_element(*target, poly);
}

}  // namespace

ModuleList parse_modules(const Document& doc, const RingPtr& ring) {
    const std::string name = doc_name(doc);
    Fields f(doc.value, name);
    check_header(f, "modules");
    ModuleList out;
    std::vector<std::size_t> vars;
    if (ring->artinian()) {
        out.ring = ring;
        for (std::size_t i = 0; i < ring->num_vars(); ++i) vars.push_back(i);
    } else {
        RingSplit split = split_free_variables(ring);
        if (!split.core->artinian()) throw Error(ErrorKind::NonArtinian, name + ": the core ring is not artinian");
        out.ring = split.core;
        vars = split.core_vars;
    }
    const json& mods = as_array(f.req("modules"), f.at("modules"));
    for (std::size_t m = 0; m < mods.size(); ++m) {
        const std::string w = item(f.at("modules"), m);
        Fields mf(mods[m], w);
        std::string label = "N" + std::to_string(m + 1);
        if (const json* l = mf.opt("label")) label = as_string(*l, mf.at("label"));
        const json* actions = mf.opt("actions");
        const json* pres = mf.opt("presentation");
        if ((actions != nullptr) == (pres != nullptr)) fail(w, "give exactly one of 'actions' or 'presentation'");
        if (actions) {
            as_array(*actions, mf.at("actions"));
            if (actions->size() != out.ring->num_vars())
                fail(mf.at("actions"), "expected one matrix per variable (" + std::to_string(out.ring->num_vars()) + ")");
            std::vector<Matrix> mats;
            std::optional<std::size_t> dim;
            for (std::size_t v = 0; v < actions->size(); ++v) {
                mats.push_back(parse_matrix(out.ring->field(), (*actions)[v], item(mf.at("actions"), v), dim));
                dim = mats.back().rows();
            }
            try {
                out.modules.emplace_back(out.ring, std::move(mats));
            } catch (const Error& e) {
                throw Error(e.kind(), w + ": " + e.what());
            }
        } else {
            Fields pf(*pres, mf.at("presentation"));
            const long long g = as_int(pf.req("generators"), pf.at("generators"));
            if (g < 1 || g > 64) fail(pf.at("generators"), "between 1 and 64 generators");
            std::vector<std::vector<RingElement>> rels;
            const json& rj = as_array(pf.req("relations"), pf.at("relations"));
            for (std::size_t r = 0; r < rj.size(); ++r) {
                const std::string rw = item(pf.at("relations"), r);
                const json& col = as_array(rj[r], rw);
                if (col.size() != static_cast<std::size_t>(g)) fail(rw, "expected one polynomial per generator");
                std::vector<RingElement> column;
                for (std::size_t i = 0; i < col.size(); ++i)
                    column.push_back(parse_polynomial(col[i], item(rw, i), out.ring, vars, ring->num_vars()));
                rels.push_back(std::move(column));
            }
            pf.done();
            out.modules.push_back(module_from_presentation(out.ring, static_cast<std::size_t>(g), rels));
        }
        mf.done();
        out.labels.push_back(label);
    }
    f.done();
    return out;
}

namespace {

DGAlgebra parse_algebra_object(const json& j, const std::string& where, std::optional<std::uint32_t> p,
                               bool header) {
    Fields f(j, where);
    if (header) check_header(f, "dgalgebra");
    else {
        f.opt("schema");
        if (const json* k = f.opt("kind"))
            if (as_string(*k, f.at("kind")) != "dgalgebra") fail(f.at("kind"), "expected \"dgalgebra\"");
    }
    f.opt("p");
    RawDGAlgebra raw;
    raw.p = resolve_prime(j, p, where);
    const json& basis = as_array(f.req("basis"), f.at("basis"));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const std::string w = item(f.at("basis"), i);
        Fields bf(basis[i], w);
        LabeledDegree ld;
        ld.label = as_string(bf.req("label"), bf.at("label"));
        ld.degree = static_cast<int>(as_int(bf.req("degree"), bf.at("degree")));
        bf.done();
        raw.basis.push_back(std::move(ld));
    }
    const std::size_t n = raw.basis.size();
    if (n == 0) fail(f.at("basis"), "empty basis");
    raw.unit = as_index(f.req("unit"), f.at("unit"), n);
    auto terms = [&](const json& t, const std::string& w) {
        std::vector<std::pair<std::size_t, long long>> out;
        as_array(t, w);
        for (std::size_t k = 0; k < t.size(); ++k) {
            const json& pair = as_array(t[k], item(w, k));
            if (pair.size() != 2) fail(item(w, k), "expected [index, coefficient]");
            out.emplace_back(as_index(pair[0], item(w, k) + "[0]", n), as_int(pair[1], item(w, k) + "[1]"));
        }
        return out;
    };
    if (const json* mult = f.opt("mult")) {
        as_array(*mult, f.at("mult"));
        for (std::size_t e = 0; e < mult->size(); ++e) {
            const std::string w = item(f.at("mult"), e);
            const json& row = as_array((*mult)[e], w);
            if (row.size() != 3) fail(w, "expected [i, j, terms]");
            raw.mult.push_back({as_index(row[0], w + "[0]", n), as_index(row[1], w + "[1]", n), terms(row[2], w + "[2]")});
        }
    }
    if (const json* diff = f.opt("diff")) {
        as_array(*diff, f.at("diff"));
        for (std::size_t e = 0; e < diff->size(); ++e) {
            const std::string w = item(f.at("diff"), e);
            const json& row = as_array((*diff)[e], w);
            if (row.size() != 2) fail(w, "expected [j, terms]");
            raw.diff.push_back({as_index(row[0], w + "[0]", n), terms(row[1], w + "[1]")});
        }
    }
    f.done();
    try {
        return validate_dg_algebra(raw);
    } catch (const Error& e) {
        throw Error(e.kind(), where + ": " + e.what());
    }
}

std::vector<LabeledDegree> parse_labeled(const json& j, const std::string& where) {
    as_array(j, where);
    std::vector<LabeledDegree> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        Fields bf(j[i], item(where, i));
        LabeledDegree ld;
        ld.label = as_string(bf.req("label"), bf.at("label"));
        ld.degree = static_cast<int>(as_int(bf.req("degree"), bf.at("degree")));
        bf.done();
        out.push_back(std::move(ld));
    }
    return out;
}

}  // namespace

DGAlgebra parse_dgalgebra(const Document& doc, std::optional<std::uint32_t> p) {
    return parse_algebra_object(doc.value, doc_name(doc), p, true);
}

DGModuleList parse_dgmodules(const Document& doc, std::optional<std::uint32_t> p) {
    const std::string name = doc_name(doc);
    Fields f(doc.value, name);
    check_header(f, "dgmodules");
    DGModuleList out;
    const json* inline_alg = f.opt("algebra");
    const json* ref = f.opt("algebra_ref");
    if ((inline_alg != nullptr) == (ref != nullptr)) fail(name, "give exactly one of 'algebra' or 'algebra_ref'");
    if (inline_alg) {
        out.algebra = std::make_shared<const DGAlgebra>(parse_algebra_object(*inline_alg, f.at("algebra"), p, false));
        out.algebra_document = *inline_alg;
    } else {
        std::filesystem::path target(as_string(*ref, f.at("algebra_ref")));
        if (target.is_relative() && !doc.path.empty()) target = doc.path.parent_path() / target;
        Document alg = load_document(target);
        out.algebra = std::make_shared<const DGAlgebra>(parse_dgalgebra(alg, p));
        out.algebra_document = alg.value;
    }
    const AlgebraPtr& a = out.algebra;
    const PrimeField& field = a->field();
    const std::size_t na = a->dim();
    const json& mods = as_array(f.req("modules"), f.at("modules"));
    for (std::size_t m = 0; m < mods.size(); ++m) {
        const std::string w = item(f.at("modules"), m);
        Fields mf(mods[m], w);
        const std::string kind = as_string(mf.req("kind"), mf.at("kind"));
        std::string label = "K" + std::to_string(m + 1);
        if (const json* l = mf.opt("label")) label = as_string(*l, mf.at("label"));
        int q = 0;
        if (const json* s = mf.opt("shift")) q = static_cast<int>(as_int(*s, mf.at("shift")));
        std::optional<SemifreeDGModule> semi;
        std::optional<FiniteDGModule> fin;
        try {
            if (kind == "algebra") {
                semi = free_semifree(a, {0});
            } else if (kind == "residue") {
                fin = residue_module(a);
            } else if (kind == "semifree") {
                std::vector<LabeledDegree> sb = parse_labeled(mf.req("semibasis"), mf.at("semibasis"));
                const std::size_t ns = sb.size();
                std::vector<std::vector<Vec>> entries(ns, std::vector<Vec>(ns, Vec(na, 0)));
                if (const json* d = mf.opt("diff")) {
                    as_array(*d, mf.at("diff"));
                    for (std::size_t e = 0; e < d->size(); ++e) {
                        const std::string dw = item(mf.at("diff"), e);
                        const json& row = as_array((*d)[e], dw);
                        if (row.size() != 2) fail(dw, "expected [j, [[i, algebra element]]]");
                        const std::size_t j = as_index(row[0], dw + "[0]", ns);
                        const json& terms = as_array(row[1], dw + "[1]");
                        for (std::size_t t = 0; t < terms.size(); ++t) {
                            const std::string tw = item(dw + "[1]", t);
                            const json& pair = as_array(terms[t], tw);
                            if (pair.size() != 2) fail(tw, "expected [i, [[b, c]]]");
                            const std::size_t i = as_index(pair[0], tw + "[0]", ns);
                            Vec v = parse_sparse(field, pair[1], tw + "[1]", na);
                            for (std::size_t b = 0; b < na; ++b) entries[i][j][b] = field.add(entries[i][j][b], v[b]);
                        }
                    }
                }
                semi = SemifreeDGModule(a, std::move(sb), std::move(entries));
            } else if (kind == "dgmodule") {
                std::vector<LabeledDegree> basis = parse_labeled(mf.req("basis"), mf.at("basis"));
                const std::size_t n = basis.size();
                Matrix diff(field, n, n);
                if (const json* d = mf.opt("diff")) {
                    as_array(*d, mf.at("diff"));
                    for (std::size_t e = 0; e < d->size(); ++e) {
                        const std::string dw = item(mf.at("diff"), e);
                        const json& row = as_array((*d)[e], dw);
                        if (row.size() != 2) fail(dw, "expected [j, [[i, c]]]");
                        const std::size_t j = as_index(row[0], dw + "[0]", n);
                        Vec v = parse_sparse(field, row[1], dw + "[1]", n);
                        for (std::size_t i = 0; i < n; ++i) diff.add_to(i, j, v[i]);
                    }
                }
                std::vector<Matrix> action(na, Matrix(field, n, n));
                std::vector<bool> given(na, false);
                if (const json* act = mf.opt("action")) {
                    as_array(*act, mf.at("action"));
                    for (std::size_t e = 0; e < act->size(); ++e) {
                        const std::string aw = item(mf.at("action"), e);
                        const json& row = as_array((*act)[e], aw);
                        if (row.size() != 3) fail(aw, "expected [b, j, [[i, c]]]");
                        const std::size_t b = as_index(row[0], aw + "[0]", na);
                        const std::size_t j = as_index(row[1], aw + "[1]", n);
                        Vec v = parse_sparse(field, row[2], aw + "[2]", n);
                        for (std::size_t i = 0; i < n; ++i) action[b].add_to(i, j, v[i]);
                        given[b] = true;
                    }
                }
                if (!given[a->unit()]) action[a->unit()] = Matrix::identity(field, n);
                std::vector<int> degs;
                for (const auto& b : basis) degs.push_back(b.degree);
                fin = make_dg_module(a, std::move(degs), diff, action);
            } else {
                fail(mf.at("kind"), "unknown module kind \"" + kind + "\"");
            }
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Malformed) throw;
            throw Error(e.kind(), w + ": " + e.what());
        }
        mf.done();
        if (semi) {
            if (q != 0) semi = shift(*semi, q);
            out.modules.push_back(expand(*semi));
        } else {
            if (q != 0) fin = shift(*fin, q);
            out.modules.push_back(*fin);
        }
        out.semifree.push_back(semi);
        out.labels.push_back(label);
    }
    f.done();
    return out;
}

std::string fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << "fnv1a64:" << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

json to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.field().to_signed(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const FGModule& m) {
    json actions = json::array();
    for (const auto& a : m.actions()) actions.push_back(to_json(a));
    return {{"dim", m.dim()}, {"actions", actions}};
}

json to_json(const HomologyProfile& p) {
    json dims = json::array();
    for (const auto& [d, n] : p.dims) dims.push_back({d, n});
    auto opt = [](std::optional<int> v) { return v ? json(*v) : json(nullptr); };
    return {{"dims", dims},      {"inf", opt(p.inf())}, {"sup", opt(p.sup())},
            {"amp", opt(p.amp())}, {"zero", p.zero()},   {"certified_to", opt(p.certified_to)}};
}

json to_json(const DepthInfo& d) {
    return {{"depth", d.depth},
            {"ecodepth", d.ecodepth},
            {"embedding_dim", d.embedding_dim},
            {"koszul_homology", d.koszul.dims},
            {"koszul_inf", d.koszul.inf},
            {"koszul_sup", d.koszul.sup}};
}

namespace {

json subset_json(const std::vector<std::size_t>& s) {
    json out = json::array();
    for (auto i : s) out.push_back(i + 1);
    return out;
}

}  // namespace

json to_json(const IndependenceReport& r) {
    json w = nullptr;
    if (r.witness)
        w = {{"subset", subset_json(r.witness->subset)},
             {"against", r.witness->against + 1},
             {"degree", r.witness->degree},
             {"dimension", r.witness->dimension}};
    return {{"pass", r.pass},
            {"certified_to", r.certified_to},
            {"conditions_checked", r.conditions_checked},
            {"witness", w}};
}

json to_json(const DGIndependenceReport& r) {
    json subsets = json::array();
    auto one = [](const SubsetProfile& s) {
        return json{{"subset", subset_json(s.subset)},
                    {"profile", to_json(s.profile)},
                    {"amplitude", s.amplitude ? json(*s.amplitude) : json(nullptr)}};
    };
    for (const auto& s : r.subsets) subsets.push_back(one(s));
    return {{"pass", r.pass},
            {"s", r.s},
            {"certified_to", r.certified_to},
            {"subsets", subsets},
            {"witness", r.witness ? one(*r.witness) : json(nullptr)}};
}

json to_json(const SyzygyChecks& c) {
    return {{"exact_degreewise", c.exact_degreewise},
            {"image_in_augmentation", c.image_in_augmentation},
            {"truncation_matches", c.truncation_matches},
            {"long_exact_sequence", c.long_exact_sequence}};
}

json to_json(const BoundsReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name},
                          {"value", c.value},
                          {"bound", c.bound},
                          {"relation", c.lower ? ">=" : "<="},
                          {"holds", c.holds()}});
    return {{"pass", r.pass},       {"applicable", r.applicable}, {"vacuous", r.vacuous},
            {"s", r.s},             {"profile", to_json(r.profile)}, {"checks", checks}};
}

json to_json(const BatchReport& r) {
    json pk = json::array(), steps = json::array();
    for (const auto& c : r.packages) pk.push_back(to_json(c));
    for (const auto& s : r.steps)
        steps.push_back({{"replaced", s.replaced},
                         {"pass", s.pass},
                         {"vacuous", s.vacuous},
                         {"report", s.vacuous ? json(nullptr) : to_json(s.report)}});
    return {{"pass", r.pass}, {"packages", pk}, {"steps", steps}};
}

json to_json(const AnnihilationReport& r) {
    return {{"pass", r.pass},
            {"power", r.power},
            {"generators", r.generators},
            {"products_checked", r.products_checked},
            {"products_skipped", r.products_skipped},
            {"syzygy_zero", r.syzygy_zero},
            {"profile", to_json(r.profile)},
            {"witness", r.witness ? json(*r.witness) : json(nullptr)}};
}

json to_json(const ReductionReport& r) {
    return {{"variable", r.variable},
            {"ring_before", r.ring_before},
            {"ring_after", r.ring_after},
            {"depth_before", r.depth_before},
            {"depth_after", r.depth_after},
            {"ecodepth_before", r.ecodepth_before},
            {"ecodepth_after", r.ecodepth_after},
            {"independence", to_json(r.independence)},
            {"pass", r.pass}};
}

json to_json(const BaseCaseReport& r) {
    json subsets = json::array();
    for (const auto& s : r.subsets)
        subsets.push_back({{"subset", subset_json(s.subset)},
                           {"koszul_homology", s.koszul_dims},
                           {"amplitude", s.amplitude ? json(*s.amplitude) : json(nullptr)}});
    return {{"ring", to_json(r.ring)}, {"chain_holds", r.chain_holds}, {"subsets", subsets}, {"pass", r.pass}};
}

json to_json(const TheoremReport& r) {
    json out = {{"theorem", r.theorem},
                {"pass", r.pass},
                {"verdict", r.verdict},
                {"certified_to", r.certified_to},
                {"n", r.n},
                {"effective_n", r.effective_n},
                {"bound", r.bound}};
    if (r.independence) out["independence"] = to_json(*r.independence);
    if (!r.reductions.empty() || r.theorem == "module") {
        json red = json::array();
        for (const auto& x : r.reductions) red.push_back(to_json(x));
        out["reductions"] = red;
    }
    if (r.base_case) out["base_case"] = to_json(*r.base_case);
    if (r.dg_independence) out["dg_independence"] = to_json(*r.dg_independence);
    if (r.truncated_independence) out["truncated_independence"] = to_json(*r.truncated_independence);
    if (!r.semibasis_sizes.empty()) out["semibasis_sizes"] = r.semibasis_sizes;
    return out;
}

json to_json(const SearchReport& r) {
    json found = json::array();
    for (const auto& f : r.found) {
        json mods = json::array();
        for (const auto& m : f.modules) mods.push_back(to_json(m));
        found.push_back({{"candidate", f.candidate},
                         {"modules", mods},
                         {"power_witness", f.power_witness ? json(*f.power_witness) : json(nullptr)}});
    }
    return {{"candidates", r.candidates},
            {"rejected_modules", r.rejected_modules},
            {"families_tested", r.families_tested},
            {"total_found", r.total_found},
            {"found", found},
            {"power_bound_consistent", r.power_bound_consistent}};
}

json ring_document(const MonomialQuotientRing& r) {
    return {{"schema", kSchema},
            {"kind", "ring"},
            {"p", r.field().p()},
            {"vars", r.var_names()},
            {"gens", r.generators()}};
}

json modules_document(const std::vector<FGModule>& modules, const std::vector<std::string>& labels) {
    json mods = json::array();
    for (std::size_t i = 0; i < modules.size(); ++i) {
        json actions = json::array();
        for (const auto& a : modules[i].actions()) actions.push_back(to_json(a));
        json m = {{"actions", actions}};
        if (i < labels.size()) m["label"] = labels[i];
        mods.push_back(std::move(m));
    }
    return {{"schema", kSchema}, {"kind", "modules"}, {"modules", mods}};
}

}  // namespace torind::io
