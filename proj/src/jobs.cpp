#include "torind/jobs.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "torind/error.hpp"

namespace torind::io {

namespace {

struct Outcome {
    bool pass = true;
    std::string verdict;
    json certified_to = nullptr;
    json witnesses = json::array();
    json flags = json::array();
    json details = json::object();
};

void expect_inputs(const std::string& command, const std::vector<Document>& inputs, std::size_t n) {
    if (inputs.size() != n)
        throw Error(ErrorKind::Malformed, command + " expects " + std::to_string(n) + " input document" +
                                              (n == 1 ? "" : "s") + ", got " + std::to_string(inputs.size()));
}

std::string join_subset(const std::vector<std::size_t>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i] + 1);
    return out + "}";
}

json tor_witness(const TorWitness& w) {
    std::ostringstream os;
    os << "Tor_" << w.degree << "(" << (w.subset.size() > 1 ? "tensor of modules " : "module ") << join_subset(w.subset)
       << ", module " << w.against + 1 << ") has dimension " << w.dimension;
    return {{"kind", "tor_nonvanishing"}, {"description", os.str()}};
}

std::string dims_string(const std::vector<std::size_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

json labels_json(const std::vector<std::string>& labels) { return labels; }

Outcome ring_info(const std::vector<Document>& in, const JobOptions& o) {
    expect_inputs("ring-info", in, 1);
    RingPtr ring = parse_ring(in[0], o.p);
    DepthInfo info = depth_and_ecodepth(*ring);
    Outcome out;
    out.verdict = "depth " + std::to_string(info.depth) + ", ecodepth " + std::to_string(info.ecodepth);
    json free = json::array();
    for (auto v : ring->free_variables()) free.push_back(ring->var_names()[v]);
    bool reducible = true;
    try {
        check_reduction_available(*ring);
    } catch (const Error&) {
        reducible = false;
    }
    out.details = {{"ring", ring->describe()},
                   {"artinian", ring->artinian()},
                   {"num_vars", ring->num_vars()},
                   {"free_variables", free},
                   {"depth", to_json(info)},
                   {"koszul_amplitude_equals_ecodepth", info.koszul.amplitude() == info.ecodepth},
                   {"reduction_available", reducible}};
    if (ring->artinian()) out.details["dim"] = ring->dim();
    if (!reducible)
        out.flags.push_back("positive depth needs a regular element outside the variables; reduction unavailable");
    return out;
}

struct RingAndModules {
    RingPtr ring;
    ModuleList mods;
};

RingAndModules ring_and_modules(const std::string& command, const std::vector<Document>& in, const JobOptions& o) {
    expect_inputs(command, in, 2);
    RingPtr ring = parse_ring(in[0], o.p);
    return {ring, parse_modules(in[1], ring)};
}

Outcome resolve(const std::vector<Document>& in, const JobOptions& o) {
    auto [ring, ml] = ring_and_modules("resolve", in, o);
    Outcome out;
    if (!ring->artinian()) out.flags.push_back("modules are resolved over the core ring " + ml.ring->describe());
    json mods = json::array();
    std::string summary;
    for (std::size_t i = 0; i < ml.modules.size(); ++i) {
        ResolutionData r = minimal_free_resolution(ml.modules[i], static_cast<std::size_t>(o.cutoff));
        json pd = r.table.projective_dimension ? json(*r.table.projective_dimension) : json(nullptr);
        mods.push_back({{"label", ml.labels[i]},
                        {"dim", ml.modules[i].dim()},
                        {"betti", r.table.betti},
                        {"projective_dimension", pd},
                        {"minimal", r.minimal},
                        {"certified_to", r.table.certified_to}});
        if (!r.minimal) out.pass = false;
        summary += (i ? "; " : "") + ml.labels[i] + " betti " + dims_string(r.table.betti);
    }
    out.verdict = summary.empty() ? "no modules" : summary;
    out.certified_to = o.cutoff;
    out.details = {{"ring", ml.ring->describe()}, {"modules", mods}};
    return out;
}

Outcome tor(const std::vector<Document>& in, const JobOptions& o) {
    auto [ring, ml] = ring_and_modules("tor", in, o);
    if (ml.modules.size() != 2) throw Error(ErrorKind::Malformed, "tor takes exactly two modules");
    std::vector<std::size_t> dims = tor_dims(ml.modules[0], ml.modules[1], static_cast<std::size_t>(o.cutoff));
    Outcome out;
    out.verdict = "Tor dims " + dims_string(dims);
    out.certified_to = o.cutoff;
    out.details = {{"ring", ml.ring->describe()},
                   {"modules", labels_json(ml.labels)},
                   {"tor_dims", dims},
                   {"balance_checked", true}};
    return out;
}

Outcome independence(const std::vector<Document>& in, const JobOptions& o) {
    auto [ring, ml] = ring_and_modules("independence", in, o);
    IndependenceReport rep = check_strong_tor_independence(ml.modules, static_cast<std::size_t>(o.cutoff));
    Outcome out;
    out.pass = rep.pass;
    out.verdict = rep.pass ? "strongly Tor-independent through degree " + std::to_string(rep.certified_to)
                           : "not strongly Tor-independent";
    out.certified_to = rep.certified_to;
    if (rep.witness) out.witnesses.push_back(tor_witness(*rep.witness));
    out.details = {{"ring", ml.ring->describe()}, {"modules", labels_json(ml.labels)}, {"report", to_json(rep)}};
    return out;
}

Outcome finish_theorem(const TheoremReport& rep) {
    Outcome out;
    out.pass = rep.pass;
    out.verdict = rep.verdict;
    out.certified_to = rep.certified_to;
    for (const auto& w : rep.witnesses) out.witnesses.push_back({{"kind", w.kind}, {"description", w.description}});
    for (const auto& f : rep.flags) out.flags.push_back(f);
    out.details = to_json(rep);
    return out;
}

Outcome verify(const std::vector<Document>& in, const JobOptions& o) {
    auto [ring, ml] = ring_and_modules("verify", in, o);
    Outcome out = finish_theorem(verify_module_theorem(ring, ml.modules, o.cutoff));
    out.details["ring"] = ring->describe();
    out.details["modules"] = labels_json(ml.labels);
    return out;
}

Outcome reduce(const std::vector<Document>& in, const JobOptions& o) {
    auto [ring, ml] = ring_and_modules("reduce", in, o);
    std::size_t v = 0;
    if (o.var) {
        const auto& names = ring->var_names();
        auto it = std::find(names.begin(), names.end(), *o.var);
        if (it == names.end()) throw Error(ErrorKind::Malformed, "--var: no variable named " + *o.var);
        v = static_cast<std::size_t>(it - names.begin());
    } else {
        auto free = ring->free_variables();
        if (free.empty()) {
            if (depth_and_ecodepth(*ring).depth == 0) throw Error(ErrorKind::DepthZero, "depth(R) = 0: nothing to reduce");
            throw Error(ErrorKind::ReductionUnavailable, "no variable avoids the ideal");
        }
        v = free.front();
    }
    Reduction red = regular_element_reduction(ring, ml.modules, v, o.cutoff);
    Outcome out;
    out.pass = red.report.pass;
    out.verdict = "reduced by " + red.report.variable + ": depth " + std::to_string(red.report.depth_before) + " -> " +
                  std::to_string(red.report.depth_after) + ", ecodepth " + std::to_string(red.report.ecodepth_before) +
                  " -> " + std::to_string(red.report.ecodepth_after);
    out.certified_to = o.cutoff;
    if (red.report.independence.witness) out.witnesses.push_back(tor_witness(*red.report.independence.witness));
    if (!red.report.independence.pass)
        out.flags.push_back("reduced family not confirmed independent at the cutoff (evidence of an insufficient cutoff)");
    out.details = {{"report", to_json(red.report)},
                   {"reduced_ring", ring_document(*red.ring)},
                   {"reduced_modules", modules_document(red.modules, ml.labels)}};
    return out;
}

Outcome search(const std::vector<Document>& in, const JobOptions& o) {
    expect_inputs("search", in, 1);
    RingPtr ring = parse_ring(in[0], o.p);
    SearchReport rep = search_independent_families(ring, o.dim_bound, o.n_target, o.cutoff, o.seed, o.candidates);
    Outcome out;
    out.pass = rep.power_bound_consistent;
    out.verdict = std::to_string(rep.total_found) + " independent families of length " + std::to_string(o.n_target) +
                  " among " + std::to_string(rep.candidates) + " candidates";
    out.certified_to = o.cutoff;
    if (!rep.power_bound_consistent)
        out.witnesses.push_back({{"kind", "power_bound_violation"},
                                 {"description", "a family was found although m^n = 0"}});
    for (const auto& f : rep.flags) out.flags.push_back(f);
    out.details = to_json(rep);
    out.details["ring"] = ring->describe();
    out.details["dim_bound"] = o.dim_bound;
    out.details["n_target"] = o.n_target;
    return out;
}

json algebra_summary(const DGAlgebra& a) {
    HomologyAlgebra h = homology_algebra(a);
    std::size_t nil = 1;
    while (augmentation_power(a, nil).dim() != 0) ++nil;
    return {{"dim", a.dim()},
            {"top_degree", a.top_degree()},
            {"homology_dims", h.dims},
            {"homology_inf", h.inf},
            {"homology_sup", h.sup},
            {"s", h.amplitude},
            {"nilpotency_index", nil}};
}

Outcome dg_check(const std::vector<Document>& in, const JobOptions& o) {
    expect_inputs("dg-check", in, 1);
    Outcome out;
    const json& doc = in[0].value;
    const bool modules = doc.is_object() && doc.contains("kind") && doc["kind"] == "dgmodules";
    if (!modules) {
        DGAlgebra a = parse_dgalgebra(in[0], o.p);
        out.details = {{"algebra", algebra_summary(a)}};
        out.verdict = "DG algebra axioms hold; s = " + std::to_string(homology_algebra(a).amplitude);
        return out;
    }
    DGModuleList ml = parse_dgmodules(in[0], o.p);
    out.details["algebra"] = algebra_summary(*ml.algebra);
    json mods = json::array();
    for (std::size_t i = 0; i < ml.modules.size(); ++i) {
        const FiniteDGModule& k = ml.modules[i];
        HomologyProfile prof = homology_profile(k);
        json entry = {{"label", ml.labels[i]}, {"dim", k.dim()}, {"profile", to_json(prof)}};
        if (!prof.zero()) {
            SemifreeResolution res = minimal_semifree_resolution(k, std::max(o.cutoff, *prof.inf()));
            entry["perfect"] = res.complete;
            entry["semibasis_size"] = res.module.size();
            entry["resolved_through"] = res.resolved_through;
            if (!res.complete)
                out.flags.push_back(ml.labels[i] + ": resolution still growing at degree " +
                                    std::to_string(res.resolved_through));
        }
        mods.push_back(std::move(entry));
    }
    out.details["modules"] = mods;
    out.certified_to = o.cutoff;
    out.verdict = "DG algebra and " + std::to_string(ml.modules.size()) + " DG modules satisfy the axioms";
    return out;
}

Outcome syzygy(const std::vector<Document>& in, const JobOptions& o) {
    expect_inputs("syzygy", in, 1);
    DGModuleList ml = parse_dgmodules(in[0], o.p);
    if (ml.modules.empty()) throw Error(ErrorKind::Malformed, "no modules given");
    Outcome out;
    std::vector<int> degrees;
    json packages = json::array();
    for (std::size_t i = 0; i < ml.modules.size(); ++i) {
        HomologyProfile prof = homology_profile(ml.modules[i]);
        if (prof.zero()) throw Error(ErrorKind::ZeroModule, ml.labels[i] + " has zero homology");
        const int r = o.degree ? *o.degree : *prof.sup();
        degrees.push_back(r);
        SyzygyPackage pkg = syzygy_construction(ml.modules[i], r);
        BoundsReport b = verify_syzygy_bounds(pkg);
        if (!pkg.checks.all() || !b.pass) {
            out.pass = false;
            out.witnesses.push_back({{"kind", "syzygy_check_failed"}, {"description", ml.labels[i]}});
        }
        if (!b.applicable) out.flags.push_back(ml.labels[i] + ": amp H(K) > s, bounds not applicable");
        packages.push_back({{"label", ml.labels[i]},
                            {"r", r},
                            {"t", pkg.t},
                            {"input_profile", to_json(pkg.input_profile)},
                            {"cover_size", pkg.cover.size()},
                            {"cover_profile", to_json(pkg.cover_profile)},
                            {"truncation_profile", to_json(pkg.truncation_profile)},
                            {"syzygy_dim", pkg.syzygy.dim()},
                            {"syzygy_profile", to_json(pkg.syzygy_profile)},
                            {"checks", to_json(pkg.checks)},
                            {"bounds", to_json(b)}});
    }
    out.details["packages"] = packages;
    if (ml.modules.size() > 1) {
        BatchReport batch = batch_syzygy_independence(ml.modules, degrees, o.cutoff);
        if (!batch.pass) out.pass = false;
        out.details["batch"] = to_json(batch);
    }
    if (o.power) {
        AnnihilationReport ann = annihilation_check(ml.modules, degrees, *o.power, o.cutoff);
        if (!ann.pass) {
            out.pass = false;
            out.witnesses.push_back({{"kind", "not_annihilated"}, {"description", *ann.witness}});
        }
        out.details["annihilation"] = to_json(ann);
    }
    out.certified_to = o.cutoff;
    out.verdict = out.pass ? "syzygy packages verified" : "syzygy checks failed";
    return out;
}

Outcome verify_dg(const std::vector<Document>& in, const JobOptions& o) {
    expect_inputs("verify-dg", in, 1);
    DGModuleList ml = parse_dgmodules(in[0], o.p);
    Outcome out = finish_theorem(verify_dg_theorem(ml.modules, o.cutoff));
    out.details["modules"] = labels_json(ml.labels);
    out.details["algebra"] = algebra_summary(*ml.algebra);
    return out;
}

using Handler = Outcome (*)(const std::vector<Document>&, const JobOptions&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
    static const std::vector<std::pair<std::string, Handler>> h = {
        {"ring-info", ring_info}, {"resolve", resolve},   {"tor", tor},         {"independence", independence},
        {"dg-check", dg_check},   {"syzygy", syzygy},     {"verify-dg", verify_dg}, {"verify", verify},
        {"reduce", reduce},       {"search", search}};
    return h;
}

json digest_inputs(const std::string& command, const std::vector<Document>& inputs, const JobOptions& o) {
    json opts = {{"cutoff", o.cutoff}, {"seed", o.seed}};
    if (o.p) opts["p"] = *o.p;
    if (o.degree) opts["degree"] = *o.degree;
    if (o.power) opts["power"] = *o.power;
    if (o.var) opts["var"] = *o.var;
    if (command == "search") {
        opts["dim_bound"] = o.dim_bound;
        opts["n_target"] = o.n_target;
        opts["candidates"] = o.candidates;
    }
    json docs = json::array();
    for (const auto& d : inputs) {
        docs.push_back(d.value);
        // referenced algebras are part of the input
        if (d.value.is_object() && d.value.contains("algebra_ref") && d.value["algebra_ref"].is_string()) {
            std::filesystem::path target(d.value["algebra_ref"].get<std::string>());
            if (target.is_relative() && !d.path.empty()) target = d.path.parent_path() / target;
            try {
                docs.push_back(load_document(target).value);
            } catch (const Error&) {
            }
        }
    }
    return {{"command", command}, {"options", opts}, {"documents", docs}};
}

std::uint32_t report_prime(const std::vector<Document>& inputs, const JobOptions& o) {
    for (const auto& d : inputs)
        if (d.value.is_object() && d.value.contains("p") && d.value["p"].is_number_unsigned())
            return d.value["p"].get<std::uint32_t>();
    return o.p ? *o.p : PrimeField::kDefaultPrime;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, _] : handlers()) n.push_back(name);
        return n;
    }();
    return names;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::PreconditionUnverified:
        case ErrorKind::PerfectInput:
        case ErrorKind::PowerNotZero:
        case ErrorKind::BalanceMismatch:
            return 1;
        default:
            return 2;
    }
}

JobResult run_job(const std::string& command, const std::vector<Document>& inputs, const JobOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    JobResult result;
    json& r = result.report;
    r["schema"] = kSchema;
    r["command"] = command;
    r["inputs_digest"] = fnv1a64(digest_inputs(command, inputs, options).dump());
    r["p"] = report_prime(inputs, options);
    r["cutoff"] = options.cutoff;
    r["seed"] = options.seed;
    r["error"] = nullptr;
    auto it = std::find_if(handlers().begin(), handlers().end(), [&](const auto& h) { return h.first == command; });
    try {
        if (it == handlers().end()) throw Error(ErrorKind::Malformed, "unknown command '" + command + "'");
        if (options.cutoff < 1) throw Error(ErrorKind::Malformed, "--cutoff must be at least 1");
        if (options.p && !la::is_prime(*options.p))
            throw Error(ErrorKind::Malformed, "--char " + std::to_string(*options.p) + " is not prime");
        Outcome out = it->second(inputs, options);
        r["pass"] = out.pass;
        r["verdict"] = out.verdict;
        r["certified_to"] = out.certified_to;
        r["witnesses"] = out.witnesses;
        r["flags"] = out.flags;
        r["details"] = out.details;
        result.exit_code = out.pass ? 0 : 1;
    } catch (const Error& e) {
        // what() starts with the kind name; keep only the message proper
        std::string message = e.what();
        const std::string prefix = std::string(to_string(e.kind())) + ": ";
        if (message.rfind(prefix, 0) == 0) message.erase(0, prefix.size());
        result.exit_code = exit_code_for(e.kind());
        r["pass"] = false;
        r["verdict"] = result.exit_code == 1 ? "precondition or assertion failed" : "input error";
        r["certified_to"] = nullptr;
        r["witnesses"] = json::array();
        if (result.exit_code == 1)
            r["witnesses"].push_back({{"kind", std::string(to_string(e.kind()))}, {"description", message}});
        r["flags"] = json::array();
        r["details"] = json::object();
        r["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", message}};
    }
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r["timings"] = {{"wall_ms", ms}, {"threads", worker_count()}};
    return result;
}

json reproducible_part(const json& report) {
    json out = report;
    out.erase("timings");
    return out;
}

std::string render_text(const json& r) {
    std::ostringstream os;
    os << "torind " << r.value("command", std::string()) << "  [" << r.value("schema", std::string()) << "]\n";
    os << "p = " << r["p"] << ", cutoff = " << r["cutoff"] << ", seed = " << r["seed"] << "\n";
    os << "inputs: " << r.value("inputs_digest", std::string()) << "\n";
    os << "verdict: " << r.value("verdict", std::string()) << (r.value("pass", false) ? "  [PASS]" : "  [FAIL]") << "\n";
    if (!r["certified_to"].is_null()) os << "certified through degree " << r["certified_to"] << "\n";
    if (!r["error"].is_null())
        os << "error (" << r["error"]["kind"].get<std::string>() << "): " << r["error"]["message"].get<std::string>()
           << "\n";
    for (const auto& w : r["witnesses"])
        os << "witness (" << w["kind"].get<std::string>() << "): " << w["description"].get<std::string>() << "\n";
    for (const auto& f : r["flags"]) os << "flag: " << f.get<std::string>() << "\n";
    if (!r["details"].empty()) {
        os << "details:\n";
        for (auto it = r["details"].begin(); it != r["details"].end(); ++it) {
            std::string v = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
            if (v.size() > 400) v = v.substr(0, 400) + " ...";
            os << "  " << it.key() << ": " << v << "\n";
        }
    }
    if (r.contains("timings")) os << "timings: " << r["timings"].dump() << "\n";
    return os.str();
}

}  // namespace torind::io
