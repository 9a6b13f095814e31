#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "torind/dgmod.hpp"
#include "torind/ringkit.hpp"
#include "torind/theorem.hpp"

namespace torind::io {

using json = nlohmann::json;

inline constexpr const char* kSchema = "torind/1";

struct Document {
    json value;
    std::filesystem::path path;  // empty for in-memory documents
};

// Reads and parses a JSON file. Throws Malformed with the file name.
Document load_document(const std::filesystem::path& path);

// The prime of a document: its own "p" if present, which must agree with
// `requested` when both are given.
std::uint32_t resolve_prime(const json& doc, std::optional<std::uint32_t> requested, const std::string& where);

// {"schema", "kind": "ring", "p"?, "vars": [names] | count, "gens": [[exponents]]}
RingPtr parse_ring(const Document& doc, std::optional<std::uint32_t> p);

// {"schema", "kind": "modules", "modules": [{"label"?, "actions": [matrix per
// variable]} | {"label"?, "presentation": {"generators": g, "relations":
// [[polynomial x g]]}}]}. Over a non-artinian ring the modules live over the
// core ring (variables occurring in the ideal). A polynomial is a list of
// [coefficient, exponent vector] terms.
struct ModuleList {
    RingPtr ring;  // the ring the modules are defined over
    std::vector<FGModule> modules;
    std::vector<std::string> labels;
};
ModuleList parse_modules(const Document& doc, const RingPtr& ring);

// {"schema", "kind": "dgalgebra", "p"?, "basis": [{label, degree}], "unit",
// "mult": [[i, j, [[k, c]]]], "diff": [[j, [[i, c]]]]}
DGAlgebra parse_dgalgebra(const Document& doc, std::optional<std::uint32_t> p);

// {"schema", "kind": "dgmodules", "algebra": {...} | "algebra_ref": path,
// "modules": [...]}. Module entries are {"kind": "dgmodule", "basis",
// "diff", "action": [[b, j, [[i, c]]]]}, {"kind": "semifree", "semibasis",
// "diff": [[j, [[i, [[b, c]]]]]]}, {"kind": "algebra"} or {"kind":
// "residue"}, each with optional "label" and "shift".
struct DGModuleList {
    AlgebraPtr algebra;
    json algebra_document;  // resolved, for digests
    std::vector<FiniteDGModule> modules;
    std::vector<std::optional<SemifreeDGModule>> semifree;
    std::vector<std::string> labels;
};
DGModuleList parse_dgmodules(const Document& doc, std::optional<std::uint32_t> p);

std::string fnv1a64(const std::string& bytes);

json to_json(const Matrix& m);
json to_json(const FGModule& m);
json to_json(const HomologyProfile& p);
json to_json(const DepthInfo& d);
json to_json(const IndependenceReport& r);
json to_json(const DGIndependenceReport& r);
json to_json(const SyzygyChecks& c);
json to_json(const BoundsReport& r);
json to_json(const BatchReport& r);
json to_json(const AnnihilationReport& r);
json to_json(const ReductionReport& r);
json to_json(const BaseCaseReport& r);
json to_json(const TheoremReport& r);
json to_json(const SearchReport& r);
json ring_document(const MonomialQuotientRing& r);
json modules_document(const std::vector<FGModule>& modules, const std::vector<std::string>& labels = {});

}  // namespace torind::io
