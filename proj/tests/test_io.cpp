#include <string>

#include "doctest.h"
#include "torind/error.hpp"
#include "torind/jobs.hpp"

using namespace torind;
using namespace torind::io;

namespace {

Document data(const std::string& name) { return load_document(std::string(TORIND_DATA_DIR) + "/" + name); }

Document inline_doc(const std::string& text) { return {json::parse(text), {}}; }

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::AxiomViolation;
}

std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("ring documents are parsed strictly") {
    RingPtr r = parse_ring(data("ring_x2_y2.json"), std::nullopt);
    CHECK(r->describe() == "k[x,y]/(x^2,y^2)");
    CHECK(parse_ring(Document{ring_document(*r), {}}, std::nullopt)->describe() == r->describe());
    auto ring_with = [](const std::string& extra) {
        return inline_doc(R"({"schema": "torind/1", "kind": "ring", "vars": 2, "gens": [[2, 0], [0, 2]])" + extra +
                          "}");
    };
    CHECK(parse_ring(ring_with(""), std::nullopt)->num_vars() == 2);
    CHECK(kind_of([&] { parse_ring(ring_with(R"(, "colour": 1)"), std::nullopt); }) == ErrorKind::Malformed);
    CHECK(kind_of([&] { parse_ring(ring_with(R"(, "p": 32003)"), 7); }) == ErrorKind::Malformed);
    CHECK(kind_of([&] { parse_ring(ring_with(R"(, "p": 8)"), std::nullopt); }) == ErrorKind::Malformed);
    CHECK(kind_of([&] {
              parse_ring(inline_doc(R"({"schema": "torind/2", "kind": "ring", "vars": 1, "gens": [[2]]})"),
                         std::nullopt);
          }) == ErrorKind::Malformed);
    CHECK(kind_of([&] {
              parse_ring(inline_doc(R"({"schema": "torind/1", "kind": "modules", "modules": []})"), std::nullopt);
          }) == ErrorKind::Malformed);
    CHECK(kind_of([] { load_document("/nonexistent/ring.json"); }) == ErrorKind::Malformed);
}

TEST_CASE("module documents report the failing location") {
    RingPtr r = parse_ring(data("ring_x2_y2.json"), std::nullopt);
    ModuleList ml = parse_modules(data("pair_x_y.json"), r);
    CHECK(ml.modules.size() == 2);
    CHECK(ml.labels[1] == "R/(y)");
    const std::string bad = R"({"schema": "torind/1", "kind": "modules", "modules": [
        {"presentation": {"generators": 1, "relations": []}},
        {"presentation": {"generators": 1, "relations": [[[[1, [1]]]]]}}]})";
    const std::string msg = message_of([&] { parse_modules(inline_doc(bad), r); });
    CHECK(msg.find("modules[1]") != std::string::npos);
    const std::string noncommuting = R"({"schema": "torind/1", "kind": "modules", "modules": [
        {"actions": [[[0, 0], [1, 0]], [[0, 1], [0, 0]]]}]})";
    CHECK(kind_of([&] { parse_modules(inline_doc(noncommuting), r); }) == ErrorKind::AxiomViolation);
}

TEST_CASE("DG documents") {
    DGModuleList dl = parse_dgmodules(data("exterior_explicit.json"), std::nullopt);
    CHECK(dl.modules.size() == 2);
    CHECK(dl.semifree[1].has_value());
    CHECK(dl.algebra->dim() == 2);
    DGModuleList ref = parse_dgmodules(data("exterior_residue.json"), std::nullopt);
    CHECK(ref.modules.front().dim() == 1);
    const std::string unknown = R"({"schema": "torind/1", "kind": "dgmodules", "algebra_ref": "exterior_1.json",
        "modules": [{"kind": "cofree"}]})";
    Document doc{json::parse(unknown), std::string(TORIND_DATA_DIR) + "/inline.json"};
    CHECK(kind_of([&] { parse_dgmodules(doc, std::nullopt); }) == ErrorKind::Malformed);
}

TEST_CASE("exit codes") {
    CHECK(exit_code_for(ErrorKind::Malformed) == 2);
    CHECK(exit_code_for(ErrorKind::AxiomViolation) == 2);
    CHECK(exit_code_for(ErrorKind::ReductionUnavailable) == 2);
    CHECK(exit_code_for(ErrorKind::PreconditionUnverified) == 1);
    CHECK(exit_code_for(ErrorKind::PerfectInput) == 1);
    CHECK(exit_code_for(ErrorKind::PowerNotZero) == 1);
    CHECK(exit_code_for(ErrorKind::BalanceMismatch) == 1);

    JobOptions o;
    auto ring = data("ring_x2_y2.json");
    CHECK(run_job("verify", {ring, data("pair_x_y.json")}, o).exit_code == 0);
    CHECK(run_job("independence", {ring, data("residue_pair.json")}, o).exit_code == 1);
    CHECK(run_job("tor", {ring, data("residue_pair.json"), data("pair_x_y.json")}, o).exit_code == 2);
    CHECK(run_job("no-such-command", {}, o).exit_code == 2);
    JobOptions bad;
    bad.cutoff = 0;
    CHECK(run_job("ring-info", {ring}, bad).exit_code == 2);
    JobResult perfect = run_job("verify-dg", {data("exterior_free.json")}, o);
    CHECK(perfect.exit_code == 1);
    CHECK(perfect.report["error"]["kind"] == "PerfectInput");
    CHECK(perfect.report["error"]["message"].get<std::string>().rfind("PerfectInput", 0) == std::string::npos);
}

TEST_CASE("reports are deterministic and digested") {
    JobOptions o;
    o.seed = 5;
    auto ring = data("ring_x2_y2.json");
    JobResult a = run_job("verify", {ring, data("pair_x_y.json")}, o);
    JobResult b = run_job("verify", {ring, data("pair_x_y.json")}, o);
    CHECK(reproducible_part(a.report).dump() == reproducible_part(b.report).dump());
    CHECK(a.report.contains("timings"));
    CHECK(!reproducible_part(a.report).contains("timings"));
    CHECK(a.report["inputs_digest"].get<std::string>().rfind("fnv1a64:", 0) == 0);
    JobOptions other = o;
    other.cutoff = 9;
    CHECK(run_job("verify", {ring, data("pair_x_y.json")}, other).report["inputs_digest"] != a.report["inputs_digest"]);
    CHECK(fnv1a64("") == "fnv1a64:cbf29ce484222325");
    CHECK(fnv1a64("a") == "fnv1a64:af63dc4c8601ec8c");

    const std::string text = render_text(a.report);
    CHECK(text.find(a.report["verdict"].get<std::string>()) != std::string::npos);
    CHECK(text.find("[PASS]") != std::string::npos);

    JobOptions s;
    s.seed = 11;
    s.candidates = 40;
    auto m2 = data("ring_m_squared.json");
    JobResult s1 = run_job("search", {m2}, s), s2 = run_job("search", {m2}, s);
    CHECK(reproducible_part(s1.report).dump() == reproducible_part(s2.report).dump());
}
