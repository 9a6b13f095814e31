#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "torind/error.hpp"
#include "torind/jobs.hpp"

namespace fs = std::filesystem;
using torind::io::json;

namespace {

// Write to a sibling temporary and rename over the target.
bool write_atomically(const fs::path& target, const std::string& text) {
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return false;
        out << text;
        if (!out.flush()) return false;
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) fs::remove(tmp, ec);
    return !ec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strong Tor-independence and amplitude bounds over local rings and DG algebras"};
    app.require_subcommand(1);

    torind::io::JobOptions opts;
    std::uint32_t prime = 0;
    std::string format = "text";
    std::string out_path;
    std::vector<std::string> files;
    std::size_t power = 0;
    std::string var;

    auto common = [&](CLI::App* sub) {
        sub->add_option("inputs", files, "input documents")->required()->check(CLI::ExistingFile);
        sub->add_option("--char", prime, "characteristic p (a prime; default 32003)");
        sub->add_option("--cutoff", opts.cutoff, "homological cutoff D")->capture_default_str();
        sub->add_option("--seed", opts.seed, "random seed")->capture_default_str();
        sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
        sub->add_option("--out", out_path, "write the report here instead of stdout");
    };
    std::vector<CLI::App*> subs;
    const std::vector<std::pair<std::string, std::string>> help = {
        {"ring-info", "depth, ecodepth and Koszul homology of a ring"},
        {"resolve", "minimal free resolutions and Betti numbers"},
        {"tor", "dimensions of Tor between two modules"},
        {"independence", "strong Tor-independence of a family of modules"},
        {"dg-check", "DG algebra axioms, homology and module profiles"},
        {"syzygy", "syzygy construction and its bounds for DG modules"},
        {"verify-dg", "amplitude bound for a family of DG modules"},
        {"verify", "ecodepth bound for a family of modules"},
        {"reduce", "one reduction step by a variable avoiding the ideal"},
        {"search", "seeded search for independent families"},
    };
    for (const auto& [name, text] : help) {
        CLI::App* sub = app.add_subcommand(name, text);
        common(sub);
        subs.push_back(sub);
        if (name == "syzygy") {
            sub->add_option("--degree", opts.degree, "truncation degree r (default sup H(K))");
            sub->add_option("--power", power, "also check annihilation assuming (A_+)^n = 0");
        }
        if (name == "reduce") sub->add_option("--var", var, "variable to drop (default: first free variable)");
        if (name == "search") {
            sub->add_option("--dim-bound", opts.dim_bound, "largest module dimension")->capture_default_str();
            sub->add_option("--n-target", opts.n_target, "family length")->capture_default_str();
            sub->add_option("--candidates", opts.candidates, "number of candidate families")->capture_default_str();
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string command;
    for (CLI::App* sub : subs)
        if (sub->parsed()) command = sub->get_name();
    if (prime != 0) opts.p = prime;
    if (power != 0) opts.power = power;
    if (!var.empty()) opts.var = var;

    torind::io::JobResult result;
    std::vector<torind::io::Document> docs;
    try {
        for (const auto& f : files) docs.push_back(torind::io::load_document(f));
        result = torind::io::run_job(command, docs, opts);
    } catch (const torind::Error& e) {
        // unreadable input documents
        result.exit_code = 2;
        result.report = {{"schema", torind::io::kSchema},
                         {"command", command},
                         {"pass", false},
                         {"verdict", "input error"},
                         {"certified_to", nullptr},
                         {"witnesses", json::array()},
                         {"flags", json::array()},
                         {"details", json::object()},
                         {"p", opts.p ? *opts.p : 32003},
                         {"cutoff", opts.cutoff},
                         {"seed", opts.seed},
                         {"error", {{"kind", std::string(torind::to_string(e.kind()))}, {"message", e.what()}}}};
    }

    const std::string text =
        format == "json" ? result.report.dump(2) + "\n" : torind::io::render_text(result.report);
    if (out_path.empty()) {
        std::cout << text;
    } else if (!write_atomically(out_path, text)) {
        std::cerr << "cannot write " << out_path << "\n";
        return 2;
    }
    if (result.exit_code == 2 && format == "json" && !out_path.empty())
        std::cerr << result.report["error"]["message"].get<std::string>() << "\n";
    return result.exit_code;
}
