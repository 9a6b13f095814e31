#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "torind/error.hpp"
#include "torind/io.hpp"

namespace torind::io {

struct JobOptions {
    std::optional<std::uint32_t> p;  // --char; documents may also carry p
    int cutoff = 10;
    std::uint64_t seed = 0;
    std::optional<int> degree;        // syzygy truncation degree
    std::optional<std::size_t> power;  // syzygy: run the annihilation check for this n
    std::optional<std::string> var;   // reduce: variable name
    std::size_t dim_bound = 4;
    std::size_t n_target = 2;
    std::size_t candidates = 1000;
};

struct JobResult {
    int exit_code = 0;  // 0 pass, 1 mathematical failure, 2 input error
    json report;        // everything except "timings" is reproducible
};

const std::vector<std::string>& command_names();

// Input documents per command:
//   ring-info, search                        ring
//   resolve, tor, independence, verify, reduce  ring, modules
//   dg-check                                 dgalgebra or dgmodules
//   syzygy, verify-dg                        dgmodules
JobResult run_job(const std::string& command, const std::vector<Document>& inputs, const JobOptions& options);

int exit_code_for(ErrorKind kind);

std::string render_text(const json& report);

// The report without its "timings" block.
json reproducible_part(const json& report);

}  // namespace torind::io
