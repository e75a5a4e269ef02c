#pragma once

#include "cli.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace schizo::testing {

inline std::string read_golden(const std::string& name) {
    std::ifstream in(std::string(GOLDEN_DIR) + "/" + name, std::ios::binary);
    if (!in) {
        throw std::runtime_error("missing golden file " + name);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CliResult {
    int status = 0;
    std::string out;
    std::string err;
};

inline CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    CliResult r;
    r.status = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

}  // namespace schizo::testing
