#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qhedge::cli {

enum ExitCode : int {
    kOk = 0,
    kBadInput = 2,
    kSolverFailure = 3,
    kNotOptimal = 4,
};

// Runs one command line (without the program name). Reports go to `out`
// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Arithmetic over numbers, pi, sqrt(), + - * / ^ and parentheses, with implicit
// multiplication ("3pi/8", "2sqrt(2)"). Throws FormatError.
double parse_expression(const std::string& text);

struct Grid {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    std::vector<double> points() const;
};

// "start:stop:count", each bound an expression; count >= 2 and start < stop.
Grid parse_grid(const std::string& text);

}  // namespace qhedge::cli
