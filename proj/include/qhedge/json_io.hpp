#pragma once

// JSON exchange formats. Matrices keep full precision (shortest round-trip
// decimal); scalar report values go through round_significant first.

#include <json.hpp>

#include "qhedge/evaluator.hpp"
#include "qhedge/game.hpp"
#include "qhedge/noanswer.hpp"
#include "qhedge/sdp.hpp"
#include "qhedge/strategies.hpp"

namespace qhedge {

using Json = nlohmann::ordered_json;

inline constexpr int kReportDigits = 12;

// Rounds to the given number of significant decimal digits; non-finite values pass through.
double round_significant(double v, int digits = kReportDigits);

// printf("%.12g"): 12 significant digits, lowercase exponent.
std::string format_number(double v, int digits = kReportDigits);

// { "rows", "cols", "re": [...], "im": [...] }, row-major.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json game_spec_to_json(const GameSpec& spec);
GameSpec game_spec_from_json(const Json& j);

// { "n", "phases_re", "phases_im" }
Json strategy_to_json(const DiagonalStrategy& s);
DiagonalStrategy strategy_from_json(const Json& j);

// { "n", "probs" }
Json distribution_to_json(const OutcomeDistribution& d);
OutcomeDistribution distribution_from_json(const Json& j);

// { "value", "gap", "iterations", "dual_Y", "primal_X" | null }
Json solution_to_json(const SdpSolution& s);
SdpSolution solution_from_json(const Json& j);

// { "rho", "Pa", "dimX", "dimY", "dimZ" }
Json instance_to_json(const NoAnswerInstance& inst);
NoAnswerInstance instance_from_json(const Json& j);

}  // namespace qhedge
