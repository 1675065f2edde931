#include <doctest.h>

#include <cmath>

#include "qhedge/errors.hpp"
#include "qhedge/json_io.hpp"
#include "support.hpp"

using namespace qhedge;

TEST_CASE("matrices round-trip exactly") {
    qtest::Rng rng(81);
    for (int trial = 0; trial < 5; ++trial) {
        const ComplexMatrix m = rng.gaussian(rng.integer(1, 5), rng.integer(1, 5)) * 1e3;
        const std::string text = matrix_to_json(m).dump();
        const ComplexMatrix back = matrix_from_json(Json::parse(text));
        CHECK(back.rows() == m.rows());
        CHECK(back.cols() == m.cols());
        CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("matrix layout is row-major with separate parts") {
    ComplexMatrix m(2, 3);
    m << Complex(1, 0), Complex(2, 1), Complex(3, 0), Complex(4, 0), Complex(5, -1), Complex(6, 0);
    const Json j = matrix_to_json(m);
    CHECK(j["rows"] == 2);
    CHECK(j["cols"] == 3);
    CHECK(j["re"] == Json::array({1.0, 2.0, 3.0, 4.0, 5.0, 6.0}));
    CHECK(j["im"] == Json::array({0.0, 1.0, 0.0, 0.0, -1.0, 0.0}));
}

TEST_CASE("malformed matrices are rejected") {
    CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"rows":2,"cols":2,"re":[1,2,3],"im":[0,0,0,0]})")), FormatError);
    CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"rows":0,"cols":2,"re":[],"im":[]})")), FormatError);
    CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"rows":1,"cols":1,"re":["x"],"im":[0]})")), FormatError);
    CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"cols":1,"re":[1],"im":[0]})")), FormatError);
    CHECK_THROWS_AS(matrix_from_json(Json::parse("[1,2]")), FormatError);
}

TEST_CASE("game spec, strategy and distribution round-trips") {
    const GameSpec spec{0.6, 0.25, 3, 2};
    const GameSpec back = game_spec_from_json(game_spec_to_json(spec));
    CHECK(back.alpha == spec.alpha);
    CHECK(back.theta == spec.theta);
    CHECK(back.n == 3);
    CHECK(back.k == 2);
    CHECK_THROWS_AS(game_spec_from_json(Json::parse(R"({"alpha":0.5,"theta":0.1,"n":2,"k":3})")),
                    ParameterOutOfRange);

    const DiagonalStrategy s = phi_interp(1.0 / std::sqrt(2.0), 0.5, 3);
    const DiagonalStrategy sb = strategy_from_json(Json::parse(strategy_to_json(s).dump()));
    REQUIRE(sb.phases.size() == s.phases.size());
    for (std::size_t i = 0; i < s.phases.size(); ++i) CHECK(sb.phases[i] == s.phases[i]);
    CHECK_THROWS_AS(strategy_from_json(Json::parse(R"({"n":1,"phases_re":[1,0.5],"phases_im":[0,0]})")),
                    ContractViolation);
    CHECK_THROWS_AS(strategy_from_json(Json::parse(R"({"n":2,"phases_re":[1,1],"phases_im":[0,0]})")),
                    DimensionMismatch);

    OutcomeDistribution d;
    d.n = 1;
    d.probs = {0.25, 0.75};
    const OutcomeDistribution db = distribution_from_json(distribution_to_json(d));
    CHECK(db.probs == d.probs);
}

TEST_CASE("solution and instance round-trips") {
    SdpSolution s;
    s.value = 0.125;
    s.gap = 1e-8;
    s.iterations = 42;
    s.dual_Y = identity(2) * 0.0625;
    s.dual_value = 0.125;
    Json j = solution_to_json(s);
    CHECK(j["primal_X"].is_null());
    SdpSolution back = solution_from_json(j);
    CHECK(back.iterations == 42);
    CHECK_FALSE(back.primal_X.has_value());
    s.primal_X = identity(4) * 0.5;
    back = solution_from_json(Json::parse(solution_to_json(s).dump()));
    REQUIRE(back.primal_X.has_value());
    CHECK((*back.primal_X - *s.primal_X).cwiseAbs().maxCoeff() == 0.0);

    NoAnswerInstance inst;
    inst.rho = kron(outer(basis_ket(2, 0)), identity(2) / 2.0);
    inst.Pa = outer(basis_ket(4, 0)) + outer(basis_ket(4, 3));
    const NoAnswerInstance ib = instance_from_json(Json::parse(instance_to_json(inst).dump()));
    CHECK((ib.rho - inst.rho).cwiseAbs().maxCoeff() == 0.0);
    CHECK(ib.dim_z == 2);
    Json bad = instance_to_json(inst);
    bad["dimZ"] = 3;
    CHECK_THROWS_AS(instance_from_json(bad), DimensionMismatch);
}

TEST_CASE("number formatting") {
    CHECK(format_number(M_PI / 8) == "0.392699081699");
    CHECK(format_number(0.25) == "0.25");
    CHECK(format_number(1.5e-9) == "1.5e-09");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(round_significant(0.1234567890123456) == 0.123456789012);
    CHECK(round_significant(0.0) == 0.0);
    CHECK(std::isinf(round_significant(INFINITY)));
}
