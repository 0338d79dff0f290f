#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "iitaka/errors.hpp"
#include "iitaka/report.hpp"

using namespace iitaka;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string golden_dir() {
    const char* dir = std::getenv("IITAKA_GOLDEN_DIR");
    REQUIRE(dir != nullptr);
    return dir;
}

ScenarioConfig torsion_config() {
    return parse_config(
        "model=elliptic a=-1 b=0\nsummand=trivial\nsummand=(0,0):1,O:-1\nm_max=8 q_max=4 seed=42\n");
}

}  // namespace

TEST_CASE("config parsing") {
    SUBCASE("key=value tokens may share a line and comments are stripped") {
        ScenarioConfig cfg = parse_config("model=p1 m_max=6  # trailing comment\nsummand=deg:2\n");
        REQUIRE(cfg.model.has_value());
        CHECK(cfg.model->kind() == ModelKind::ProjectiveLine);
        CHECK(cfg.m_max == 6);
        CHECK(cfg.summand_specs.size() == 1);
    }
    SUBCASE("elliptic model needs a and b") {
        CHECK_THROWS_AS(parse_config("model=elliptic\n"), parse_error);
        CHECK_THROWS_AS(parse_config("model=elliptic a=0 b=0\n"), parse_error);  // singular
    }
    SUBCASE("unknown keys and malformed tokens are rejected") {
        CHECK_THROWS_AS(parse_config("mystery=1\n"), parse_error);
        CHECK_THROWS_AS(parse_config("=value\n"), parse_error);
        CHECK_THROWS_AS(parse_config("m_max=eight\n"), parse_error);
    }
    SUBCASE("divisor parsing across models") {
        CurveModel e = CurveModel::elliptic(Rational(-1), Rational(0));
        Divisor d = parse_divisor(e, "(0,0):1,O:-1");
        CHECK(d.degree() == 0);
        CHECK(d.support().size() == 2);
        CHECK_THROWS_AS(parse_divisor(e, "(7,7):1"), parse_error);  // not on the curve
        CHECK_THROWS_AS(parse_divisor(e, "(0,0)"), parse_error);    // missing multiplicity

        CurveModel p1 = CurveModel::projective_line();
        CHECK(parse_divisor(p1, "deg:3").degree() == 3);
        CHECK(parse_divisor(p1, "(1:2):2,inf:-1").degree() == 1);

        CurveModel pr = CurveModel::product_p1p1();
        CHECK(parse_divisor(pr, "bideg:1,2").bidegree() == std::pair<long, long>{1, 2});
        CHECK_THROWS_AS(parse_divisor(pr, "deg:1"), parse_error);
    }
}

TEST_CASE("loci command against the golden report") {
    CommandOutcome out = cmd_loci(torsion_config());
    CHECK(out.exit_code == 0);
    CHECK(out.report.dump(2) + "\n" == slurp(golden_dir() + "/torsion_loci.json"));
}

TEST_CASE("classify command against the golden report") {
    CommandOutcome out = cmd_classify(torsion_config());
    CHECK(out.exit_code == 0);
    const auto& flags = out.report["payload"]["flags"];
    CHECK(flags["nef"] == true);
    CHECK(flags["strongly_semiample"] == false);
    CHECK(flags["agg"] == false);
    CHECK(flags["pseudo_effective"] == true);
    CHECK(out.report.dump(2) + "\n" == slurp(golden_dir() + "/torsion_classify.json"));
}

TEST_CASE("kodaira command on the double cover") {
    ScenarioConfig cfg =
        parse_config("model=p1xp1 bundle=double-cover-pullback m_max=12 k_max=3 samples=5 seed=17\n");
    CommandOutcome out = cmd_kodaira(cfg);
    CHECK(out.exit_code == 0);
    CHECK(out.report["payload"]["fi"] == 2);
    CHECK(out.report["payload"]["k_xe"] == 2);
    CHECK(out.report.dump(2) + "\n" == slurp(golden_dir() + "/double_cover_kodaira.json"));
}

TEST_CASE("bott command") {
    CommandOutcome out = cmd_bott(parse_config("n=2 m=5 k=-1\n"));
    CHECK(out.exit_code == 0);
    CHECK(out.report["payload"]["all_zero"] == true);
    CHECK(out.report.dump(2) + "\n" == slurp(golden_dir() + "/bott_s5q_minus1.json"));

    CommandOutcome h = cmd_bott(parse_config("n=2 m=3 k=0\n"));
    CHECK(h.report["payload"]["h0"] == "10");  // (3+1)(3+2)/2
}

TEST_CASE("ample split bundle loci are all empty") {
    ScenarioConfig cfg = parse_config("model=p1 summand=deg:1 summand=deg:2 m_max=6 q_max=3 seed=7\n");
    CommandOutcome out = cmd_loci(cfg);
    CHECK(out.exit_code == 0);
    CHECK(out.report["payload"]["stable"]["locus"] == "empty");
    CHECK(out.report["payload"]["b_plus"]["locus"] == "empty");
    CHECK(out.report["payload"]["b_minus"]["locus"] == "empty");
    CHECK(out.report.dump(2) + "\n" == slurp(golden_dir() + "/p1_ample_loci.json"));
}

TEST_CASE("verify command covers every scenario") {
    CHECK(cmd_verify("torsion", torsion_config()).exit_code == 0);
    CHECK(cmd_verify("double-cover",
                     parse_config("model=p1xp1 m_max=12 samples=5 seed=17\n"))
              .exit_code == 0);
    CHECK(cmd_verify("euler", parse_config("m_max=8 seed=17\n")).exit_code == 0);
    // "fails condition 4" is itself the expected claim on P1: exit 0
    CHECK(cmd_verify("abelian", parse_config("model=p1 m_max=4\n")).exit_code == 0);
    CHECK(cmd_verify("lemma",
                     parse_config("model=p1 summand=deg:1 summand=deg:1 k_max=2 samples=5 seed=3\n"))
              .exit_code == 0);
    CHECK_THROWS_AS(cmd_verify("mystery", torsion_config()), parse_error);
}

TEST_CASE("reports are byte-identical for a fixed seed") {
    for (int round = 0; round < 2; ++round) {
        CommandOutcome a = cmd_kodaira(
            parse_config("model=p1 summand=deg:2 summand=deg:4 k_max=3 samples=5 seed=99\n"));
        CommandOutcome b = cmd_kodaira(
            parse_config("model=p1 summand=deg:2 summand=deg:4 k_max=3 samples=5 seed=99\n"));
        CHECK(a.report.dump() == b.report.dump());
    }
}

TEST_CASE("require-stable exit code") {
    // torsion order 3 with m_max = 2: the reachable sets cannot saturate
    ScenarioConfig cfg = parse_config(
        "model=elliptic a=0 b=1\nsummand=trivial\nsummand=(0,1):1,O:-1\nm_max=2 q_max=2\n");
    cfg.require_stable = true;
    CommandOutcome out = cmd_loci(cfg);
    CHECK(out.exit_code == 4);
    CHECK(out.report["payload"]["stable"]["stabilized"] == false);
}
