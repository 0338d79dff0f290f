#include "iitaka/report.hpp"

#include <algorithm>

#include "iitaka/bott.hpp"
#include "iitaka/errors.hpp"
#include "iitaka/gallery.hpp"
#include "iitaka/kodaira.hpp"

namespace iitaka {

Json locus_json(const LocusResult& l) {
    switch (l.shape()) {
        case LocusResult::Shape::Empty: return Json("empty");
        case LocusResult::Shape::All: return Json("all");
        case LocusResult::Shape::Finite: {
            Json pts = Json::array();
            for (const auto& p : l.points()) pts.push_back(p.str());
            return Json{{"points", pts}};
        }
    }
    return Json();
}

Json locus_entry(const LocusResult& l) {
    Json j;
    j["locus"] = locus_json(l);
    j["stabilized"] = l.stabilized();
    j["certificate"] = l.certificate();
    return j;
}

Json report_shell(const std::string& command, const ScenarioConfig& cfg) {
    Json j;
    j["schema_version"] = 1;
    j["tool"] = Json{{"name", "iitaka-lab"}, {"version", "0.1.0"}};
    j["command"] = command;
    Json conf;
    conf["model"] = cfg.model ? Json(cfg.model->str()) : Json(nullptr);
    conf["summands"] = cfg.summand_specs;
    conf["bundle"] = cfg.bundle;
    conf["ample"] = cfg.ample_spec ? Json(*cfg.ample_spec) : Json("default");
    conf["m_max"] = cfg.m_max;
    conf["q_max"] = cfg.q_max;
    conf["k_max"] = cfg.k_max;
    conf["samples"] = cfg.samples;
    if (cfg.bott_n) conf["n"] = *cfg.bott_n;
    if (cfg.bott_m) conf["m"] = *cfg.bott_m;
    if (cfg.bott_k) conf["k"] = *cfg.bott_k;
    j["config"] = conf;
    j["seed"] = cfg.seed;
    return j;
}

CommandOutcome cmd_loci(const ScenarioConfig& cfg) {
    SplitBundle e = build_bundle(cfg);
    DivisorClass amp = build_ample(cfg);

    Json payload;
    payload["bundle"] = e.str();
    Json bs = Json::array();
    for (int m = 1; m <= cfg.m_max; ++m) {
        LocusResult l = bs_locus(e, m);
        Json entry;
        entry["m"] = m;
        entry["locus"] = locus_json(l);
        entry["certificate"] = l.certificate();
        bs.push_back(entry);
    }
    payload["bs"] = bs;
    LocusResult stable = stable_base_locus(e, cfg.m_max);
    LocusResult plus = augmented_locus(e, amp, cfg.q_max, cfg.m_max);
    LocusResult minus = restricted_locus(e, amp, cfg.q_max, cfg.m_max);
    payload["stable"] = locus_entry(stable);
    payload["b_plus"] = locus_entry(plus);
    payload["b_minus"] = locus_entry(minus);

    Json report = report_shell("loci", cfg);
    report["payload"] = payload;
    int code = 0;
    if (cfg.require_stable &&
        !(stable.stabilized() && plus.stabilized() && minus.stabilized()))
        code = 4;
    return {report, code};
}

CommandOutcome cmd_classify(const ScenarioConfig& cfg) {
    SplitBundle e = build_bundle(cfg);
    DivisorClass amp = build_ample(cfg);
    PositivityVerdict v = classify(e, amp, {cfg.m_max, cfg.q_max});

    Json payload;
    payload["bundle"] = e.str();
    Json flags;
    flags["nef"] = v.nef;
    flags["pseudo_effective"] = v.pseudo_effective;
    flags["weakly_positive"] = v.weakly_positive;
    flags["agg"] = v.agg;
    flags["strongly_semiample"] = v.strongly_semiample;
    flags["ample"] = v.ample;
    flags["strongly_big"] = v.strongly_big;
    payload["flags"] = flags;
    payload["bs_level1"] = locus_entry(v.bs1);
    payload["stable"] = locus_entry(v.stable);
    payload["b_plus"] = locus_entry(v.plus);
    payload["b_minus"] = locus_entry(v.minus);

    Json report = report_shell("classify", cfg);
    report["payload"] = payload;
    int code = 0;
    if (cfg.require_stable &&
        !(v.stable.stabilized() && v.plus.stabilized() && v.minus.stabilized()))
        code = 4;
    return {report, code};
}

namespace {

Json kodaira_json(const KodairaReport& r) {
    Json j;
    Json per_m = Json::array();
    for (const auto& rec : r.per_m) {
        Json e;
        e["m"] = rec.m;
        e["image_dim"] = rec.image_dim;
        e["fiber_degree"] = rec.fiber_deg ? Json(*rec.fiber_deg) : Json(nullptr);
        e["samples_used"] = rec.samples_used;
        per_m.push_back(e);
    }
    j["per_m"] = per_m;
    j["k_xe"] = r.k_xe;
    j["k_det"] = r.k_det;
    j["matches_det"] = r.matches_det;
    j["map_degree"] = r.map_degree ? Json(*r.map_degree) : Json(nullptr);
    j["det_degree"] = r.det_degree ? Json(*r.det_degree) : Json(nullptr);
    j["fi"] = r.fi ? Json(*r.fi) : Json("undetermined");
    j["note"] = r.note;
    return j;
}

}  // namespace

CommandOutcome cmd_kodaira(const ScenarioConfig& cfg) {
    KodairaReport r;
    if (cfg.bundle == "double-cover-pullback") {
        r = double_cover_kodaira_report(std::min(cfg.k_max, 3), cfg.samples, cfg.seed);
    } else if (cfg.bundle == "euler-q") {
        r = euler_kodaira_report(std::min(cfg.k_max, 4), cfg.samples, cfg.seed);
    } else {
        SplitBundle e = build_bundle(cfg);
        r = iitaka_report(e, {cfg.k_max, cfg.samples, cfg.seed});
    }
    Json report = report_shell("kodaira", cfg);
    report["payload"] = kodaira_json(r);
    return {report, 0};
}

CommandOutcome cmd_bott(const ScenarioConfig& cfg) {
    int n = cfg.bott_n.value_or(2);
    int m = cfg.bott_m.value_or(1);
    long k = cfg.bott_k.value_or(0);
    std::vector<long> a(static_cast<std::size_t>(n), 0);
    a[0] = m;
    BottWeight w(n, a, -k);
    CohomologyTable t = bott_cohomology(w);

    Json payload;
    payload["weight"] = w.str();
    payload["n"] = n;
    payload["m"] = m;
    payload["k"] = k;
    Json table = Json::array();
    for (const auto& e : t.entries)
        table.push_back(Json{{"degree", e.degree}, {"dimension", e.dimension.get_str()}});
    payload["table"] = table;
    payload["all_zero"] = t.all_zero();
    payload["h0"] = t.h(0).get_str();

    Json report = report_shell("bott", cfg);
    report["payload"] = payload;
    return {report, 0};
}

namespace {

Json verdict_json(const ScenarioVerdict& v) {
    Json j;
    j["scenario"] = v.scenario;
    Json claims = Json::array();
    for (const auto& c : v.claims) {
        claims.push_back(Json{{"claim", c.claim},
                              {"expected", c.expected},
                              {"computed", c.computed},
                              {"pass", c.pass}});
    }
    j["claims"] = claims;
    j["all_pass"] = v.all_pass();
    return j;
}

}  // namespace

CommandOutcome cmd_verify(const std::string& name, const ScenarioConfig& cfg) {
    ScenarioVerdict v;
    if (name == "torsion") {
        v = run_torsion_example(cfg.bott_n.value_or(2), cfg.m_max);
    } else if (name == "double-cover") {
        v = run_double_cover_example(std::min(cfg.m_max, 12), cfg.samples, cfg.seed);
    } else if (name == "euler") {
        v = run_euler_example(std::min(cfg.m_max, 8), cfg.seed);
    } else if (name == "abelian") {
        if (!cfg.model) throw parse_error("verify abelian needs a model");
        v = abelian_check(*cfg.model, cfg.m_max);
    } else if (name == "lemma") {
        SplitBundle e = build_bundle(cfg);
        v.scenario = "multiplication factorization on " + e.str();
        for (int k = 2; k <= std::max(2, cfg.k_max); ++k) {
            auto samples = generic_samples(e, 1, cfg.samples, cfg.seed);
            FactorizationReport r = verify_factorization(e, 1, k, samples);
            v.check("kernels commute for (m,k) = (1," + std::to_string(k) + ") at " +
                        std::to_string(cfg.samples) + " samples",
                    "yes", r.all_commute() ? "yes" : "no");
        }
    } else {
        throw parse_error("unknown scenario '" + name +
                          "' (expected lemma|torsion|double-cover|euler|abelian)");
    }
    Json report = report_shell("verify " + name, cfg);
    report["payload"] = verdict_json(v);
    return {report, v.all_pass() ? 0 : 1};
}

}  // namespace iitaka
