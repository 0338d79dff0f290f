#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "iitaka/errors.hpp"
#include "iitaka/report.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw iitaka::parse_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Options {
    std::string config_path;
    std::string json_out;
    std::string verify_name;
    int m_max = -1, q_max = -1, samples = -1;
    long seed = -1;
    bool require_stable = false;
};

int run(const std::string& command, const Options& opt) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();

    iitaka::ScenarioConfig cfg =
        opt.config_path.empty() ? iitaka::ScenarioConfig{} : iitaka::parse_config(read_file(opt.config_path));
    if (opt.m_max > 0) cfg.m_max = opt.m_max;
    if (opt.q_max > 0) cfg.q_max = opt.q_max;
    if (opt.samples > 0) cfg.samples = opt.samples;
    if (opt.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opt.seed);
    cfg.require_stable = opt.require_stable;

    iitaka::CommandOutcome out;
    if (command == "loci") out = iitaka::cmd_loci(cfg);
    else if (command == "classify") out = iitaka::cmd_classify(cfg);
    else if (command == "kodaira") out = iitaka::cmd_kodaira(cfg);
    else if (command == "bott") out = iitaka::cmd_bott(cfg);
    else out = iitaka::cmd_verify(opt.verify_name, cfg);

    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0).count();
    out.report["timing_ms"] = ms;

    std::string text = out.report.dump(2);
    if (!opt.json_out.empty()) {
        std::ofstream f(opt.json_out);
        f << text << "\n";
    }
    std::cout << text << "\n";
    return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact asymptotic base loci, Kodaira maps, and Iitaka invariants "
                 "of split vector bundles on model varieties"};
    app.require_subcommand(1);

    Options opt;
    std::string command;
    for (const std::string& name : {"loci", "classify", "kodaira", "bott", "verify"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", opt.config_path, "scenario config file");
        sub->add_option("--m-max", opt.m_max, "override m_max");
        sub->add_option("--q-max", opt.q_max, "override q_max");
        sub->add_option("--samples", opt.samples, "override sample count");
        sub->add_option("--seed", opt.seed, "override the sampling seed");
        sub->add_flag("--require-stable", opt.require_stable,
                      "exit 4 when a reported locus lacks a stabilization certificate");
        sub->add_option("--json", opt.json_out, "also write the report to this file");
        if (name == std::string("verify"))
            sub->add_option("name", opt.verify_name,
                            "one of lemma|torsion|double-cover|euler|abelian")
                ->required();
        sub->callback([&command, name] { command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        return run(command, opt);
    } catch (const iitaka::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const iitaka::unsupported_model_error& e) {
        std::cerr << "unsupported model: " << e.what() << "\n";
        return 3;
    } catch (const iitaka::no_sections_error& e) {
        std::cerr << "no sections: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
