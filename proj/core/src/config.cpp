#include "iitaka/config.hpp"

#include <algorithm>
#include <sstream>

#include "iitaka/errors.hpp"
#include "iitaka/gallery.hpp"

namespace iitaka {

namespace {

std::vector<std::string> split_top_level(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

long parse_long(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw parse_error("bad integer for " + what + ": '" + s + "'");
    }
}

}  // namespace

CurvePoint parse_point(const CurveModel& model, const std::string& token) {
    switch (model.kind()) {
        case ModelKind::Elliptic: {
            if (token == "O") return CurvePoint::elliptic_origin(model);
            if (token.size() < 2 || token.front() != '(' || token.back() != ')')
                throw parse_error("bad elliptic point: '" + token + "' (use (x,y) or O)");
            auto parts = split_top_level(token.substr(1, token.size() - 2), ',');
            if (parts.size() != 2) throw parse_error("bad elliptic point: '" + token + "'");
            try {
                return CurvePoint::elliptic_affine(model, Rational::from_string(parts[0]),
                                                   Rational::from_string(parts[1]));
            } catch (const std::invalid_argument& e) {
                throw parse_error("point '" + token + "': " + e.what());
            }
        }
        case ModelKind::ProjectiveLine: {
            if (token == "inf") return CurvePoint::p1_infinity(model);
            if (token.size() < 2 || token.front() != '(' || token.back() != ')')
                throw parse_error("bad P1 point: '" + token + "' (use (a:b) or inf)");
            auto parts = split_top_level(token.substr(1, token.size() - 2), ':');
            if (parts.size() != 2) throw parse_error("bad P1 point: '" + token + "'");
            return CurvePoint::p1(model, Rational::from_string(parts[0]),
                                  Rational::from_string(parts[1]));
        }
        default:
            throw parse_error("point-supported divisors exist only on curve models");
    }
}

Divisor parse_divisor(const CurveModel& model, const std::string& spec) {
    if (spec.rfind("deg:", 0) == 0) {
        if (model.kind() != ModelKind::ProjectiveLine && model.kind() != ModelKind::ProjectiveSpace)
            throw parse_error("deg: divisors need a P1 or P^n model");
        return Divisor::of_degree(model, parse_long(spec.substr(4), "deg"));
    }
    if (spec.rfind("bideg:", 0) == 0) {
        if (model.kind() != ModelKind::ProductP1P1)
            throw parse_error("bideg: divisors need the p1xp1 model");
        auto parts = split_top_level(spec.substr(6), ',');
        if (parts.size() != 2) throw parse_error("bideg needs two entries: '" + spec + "'");
        return Divisor::of_bidegree(model, parse_long(parts[0], "bideg"),
                                    parse_long(parts[1], "bideg"));
    }
    if (spec == "trivial" || spec == "0") return Divisor::zero(model);

    std::vector<std::pair<CurvePoint, int>> support;
    for (const std::string& item : split_top_level(spec, ',')) {
        if (item.empty()) throw parse_error("empty divisor item in '" + spec + "'");
        // the multiplicity sits after the last ':' whose prefix has balanced parens
        std::size_t cut = std::string::npos;
        int depth = 0;
        for (std::size_t i = 0; i < item.size(); ++i) {
            if (item[i] == '(') ++depth;
            if (item[i] == ')') --depth;
            if (item[i] == ':' && depth == 0) cut = i;
        }
        if (cut == std::string::npos)
            throw parse_error("divisor item needs point:mult: '" + item + "'");
        CurvePoint pt = parse_point(model, item.substr(0, cut));
        long mult = parse_long(item.substr(cut + 1), "multiplicity");
        support.emplace_back(pt, static_cast<int>(mult));
    }
    return Divisor::from_points(model, std::move(support));
}

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig cfg;
    std::optional<std::string> model_name;
    std::optional<Rational> a, b;
    std::optional<int> pn;

    std::istringstream lines(text);
    std::string line;
    std::vector<std::pair<std::string, std::string>> kvs;
    while (std::getline(lines, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::string tok;
        while (words >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos || eq == 0)
                throw parse_error("expected key=value, got '" + tok + "'");
            kvs.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
        }
    }

    for (const auto& [key, value] : kvs) {
        if (key == "model") model_name = value;
        else if (key == "a") a = Rational::from_string(value);
        else if (key == "b") b = Rational::from_string(value);
        else if (key == "n") { pn = static_cast<int>(parse_long(value, key)); cfg.bott_n = pn; }
        else if (key == "m") cfg.bott_m = static_cast<int>(parse_long(value, key));
        else if (key == "k") cfg.bott_k = parse_long(value, key);
        else if (key == "summand") cfg.summand_specs.push_back(value);
        else if (key == "bundle") cfg.bundle = value;
        else if (key == "ample") cfg.ample_spec = value;
        else if (key == "m_max") cfg.m_max = static_cast<int>(parse_long(value, key));
        else if (key == "q_max") cfg.q_max = static_cast<int>(parse_long(value, key));
        else if (key == "k_max") cfg.k_max = static_cast<int>(parse_long(value, key));
        else if (key == "samples") cfg.samples = static_cast<int>(parse_long(value, key));
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_long(value, key));
        else throw parse_error("unknown config key '" + key + "'");
    }

    if (model_name) {
        if (*model_name == "p1") cfg.model = CurveModel::projective_line();
        else if (*model_name == "elliptic") {
            if (!a || !b) throw parse_error("model=elliptic needs a= and b=");
            try {
                cfg.model = CurveModel::elliptic(*a, *b);
            } catch (const std::invalid_argument& e) {
                throw parse_error(e.what());
            }
        } else if (*model_name == "p1xp1") cfg.model = CurveModel::product_p1p1();
        else if (model_name->size() >= 2 && (*model_name)[0] == 'p') {
            long n = parse_long(model_name->substr(1), "model dimension");
            cfg.model = CurveModel::projective_space(static_cast<int>(n));
        } else {
            throw parse_error("unknown model '" + *model_name + "'");
        }
    }
    if (cfg.m_max < 1 || cfg.q_max < 1 || cfg.samples < 1)
        throw parse_error("bounds must be positive");
    return cfg;
}

SplitBundle build_bundle(const ScenarioConfig& cfg) {
    if (!cfg.model) throw parse_error("config describes no model");
    if (cfg.bundle == "cotangent") return cotangent_bundle(*cfg.model);
    if (!cfg.bundle.empty())
        throw parse_error("bundle '" + cfg.bundle + "' is not available as a split bundle");
    if (cfg.summand_specs.empty()) throw parse_error("config describes no bundle");
    std::vector<Divisor> summands;
    for (const auto& s : cfg.summand_specs) summands.push_back(parse_divisor(*cfg.model, s));
    return SplitBundle(*cfg.model, std::move(summands));
}

DivisorClass build_ample(const ScenarioConfig& cfg) {
    if (!cfg.model) throw parse_error("config describes no model");
    if (!cfg.ample_spec) return default_ample(*cfg.model);
    Divisor d = parse_divisor(*cfg.model, *cfg.ample_spec);
    return cfg.model->kind() == ModelKind::ProjectiveSpace
               ? DivisorClass::of_degree(*cfg.model, d.degree())
               : class_reduce(d);
}

}  // namespace iitaka
