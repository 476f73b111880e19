#include "config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

namespace moser::app {

namespace {

using nlohmann::json;

class Reader {
public:
    std::vector<std::string> errors;

    void unknown_keys(const json &obj, const std::string &where, const std::set<std::string> &known)
    {
        for (auto it = obj.begin(); it != obj.end(); ++it)
            if (!known.count(it.key())) errors.push_back(where + ": unknown key \"" + it.key() + "\"");
    }

    std::optional<double> number(const json &obj, const std::string &key, const std::string &where, bool required)
    {
        if (!obj.contains(key)) {
            if (required) errors.push_back(where + key + ": required");
            return std::nullopt;
        }
        const json &v = obj.at(key);
        if (!v.is_number() || !std::isfinite(v.get<double>())) {
            errors.push_back(where + key + ": expected a finite number");
            return std::nullopt;
        }
        return v.get<double>();
    }

    std::optional<double> positive(const json &obj, const std::string &key, const std::string &where, bool required)
    {
        auto v = number(obj, key, where, required);
        if (v && !(*v > 0.0)) {
            errors.push_back(where + key + ": must be > 0");
            return std::nullopt;
        }
        return v;
    }

    std::optional<int> integer(const json &obj, const std::string &key, const std::string &where, bool required,
                               int lo, int hi)
    {
        if (!obj.contains(key)) {
            if (required) errors.push_back(where + key + ": required");
            return std::nullopt;
        }
        const json &v = obj.at(key);
        if (!v.is_number_integer()) {
            errors.push_back(where + key + ": expected an integer");
            return std::nullopt;
        }
        const auto x = v.get<long long>();
        if (x < lo || x > hi) {
            errors.push_back(where + key + ": must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
            return std::nullopt;
        }
        return static_cast<int>(x);
    }

    std::optional<cplx> pair(const json &obj, const std::string &key, const std::string &where)
    {
        if (!obj.contains(key)) return std::nullopt;
        const json &v = obj.at(key);
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
            errors.push_back(where + key + ": expected [re, im]");
            return std::nullopt;
        }
        return cplx(v[0].get<double>(), v[1].get<double>());
    }
};

void read_perturbation(Reader &rd, const json &list, ProblemConfig &cfg)
{
    if (!list.is_array()) {
        rd.errors.push_back("perturbation: expected a list");
        return;
    }
    for (std::size_t m = 0; m < list.size(); ++m) {
        const std::string where = "perturbation[" + std::to_string(m) + "].";
        const json &e = list[m];
        if (!e.is_object()) {
            rd.errors.push_back(where + ": expected an object");
            continue;
        }
        rd.unknown_keys(e, "perturbation[" + std::to_string(m) + "]", {"alpha", "coeff"});
        Monomial mono;
        bool ok = true;
        if (!e.contains("alpha") || !e["alpha"].is_array() || e["alpha"].size() != 2 ||
            !e["alpha"][0].is_number_integer() || !e["alpha"][1].is_number_integer()) {
            rd.errors.push_back(where + "alpha: expected [int, int]");
            ok = false;
        } else {
            mono.a1 = e["alpha"][0].get<int>();
            mono.a2 = e["alpha"][1].get<int>();
            if (mono.a1 < 0 || mono.a2 < 0) {
                rd.errors.push_back(where + "alpha: exponents must be >= 0");
                ok = false;
            } else if (mono.a1 + mono.a2 < 3) {
                rd.errors.push_back(where + "alpha: degree >= 3 required, got " + std::to_string(mono.a1 + mono.a2));
                ok = false;
            }
        }
        if (!e.contains("coeff") || !e["coeff"].is_array() || e["coeff"].empty()) {
            rd.errors.push_back(where + "coeff: expected a non-empty list");
            continue;
        }
        for (std::size_t k = 0; k < e["coeff"].size(); ++k) {
            const std::string w = where + "coeff[" + std::to_string(k) + "].";
            const json &c = e["coeff"][k];
            if (!c.is_object()) {
                rd.errors.push_back(w + ": expected an object");
                ok = false;
                continue;
            }
            rd.unknown_keys(c, w.substr(0, w.size() - 1), {"amp_re", "amp_im", "tpow", "rate"});
            CoeffTerm term;
            term.amp_re = rd.number(c, "amp_re", w, false).value_or(0.0);
            term.amp_im = rd.number(c, "amp_im", w, false).value_or(0.0);
            term.tpow = rd.integer(c, "tpow", w, false, 0, 64).value_or(0);
            if (c.contains("rate")) {
                const json &r = c["rate"];
                if (!r.is_object()) {
                    rd.errors.push_back(w + "rate: expected {i, j}");
                    ok = false;
                } else {
                    rd.unknown_keys(r, w + "rate", {"i", "j"});
                    term.i = rd.integer(r, "i", w + "rate.", false, -1000, 1000).value_or(0);
                    term.j = rd.integer(r, "j", w + "rate.", false, -1000, 1000).value_or(0);
                }
            }
            const double rate = -term.i * cfg.decay_rate.value_or(0.0) + term.j * cfg.omega;
            if (term.i != 0 && !cfg.decay_rate) {
                rd.errors.push_back(w + "rate.i: needs decay_rate");
                ok = false;
            } else if (cfg.mode == Mode::strong && !(rate < 0.0)) {
                rd.errors.push_back(w + "rate: strong mode needs a decaying rate (value < 0), got " +
                                    std::to_string(rate));
                ok = false;
            }
            mono.coeff.push_back(term);
        }
        if (ok) cfg.perturbation.push_back(mono);
    }
}

void read_verify(Reader &rd, const json &v, ProblemConfig &cfg)
{
    if (!v.is_object()) {
        rd.errors.push_back("verify: expected an object");
        return;
    }
    rd.unknown_keys(v, "verify", {"T", "tol", "starts", "conjugacy_threshold", "scaling"});
    VerifyConfig &vc = cfg.verify;
    vc.T = rd.positive(v, "T", "verify.", false).value_or(vc.T);
    vc.tol = rd.positive(v, "tol", "verify.", false).value_or(vc.tol);
    vc.conjugacy_threshold = rd.positive(v, "conjugacy_threshold", "verify.", false).value_or(vc.conjugacy_threshold);
    if (v.contains("starts")) {
        const json &s = v["starts"];
        if (!s.is_array()) rd.errors.push_back("verify.starts: expected a list");
        for (std::size_t k = 0; s.is_array() && k < s.size(); ++k) {
            const std::string w = "verify.starts[" + std::to_string(k) + "].";
            if (!s[k].is_object()) {
                rd.errors.push_back(w + ": expected {p, q}");
                continue;
            }
            rd.unknown_keys(s[k], w.substr(0, w.size() - 1), {"p", "q"});
            const auto p = rd.pair(s[k], "p", w), q = rd.pair(s[k], "q", w);
            if (!p || !q) {
                if (!s[k].contains("p") || !s[k].contains("q")) rd.errors.push_back(w + ": p and q are required");
                continue;
            }
            if (std::abs(*p) > cfg.radius || std::abs(*q) > cfg.radius)
                rd.errors.push_back(w + ": start outside the domain |p|, |q| <= radius");
            vc.starts.push_back({*p, *q});
        }
    }
    if (v.contains("scaling")) {
        const json &s = v["scaling"];
        if (!s.is_object()) {
            rd.errors.push_back("verify.scaling: expected an object");
            return;
        }
        rd.unknown_keys(s, "verify.scaling", {"radii", "p_dir", "q_dir"});
        if (!s.contains("radii") || !s["radii"].is_array() || s["radii"].size() < 2) {
            rd.errors.push_back("verify.scaling.radii: expected a list of at least two radii");
        } else {
            for (const json &r : s["radii"]) {
                if (!r.is_number() || !(r.get<double>() > 0.0)) {
                    rd.errors.push_back("verify.scaling.radii: entries must be positive numbers");
                    break;
                }
                vc.scaling_radii.push_back(r.get<double>());
            }
        }
        vc.p_dir = rd.pair(s, "p_dir", "verify.scaling.").value_or(vc.p_dir);
        vc.q_dir = rd.pair(s, "q_dir", "verify.scaling.").value_or(vc.q_dir);
    }
}

} // namespace

ConfigErrors::ConfigErrors(std::vector<std::string> errs)
    : std::runtime_error(errs.empty() ? "invalid config" : errs.front()), errors(std::move(errs))
{
}

ProblemConfig parse_config(const std::string &text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigErrors({std::string("parse error: ") + e.what()});
    }
    if (!doc.is_object()) throw ConfigErrors({"top level: expected an object"});

    Reader rd;
    ProblemConfig cfg;
    rd.unknown_keys(doc, "config", {"omega", "mode", "decay_rate", "radius", "trunc_degree", "max_steps", "d_policy",
                                     "analytic_radius", "perturbation", "verify"});
    cfg.omega = rd.positive(doc, "omega", "", true).value_or(1.0);
    if (!doc.contains("mode")) {
        rd.errors.push_back("mode: required");
    } else if (doc["mode"] == "strong") {
        cfg.mode = Mode::strong;
    } else if (doc["mode"] == "aperiodic") {
        cfg.mode = Mode::aperiodic;
    } else {
        rd.errors.push_back("mode: expected \"aperiodic\" or \"strong\"");
    }
    cfg.decay_rate = rd.positive(doc, "decay_rate", "", cfg.mode == Mode::strong);
    cfg.radius = rd.positive(doc, "radius", "", true).value_or(cfg.radius);
    cfg.trunc_degree = rd.integer(doc, "trunc_degree", "", true, 3, 40).value_or(cfg.trunc_degree);
    cfg.max_steps = rd.integer(doc, "max_steps", "", false, 0, 64).value_or(cfg.max_steps);
    cfg.analytic_radius = rd.positive(doc, "analytic_radius", "", false).value_or(cfg.analytic_radius);

    if (doc.contains("d_policy")) {
        const json &d = doc["d_policy"];
        if (d == "certified") {
            cfg.empirical_d.reset();
        } else if (d.is_object() && d.size() == 1 && d.contains("empirical")) {
            auto v = rd.number(d, "empirical", "d_policy.", true);
            if (v && !(*v > 0.0 && *v < 0.5)) rd.errors.push_back("d_policy.empirical: must be in (0, 1/2)");
            else cfg.empirical_d = v;
        } else {
            rd.errors.push_back("d_policy: expected \"certified\" or {\"empirical\": d}");
        }
    }

    if (doc.contains("perturbation")) read_perturbation(rd, doc["perturbation"], cfg);
    for (const Monomial &m : cfg.perturbation)
        if (m.a1 + m.a2 > cfg.trunc_degree)
            rd.errors.push_back("perturbation: alpha [" + std::to_string(m.a1) + ", " + std::to_string(m.a2) +
                                "] exceeds trunc_degree");
    if (doc.contains("verify")) read_verify(rd, doc["verify"], cfg);

    if (!rd.errors.empty()) throw ConfigErrors(std::move(rd.errors));
    return cfg;
}

Problem build_problem(const ProblemConfig &cfg, std::uint64_t seed)
{
    Problem pb;
    NormalizerConfig &nc = pb.normalizer;
    nc.mode = cfg.mode;
    nc.lattice = make_lattice(cfg.omega, cfg.decay_rate);
    nc.R0 = cfg.radius;
    nc.max_steps = cfg.max_steps;
    nc.empirical_d = cfg.empirical_d;
    nc.residual_seed = seed;

    PQSeries F(cfg.trunc_degree);
    for (const Monomial &m : cfg.perturbation) {
        std::vector<ExpTerm> terms;
        for (const CoeffTerm &c : m.coeff)
            terms.push_back({cplx(c.amp_re, c.amp_im), c.tpow, nc.lattice.from_user(c.i, c.j)});
        F.add_to(m.a1, m.a2, ExpPoly::from_terms(nc.lattice.basis, terms));
    }
    pb.H = MoserHamiltonian::standard(cfg.omega, F);
    return pb;
}

} // namespace moser::app
