#include "pipeline.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "moser/errors.hpp"
#include "moser/flow.hpp"

namespace moser::app {

namespace {

using nlohmann::ordered_json;

const char *mode_name(Mode m) { return m == Mode::strong ? "strong" : "aperiodic"; }

ordered_json cjson(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json exp_poly_json(const ExpPoly &c)
{
    ordered_json terms = ordered_json::array();
    for (const ExpTerm &t : c.terms())
        terms.push_back({{"amp_re", t.amp.real()},
                         {"amp_im", t.amp.imag()},
                         {"tpow", t.tpow},
                         {"rate", c.rate_value(t.rate)}});
    return terms;
}

ordered_json row_json(const LedgerRow &r)
{
    return {{"j", r.j},
            {"R", r.R},
            {"d", r.d},
            {"R_next", r.R_next},
            {"min_degree", r.min_degree},
            {"eps_hat", r.eps_hat},
            {"eps_hat_mixed", r.eps_hat_mixed},
            {"eps_theory", r.eps_theory},
            {"m_hat", r.m_hat},
            {"M_hat", r.M_hat},
            {"smallness_margin", r.smallness.margin},
            {"smallness_holds", r.smallness.holds},
            {"residual", r.residual},
            {"chi_norm", r.chi_norm},
            {"chi_dt_norm", r.chi_dt_norm},
            {"chi_bound", r.chi_bound},
            {"lie_norm", r.lie_norm},
            {"lie_bound", r.lie_bound},
            {"lie_bound_literal", r.lie_bound_literal},
            {"eps_next_hat", r.eps_next_hat},
            {"quad_bound", r.quad_bound},
            {"p_displacement", r.p_displacement}};
}

ordered_json schedule_json(const ProblemConfig &cfg, const Problem &pb)
{
    const double R0 = cfg.radius;
    const double eps0 = cfg.mode == Mode::strong ? decay_envelope(pb.H.F, R0, *cfg.decay_rate) : taylor_norm(pb.H.F, R0);
    const BoundSchedule s = schedule(eps0, R0, cfg.omega, cfg.mode, cfg.decay_rate, cfg.max_steps);
    ordered_json steps = ordered_json::array();
    for (std::size_t j = 0; j < s.eps.size(); ++j)
        steps.push_back({{"j", j},
                         {"eps", s.eps[j]},
                         {"d", s.d[j]},
                         {"R", s.R[j]},
                         {"R_next", s.R[j + 1]},
                         {"m_lo", s.m_lo[j + 1]},
                         {"M_hi", s.M_hi[j + 1]}});
    ordered_json out{{"eps0", eps0},
                     {"eps0_limit", s.eps0_limit},
                     {"condition_holds", s.condition_holds},
                     {"Rstar", s.Rstar}};
    if (eps0 > 0.0) {
        const double r0 = r0_threshold(eps0, cfg.omega, cfg.analytic_radius, cfg.mode, cfg.decay_rate);
        out["r0_threshold"] = r0;
        out["r0_condition_holds"] = R0 <= r0;
        out["r0_quarter_condition_holds"] = std::pow(cfg.analytic_radius, 4) <= 1.0 / 16;
    }
    out["steps"] = steps;
    return out;
}

ordered_json error_json(const char *type, const std::string &message)
{
    return {{"type", type}, {"message", message}};
}

} // namespace

std::string trajectory_csv(const Trajectory &tr)
{
    std::string out = "t,p_re,p_im,q_re,q_im,eta_re,eta_im\n";
    char buf[512];
    for (std::size_t k = 0; k < tr.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", tr.t[k], tr.p[k].real(),
                      tr.p[k].imag(), tr.q[k].real(), tr.q[k].imag(), tr.eta[k].real(), tr.eta[k].imag());
        out += buf;
    }
    return out;
}

Outcome run_pipeline(const ProblemConfig &cfg, Stage stage, std::uint64_t seed)
{
    Outcome out;
    ordered_json &rep = out.report;
    rep["problem"] = {{"omega", cfg.omega},
                      {"mode", mode_name(cfg.mode)},
                      {"decay_rate", cfg.decay_rate ? ordered_json(*cfg.decay_rate) : ordered_json(nullptr)},
                      {"radius", cfg.radius},
                      {"trunc_degree", cfg.trunc_degree},
                      {"max_steps", cfg.max_steps},
                      {"d_policy", cfg.empirical_d ? ordered_json({{"empirical", *cfg.empirical_d}})
                                                   : ordered_json("certified")},
                      {"monomials", cfg.perturbation.size()},
                      {"seed", seed}};
    try {
        const Problem pb = build_problem(cfg, seed);
        if (stage == Stage::schedule || stage == Stage::all) rep["schedule"] = schedule_json(cfg, pb);
        if (stage == Stage::schedule) {
            rep["status"] = {{"exit_code", exit_ok}};
            return out;
        }

        const NormalFormResult res = run(pb.H, pb.normalizer);
        ordered_json ledger = ordered_json::array();
        for (const LedgerRow &r : res.ledger) ledger.push_back(row_json(r));
        rep["ledger"] = ledger;

        bool checks_hold = true;
        ordered_json checks = ordered_json::array();
        for (const BoundCheck &c : bound_checks(res, pb.normalizer)) {
            checks.push_back({{"j", c.j},
                              {"name", c.name},
                              {"measured", c.measured},
                              {"theoretical", c.theoretical},
                              {"holds", c.holds},
                              {"gating", c.gating}});
            if (c.gating && !c.holds) checks_hold = false;
        }
        rep["bound_checks"] = checks;

        ordered_json J = ordered_json::array();
        for (int k = 0; k <= res.H.J.max_power(); ++k)
            if (!res.H.J.coeff(k).is_zero()) J.push_back({{"power", k}, {"coeff", exp_poly_json(res.H.J.coeff(k))}});
        rep["normal_form"] = {{"converged", res.converged},
                              {"steps", res.steps.size()},
                              {"Rstar", res.Rstar},
                              {"remaining_F_terms", res.H.F.nonzero_count()},
                              {"J", J}};
        rep["warnings"] = res.warnings;

        bool conj_ok = true;
        if (stage == Stage::verify || stage == Stage::all) {
            const VerifyConfig &vc = cfg.verify;
            const double escape = 2 * cfg.radius;
            ordered_json starts = ordered_json::array();
            std::vector<ConjugacyReport> reps(vc.starts.size());
            for (std::size_t k = 0; k < vc.starts.size(); ++k)
                reps[k] = conjugacy_error(res, pb.H, {vc.starts[k].p, vc.starts[k].q, 0.0, 0.0}, vc.T, vc.tol, escape);
            for (std::size_t k = 0; k < reps.size(); ++k) {
                const std::string base = "start_" + std::to_string(k);
                out.csv.push_back({base + "_original.csv", trajectory_csv(reps[k].original)});
                out.csv.push_back({base + "_mapped.csv", trajectory_csv(reps[k].mapped)});
                const bool ok = reps[k].max_error <= vc.conjugacy_threshold;
                conj_ok = conj_ok && ok;
                starts.push_back({{"p", cjson(vc.starts[k].p)},
                                  {"q", cjson(vc.starts[k].q)},
                                  {"max_error", reps[k].max_error},
                                  {"x_drift", reps[k].x_drift},
                                  {"escaped", reps[k].escaped},
                                  {"samples", reps[k].original.size()},
                                  {"below_threshold", ok},
                                  {"csv", {base + "_original.csv", base + "_mapped.csv"}}});
            }
            ordered_json conj{{"T", vc.T},
                              {"tol", vc.tol},
                              {"threshold", vc.conjugacy_threshold},
                              {"escape_radius", escape},
                              {"starts", starts}};
            if (!vc.scaling_radii.empty()) {
                const ScalingFit fit =
                    conjugacy_scaling(res, pb.H, vc.scaling_radii, vc.p_dir, vc.q_dir, vc.T, vc.tol, escape);
                conj["scaling"] = {{"radii", fit.radii},
                                   {"errors", fit.errors},
                                   {"x_drifts", fit.drifts},
                                   {"exponent", fit.exponent},
                                   {"escaped", fit.escaped}};
            }
            rep["conjugacy"] = conj;
        }

        out.exit_code = checks_hold && conj_ok && res.converged ? exit_ok : exit_check_failed;
        rep["status"] = {{"bound_checks_hold", checks_hold},
                         {"converged", res.converged},
                         {"conjugacy_ok", conj_ok},
                         {"exit_code", out.exit_code}};
    } catch (const ConfigurationError &e) {
        rep["error"] = error_json("ConfigurationError", e.what());
        out.exit_code = exit_config_error;
    } catch (const HypothesisViolation &e) {
        rep["error"] = error_json("HypothesisViolation", e.what());
        out.exit_code = exit_engine_error;
    } catch (const UnboundedOnHalfLine &e) {
        rep["error"] = error_json("UnboundedOnHalfLine", e.what());
        out.exit_code = exit_engine_error;
    } catch (const DivergentImproperIntegral &e) {
        rep["error"] = error_json("DivergentImproperIntegral", e.what());
        out.exit_code = exit_engine_error;
    } catch (const PreconditionViolation &e) {
        rep["error"] = error_json("PreconditionViolation", e.what());
        out.exit_code = exit_engine_error;
    } catch (const std::exception &e) {
        rep["error"] = error_json("EngineError", e.what());
        out.exit_code = exit_engine_error;
    }
    if (rep.contains("error")) rep["status"] = {{"exit_code", out.exit_code}};
    return out;
}

Outcome run_text(const std::string &config_text, Stage stage, std::uint64_t seed)
{
    try {
        return run_pipeline(parse_config(config_text), stage, seed);
    } catch (const ConfigErrors &e) {
        Outcome out;
        out.exit_code = exit_config_error;
        out.report["error"] = {{"type", "ConfigErrors"}, {"messages", e.errors}};
        out.report["status"] = {{"exit_code", out.exit_code}};
        return out;
    }
}

void emit(const Outcome &out, const std::string &dir)
{
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::ofstream(fs::path(dir) / "report.json") << out.report.dump(2) << '\n';
    for (const CsvFile &f : out.csv) std::ofstream(fs::path(dir) / f.name) << f.content;
}

std::string summary(const Outcome &out)
{
    const ordered_json &rep = out.report;
    std::ostringstream s;
    char buf[256];
    if (rep.contains("error")) {
        s << "error: " << rep["error"].dump() << '\n';
        return s.str();
    }
    if (rep.contains("schedule")) {
        const auto &sc = rep["schedule"];
        std::snprintf(buf, sizeof buf, "schedule: eps0 %.3e  limit %.3e  condition %s\n", sc["eps0"].get<double>(),
                      sc["eps0_limit"].get<double>(), sc["condition_holds"].get<bool>() ? "holds" : "fails");
        s << buf;
    }
    if (rep.contains("ledger")) {
        s << "  j        R      d  deg    eps_hat   eps_next  quad_bound  smallness\n";
        for (const auto &r : rep["ledger"]) {
            std::snprintf(buf, sizeof buf, "%3d %8.4g %6.3g %4d %10.3e %10.3e %11.3e %10.3e%s\n", r["j"].get<int>(),
                          r["R"].get<double>(), r["d"].get<double>(), r["min_degree"].get<int>(),
                          r["eps_hat"].get<double>(), r["eps_next_hat"].get<double>(),
                          r["quad_bound"].get<double>(), r["smallness_margin"].get<double>(),
                          r["smallness_holds"].get<bool>() ? "" : " (fails)");
            s << buf;
        }
        int failed = 0, total = 0;
        for (const auto &c : rep["bound_checks"])
            if (c["gating"].get<bool>()) {
                ++total;
                if (!c["holds"].get<bool>()) ++failed;
            }
        s << "bound checks: " << total - failed << "/" << total << " hold\n";
    }
    if (rep.contains("conjugacy")) {
        for (const auto &st : rep["conjugacy"]["starts"]) {
            std::snprintf(buf, sizeof buf, "conjugacy: max error %.3e  x drift %.3e%s\n", st["max_error"].get<double>(),
                          st["x_drift"].get<double>(), st["escaped"].get<bool>() ? "  (escaped)" : "");
            s << buf;
        }
        if (rep["conjugacy"].contains("scaling")) {
            std::snprintf(buf, sizeof buf, "scaling exponent: %.3f\n",
                          rep["conjugacy"]["scaling"]["exponent"].get<double>());
            s << buf;
        }
    }
    for (const auto &w : rep.value("warnings", ordered_json::array())) s << "warning: " << w.get<std::string>() << '\n';
    s << "exit " << out.exit_code << '\n';
    return s.str();
}

} // namespace moser::app
