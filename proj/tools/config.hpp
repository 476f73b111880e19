#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "moser/normalizer.hpp"

namespace moser::app {

struct CoeffTerm {
    double amp_re = 0.0, amp_im = 0.0;
    int tpow = 0;
    int i = 0, j = 0; ///< rate i*(-a) + j*omega
};

struct Monomial {
    int a1 = 0, a2 = 0;
    std::vector<CoeffTerm> coeff;
};

struct Start {
    cplx p, q;
};

struct VerifyConfig {
    double T = 3.0;
    double tol = 1e-10;
    double conjugacy_threshold = 1e-6;
    std::vector<Start> starts;
    std::vector<double> scaling_radii; ///< empty: no scaling fit
    cplx p_dir = 1.0, q_dir = 1.0;
};

struct ProblemConfig {
    double omega = 1.0;
    Mode mode = Mode::strong;
    std::optional<double> decay_rate;
    double radius = 0.1;
    int trunc_degree = 10;
    int max_steps = 10;
    std::optional<double> empirical_d; ///< empty: certified
    double analytic_radius = 1.0;
    std::vector<Monomial> perturbation;
    VerifyConfig verify;
};

/// Every schema violation found, not just the first.
class ConfigErrors : public std::runtime_error {
public:
    explicit ConfigErrors(std::vector<std::string> errs);
    std::vector<std::string> errors;
};

ProblemConfig parse_config(const std::string &text);

struct Problem {
    MoserHamiltonian H;
    NormalizerConfig normalizer;
};

Problem build_problem(const ProblemConfig &cfg, std::uint64_t seed = 0);

} // namespace moser::app
