#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "adelic/field_core.hpp"
#include "adelic/ideal_lattice.hpp"

namespace adelic {

enum class Method { counting, theta, duality, quotient, formula };
std::string method_name(Method m);

struct HReport {
    double h0 = 0, h1 = 0, chi = 0;
    Method h0_method = Method::counting, h1_method = Method::duality, chi_method = Method::counting;
    /// Function fields: exact values as integers in units of log q.
    bool logq_units = false;
    long h0_logq = 0, h1_logq = 0, chi_logq = 0;
    /// Shift applied by h_new (zero for plain reports).
    double shift = 0;
};

/// f_alpha(u): indicator of v(u) >= -n_v at finite places times the
/// Gaussians exp(-e_v pi |e^{-t_v} u|_v^{2/e_v}) at archimedean places.
double f_alpha_eval(const GlobalField& K, const RepleteDivisor& D, const FieldElement& u);

// ---- function fields (exact, units of log q) ----

/// Riemann-Roch for genus zero: deg D + 1, or 0 if deg D < 0.
long h0_ff_formula(const GlobalField& K, const RepleteDivisor& D);
/// dim L(D) by linear algebra on bounded-degree numerators.
long h0_ff_linear(const GlobalField& K, const RepleteDivisor& D);
/// dim L(D) by enumerating every numerator of bounded degree, when at most
/// `limit` candidates; nullopt otherwise.
std::optional<long> h0_ff_enumerate(const GlobalField& K, const RepleteDivisor& D, std::uint64_t limit = 1'000'000);
/// Cross-checked h0; throws std::logic_error on disagreement.
long h0_ff(const GlobalField& K, const RepleteDivisor& D, std::uint64_t enumeration_limit = 1'000'000);
long h1_ff_duality(const GlobalField& K, const RepleteDivisor& D, std::uint64_t enumeration_limit = 1'000'000);
/// log_q #(A(E) / (k cap A(E) + A(D))) for growing truncations E.
long h1_ff_quotient(const GlobalField& K, const RepleteDivisor& D, int max_steps = 256);
long chi_ff(const GlobalField& K, const RepleteDivisor& D);
long chi_formula_ff(const GlobalField& K, const RepleteDivisor& D);

// ---- general entry points (natural logarithms) ----

double theta_h0(const GlobalField& K, const RepleteDivisor& D, const ThetaParams& params = {});
double h0(const GlobalField& K, const RepleteDivisor& D, const ThetaParams& params = {});
double h1_by_duality(const GlobalField& K, const RepleteDivisor& D, const ThetaParams& params = {});
double h1_by_quotient(const GlobalField& K, const RepleteDivisor& D);
double chi(const GlobalField& K, const RepleteDivisor& D, const ThetaParams& params = {});
double chi_formula(const GlobalField& K, const RepleteDivisor& D);
/// (chi(D) - chi(0)) - log_module(D).
double rr_identity_defect(const GlobalField& K, const RepleteDivisor& D, const ThetaParams& params = {});
/// theta_h0(D) - theta_h0(K - D) - (log_module(D) + log|k|/2).
double theta_duality_defect(const GlobalField& K, const RepleteDivisor& D, const ThetaParams& params = {});

HReport h_report(const GlobalField& K, const RepleteDivisor& D, const ThetaParams& params = {});
/// h^j - c with c = g log q, resp. (1/2) log |disc|.
double h_new_shift(const GlobalField& K);
HReport h_new(const GlobalField& K, const RepleteDivisor& D, const ThetaParams& params = {});

}  // namespace adelic
