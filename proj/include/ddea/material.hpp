#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ddea/errors.hpp"
#include "ddea/rootfind.hpp"
#include "ddea/vec3.hpp"

namespace ddea {

/// Number of viscoelastic sub-chains in parallel with the equilibrium spring.
inline constexpr int kSubChains = 6;

/// Dielectric film constitutive parameters: Gent hyperelastic spring (mu[0])
/// in parallel with six spring-dashpot sub-chains (mu[1..6], tau[0..5]),
/// a shared extensibility limit J, and the dielectric permittivity.
///
/// The default-constructed values are a synthetic parameter set chosen for
/// a well-conditioned desk-scale model; they are NOT measured film data and
/// any physical claim requires calibration or an explicit config.
struct FilmParams {
    double L1 = 62.9e-3;   // neutral in-plane length, primary axis (m)
    double L2 = 41.5e-3;   // neutral in-plane length, secondary axis (m)
    double L3 = 0.085e-3;  // neutral thickness (m)
    double eps = 2.48e-11; // permittivity (F/m)
    double J = 100.0;      // Gent extensibility limit (dimensionless)

    /// Shear moduli mu[0] = equilibrium spring, mu[1..6] = sub-chain springs (Pa).
    std::array<double, 7> mu = {6.0e4, 3.0e4, 1.5e4, 7.5e3, 3.75e3, 1.875e3, 937.5};
    /// Relaxation times tau[n-2] = eta_n / mu_n for sub-chain n = 2..7 (s).
    std::array<double, 6> tau = {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0};

    double tau_min() const {
        double t = tau[0];
        for (int n = 0; n < kSubChains; ++n)
            if (mu[n + 1] > 0.0 && tau[n] < t) t = tau[n];
        return t;
    }
    double tau_max() const {
        double t = 0.0;
        for (int n = 0; n < kSubChains; ++n)
            if (mu[n + 1] > 0.0 && tau[n] > t) t = tau[n];
        return t > 0.0 ? t : tau[0];
    }

    void validate() const {
        if (!(L1 > 0) || !(L2 > 0) || !(L3 > 0)) throw InvalidParams("film dimensions must be positive");
        if (!(eps > 0)) throw InvalidParams("permittivity must be positive");
        if (!(J > 0)) throw InvalidParams("Gent limit J must be positive");
        for (double m : mu)
            if (m < 0 || !std::isfinite(m)) throw InvalidParams("moduli must be finite and >= 0");
        for (double t : tau)
            if (!(t > 0)) throw InvalidParams("relaxation times must be positive");
    }
};

/// Current film state: total in-plane stretches and the dashpot stretch of
/// each sub-chain in each direction. The elastic stretch of sub-chain n in
/// direction i is lambda_i / xi[n][i].
struct FilmState {
    double lambda1 = 1.0, lambda2 = 1.0;
    std::array<std::array<double, 2>, kSubChains> xi{{{1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}}};

    /// Fully relaxed state at the given stretches (dashpots carry everything).
    static FilmState relaxed(double l1, double l2) {
        FilmState s;
        s.lambda1 = l1;
        s.lambda2 = l2;
        for (auto& p : s.xi) p = {l1, l2};
        return s;
    }
};

/// First invariant of an incompressible biaxial state.
inline double gent_invariant(double l1, double l2) {
    const double i12 = 1.0 / (l1 * l1 * l2 * l2);
    return l1 * l1 + l2 * l2 + i12;
}

inline constexpr double kGentGuard = 1e-9;

/// Throws GentLimit if (I1 - 3)/J is outside the admissible range.
inline void check_gent(double l1, double l2, double J, const std::string& what) {
    if (!(l1 > 0) || !(l2 > 0)) throw GentLimit(what + ": non-positive stretch");
    const double arg = (gent_invariant(l1, l2) - 3.0) / J;
    if (arg > 1.0 - kGentGuard) throw GentLimit(what + ": (I1-3)/J = " + std::to_string(arg));
}

namespace detail {

// Gent denominator 1 - (I1 - 3)/J for a biaxial stretch pair.
inline double gent_denom(double l1, double l2, double J) {
    return 1.0 - (gent_invariant(l1, l2) - 3.0) / J;
}

}  // namespace detail

/// Uniaxial pre-tension: given the primary pre-stretch, solve the lateral
/// pre-stretch from the traction-free condition on the secondary axis.
inline double solve_pretension(double lambda1_pre, const FilmParams& film) {
    if (!(lambda1_pre >= 1.0)) throw InvalidParams("lambda1_pre must be >= 1");
    const double J = film.J;
    // sigma2 of the equilibrium spring; the root is where the numerator vanishes.
    auto f = [&](double l2) {
        const double denom = detail::gent_denom(lambda1_pre, l2, J);
        if (denom <= 0.0) throw GentLimit("pretension search touched the Gent limit");
        const double i12 = 1.0 / (lambda1_pre * lambda1_pre * l2 * l2);
        return film.mu[0] * (l2 * l2 - i12) / denom;
    };
    // Bracket below/above the incompressible-uniaxial estimate.
    double lo = 0.05, hi = 1.5;
    // keep the upper end inside the Gent domain
    while (hi > lo && detail::gent_denom(lambda1_pre, hi, J) <= kGentGuard) hi *= 0.9;
    if (!(hi > lo)) throw GentLimit("no admissible lateral stretch range");
    double flo = f(lo), fhi = f(hi);
    if ((flo > 0) == (fhi > 0)) throw NoRoot("pretension residual does not change sign");
    return brent(f, lo, hi, 1e-15);
}

/// Film blank dimensions that realize a target preset angle and pre-stretch
/// on a lozenge of bar length l_dea.
inline std::pair<double, double> design_film_dims(double theta_pre, double l_dea,
                                                  double lambda1_pre) {
    if (!(theta_pre > 0) || !(theta_pre < kPi)) throw InvalidParams("theta_pre must be in (0, pi)");
    if (!(lambda1_pre >= 1.0)) throw InvalidParams("lambda1_pre must be >= 1");
    const double L1 = 2.0 * l_dea / lambda1_pre * std::sin(0.5 * theta_pre);
    const double L2 = 2.0 * l_dea * std::sqrt(lambda1_pre) * std::cos(0.5 * theta_pre);
    return {L1, L2};
}

/// Helmholtz free energy density of the network (J/m^3).
inline double free_energy(const FilmState& s, const FilmParams& film) {
    const double J = film.J;
    check_gent(s.lambda1, s.lambda2, J, "free_energy equilibrium spring");
    double W = -0.5 * film.mu[0] * J * std::log(detail::gent_denom(s.lambda1, s.lambda2, J));
    for (int n = 0; n < kSubChains; ++n) {
        if (film.mu[n + 1] == 0.0) continue;
        const double e1 = s.lambda1 / s.xi[n][0];
        const double e2 = s.lambda2 / s.xi[n][1];
        check_gent(e1, e2, J, "free_energy sub-chain " + std::to_string(n + 2));
        W += -0.5 * film.mu[n + 1] * J * std::log(detail::gent_denom(e1, e2, J));
    }
    return W;
}

/// In-plane true stresses (sigma1, sigma2) of the network (Pa).
inline std::pair<double, double> stress(const FilmState& s, const FilmParams& film) {
    const double J = film.J;
    const double l1 = s.lambda1, l2 = s.lambda2;
    check_gent(l1, l2, J, "stress equilibrium spring");
    const double i12 = 1.0 / (l1 * l1 * l2 * l2);
    const double d0 = detail::gent_denom(l1, l2, J);
    double s1 = film.mu[0] * (l1 * l1 - i12) / d0;
    double s2 = film.mu[0] * (l2 * l2 - i12) / d0;
    for (int n = 0; n < kSubChains; ++n) {
        if (film.mu[n + 1] == 0.0) continue;
        const double e1 = l1 / s.xi[n][0];
        const double e2 = l2 / s.xi[n][1];
        check_gent(e1, e2, J, "stress sub-chain " + std::to_string(n + 2));
        const double ei12 = 1.0 / (e1 * e1 * e2 * e2);
        const double dn = detail::gent_denom(e1, e2, J);
        s1 += film.mu[n + 1] * (e1 * e1 - ei12) / dn;
        s2 += film.mu[n + 1] * (e2 * e2 - ei12) / dn;
    }
    return {s1, s2};
}

using RatePairs = std::array<std::array<double, 2>, kSubChains>;

/// Time derivative d(xi)/dt of every dashpot stretch. The per-sub-chain
/// driving stresses couple the two directions with the opposing term halved.
inline RatePairs internal_state_rate(const FilmState& s, const FilmParams& film) {
    RatePairs rates{};
    const double J = film.J;
    for (int n = 0; n < kSubChains; ++n) {
        const double mu_n = film.mu[n + 1];
        if (mu_n == 0.0) {
            rates[n] = {0.0, 0.0};
            continue;
        }
        const double eta_n = mu_n * film.tau[n];
        const double e1 = s.lambda1 / s.xi[n][0];
        const double e2 = s.lambda2 / s.xi[n][1];
        check_gent(e1, e2, J, "rate sub-chain " + std::to_string(n + 2));
        const double ei12 = 1.0 / (e1 * e1 * e2 * e2);
        const double dn = detail::gent_denom(e1, e2, J);
        const double t1 = mu_n * (e1 * e1 - ei12) / dn;
        const double t2 = mu_n * (e2 * e2 - ei12) / dn;
        const double dlog1 = (t1 - 0.5 * t2) / (3.0 * eta_n);
        const double dlog2 = (t2 - 0.5 * t1) / (3.0 * eta_n);
        rates[n] = {dlog1 * s.xi[n][0], dlog2 * s.xi[n][1]};
    }
    return rates;
}

namespace detail {

// d(ln xi)/dt for all sub-chains at the given total stretches.
inline std::array<double, 2 * kSubChains> log_rate(const std::array<double, 2 * kSubChains>& logxi,
                                                   double l1, double l2, const FilmParams& film) {
    std::array<double, 2 * kSubChains> out{};
    const double J = film.J;
    for (int n = 0; n < kSubChains; ++n) {
        const double mu_n = film.mu[n + 1];
        if (mu_n == 0.0) continue;
        const double x1 = std::exp(logxi[2 * n]);
        const double x2 = std::exp(logxi[2 * n + 1]);
        const double e1 = l1 / x1, e2 = l2 / x2;
        check_gent(e1, e2, J, "integration sub-chain " + std::to_string(n + 2));
        const double ei12 = 1.0 / (e1 * e1 * e2 * e2);
        const double dn = gent_denom(e1, e2, J);
        const double t1 = mu_n * (e1 * e1 - ei12) / dn;
        const double t2 = mu_n * (e2 * e2 - ei12) / dn;
        const double eta_n = mu_n * film.tau[n];
        out[2 * n] = (t1 - 0.5 * t2) / (3.0 * eta_n);
        out[2 * n + 1] = (t2 - 0.5 * t1) / (3.0 * eta_n);
    }
    return out;
}

}  // namespace detail

/// Default substep count for one grid interval of length dt: resolve the
/// fastest active relaxation time with 20 substeps.
inline int auto_substeps(double dt, const FilmParams& film) {
    const double h = film.tau_min() / 20.0;
    const int n = static_cast<int>(std::ceil(dt / h));
    return n < 1 ? 1 : n;
}

/// Integrate the dashpot stretches along a stretch path sampled on a uniform
/// grid with spacing dt. Classic fixed-step RK4 on ln(xi); the stretches are
/// interpolated linearly inside each grid interval. Returns the state at
/// every grid point (size of lambda_path), starting with the initial state
/// re-labelled to lambda_path[0].
inline std::vector<FilmState> advance_state(const FilmState& initial,
                                            const std::vector<std::pair<double, double>>& lambda_path,
                                            double dt, int substeps, const FilmParams& film) {
    if (!(dt > 0)) throw InvalidParams("advance_state: dt must be positive");
    if (lambda_path.empty()) throw InvalidParams("advance_state: empty path");
    if (substeps <= 0) substeps = auto_substeps(dt, film);

    std::array<double, 2 * kSubChains> y{};
    for (int n = 0; n < kSubChains; ++n) {
        if (!(initial.xi[n][0] > 0) || !(initial.xi[n][1] > 0))
            throw InvalidParams("advance_state: xi must be positive");
        y[2 * n] = std::log(initial.xi[n][0]);
        y[2 * n + 1] = std::log(initial.xi[n][1]);
    }

    std::vector<FilmState> out;
    out.reserve(lambda_path.size());
    auto emit = [&](double l1, double l2) {
        FilmState s;
        s.lambda1 = l1;
        s.lambda2 = l2;
        for (int n = 0; n < kSubChains; ++n)
            s.xi[n] = {std::exp(y[2 * n]), std::exp(y[2 * n + 1])};
        out.push_back(s);
    };
    emit(lambda_path[0].first, lambda_path[0].second);

    const double h = dt / substeps;
    for (std::size_t i = 0; i + 1 < lambda_path.size(); ++i) {
        const auto [l1a, l2a] = lambda_path[i];
        const auto [l1b, l2b] = lambda_path[i + 1];
        auto lam = [&](double frac) {
            return std::pair<double, double>{l1a + (l1b - l1a) * frac, l2a + (l2b - l2a) * frac};
        };
        for (int s = 0; s < substeps; ++s) {
            const double f0 = static_cast<double>(s) / substeps;
            const double fm = f0 + 0.5 / substeps;
            const double f1 = f0 + 1.0 / substeps;
            const auto [la1, la2] = lam(f0);
            const auto [lm1, lm2] = lam(fm);
            const auto [lb1, lb2] = lam(f1);

            std::array<double, 2 * kSubChains> k1, k2, k3, k4, tmp;
            try {
                k1 = detail::log_rate(y, la1, la2, film);
                for (int j = 0; j < 2 * kSubChains; ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
                k2 = detail::log_rate(tmp, lm1, lm2, film);
                for (int j = 0; j < 2 * kSubChains; ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
                k3 = detail::log_rate(tmp, lm1, lm2, film);
                for (int j = 0; j < 2 * kSubChains; ++j) tmp[j] = y[j] + h * k3[j];
                k4 = detail::log_rate(tmp, lb1, lb2, film);
            } catch (const GentLimit& e) {
                throw GentLimit(std::string(e.what()), -1, static_cast<long>(i),
                                (i + (s + 1.0) / substeps) * dt);
            }
            for (int j = 0; j < 2 * kSubChains; ++j) {
                const double dy = h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
                if (std::fabs(dy) > 0.5)
                    throw StepUnstable("|d ln xi| per substep = " + std::to_string(std::fabs(dy)),
                                       -1, static_cast<long>(i), (i + (s + 1.0) / substeps) * dt);
                y[j] += dy;
            }
        }
        emit(l1b, l2b);
    }
    return out;
}

}  // namespace ddea
