#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "ddea/errors.hpp"
#include "ddea/material.hpp"
#include "ddea/rootfind.hpp"
#include "ddea/vec3.hpp"

namespace ddea {

/// Geometry of the three-chain frame: four-bar amplification linkage
/// (a, b, c, d), bicep q, parallelogram forearm n0, lozenge bar l_dea,
/// base offsets and masses. Angles in radians, lengths in metres.
struct RobotGeometry {
    double a = 55e-3;   // four-bar ground link
    double b = 10e-3;   // four-bar crank fixed to the bicep
    double c = 11.5e-3; // four-bar coupler
    double d = 62e-3;   // four-bar link driven by the lozenge
    double q = 50e-3;   // bicep length
    double n0 = 50e-3;  // forearm length
    double l_dea = 50e-3;
    double l_ch = 30e-3;    // radial offset of the bicep pivot
    double l_cv = 82.39e-3; // vertical offset of the bicep pivot plane
    double l_end = 25e-3;   // end-effector platform radius
    double omega = deg2rad(90.0); // bicep polar angle = theta1 + omega
    double alpha = deg2rad(3.0);  // lozenge-to-SAM mounting tilt
    double theta_pre = deg2rad(141.23);
    double theta_dea_neutral = deg2rad(111.8);
    /// theta_dea = theta_sam + sam_mount_offset. The rigid lozenge/SAM mount
    /// can only add a constant; omega + alpha reproduces the assembled
    /// neutral angle with the catalogue link lengths.
    double sam_mount_offset = deg2rad(93.0);
    /// Operating arc of the bicep crank angle, used to bracket the forward
    /// four-bar solve and the neutral-pose computation.
    double theta1_min = deg2rad(104.0);
    double theta1_max = deg2rad(176.0);
    /// Neutral platform sits above the bicep pivot plane when true.
    bool platform_above = true;

    double m_ee = 6e-3;   // end effector + mount (kg)
    double m_bc = 0.96e-3; // bicep (kg)
    double g = 9.80665;    // gravity magnitude (m/s^2)

    void validate() const {
        const double lengths[] = {a, b, c, d, q, n0, l_dea, l_ch, l_cv, l_end};
        for (double l : lengths)
            if (!(l > 0) || !std::isfinite(l)) throw InvalidParams("geometry lengths must be positive");
        if (!(theta_pre > 0) || !(theta_pre < kPi)) throw InvalidParams("theta_pre outside (0, pi)");
        if (!(theta_dea_neutral > 0) || !(theta_dea_neutral < kPi))
            throw InvalidParams("theta_dea_neutral outside (0, pi)");
        if (!(theta1_min < theta1_max)) throw InvalidParams("empty bicep operating arc");
        if (!(m_ee > 0) || !(m_bc >= 0) || !(g > 0)) throw InvalidParams("bad masses or gravity");
    }
};

/// One chain's analysis frame. The local frame sits at the bicep pivot with
/// axes equal to the world axes rotated by 120*(k-1) degrees about the world
/// vertical; the bicep sweeps in the local xy plane and local z stays the
/// world vertical.
struct ChainFrame {
    int k = 1;                  // chain index, 1..3
    RigidTransform world_to_local; // ⁰M_j
    Vec3 ee_to_joint;           // platform-to-joint offset, world frame (M_kN^U)
    Vec3 gravity_local;         // unit gravity direction expressed locally

    Vec3 to_local_point(const Vec3& p_world) const { return world_to_local.apply(p_world); }
    Vec3 to_local_vec(const Vec3& v_world) const { return world_to_local.rotate(v_world); }
    Vec3 to_world_vec(const Vec3& v_local) const { return world_to_local.R.transpose() * v_local; }
};

inline std::array<ChainFrame, 3> build_chain_frames(const RobotGeometry& geom) {
    geom.validate();
    std::array<ChainFrame, 3> frames;
    for (int k = 0; k < 3; ++k) {
        const double psi = 2.0 * kPi / 3.0 * k;
        const Vec3 radial{std::cos(psi), std::sin(psi), 0.0};
        const Vec3 pivot = radial * geom.l_ch + Vec3{0, 0, geom.l_cv};
        const Mat3 R = Mat3::rotation_z(-psi); // world -> local
        frames[k].k = k + 1;
        frames[k].world_to_local = {R, -(R * pivot)};
        frames[k].ee_to_joint = radial * geom.l_end;
        frames[k].gravity_local = {0.0, 0.0, -1.0};
    }
    return frames;
}

/// Position of platform joint N_k in chain k's local frame.
inline Vec3 joint_position(const Vec3& u_world, int k, const std::array<ChainFrame, 3>& frames) {
    const ChainFrame& f = frames[k - 1];
    return f.to_local_point(u_world + f.ee_to_joint);
}

/// Bicep crank angle from the local joint position. The limb is flattened
/// into the bicep plane: n_p is the forearm projected there, l_bn the
/// in-plane pivot-to-joint distance.
inline double bicep_angle(const Vec3& N_loc, const RobotGeometry& geom, int chain = -1) {
    const double nz2 = geom.n0 * geom.n0 - N_loc.z * N_loc.z;
    if (nz2 < 0)
        throw OutOfWorkspace("joint beyond forearm vertical reach", chain);
    const double n_p = std::sqrt(nz2);
    const double l_bn = std::hypot(N_loc.x, N_loc.y);
    if (!(l_bn > 0)) throw OutOfWorkspace("joint on the bicep pivot axis", chain);
    double cos_gamma = (geom.q * geom.q + l_bn * l_bn - n_p * n_p) / (2.0 * geom.q * l_bn);
    if (cos_gamma > 1.0 + 1e-12 || cos_gamma < -1.0 - 1e-12)
        throw OutOfWorkspace("limb triangle infeasible, cos = " + std::to_string(cos_gamma), chain);
    cos_gamma = std::fmin(1.0, std::fmax(-1.0, cos_gamma));
    const double target = std::atan2(N_loc.y, N_loc.x); // == pi - atan(Ny / -Nx)
    const double beta = target + std::acos(cos_gamma);  // bicep polar angle
    return wrap_angle_2pi(beta - geom.omega);
}

/// Bicep tip in the local frame (z = 0 plane).
inline Vec3 bicep_tip(double theta1, const RobotGeometry& geom) {
    const double beta = theta1 + geom.omega;
    return {geom.q * std::cos(beta), geom.q * std::sin(beta), 0.0};
}

/// Four-bar inverse: SAM input angle from the bicep crank angle. Closed-form
/// half-angle solution on the loop b·e^{i theta1} + c·e^{i phi} = a + d·e^{i psi},
/// theta_sam = pi - psi, with the branch written as t = 2R/(-G + sqrt(G^2-4HR))
/// so the H -> 0 limit (e.g. a rhombus linkage) stays finite.
inline double sam_inverse(double theta1, const RobotGeometry& geom, int chain = -1) {
    const double a = geom.a, b = geom.b, c = geom.c, d = geom.d;
    const double ct = std::cos(theta1), st = std::sin(theta1);
    const double K = a * a + b * b + d * d - c * c - 2.0 * a * b * ct;
    const double G = -4.0 * b * d * st;
    const double H = K - 2.0 * a * d + 2.0 * b * d * ct;
    const double R = K + 2.0 * a * d - 2.0 * b * d * ct;
    const double disc = G * G - 4.0 * H * R;
    if (disc < 0)
        throw LinkageLocked("four-bar discriminant = " + std::to_string(disc), chain);
    const double denom = -G + std::sqrt(disc);
    if (std::fabs(denom) < 1e-14 * (std::fabs(G) + std::fabs(H) + std::fabs(R) + 1e-300))
        throw SingularLinkage("four-bar root degenerate at theta1 = " + std::to_string(theta1), chain);
    const double t = 2.0 * R / denom;
    return kPi - 2.0 * std::atan(t);
}

/// Four-bar forward: bicep crank angle realizing a SAM input angle, solved by
/// bracketed root-finding over the geometry's operating arc.
inline double sam_forward(double theta_sam, const RobotGeometry& geom, int chain = -1) {
    auto f = [&](double th1) { return sam_inverse(th1, geom, chain) - theta_sam; };
    double lo = geom.theta1_min, hi = geom.theta1_max;
    double flo, fhi;
    try {
        flo = f(lo);
        fhi = f(hi);
    } catch (const Error& e) {
        throw NoSolution(std::string("operating arc infeasible: ") + e.what(), chain);
    }
    if ((flo > 0) == (fhi > 0))
        throw NoSolution("theta_sam outside the feasible range of the operating arc", chain);
    try {
        return brent(f, lo, hi, 1e-13);
    } catch (const NoRoot& e) {
        throw NoSolution(e.what(), chain);
    }
}

/// Lozenge strain map: film stretches from the lozenge vertex angle.
inline std::pair<double, double> dea_strains(double theta_dea, const RobotGeometry& geom,
                                             const FilmParams& film) {
    if (!(theta_dea > 0) || theta_dea > kPi + 1e-12)
        throw InvalidParams("theta_dea outside (0, pi]");
    const double l1 = 2.0 * geom.l_dea / film.L1 * std::sin(0.5 * theta_dea);
    const double l2 = 2.0 * geom.l_dea / film.L2 * std::cos(0.5 * theta_dea);
    return {l1, l2};
}

inline double dea_strain_dtheta1(double theta_dea, const RobotGeometry& geom, const FilmParams& film) {
    return geom.l_dea / film.L1 * std::cos(0.5 * theta_dea);
}

inline double dea_strain_dtheta2(double theta_dea, const RobotGeometry& geom, const FilmParams& film) {
    return -geom.l_dea / film.L2 * std::sin(0.5 * theta_dea);
}

/// Full single-chain kinematic solution in the chain's local frame.
struct ChainState {
    Vec3 N;          // platform joint
    double theta1 = 0;    // bicep crank angle
    double theta_sam = 0; // four-bar input angle
    double theta_dea = 0; // lozenge vertex angle
    double theta_fa = 0;  // forearm tilt angle
    double lambda1 = 1, lambda2 = 1;
    Vec3 Q;          // bicep tip
    Vec3 n;          // forearm vector Q - N, |n| = n0
    Vec3 P;          // admissible-displacement direction (unit)
};

struct KinematicSnapshot {
    std::array<ChainState, 3> chain;
};

/// Passive-limb solution of one chain: joint, bicep, forearm.
struct LimbState {
    Vec3 N;
    double theta1 = 0;
    Vec3 Q;
    Vec3 n;
    double theta_fa = 0;
};

namespace detail {

inline LimbState solve_limb(const Vec3& u_world, int k, const std::array<ChainFrame, 3>& frames,
                            const RobotGeometry& geom) {
    LimbState ls;
    ls.N = joint_position(u_world, k, frames);
    ls.theta1 = bicep_angle(ls.N, geom, k);
    ls.Q = bicep_tip(ls.theta1, geom);
    ls.n = ls.Q - ls.N;
    ls.theta_fa = std::acos(std::fmin(1.0, std::fmax(-1.0, ls.n.z / geom.n0))) - 0.5 * kPi;
    return ls;
}

/// Limb plus the actuator-side map (four-bar, lozenge, film strains).
inline ChainState solve_chain(const Vec3& u_world, int k, const std::array<ChainFrame, 3>& frames,
                              const RobotGeometry& geom, const FilmParams& film) {
    const LimbState ls = solve_limb(u_world, k, frames, geom);
    ChainState cs;
    cs.N = ls.N;
    cs.theta1 = ls.theta1;
    cs.Q = ls.Q;
    cs.n = ls.n;
    cs.theta_fa = ls.theta_fa;
    cs.theta_sam = sam_inverse(cs.theta1, geom, k);
    cs.theta_dea = cs.theta_sam + geom.sam_mount_offset;
    auto [l1, l2] = dea_strains(cs.theta_dea, geom, film);
    if (!(l1 > 0) || !(l2 > 0))
        throw OutOfWorkspace("non-positive film stretch", k);
    cs.lambda1 = l1;
    cs.lambda2 = l2;
    return cs;
}

}  // namespace detail

/// Forearm tilt angle of chain k at a world pose.
inline double forearm_angle(const Vec3& u_world, int k, const std::array<ChainFrame, 3>& frames,
                            const RobotGeometry& geom) {
    return detail::solve_limb(u_world, k, frames, geom).theta_fa;
}

/// Unit normal of the plane spanned by two forearm vectors (n_{k+2} x n_{k+1}).
inline Vec3 projection_from_forearms(const Vec3& n_kp1, const Vec3& n_kp2, int chain = -1) {
    const Vec3 cr = cross(n_kp2, n_kp1);
    const double norm = cr.norm();
    if (norm < 1e-12) throw DegenerateProjection("forearms numerically parallel", chain);
    return cr / norm;
}

/// Projection direction for chain k: unit normal of the plane spanned by the
/// other two forearms, expressed in chain k's local frame.
inline Vec3 chain_projection(const Vec3& u_world, int k, const std::array<ChainFrame, 3>& frames,
                             const RobotGeometry& geom) {
    const int k1 = (k % 3) + 1, k2 = ((k + 1) % 3) + 1;
    const LimbState c1 = detail::solve_limb(u_world, k1, frames, geom);
    const LimbState c2 = detail::solve_limb(u_world, k2, frames, geom);
    const Vec3 n1_w = frames[k1 - 1].to_world_vec(c1.n);
    const Vec3 n2_w = frames[k2 - 1].to_world_vec(c2.n);
    return frames[k - 1].to_local_vec(projection_from_forearms(n1_w, n2_w, k));
}

/// Inverse kinematics of all three chains, including the projection vectors.
inline KinematicSnapshot inverse_kinematics(const Vec3& u_world,
                                            const std::array<ChainFrame, 3>& frames,
                                            const RobotGeometry& geom, const FilmParams& film) {
    KinematicSnapshot snap;
    std::array<Vec3, 3> n_world;
    for (int k = 1; k <= 3; ++k) {
        snap.chain[k - 1] = detail::solve_chain(u_world, k, frames, geom, film);
        n_world[k - 1] = frames[k - 1].to_world_vec(snap.chain[k - 1].n);
    }
    for (int k = 1; k <= 3; ++k) {
        const Vec3 P_w = projection_from_forearms(n_world[k % 3], n_world[(k + 1) % 3], k);
        snap.chain[k - 1].P = frames[k - 1].to_local_vec(P_w);
    }
    return snap;
}

/// First derivatives (world frame) of the chain-k kinematic map, plus the
/// Hessian of the bicep angle. Central finite differences; the step policy
/// and the step-halving consistency check live with the tests.
struct ChainJacobian {
    Vec3 d_theta_dea;
    Vec3 d_lambda1, d_lambda2;
    Vec3 d_theta1;
    Vec3 d_theta_fa;
    Mat3 hess_theta1;
};

struct FdOptions {
    double step = 1e-6;       // first-derivative step (m), scaled by |u|
    double hess_step = 3e-5;  // second-derivative step (m)
};

inline ChainJacobian kinematics_jacobian(const Vec3& u_world, int k,
                                         const std::array<ChainFrame, 3>& frames,
                                         const RobotGeometry& geom, const FilmParams& film,
                                         const FdOptions& fd = {}) {
    auto eval = [&](const Vec3& u) { return detail::solve_chain(u, k, frames, geom, film); };

    const double h = std::fmax(fd.step, fd.step * u_world.norm());
    ChainJacobian jac;
    std::array<Vec3, 3> axes = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    std::array<ChainState, 3> plus, minus;
    try {
        for (int i = 0; i < 3; ++i) {
            plus[i] = eval(u_world + axes[i] * h);
            minus[i] = eval(u_world - axes[i] * h);
        }
    } catch (const Error& e) {
        throw NearSingular(std::string("stencil point infeasible: ") + e.what(), k);
    }
    for (int i = 0; i < 3; ++i) {
        const double inv = 1.0 / (2.0 * h);
        jac.d_theta_dea[i] = (plus[i].theta_dea - minus[i].theta_dea) * inv;
        jac.d_lambda1[i] = (plus[i].lambda1 - minus[i].lambda1) * inv;
        jac.d_lambda2[i] = (plus[i].lambda2 - minus[i].lambda2) * inv;
        jac.d_theta1[i] = (plus[i].theta1 - minus[i].theta1) * inv;
        jac.d_theta_fa[i] = (plus[i].theta_fa - minus[i].theta_fa) * inv;
    }

    const double h2 = std::fmax(fd.hess_step, fd.hess_step * u_world.norm());
    try {
        const double f0 = eval(u_world).theta1;
        std::array<double, 3> fp, fm;
        for (int i = 0; i < 3; ++i) {
            fp[i] = eval(u_world + axes[i] * h2).theta1;
            fm[i] = eval(u_world - axes[i] * h2).theta1;
            jac.hess_theta1(i, i) = (fp[i] - 2.0 * f0 + fm[i]) / (h2 * h2);
        }
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                const double fpp = eval(u_world + axes[i] * h2 + axes[j] * h2).theta1;
                const double fpm = eval(u_world + axes[i] * h2 - axes[j] * h2).theta1;
                const double fmp = eval(u_world - axes[i] * h2 + axes[j] * h2).theta1;
                const double fmm = eval(u_world - axes[i] * h2 - axes[j] * h2).theta1;
                const double v = (fpp - fpm - fmp + fmm) / (4.0 * h2 * h2);
                jac.hess_theta1(i, j) = v;
                jac.hess_theta1(j, i) = v;
            }
    } catch (const Error& e) {
        throw NearSingular(std::string("hessian stencil infeasible: ") + e.what(), k);
    }
    return jac;
}

/// Central-axis pose at the assembled neutral lozenge angle.
inline Vec3 neutral_pose(const RobotGeometry& geom) {
    const double theta_sam = geom.theta_dea_neutral - geom.sam_mount_offset;
    const double theta1 = sam_forward(theta_sam, geom);
    const Vec3 Q = bicep_tip(theta1, geom);
    const double nx = geom.l_end - geom.l_ch; // local joint x at a central pose
    const double np2 = (nx - Q.x) * (nx - Q.x) + Q.y * Q.y;
    const double nz2 = geom.n0 * geom.n0 - np2;
    if (nz2 < 0) throw OutOfWorkspace("neutral lozenge angle unreachable");
    const double nz = std::sqrt(nz2);
    return {0.0, 0.0, geom.l_cv + (geom.platform_above ? nz : -nz)};
}

}  // namespace ddea
