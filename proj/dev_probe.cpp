// Scratch exploration binary - not part of the deliverable.
#include <cstdio>

#include "ddea/geometry.hpp"

using namespace ddea;

int main() {
    RobotGeometry geom;
    geom.validate();

    // 1. four-bar sweep
    printf("== four-bar sweep (Table-1 links) ==\n");
    for (double deg = 60; deg <= 280; deg += 10) {
        try {
            double ts = sam_inverse(deg2rad(deg), geom);
            printf("theta1 %6.1f deg -> theta_sam %8.4f deg  theta_dea %8.4f deg\n", deg,
                   rad2deg(ts), rad2deg(ts) + rad2deg(geom.sam_mount_offset));
        } catch (const Error& e) {
            printf("theta1 %6.1f deg -> %s\n", deg, e.what());
        }
    }

    // 2. neutral pose
    auto frames = build_chain_frames(geom);
    try {
        Vec3 un = neutral_pose(geom);
        printf("\nneutral pose: (%.6f %.6f %.6f) m\n", un.x, un.y, un.z);
        FilmParams film;
        auto snap = inverse_kinematics(un, frames, geom, film);
        for (int k = 0; k < 3; ++k) {
            const auto& c = snap.chain[k];
            printf("chain %d: th1 %.4f deg  sam %.4f  dea %.4f  fa %.4f  l1 %.5f l2 %.5f  P(%.4f %.4f %.4f) |n| %.6e\n",
                   k + 1, rad2deg(c.theta1), rad2deg(c.theta_sam), rad2deg(c.theta_dea),
                   rad2deg(c.theta_fa), c.lambda1, c.lambda2, c.P.x, c.P.y, c.P.z, c.n.norm());
        }

        // 3. central-axis z scan
        printf("\n== central axis scan ==\n");
        for (double dz = 15e-3; dz >= -25e-3; dz -= 5e-3) {
            Vec3 u{0, 0, un.z + dz};
            try {
                auto s = inverse_kinematics(u, frames, geom, film);
                printf("z = neutral%+6.1f mm: th1 %8.3f deg  dea %8.3f deg  l1 %.4f l2 %.4f fa %7.3f deg\n",
                       dz * 1e3, rad2deg(s.chain[0].theta1), rad2deg(s.chain[0].theta_dea),
                       s.chain[0].lambda1, s.chain[0].lambda2, rad2deg(s.chain[0].theta_fa));
            } catch (const Error& e) {
                printf("z = neutral%+6.1f mm: %s\n", dz * 1e3, e.what());
            }
        }

        // 4. lateral reach at a working height
        printf("\n== lateral scan at neutral-8mm ==\n");
        for (double dx = 0; dx <= 14e-3; dx += 2e-3) {
            Vec3 u{dx, 0, un.z - 8e-3};
            try {
                inverse_kinematics(u, frames, geom, film);
                printf("x=%+5.1f mm ok\n", dx * 1e3);
            } catch (const Error& e) {
                printf("x=%+5.1f mm: %s\n", dx * 1e3, e.what());
            }
        }

        // 5. gradient direction: d theta_dea / d u_z
        auto jac = kinematics_jacobian(un - Vec3{0, 0, 5e-3}, 1, frames, geom, film);
        printf("\ngrad theta_dea (world) = (%.4f %.4f %.4f) rad/m\n", jac.d_theta_dea.x,
               jac.d_theta_dea.y, jac.d_theta_dea.z);
        printf("grad theta1    (world) = (%.4f %.4f %.4f) rad/m\n", jac.d_theta1.x,
               jac.d_theta1.y, jac.d_theta1.z);
    } catch (const Error& e) {
        printf("neutral pose failed: %s\n", e.what());
    }
    return 0;
}
