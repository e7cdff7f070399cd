#pragma once

#include <cmath>

#include "qcomp/ir/matrix.hpp"

namespace qcomp::llc {

/// Unit quaternion standing for the SU(2) matrix w*I - i(x*X + y*Y + z*Z).
/// Hamilton products match matrix products; q and -q are the same gate up to
/// global phase.
struct Quat {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

    friend Quat operator*(const Quat& a, const Quat& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }
    [[nodiscard]] Quat conj() const { return {w, -x, -y, -z}; }
    [[nodiscard]] double dot(const Quat& o) const { return w * o.w + x * o.x + y * o.y + z * o.z; }
    [[nodiscard]] Quat normalized() const {
        const double n = std::sqrt(dot(*this));
        return {w / n, x / n, y / n, z / n};
    }
    /// Representative with the first non-negligible component positive.
    [[nodiscard]] Quat canonical() const;

    static Quat rz(double theta) { return {std::cos(theta / 2), 0.0, 0.0, std::sin(theta / 2)}; }
    /// Rotation by `angle` about the unit axis (ax, ay, az).
    static Quat axis_angle(double ax, double ay, double az, double angle);
    /// Projection of a 2x2 unitary onto SU(2) (global phase removed).
    static Quat from_matrix(const Matrix2& u);
    [[nodiscard]] Matrix2 matrix() const;
};

/// Phase-invariant spectral distance between the gates of a and b.
[[nodiscard]] double quat_distance(const Quat& a, const Quat& b);

}  // namespace qcomp::llc
