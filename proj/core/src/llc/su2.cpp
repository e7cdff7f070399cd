#include "qcomp/llc/su2.hpp"

namespace qcomp::llc {

Quat Quat::canonical() const {
    for (double v : {w, x, y, z}) {
        if (std::abs(v) > 1e-12) return v > 0 ? *this : Quat{-w, -x, -y, -z};
    }
    return *this;
}

Quat Quat::axis_angle(double ax, double ay, double az, double angle) {
    const double s = std::sin(angle / 2);
    return {std::cos(angle / 2), ax * s, ay * s, az * s};
}

Quat Quat::from_matrix(const Matrix2& u) {
    const Matrix2 v = u / std::sqrt(u.determinant());
    // v = [[w - iz, -y - ix], [y - ix, w + iz]]
    const Complex a = 0.5 * (v(0, 0) + std::conj(v(1, 1)));
    const Complex b = 0.5 * (v(1, 0) - std::conj(v(0, 1)));
    return Quat{a.real(), -b.imag(), b.real(), -a.imag()}.normalized();
}

Matrix2 Quat::matrix() const {
    Matrix2 m;
    m(0, 0) = Complex(w, -z);
    m(0, 1) = Complex(-y, -x);
    m(1, 0) = Complex(y, -x);
    m(1, 1) = Complex(w, z);
    return m;
}

double quat_distance(const Quat& a, const Quat& b) {
    const double s = a.dot(b) < 0 ? -1.0 : 1.0;
    const double dw = a.w - s * b.w, dx = a.x - s * b.x, dy = a.y - s * b.y, dz = a.z - s * b.z;
    return std::sqrt(dw * dw + dx * dx + dy * dy + dz * dz);
}

}  // namespace qcomp::llc
