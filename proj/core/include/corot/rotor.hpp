#pragma once

#include <array>

namespace corot {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

/// Unit quaternion {s, v} = {cos(θ/2), sin(θ/2)·a} describing a rotation by θ
/// about the unit axis a.
///
/// Products compose left to right in time: quat_multiply(first, second) is
/// the rotation `first` followed by `second`. With the product written as
/// {s1·s2 − v1·v2, s1·v2 + s2·v1 + v1∧v2}, this fixes the rotation sense to
/// clockwise about a (the usual NMR convention); quat_to_matrix and the
/// matrix oracle use the same sense.
///
/// {s, v} and {−s, −v} are the same rotation. Compare through fidelity(),
/// never by component equality.
struct Quaternion {
  double s = 1.0;
  Vec3 v{0.0, 0.0, 0.0};

  static constexpr Quaternion identity() { return {}; }

  double norm_squared() const { return s * s + dot(v, v); }
  Quaternion operator-() const { return {-s, {-v[0], -v[1], -v[2]}}; }
};

/// Throws DomainError when |axis| differs from 1 by more than 1e-9.
Quaternion quat_from_axis_angle(double theta, const Vec3& axis);

/// `first` applied, then `second`. Renormalizes when the norm drifts past 1e-12.
Quaternion quat_multiply(const Quaternion& first, const Quaternion& second);

Quaternion conjugate(const Quaternion& q);

/// 4-vector dot product s1·s2 + v1·v2.
double quat_dot(const Quaternion& a, const Quaternion& b);

/// |s1·s2 + v1·v2|, in [0, 1]; 1 iff the rotations agree up to 2π.
double fidelity(const Quaternion& a, const Quaternion& b);

/// 1 − fidelity(a, b), evaluated from the vector part of the relative
/// rotation so that small values keep full relative precision.
double infidelity(const Quaternion& a, const Quaternion& b);

/// Row-major 3×3 matrix acting on column vectors.
struct RotationMatrix {
  std::array<std::array<double, 3>, 3> m{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};

  static constexpr RotationMatrix identity() { return {}; }

  double operator()(int row, int col) const { return m[row][col]; }
  double& operator()(int row, int col) { return m[row][col]; }
};

RotationMatrix operator*(const RotationMatrix& a, const RotationMatrix& b);
Vec3 operator*(const RotationMatrix& r, const Vec3& x);
RotationMatrix transpose(const RotationMatrix& r);
double determinant(const RotationMatrix& r);
/// max |(rᵀr − I)_ij|
double orthogonality_error(const RotationMatrix& r);

RotationMatrix quat_to_matrix(const Quaternion& q);

/// Oracle path: clockwise rotation by theta about a unit axis, built directly
/// with Rodrigues' formula and no quaternion arithmetic.
RotationMatrix rotation_matrix(double theta, const Vec3& axis);

/// Matrix of `first` followed by `second`.
RotationMatrix compose(const RotationMatrix& first, const RotationMatrix& second);

/// Quaternion fidelity recovered from matrices: |cos(Δθ/2)| of the relative
/// rotation, via its trace.
double rotation_fidelity(const RotationMatrix& a, const RotationMatrix& b);

}  // namespace corot
