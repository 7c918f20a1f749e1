#include "corot/rotor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "corot/exceptions.hpp"

namespace corot {

namespace {

constexpr double kAxisNormTolerance = 1e-9;
constexpr double kRenormalizeThreshold = 1e-12;

}  // namespace

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Quaternion quat_from_axis_angle(double theta, const Vec3& axis) {
  const double axis_norm = norm(axis);
  if (!(std::abs(axis_norm - 1.0) <= kAxisNormTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "rotation axis must be a unit vector, got norm " << axis_norm;
    throw DomainError(msg.str());
  }
  const double half = 0.5 * theta;
  const double sh = std::sin(half);
  return {std::cos(half), {sh * axis[0], sh * axis[1], sh * axis[2]}};
}

Quaternion quat_multiply(const Quaternion& first, const Quaternion& second) {
  const Vec3& v1 = first.v;
  const Vec3& v2 = second.v;
  const Vec3 w = cross(v1, v2);
  Quaternion out{first.s * second.s - dot(v1, v2),
                 {first.s * v2[0] + second.s * v1[0] + w[0],
                  first.s * v2[1] + second.s * v1[1] + w[1],
                  first.s * v2[2] + second.s * v1[2] + w[2]}};
  const double n = std::sqrt(out.norm_squared());
  if (std::abs(n - 1.0) > kRenormalizeThreshold) {
    out.s /= n;
    for (double& c : out.v) c /= n;
  }
  return out;
}

Quaternion conjugate(const Quaternion& q) { return {q.s, {-q.v[0], -q.v[1], -q.v[2]}}; }

double quat_dot(const Quaternion& a, const Quaternion& b) { return a.s * b.s + dot(a.v, b.v); }

double fidelity(const Quaternion& a, const Quaternion& b) {
  return std::min(1.0, std::abs(quat_dot(a, b)));
}

double infidelity(const Quaternion& a, const Quaternion& b) {
  // Vector part of the relative rotation; |v_rel|² = 1 − (a·b)² for unit inputs.
  const Vec3 w = cross(a.v, b.v);
  const Vec3 rel{a.s * b.v[0] - b.s * a.v[0] - w[0], a.s * b.v[1] - b.s * a.v[1] - w[1],
                 a.s * b.v[2] - b.s * a.v[2] - w[2]};
  const double c = std::min(1.0, std::abs(quat_dot(a, b)));
  return dot(rel, rel) / (1.0 + c);
}

RotationMatrix operator*(const RotationMatrix& a, const RotationMatrix& b) {
  RotationMatrix out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
    }
  }
  return out;
}

Vec3 operator*(const RotationMatrix& r, const Vec3& x) {
  return {r(0, 0) * x[0] + r(0, 1) * x[1] + r(0, 2) * x[2],
          r(1, 0) * x[0] + r(1, 1) * x[1] + r(1, 2) * x[2],
          r(2, 0) * x[0] + r(2, 1) * x[1] + r(2, 2) * x[2]};
}

RotationMatrix transpose(const RotationMatrix& r) {
  RotationMatrix out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out(i, j) = r(j, i);
  }
  return out;
}

double determinant(const RotationMatrix& r) {
  return r(0, 0) * (r(1, 1) * r(2, 2) - r(1, 2) * r(2, 1)) -
         r(0, 1) * (r(1, 0) * r(2, 2) - r(1, 2) * r(2, 0)) +
         r(0, 2) * (r(1, 0) * r(2, 1) - r(1, 1) * r(2, 0));
}

double orthogonality_error(const RotationMatrix& r) {
  const RotationMatrix p = transpose(r) * r;
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      worst = std::max(worst, std::abs(p(i, j) - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

RotationMatrix quat_to_matrix(const Quaternion& q) {
  // Transpose of the textbook right-handed map, matching the clockwise sense.
  const double w = q.s;
  const double x = q.v[0];
  const double y = q.v[1];
  const double z = q.v[2];
  RotationMatrix r;
  r.m = {{{1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y + w * z), 2.0 * (x * z - w * y)},
          {2.0 * (x * y - w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z + w * x)},
          {2.0 * (x * z + w * y), 2.0 * (y * z - w * x), 1.0 - 2.0 * (x * x + y * y)}}};
  return r;
}

RotationMatrix rotation_matrix(double theta, const Vec3& axis) {
  const double axis_norm = norm(axis);
  if (!(std::abs(axis_norm - 1.0) <= kAxisNormTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "rotation axis must be a unit vector, got norm " << axis_norm;
    throw DomainError(msg.str());
  }
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  const double k = 1.0 - c;
  const auto& a = axis;
  // R = c·I + (1 − c)·a·aᵀ − sin θ·[a]×
  RotationMatrix r;
  r.m = {{{c + k * a[0] * a[0], k * a[0] * a[1] + sn * a[2], k * a[0] * a[2] - sn * a[1]},
          {k * a[1] * a[0] - sn * a[2], c + k * a[1] * a[1], k * a[1] * a[2] + sn * a[0]},
          {k * a[2] * a[0] + sn * a[1], k * a[2] * a[1] - sn * a[0], c + k * a[2] * a[2]}}};
  return r;
}

RotationMatrix compose(const RotationMatrix& first, const RotationMatrix& second) {
  return second * first;
}

double rotation_fidelity(const RotationMatrix& a, const RotationMatrix& b) {
  const RotationMatrix rel = transpose(a) * b;
  const double trace = rel(0, 0) + rel(1, 1) + rel(2, 2);
  return std::sqrt(std::clamp((1.0 + trace) / 4.0, 0.0, 1.0));
}

}  // namespace corot
