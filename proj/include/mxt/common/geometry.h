// Copyright 2026 The MxT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MXT_COMMON_GEOMETRY_H_
#define MXT_COMMON_GEOMETRY_H_

#include <array>
#include <cmath>

namespace mxt {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Vec3 operator*(double s, const Vec3& a) {
    return {s * a.x, s * a.y, s * a.z};
  }
  friend bool operator==(const Vec3&, const Vec3&) = default;

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double Norm() const { return std::sqrt(x * x + y * y + z * z); }
  double PlanarNorm() const { return std::sqrt(x * x + y * y); }
};

inline double Dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 Cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Unit quaternion, scalar first.
struct Quat {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static Quat AxisAngle(const Vec3& unit_axis, double angle) {
    double h = 0.5 * angle;
    double s = std::sin(h);
    return {std::cos(h), s * unit_axis.x, s * unit_axis.y, s * unit_axis.z};
  }

  friend Quat operator*(const Quat& a, const Quat& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }

  Quat Conjugate() const { return {w, -x, -y, -z}; }

  Vec3 Rotate(const Vec3& v) const {
    // v + 2 u x (u x v + w v), u = vector part.
    Vec3 u{x, y, z};
    Vec3 t = 2.0 * Cross(u, v);
    return v + w * t + Cross(u, t);
  }

  std::array<double, 4> ToArray() const { return {w, x, y, z}; }
};


}  // namespace mxt

#endif  // MXT_COMMON_GEOMETRY_H_
