/*
 * Copyright 2026 The pyramidplan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pyramidplan/scene.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace pyramidplan {

std::optional<double> Box::ray_entry(const Vec3& origin, const Vec3& dir) const {
  const Vec3 o = rotation.transpose() * (origin - center);
  const Vec3 d = rotation.transpose() * dir;
  double t_min = -std::numeric_limits<double>::infinity();
  double t_max = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    if (std::abs(d[k]) < 1e-300) {
      if (std::abs(o[k]) > half_extents[k]) return std::nullopt;
      continue;
    }
    double t1 = (-half_extents[k] - o[k]) / d[k];
    double t2 = (half_extents[k] - o[k]) / d[k];
    if (t1 > t2) std::swap(t1, t2);
    t_min = std::max(t_min, t1);
    t_max = std::min(t_max, t2);
    if (t_min > t_max) return std::nullopt;
  }
  if (t_max < 0.0) return std::nullopt;
  return std::max(t_min, 0.0);
}

double Box::distance(const Vec3& p) const {
  const Vec3 local = rotation.transpose() * (p - center);
  return (local.cwiseAbs() - half_extents).cwiseMax(0.0).norm();
}

Scene Scene::transformed(const Mat3& rot, const Vec3& offset) const {
  Scene out;
  out.boxes.reserve(boxes.size());
  for (const Box& b : boxes) out.boxes.push_back({rot * b.center + offset, b.half_extents, rot * b.rotation});
  return out;
}

double Scene::distance(const Vec3& p) const {
  double d = std::numeric_limits<double>::infinity();
  for (const Box& b : boxes) d = std::min(d, b.distance(p));
  return d;
}

namespace {

nlohmann::json vec_json(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

Vec3 json_vec(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected a 3-element array");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

}  // namespace

nlohmann::json scene_to_json(const Scene& scene) {
  nlohmann::json boxes = nlohmann::json::array();
  for (const Box& b : scene.boxes) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < 3; ++r) rows.push_back(vec_json(b.rotation.row(r).transpose()));
    boxes.push_back({{"center", vec_json(b.center)}, {"half_extents", vec_json(b.half_extents)}, {"rotation_rows", rows}});
  }
  return {{"boxes", boxes}};
}

Scene scene_from_json(const nlohmann::json& j) {
  Scene scene;
  try {
    for (const auto& jb : j.at("boxes")) {
      Box b;
      b.center = json_vec(jb.at("center"));
      b.half_extents = json_vec(jb.at("half_extents"));
      const auto& rows = jb.at("rotation_rows");
      if (!rows.is_array() || rows.size() != 3) throw std::invalid_argument("rotation_rows must have 3 rows");
      for (int r = 0; r < 3; ++r) b.rotation.row(r) = json_vec(rows[r]).transpose();
      if (!((b.rotation.transpose() * b.rotation - Mat3::Identity()).cwiseAbs().maxCoeff() <= 1e-9)) {
        throw std::invalid_argument("box rotation is not orthonormal");
      }
      if (!(b.half_extents.minCoeff() > 0.0)) throw std::invalid_argument("box half extents must be positive");
      scene.boxes.push_back(b);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed scene JSON: ") + e.what());
  }
  return scene;
}

Scene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scene file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed scene JSON: ") + e.what());
  }
  return scene_from_json(j);
}

void save_scene(const Scene& scene, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scene file " + path.string());
  out << scene_to_json(scene).dump(2) << '\n';
}

DepthImage render(const Scene& scene, const CameraModel& camera) {
  const double l = camera.unknown_horizon();
  const Vec3 origin = Vec3::Zero();
  std::vector<float> depth(camera.pixel_count());
  std::size_t i = 0;
  for (int v = 0; v < camera.height(); ++v) {
    for (int u = 0; u < camera.width(); ++u, ++i) {
      const Vec3 dir = camera.ray(u, v);
      double nearest = l;
      for (const Box& b : scene.boxes) {
        if (const auto s = b.ray_entry(origin, dir)) nearest = std::min(nearest, *s);
      }
      depth[i] = static_cast<float>(nearest);
    }
  }
  return DepthImage(camera, std::move(depth));
}

Mat3 random_rotation(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u1 = unit(rng);
  const double u2 = unit(rng);
  const double u3 = unit(rng);
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  const Eigen::Quaterniond q(b * std::cos(kTwoPi * u3), a * std::sin(kTwoPi * u2), a * std::cos(kTwoPi * u2),
                             b * std::sin(kTwoPi * u3));
  return q.normalized().toRotationMatrix();
}

Scene random_benchmark_scene(Rng& rng, const BenchmarkSceneParams& params) {
  std::uniform_real_distribution<double> depth(params.depth_min, params.depth_max);
  Scene scene;
  for (int i = 0; i < params.obstacle_count; ++i) {
    Box b;
    b.center = Vec3(0.0, 0.0, depth(rng));
    b.half_extents = Vec3(params.face_half_extent, params.face_half_extent, 0.5 * params.thickness);
    b.rotation = random_rotation(rng);
    scene.boxes.push_back(b);
  }
  return scene;
}

VehicleState random_initial_state(Rng& rng) {
  std::uniform_real_distribution<double> lateral(-1.0, 1.0);
  std::uniform_real_distribution<double> forward(0.0, 4.0);
  std::uniform_real_distribution<double> accel(-5.0, 5.0);
  VehicleState s;
  s.velocity.x() = lateral(rng);
  s.velocity.y() = lateral(rng);
  s.velocity.z() = forward(rng);
  s.acceleration.y() = accel(rng);
  return s;
}

}  // namespace pyramidplan
