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

#pragma once

#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "pyramidplan/depth_image.hpp"

namespace pyramidplan {

using Rng = std::mt19937_64;

//! Oriented box; rotation maps box-frame coordinates to the parent frame.
struct Box {
  Vec3 center = Vec3::Zero();
  Vec3 half_extents = Vec3::Ones();
  Mat3 rotation = Mat3::Identity();

  //! Entry parameter s >= 0 of the ray origin + s * dir, or nullopt when
  //! the ray misses. Origins inside the box report 0.
  std::optional<double> ray_entry(const Vec3& origin, const Vec3& dir) const;
  //! Euclidean distance from p to the solid box (0 inside).
  double distance(const Vec3& p) const;
};

struct Scene {
  std::vector<Box> boxes;

  //! Every box mapped by x' = rotation * x + offset.
  Scene transformed(const Mat3& rotation, const Vec3& offset) const;
  //! Distance from p to the nearest box; +inf for an empty scene.
  double distance(const Vec3& p) const;
};

//! {"boxes": [{"center": [..], "half_extents": [..], "rotation_rows": [[..],[..],[..]]}, ...]}
nlohmann::json scene_to_json(const Scene& scene);
//! Throws std::invalid_argument on malformed input or a rotation that is
//! not orthonormal to 1e-9.
Scene scene_from_json(const nlohmann::json& j);
Scene load_scene(const std::filesystem::path& path);
void save_scene(const Scene& scene, const std::filesystem::path& path);

//! Ray-cast depth image of a camera-frame scene. Each pixel holds the
//! z-depth of the nearest box entry along its center ray, clamped to l;
//! rays that miss everything render as l.
DepthImage render(const Scene& scene, const CameraModel& camera);

//! Uniformly distributed rotation (uniform unit quaternion).
Mat3 random_rotation(Rng& rng);

struct BenchmarkSceneParams {
  int obstacle_count = 2;
  double thickness = 0.20;        // m
  double face_half_extent = 1.0;  // m, i.e. 2 m x 2 m faces
  double depth_min = 1.5;         // m
  double depth_max = 3.0;         // m
};

//! Randomly oriented thin slabs centered on the optical axis at depths
//! drawn uniformly from (depth_min, depth_max).
Scene random_benchmark_scene(Rng& rng, const BenchmarkSceneParams& params = {});

//! Camera-frame initial state at the focal point: v_x, v_y ~ U(-1, 1),
//! v_z ~ U(0, 4) m/s; a_y ~ U(-5, 5) m/s^2 with a_x = a_z = 0.
VehicleState random_initial_state(Rng& rng);

}  // namespace pyramidplan
