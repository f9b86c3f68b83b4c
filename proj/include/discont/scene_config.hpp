#pragma once

#include <filesystem>
#include <string_view>

#include "discont/scene.hpp"

namespace discont {

/// A scene plus the motion used by sequence rendering.
///
/// JSON schema (all keys except `camera` and `objects` optional):
///
///     {
///       "camera":  {"width": 128, "height": 128, "focal": 150,
///                   "principal_point": [64, 64], "max_value": 255},
///       "light":   {"direction": [0, 0, -1], "ambient": 0.5},
///       "truth_topology": 4,
///       "objects": [{"type": "sphere", "center": [0, 0, 5], "radius": 1.5, "albedo": 0.6},
///                   {"type": "plane", "point": [0, 0, 9], "normal": [0, 0, -1], "albedo": 0.3}],
///       "motion":  {"translation": [0.05, 0, 0], "per_object": [[0, 0, 0], ...]}
///     }
///
/// Unknown keys are rejected.
struct SceneConfig {
    SceneSpec scene;
    SceneMotion motion;
};

/// Throws InputError on malformed JSON, missing or unknown keys, or a scene
/// that fails validate().
SceneConfig parse_scene_config(std::string_view json_text);
SceneConfig load_scene_config(const std::filesystem::path& path);

}  // namespace discont
