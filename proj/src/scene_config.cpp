#include "discont/scene_config.hpp"

#include <json.hpp>

#include <initializer_list>
#include <string>

#include "discont/netpbm.hpp"

namespace discont {

namespace {

using nlohmann::json;

void only_keys(const json& j, std::string_view where, std::initializer_list<std::string_view> keys) {
    if (!j.is_object()) throw InputError(std::string(where) + " must be an object");
    for (const auto& [k, _] : j.items()) {
        bool known = false;
        for (const auto key : keys) known = known || k == key;
        if (!known) throw InputError("unknown key '" + k + "' in " + std::string(where));
    }
}

Point3 vec3(const json& j, std::string_view what) {
    if (!j.is_array() || j.size() != 3)
        throw InputError(std::string(what) + " must be an array of three numbers");
    Point3 v;
    for (int i = 0; i < 3; ++i) v(i) = j.at(std::size_t(i)).get<double>();
    return v;
}

}  // namespace

SceneConfig parse_scene_config(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw InputError(std::string("scene config: ") + e.what());
    }

    SceneConfig cfg;
    try {
        only_keys(root, "scene", {"camera", "light", "truth_topology", "objects", "motion"});

        const auto& cam = root.at("camera");
        only_keys(cam, "camera", {"width", "height", "focal", "principal_point", "max_value"});
        cfg.scene.camera.width = cam.at("width").get<int>();
        cfg.scene.camera.height = cam.at("height").get<int>();
        cfg.scene.camera.focal = cam.at("focal").get<double>();
        if (cam.contains("principal_point")) {
            const auto& pp = cam["principal_point"];
            if (!pp.is_array() || pp.size() != 2)
                throw InputError("principal_point must be an array of two numbers");
            cfg.scene.camera.principal_point = Eigen::Vector2d(pp[0].get<double>(), pp[1].get<double>());
        }
        cfg.scene.camera.max_value = cam.value("max_value", 255);

        if (root.contains("light")) {
            const auto& light = root["light"];
            only_keys(light, "light", {"direction", "ambient"});
            if (light.contains("direction")) cfg.scene.light_direction = vec3(light["direction"], "light.direction");
            cfg.scene.ambient = light.value("ambient", 0.0);
        }

        if (root.contains("truth_topology")) {
            const int t = root["truth_topology"].get<int>();
            if (t != 4 && t != 8) throw InputError("truth_topology must be 4 or 8");
            cfg.scene.truth_topology = t == 4 ? Topology::N4 : Topology::N8;
        }

        // Ids follow the spheres-then-planes order, so per-object motion is
        // permuted to match.
        std::vector<Point3> sphere_motion, plane_motion;
        const auto& objects = root.at("objects");
        if (!objects.is_array()) throw InputError("objects must be an array");
        std::vector<bool> is_sphere;
        for (const auto& o : objects) {
            const auto type = o.at("type").get<std::string>();
            if (type == "sphere") {
                only_keys(o, "sphere", {"type", "center", "radius", "albedo"});
                cfg.scene.spheres.push_back(
                    {vec3(o.at("center"), "sphere.center"), o.at("radius").get<double>(), o.value("albedo", 1.0)});
                is_sphere.push_back(true);
            } else if (type == "plane") {
                only_keys(o, "plane", {"type", "point", "normal", "albedo"});
                cfg.scene.planes.push_back({vec3(o.at("point"), "plane.point"),
                                            vec3(o.at("normal"), "plane.normal"), o.value("albedo", 1.0)});
                is_sphere.push_back(false);
            } else {
                throw InputError("unknown object type '" + type + "'");
            }
        }

        if (root.contains("motion")) {
            const auto& m = root["motion"];
            only_keys(m, "motion", {"translation", "per_object"});
            if (m.contains("translation")) cfg.motion.translation = vec3(m["translation"], "motion.translation");
            if (m.contains("per_object")) {
                const auto& per = m["per_object"];
                if (!per.is_array() || per.size() != is_sphere.size())
                    throw InputError("motion.per_object needs one entry per object");
                for (std::size_t i = 0; i < per.size(); ++i)
                    (is_sphere[i] ? sphere_motion : plane_motion).push_back(vec3(per[i], "motion.per_object"));
                cfg.motion.per_object = sphere_motion;
                cfg.motion.per_object.insert(cfg.motion.per_object.end(), plane_motion.begin(),
                                             plane_motion.end());
            }
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("scene config: ") + e.what());
    }

    validate(cfg.scene);
    return cfg;
}

SceneConfig load_scene_config(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    return parse_scene_config(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace discont
