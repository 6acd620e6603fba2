// SPDX-License-Identifier: Apache-2.0
//
// ris3d - analytical beam model for cube-shaped reconfigurable intelligent surfaces
// Copyright (C) 2026 The ris3d authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#ifndef RIS3D_CONFIG_HPP
#define RIS3D_CONFIG_HPP

#include "field.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

/*!MD
# Scene config format

JSON document. Angles are degrees, lengths meters, frequencies hertz; they are converted to
radians once while parsing. Unknown keys are rejected.

```
{
  "element":   { "frequency_hz": 26e9, "h_m": 0.787e-3, "w_m": 2.85e-3, "le_m": 2.85e-3, "e0": 1 },
  "layout":    { "edge_length_m": 0.0692 },
  "subarrays": [ { "face": 0, "p": 0, "n": 4, "d1_m": 0.00577, "d2_m": 0.00577,
                   "center_offset_m": [0.0, 0.023], "steer_theta_deg": 90, "steer_phi_deg": 30,
                   "region": "reflect", "pol": "p2", "phase_indexing": "one_based" } ],
  "states": { "phi_p30": { "illuminated_face": 0,
                           "gates": { "0/0": 1 }, "offsets_deg": { "0/0": 0 },
                           "routing": { "0->2": 0 }, "transfer": { "0->2": [1, 0] },
                           "incident": { "theta_deg": 90, "phi_deg": 0 } } }
}
```

Subarray keys are `face/p`, routing keys `s->t`. `center_offset_m` is the (y_s, z_s)
offset of the subarray center from the face center. `element`, `layout`, `routing`,
`transfer` and `incident` are optional.
MD!*/

namespace ris3d
{
    enum class ConfigErrorKind
    {
        syntax,
        unknown_key,
        domain,
        io
    };

    inline const char *to_string(ConfigErrorKind k)
    {
        switch (k)
        {
        case ConfigErrorKind::syntax:
            return "syntax error";
        case ConfigErrorKind::unknown_key:
            return "unknown key";
        case ConfigErrorKind::domain:
            return "domain violation";
        case ConfigErrorKind::io:
            return "i/o error";
        }
        return "error";
    }

    class ConfigError : public std::runtime_error
    {
      public:
        ConfigError(ConfigErrorKind kind, std::string key, const std::string &what, int line = 0, int column = 0)
            : std::runtime_error(compose(kind, key, what, line, column)), kind(kind), key(std::move(key)), line(line),
              column(column) {}

        ConfigErrorKind kind;
        std::string key;
        int line;
        int column;

      private:
        static std::string compose(ConfigErrorKind kind, const std::string &key, const std::string &what, int line,
                                   int column)
        {
            std::string s = to_string(kind);
            if (line > 0)
                s += " at line " + std::to_string(line) + ", column " + std::to_string(column);
            if (!key.empty())
                s += " (" + key + ")";
            return s + ": " + what;
        }
    };

    struct SceneConfig
    {
        Scene scene;
        std::map<std::string, ControlState> states;

        const ControlState &state(const std::string &name) const
        {
            const auto it = states.find(name);
            if (it == states.end())
                throw std::invalid_argument("unknown state '" + name + "'");
            return it->second;
        }

        bool operator==(const SceneConfig &) const = default;
    };

    namespace config_detail
    {
        using nlohmann::json;

        inline void check_keys(const json &obj, const std::string &path, std::initializer_list<const char *> allowed)
        {
            if (!obj.is_object())
                throw ConfigError(ConfigErrorKind::domain, path, "expected an object");
            for (const auto &[k, v] : obj.items())
            {
                bool ok = false;
                for (const char *a : allowed)
                    ok = ok || k == a;
                if (!ok)
                    throw ConfigError(ConfigErrorKind::unknown_key, path.empty() ? k : path + "." + k,
                                      "key '" + k + "' is not recognized");
            }
        }

        inline double number(const json &obj, const char *key, const std::string &path, std::optional<double> def = {})
        {
            const std::string p = path.empty() ? key : path + "." + key;
            if (!obj.contains(key))
            {
                if (def)
                    return *def;
                throw ConfigError(ConfigErrorKind::domain, p, "required key is missing");
            }
            const json &v = obj.at(key);
            if (!v.is_number())
                throw ConfigError(ConfigErrorKind::domain, p, "expected a number");
            return v.get<double>();
        }

        inline long integer(const json &v, const std::string &path)
        {
            if (!v.is_number_integer())
                throw ConfigError(ConfigErrorKind::domain, path, "expected an integer");
            return v.get<long>();
        }

        inline long integer(const json &obj, const char *key, const std::string &path, std::optional<long> def = {})
        {
            const std::string p = path + "." + key;
            if (!obj.contains(key))
            {
                if (def)
                    return *def;
                throw ConfigError(ConfigErrorKind::domain, p, "required key is missing");
            }
            return integer(obj.at(key), p);
        }

        inline std::string text(const json &obj, const char *key, const std::string &path, const char *def)
        {
            const std::string p = path + "." + key;
            if (!obj.contains(key))
                return def;
            if (!obj.at(key).is_string())
                throw ConfigError(ConfigErrorKind::domain, p, "expected a string");
            return obj.at(key).get<std::string>();
        }

        inline std::pair<int, int> pair_key(const std::string &k, const std::string &sep, const std::string &path)
        {
            const auto pos = k.find(sep);
            try
            {
                if (pos == std::string::npos || pos == 0)
                    throw std::invalid_argument(k);
                size_t a = 0, b = 0;
                const int first = std::stoi(k.substr(0, pos), &a);
                const std::string rest = k.substr(pos + sep.size());
                const int second = std::stoi(rest, &b);
                if (a != pos || b != rest.size())
                    throw std::invalid_argument(k);
                return {first, second};
            }
            catch (const std::exception &)
            {
                throw ConfigError(ConfigErrorKind::domain, path,
                                  "malformed key '" + k + "', expected 'a" + sep + "b' with integers");
            }
        }

        inline std::pair<int, int> line_column(const std::string &text, size_t byte)
        {
            int line = 1, col = 1;
            const size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
            for (size_t i = 0; i < end; ++i)
            {
                if (text[i] == '\n')
                {
                    ++line;
                    col = 1;
                }
                else
                    ++col;
            }
            return {line, col};
        }

        inline std::string subarray_path(const SubarrayKey &k) { return std::to_string(k.first) + "/" + std::to_string(k.second); }

        inline std::string edge_path(const EdgeKey &k) { return std::to_string(k.first) + "->" + std::to_string(k.second); }

        inline SubarraySpec parse_subarray(const json &j, const std::string &path, const CubeLayout &layout)
        {
            check_keys(j, path,
                       {"face", "p", "n", "d1_m", "d2_m", "center_offset_m", "steer_theta_deg", "steer_phi_deg",
                        "region", "pol", "phase_indexing"});
            SubarraySpec s;
            s.face_id = static_cast<int>(integer(j, "face", path));
            s.p = static_cast<int>(integer(j, "p", path));
            s.n = static_cast<int>(integer(j, "n", path, 4));
            s.d1 = number(j, "d1_m", path);
            s.d2 = number(j, "d2_m", path);
            if (!CubeLayout::valid_face(s.face_id))
                throw ConfigError(ConfigErrorKind::domain, path + ".face", "face must be in 0..5");

            double dy = 0.0, dz = 0.0;
            if (j.contains("center_offset_m"))
            {
                const json &c = j.at("center_offset_m");
                if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
                    throw ConfigError(ConfigErrorKind::domain, path + ".center_offset_m", "expected [y_m, z_m]");
                dy = c[0].get<double>();
                dz = c[1].get<double>();
            }
            const FaceFrame &f = layout.face(s.face_id);
            s.center = f.origin + f.rotation * Vec3(0.0, dy, dz);
            s.steer = Direction::from_degrees(number(j, "steer_theta_deg", path, 90.0), number(j, "steer_phi_deg", path, 0.0));

            const std::string region = text(j, "region", path, "reflect");
            if (region == "reflect")
                s.region = Region::reflect;
            else if (region == "receive")
                s.region = Region::receive;
            else
                throw ConfigError(ConfigErrorKind::domain, path + ".region", "expected 'receive' or 'reflect'");

            const std::string pol = text(j, "pol", path, "p2");
            if (pol == "p1")
                s.pol = Polarization::p1;
            else if (pol == "p2")
                s.pol = Polarization::p2;
            else
                throw ConfigError(ConfigErrorKind::domain, path + ".pol", "expected 'p1' or 'p2'");

            const std::string ix = text(j, "phase_indexing", path, "centered");
            if (ix == "centered")
                s.indexing = PhaseIndexing::centered;
            else if (ix == "one_based")
                s.indexing = PhaseIndexing::one_based;
            else
                throw ConfigError(ConfigErrorKind::domain, path + ".phase_indexing", "expected 'centered' or 'one_based'");
            return s;
        }

        inline ControlState parse_state(const json &j, const std::string &path)
        {
            check_keys(j, path, {"illuminated_face", "gates", "offsets_deg", "routing", "transfer", "incident"});
            ControlState st;
            st.illuminated_face = static_cast<int>(integer(j, "illuminated_face", path, 0));

            auto each = [&](const char *key, auto &&fn) {
                if (!j.contains(key))
                    return;
                const json &m = j.at(key);
                const std::string p = path + "." + key;
                if (!m.is_object())
                    throw ConfigError(ConfigErrorKind::domain, p, "expected an object");
                for (const auto &[k, v] : m.items())
                    fn(k, v, p + "." + k);
            };

            each("gates", [&](const std::string &k, const json &v, const std::string &p) {
                st.gates[pair_key(k, "/", p)] = static_cast<int>(integer(v, p));
            });
            each("offsets_deg", [&](const std::string &k, const json &v, const std::string &p) {
                if (!v.is_number())
                    throw ConfigError(ConfigErrorKind::domain, p, "expected a number");
                st.offsets[pair_key(k, "/", p)] = deg_to_rad(v.get<double>());
            });
            each("routing", [&](const std::string &k, const json &v, const std::string &p) {
                st.routing[pair_key(k, "->", p)] = static_cast<int>(integer(v, p));
            });
            each("transfer", [&](const std::string &k, const json &v, const std::string &p) {
                if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
                    throw ConfigError(ConfigErrorKind::domain, p, "expected [re, im]");
                st.transfer[pair_key(k, "->", p)] = {v[0].get<double>(), v[1].get<double>()};
            });
            if (j.contains("incident"))
            {
                const std::string p = path + ".incident";
                check_keys(j.at("incident"), p, {"theta_deg", "phi_deg"});
                st.incident = Direction::from_degrees(number(j.at("incident"), "theta_deg", p),
                                                      number(j.at("incident"), "phi_deg", p));
            }
            return st;
        }

        // Maps a validator key such as "gates[0/1]" onto the config path.
        inline std::string violation_path(const std::string &state, const std::string &key)
        {
            static const std::map<std::string, std::string> sections = {
                {"gates", "gates"}, {"offsets", "offsets_deg"}, {"routing", "routing"}, {"transfer", "transfer"}};
            const auto open = key.find('[');
            if (open != std::string::npos && key.back() == ']')
            {
                const auto it = sections.find(key.substr(0, open));
                if (it != sections.end())
                    return "states." + state + "." + it->second + "." + key.substr(open + 1, key.size() - open - 2);
            }
            return "states." + state + "." + key;
        }
    } // namespace config_detail

    /// Parses and validates a scene config; throws ConfigError.
    inline SceneConfig parse_scene_config(const std::string &text, bool validate_states = true)
    {
        using namespace config_detail;
        json root;
        try
        {
            root = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            const auto [line, col] = line_column(text, e.byte);
            throw ConfigError(ConfigErrorKind::syntax, "", e.what(), line, col);
        }

        check_keys(root, "", {"element", "layout", "subarrays", "states"});
        SceneConfig cfg;

        if (root.contains("element"))
        {
            const json &e = root.at("element");
            check_keys(e, "element", {"frequency_hz", "h_m", "w_m", "le_m", "e0"});
            const ElementModel d;
            cfg.scene.element.frequency_hz = number(e, "frequency_hz", "element", d.frequency_hz);
            cfg.scene.element.h = number(e, "h_m", "element", d.h);
            cfg.scene.element.w = number(e, "w_m", "element", d.w);
            cfg.scene.element.le = number(e, "le_m", "element", d.le);
            cfg.scene.element.e0 = number(e, "e0", "element", d.e0);
            try
            {
                cfg.scene.element.validate();
            }
            catch (const std::invalid_argument &ex)
            {
                throw ConfigError(ConfigErrorKind::domain, "element", ex.what());
            }
        }

        double edge = default_edge_length();
        if (root.contains("layout"))
        {
            check_keys(root.at("layout"), "layout", {"edge_length_m"});
            edge = number(root.at("layout"), "edge_length_m", "layout", edge);
            if (!(edge > 0.0))
                throw ConfigError(ConfigErrorKind::domain, "layout.edge_length_m", "must be positive");
        }
        cfg.scene.layout = CubeLayout::canonical(edge);

        if (!root.contains("subarrays") || !root.at("subarrays").is_array())
            throw ConfigError(ConfigErrorKind::domain, "subarrays", "expected an array of subarrays");
        const json &subs = root.at("subarrays");
        for (size_t i = 0; i < subs.size(); ++i)
            cfg.scene.subarrays.push_back(parse_subarray(subs[i], "subarrays[" + std::to_string(i) + "]", cfg.scene.layout));

        for (const auto &v : validate_subarrays(cfg.scene.layout, cfg.scene.subarrays))
            throw ConfigError(ConfigErrorKind::domain, v.key, v.message);

        if (root.contains("states"))
        {
            const json &states = root.at("states");
            if (!states.is_object())
                throw ConfigError(ConfigErrorKind::domain, "states", "expected an object of named states");
            for (const auto &[name, j] : states.items())
                cfg.states[name] = parse_state(j, "states." + name);
        }

        for (const auto &[name, st] : cfg.states)
        {
            if (!validate_states)
                break;
            const auto v = validate_state(st, cfg.scene.layout, cfg.scene.subarrays);
            if (!v.empty())
                throw ConfigError(ConfigErrorKind::domain, violation_path(name, v.front().key), v.front().message);
        }
        return cfg;
    }

    inline SceneConfig load_scene_config(const std::string &path, bool validate_states = true)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ConfigError(ConfigErrorKind::io, path, "cannot open config file");
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_scene_config(ss.str(), validate_states);
    }

    inline nlohmann::json scene_to_json(const Scene &scene)
    {
        using nlohmann::json;
        json root;
        root["element"] = {{"frequency_hz", scene.element.frequency_hz},
                           {"h_m", scene.element.h},
                           {"w_m", scene.element.w},
                           {"le_m", scene.element.le},
                           {"e0", scene.element.e0}};
        root["layout"] = {{"edge_length_m", scene.layout.edge_length}};
        json subs = json::array();
        for (const auto &s : scene.subarrays)
        {
            const FaceFrame &f = scene.layout.face(s.face_id);
            const Vec3 local = f.rotation.transpose() * (s.center - f.origin);
            subs.push_back({{"face", s.face_id},
                            {"p", s.p},
                            {"n", s.n},
                            {"d1_m", s.d1},
                            {"d2_m", s.d2},
                            {"center_offset_m", {local.y(), local.z()}},
                            {"steer_theta_deg", rad_to_deg(s.steer.theta)},
                            {"steer_phi_deg", rad_to_deg(s.steer.phi)},
                            {"region", s.region == Region::reflect ? "reflect" : "receive"},
                            {"pol", s.pol == Polarization::p1 ? "p1" : "p2"},
                            {"phase_indexing", s.indexing == PhaseIndexing::one_based ? "one_based" : "centered"}});
        }
        root["subarrays"] = subs;
        return root;
    }

    inline nlohmann::json state_to_json(const ControlState &st)
    {
        using nlohmann::json;
        using namespace config_detail;
        json j;
        j["illuminated_face"] = st.illuminated_face;
        j["gates"] = json::object();
        j["offsets_deg"] = json::object();
        for (const auto &[k, g] : st.gates)
            j["gates"][subarray_path(k)] = g;
        for (const auto &[k, o] : st.offsets)
            j["offsets_deg"][subarray_path(k)] = rad_to_deg(o);
        if (!st.routing.empty())
        {
            j["routing"] = json::object();
            for (const auto &[k, b] : st.routing)
                j["routing"][edge_path(k)] = b;
        }
        if (!st.transfer.empty())
        {
            j["transfer"] = json::object();
            for (const auto &[k, c] : st.transfer)
                j["transfer"][edge_path(k)] = {c.real(), c.imag()};
        }
        if (st.incident)
            j["incident"] = {{"theta_deg", rad_to_deg(st.incident->theta)}, {"phi_deg", rad_to_deg(st.incident->phi)}};
        return j;
    }

    inline std::string export_scene_config(const Scene &scene, const std::map<std::string, ControlState> &states)
    {
        nlohmann::json root = scene_to_json(scene);
        root["states"] = nlohmann::json::object();
        for (const auto &[name, st] : states)
            root["states"][name] = state_to_json(st);
        return root.dump(2) + "\n";
    }

    inline std::string export_scene_config(const SceneConfig &cfg) { return export_scene_config(cfg.scene, cfg.states); }

    /// FNV-1a 64-bit hash of the canonical scene text (states excluded), as 16 hex digits.
    inline std::string scene_hash(const Scene &scene)
    {
        const std::string canon = scene_to_json(scene).dump();
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : canon)
        {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

} // namespace ris3d

#endif // RIS3D_CONFIG_HPP
