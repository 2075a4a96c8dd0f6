#pragma once

#include "einkit/groups.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ein {

// Objects are stored in the coordinates of the scene's form; crooked planes
// are in E^{2,1} coordinates.
using SceneValue =
    std::variant<EinPoint, Photon, SpacelikeCircle, CrookedPlane, ConformalTransform, GroupPresentation>;

struct SceneObject {
  std::string id;
  std::string type;     // point | photon | circle | crooked_plane | transform | group
  nlohmann::json data;  // fields as read, kept for lossless output
  SceneValue value;
};

struct Scene {
  FormSpec form = ein_form();
  std::vector<SceneObject> objects;
  nlohmann::json metadata = nlohmann::json::object();

  std::size_t count(const std::string& type) const;
  const SceneObject& find(const std::string& id) const;
  std::vector<const SceneObject*> of_type(const std::string& type) const;
};

// Malformed input (bad JSON, missing or mistyped fields).
class SceneFormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A field parsed but the object fails its geometric invariant.
class SceneGeometryError : public GeometryError {
 public:
  SceneGeometryError(std::string id, const std::string& what) : GeometryError(what), object_id(std::move(id)) {}
  std::string object_id;
};

Scene parse_scene(const std::string& text);
Scene load_scene(const std::string& path);
std::string serialize_scene(const Scene& scene);

// Builds the object's JSON fields from a value.
SceneObject make_object(const std::string& id, const SceneValue& value);

// Parses "a,b,c" into a vector.
Vec parse_list(const std::string& text);

// Reads a whitespace/comma separated or JSON matrix with a square number of entries.
Mat parse_matrix(const std::string& text);

}  // namespace ein
