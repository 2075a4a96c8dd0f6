#include "einkit/scene.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ein {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& id, const std::string& what) {
  throw SceneFormatError("object '" + id + "': " + what);
}

const json& field(const json& o, const std::string& id, const char* name) {
  if (!o.contains(name)) bad(id, std::string("missing field '") + name + "'");
  return o.at(name);
}

Vec read_vec(const json& j, const std::string& id, const char* name, Eigen::Index n) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n)
    bad(id, std::string("field '") + name + "' must be an array of " + std::to_string(n) + " numbers");
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!j[static_cast<size_t>(i)].is_number()) bad(id, std::string("field '") + name + "' has a non-number");
    v(i) = j[static_cast<size_t>(i)].get<double>();
  }
  return v;
}

// Accepts n x n nested rows or n*n row-major numbers.
Mat read_square(const json& j, const std::string& id, const char* name, Eigen::Index n) {
  Mat m(n, n);
  if (j.is_array() && static_cast<Eigen::Index>(j.size()) == n && j[0].is_array()) {
    for (Eigen::Index r = 0; r < n; ++r) m.row(r) = read_vec(j[static_cast<size_t>(r)], id, name, n).transpose();
    return m;
  }
  Vec flat = read_vec(j, id, name, n * n);
  for (Eigen::Index r = 0; r < n; ++r) m.row(r) = flat.segment(r * n, n).transpose();
  return m;
}

json write_vec(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json write_rows(const Mat& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(write_vec(m.row(r).transpose()));
  return a;
}

json write_cols(const Mat& m) {
  json a = json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back(write_vec(m.col(c)));
  return a;
}

SceneValue build(const std::string& id, const std::string& type, const json& o, const FormSpec& form) {
  const Eigen::Index n = form.dim();
  if (type == "point") {
    Vec v = read_vec(field(o, id, "rep"), id, "rep", n);
    project_null(v, form);
    return EinPoint{v, form};
  }
  if (type == "photon") {
    const json& span = field(o, id, "span");
    if (!span.is_array() || span.size() != 2) bad(id, "field 'span' must hold two vectors");
    Vec u = read_vec(span[0], id, "span", n), w = read_vec(span[1], id, "span", n);
    photon_span(u, w, form);
    return Photon{u, w, form};
  }
  if (type == "circle") {
    const json& b = field(o, id, "basis");
    if (!b.is_array() || b.size() != 3) bad(id, "field 'basis' must hold three vectors");
    Mat m(n, 3);
    for (int c = 0; c < 3; ++c) m.col(c) = read_vec(b[static_cast<size_t>(c)], id, "basis", n);
    return make_circle(m, form);
  }
  if (type == "crooked_plane") {
    Vec p = read_vec(field(o, id, "vertex"), id, "vertex", 3);
    Vec s = read_vec(field(o, id, "spine"), id, "spine", 3);
    const json& sg = field(o, id, "orientation");
    if (!sg.is_number_integer()) bad(id, "field 'orientation' must be 1 or -1");
    return build_crooked(Vec3(p), Vec3(s), sg.get<int>());
  }
  if (type == "transform") {
    Mat m = read_square(field(o, id, "matrix"), id, "matrix", n);
    return make_transform(m, form, 1e-8);
  }
  if (type == "group") {
    const json& gens = field(o, id, "generators");
    if (!gens.is_array() || gens.empty()) bad(id, "field 'generators' must be a non-empty array");
    GroupPresentation g;
    for (const json& gj : gens) g.generators.push_back(make_transform(read_square(gj, id, "generators", n), form, 1e-8));
    if (o.contains("relations")) {
      const json& rel = o.at("relations");
      if (!rel.is_array()) bad(id, "field 'relations' must be an array of words");
      for (const json& w : rel) {
        if (!w.is_array()) bad(id, "each relation must be an array of letters");
        std::vector<int> word;
        for (const json& l : w) {
          if (!l.is_number_integer() || l.get<int>() < 0 || l.get<int>() >= 2 * static_cast<int>(g.generators.size()))
            bad(id, "relation letter out of range");
          word.push_back(l.get<int>());
        }
        g.relations.push_back(word);
      }
    }
    return g;
  }
  bad(id, "unknown object type '" + type + "'");
}

}  // namespace

std::size_t Scene::count(const std::string& type) const {
  std::size_t k = 0;
  for (const auto& o : objects) k += o.type == type;
  return k;
}

const SceneObject& Scene::find(const std::string& id) const {
  for (const auto& o : objects)
    if (o.id == id) return o;
  throw std::invalid_argument("scene has no object named '" + id + "'");
}

std::vector<const SceneObject*> Scene::of_type(const std::string& type) const {
  std::vector<const SceneObject*> out;
  for (const auto& o : objects)
    if (o.type == type) out.push_back(&o);
  return out;
}

Scene parse_scene(const std::string& text) {
  // An empty file is the empty scene on the default form.
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return Scene{};
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SceneFormatError(std::string("malformed scene: ") + e.what());
  }
  if (!root.is_object()) throw SceneFormatError("scene must be a JSON object");
  Scene sc;
  if (!root.contains("form") || !root["form"].is_string()) throw SceneFormatError("scene needs a string 'form' header");
  try {
    sc.form.convention = parse_convention(root["form"].get<std::string>());
    sc.form.p = 3;
    sc.form.q = 2;
    if (root.contains("signature")) {
      const json& s = root["signature"];
      if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() || !s[1].is_number_integer())
        throw SceneFormatError("'signature' must be [p, q]");
      sc.form.p = s[0].get<int>();
      sc.form.q = s[1].get<int>();
    }
    form_matrix(sc.form);
  } catch (const SceneFormatError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SceneFormatError(std::string("bad form header: ") + e.what());
  }
  if (root.contains("metadata")) sc.metadata = root["metadata"];
  if (!root.contains("objects")) return sc;
  if (!root["objects"].is_array()) throw SceneFormatError("'objects' must be an array");
  std::set<std::string> seen;
  for (const json& o : root["objects"]) {
    if (!o.is_object() || !o.contains("id") || !o["id"].is_string()) throw SceneFormatError("every object needs a string 'id'");
    const std::string id = o["id"].get<std::string>();
    if (!seen.insert(id).second) bad(id, "duplicate id");
    if (!o.contains("type") || !o["type"].is_string()) bad(id, "missing string field 'type'");
    const std::string type = o["type"].get<std::string>();
    json data = o;
    data.erase("id");
    data.erase("type");
    try {
      sc.objects.push_back({id, type, data, build(id, type, o, sc.form)});
    } catch (const SceneFormatError&) {
      throw;
    } catch (const GeometryError& e) {
      throw SceneGeometryError(id, "object '" + id + "': " + e.what());
    } catch (const std::invalid_argument& e) {
      bad(id, e.what());
    }
  }
  return sc;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scene file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

std::string serialize_scene(const Scene& scene) {
  json root;
  root["form"] = convention_name(scene.form.convention);
  if (scene.form.p != 3 || scene.form.q != 2) root["signature"] = {scene.form.p, scene.form.q};
  if (!scene.metadata.empty()) root["metadata"] = scene.metadata;
  root["objects"] = json::array();
  for (const auto& o : scene.objects) {
    json j = o.data;
    j["id"] = o.id;
    j["type"] = o.type;
    root["objects"].push_back(j);
  }
  return root.dump(2) + "\n";
}

SceneObject make_object(const std::string& id, const SceneValue& value) {
  SceneObject o{id, "", json::object(), value};
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, EinPoint>) {
          o.type = "point";
          o.data["rep"] = write_vec(v.rep);
        } else if constexpr (std::is_same_v<T, Photon>) {
          o.type = "photon";
          o.data["span"] = json::array({write_vec(v.u), write_vec(v.v)});
        } else if constexpr (std::is_same_v<T, SpacelikeCircle>) {
          o.type = "circle";
          o.data["basis"] = write_cols(v.subspace.basis);
        } else if constexpr (std::is_same_v<T, CrookedPlane>) {
          o.type = "crooked_plane";
          o.data["vertex"] = write_vec(v.vertex);
          o.data["spine"] = write_vec(v.spine);
          o.data["orientation"] = v.orientation;
        } else if constexpr (std::is_same_v<T, ConformalTransform>) {
          o.type = "transform";
          o.data["matrix"] = write_rows(v.matrix);
        } else {
          o.type = "group";
          o.data["generators"] = json::array();
          for (const auto& g : v.generators) o.data["generators"].push_back(write_rows(g.matrix));
          if (!v.relations.empty()) o.data["relations"] = v.relations;
        }
      },
      value);
  return o;
}

Vec parse_list(const std::string& text) {
  std::vector<double> xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    double x;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a number list: " + text);
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("not a number list: " + text);
    xs.push_back(x);
  }
  if (xs.empty()) throw std::invalid_argument("empty number list");
  return Eigen::Map<Vec>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

Mat parse_matrix(const std::string& text) {
  std::vector<double> xs;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(std::string("malformed matrix: ") + e.what());
    }
    auto number = [&](const json& x) {
      if (!x.is_number()) throw std::invalid_argument("matrix entries must be numbers");
      xs.push_back(x.get<double>());
    };
    if (!j.is_array()) throw std::invalid_argument("matrix must be a JSON array");
    for (const json& r : j) {
      if (r.is_array())
        for (const json& x : r) number(x);
      else
        number(r);
    }
  } else {
    std::string t = text;
    for (char& ch : t)
      if (ch == ',' || ch == ';') ch = ' ';
    std::stringstream ss(t);
    std::string tok;
    while (ss >> tok) {
      try {
        xs.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw std::invalid_argument("malformed matrix entry: " + tok);
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(std::lround(std::sqrt(static_cast<double>(xs.size()))));
  if (n == 0 || n * n != static_cast<Eigen::Index>(xs.size()))
    throw std::invalid_argument("matrix must have a square number of entries");
  Mat m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = xs[static_cast<size_t>(r * n + c)];
  return m;
}

}  // namespace ein
