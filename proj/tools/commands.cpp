#include "commands.hpp"

#include "einkit/causal.hpp"
#include "einkit/crooked.hpp"
#include "einkit/dynamics.hpp"
#include "einkit/groups.hpp"
#include "einkit/lie.hpp"
#include "einkit/mesh.hpp"
#include "einkit/scene.hpp"
#include "einkit/sympl4.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace ein::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string scene;
  std::string form = "hyp2";
  double eps = kEps;
  int depth = -1;
  std::uint64_t seed = 1;
  std::uint64_t samples = 0;
  int resolution = 2000;
  std::string out;

  std::string vector, signature, point, ein, matrix, lagrangian, line, vertex, spine, object, lightcone, hypersurface;
  std::string mode = "patch";
  int orientation = 1;
};

json to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i) == 0.0 ? 0.0 : v(i));  // no -0
  return a;
}

json to_json(const Mat& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(to_json(Vec(m.row(r).transpose())));
  return a;
}

json cols_json(const Mat& m) {
  json a = json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back(to_json(Vec(m.col(c))));
  return a;
}

json plane_json(const CrookedPlane& c) {
  return {{"vertex", to_json(Vec(c.vertex))},
          {"spine", to_json(Vec(c.spine))},
          {"orientation", c.orientation},
          {"l1", to_json(Vec(c.l1))},
          {"l2", to_json(Vec(c.l2))}};
}

FormSpec form_of(const Options& o) { return {3, 2, parse_convention(o.form)}; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Mat read_matrix(const Options& o) {
  if (o.matrix.empty()) throw std::invalid_argument("--matrix is required");
  return parse_matrix(read_file(o.matrix));
}

Vec3 to3(const Vec& v, const char* what) {
  if (v.size() != 3) throw std::invalid_argument(std::string(what) + " needs 3 coordinates");
  return Vec3(v(0), v(1), v(2));
}

Scene need_scene(const Options& o) {
  if (o.scene.empty()) throw std::invalid_argument("--scene is required");
  return load_scene(o.scene);
}

// Generators moved to the hyp2 coordinates used by the patch geometry.
GroupPresentation group_hyp2(const Scene& sc, const GroupPresentation& g) {
  const Mat m = intertwiner(sc.form, ein_form());
  const Mat mi = m.inverse();
  GroupPresentation out;
  out.relations = g.relations;
  for (const auto& t : g.generators) out.generators.push_back({m * t.matrix * mi, ein_form()});
  return out;
}

const GroupPresentation& first_group(const Scene& sc) {
  auto gs = sc.of_type("group");
  if (gs.empty()) throw std::invalid_argument("scene has no group");
  return std::get<GroupPresentation>(gs.front()->value);
}

std::vector<std::pair<std::string, CrookedPlane>> planes_of(const Scene& sc) {
  std::vector<std::pair<std::string, CrookedPlane>> out;
  for (const auto* o : sc.of_type("crooked_plane")) out.emplace_back(o->id, std::get<CrookedPlane>(o->value));
  return out;
}

Signature default_signature(Eigen::Index n, const std::string& text) {
  if (!text.empty()) {
    Vec s = parse_list(text);
    if (s.size() != 2) throw std::invalid_argument("--signature takes p,q");
    return {static_cast<int>(s(0)), static_cast<int>(s(1)), 0};
  }
  switch (n) {
    case 3: return {2, 1, 0};
    case 4: return {3, 1, 0};
    case 5: return {3, 2, 0};
    case 6: return {3, 3, 0};
  }
  throw std::invalid_argument("give --signature for vectors of this size");
}

int cmd_classify(const Options& o, json& rep) {
  if (!o.vector.empty()) {
    Vec v = parse_list(o.vector);
    Signature sg = default_signature(v.size(), o.signature);
    FormSpec f{sg.p, sg.q, parse_convention(o.form)};
    CausalClass c = classify_vector(v, f, o.eps);
    rep = {{"tag", causal_name(c.tag)}, {"causal", c.causal}, {"form", convention_name(f.convention)}};
    return kExitOk;
  }
  Scene sc = need_scene(o);
  rep["objects"] = json::array();
  for (const auto& obj : sc.objects) {
    json r{{"id", obj.id}, {"type", obj.type}};
    if (obj.type == "transform") {
      const auto& t = std::get<ConformalTransform>(obj.value);
      const Mat sq = t.matrix * t.matrix;
      const Mat id = Mat::Identity(sq.rows(), sq.cols());
      if (approx_equal(sq, id, 1e-8) || approx_equal(sq, -id, 1e-8))
        r["involution"] = involution_name(classify_involution(t, o.eps).type);
      else
        r["involution"] = "none";
      r["time_orientation"] = time_orientation_sign(t.matrix, t.form);
    } else if (obj.type == "circle") {
      Signature s = signature(std::get<SpacelikeCircle>(obj.value).subspace, o.eps);
      r["signature"] = {s.p, s.q, s.r};
    }
    rep["objects"].push_back(r);
  }
  return kExitOk;
}

int cmd_chart(const Options& o, json& rep, std::ostream& err) {
  const FormSpec f = form_of(o);
  const Mat m = intertwiner(ein_form(), f);
  if (!o.point.empty()) {
    Vec x = parse_list(o.point);
    rep = {{"ein", to_json(normalize_projective(m * chart_section(x)))}, {"form", o.form}};
    return kExitOk;
  }
  if (o.ein.empty()) throw std::invalid_argument("chart needs --point or --ein");
  Vec v = parse_list(o.ein);
  if (v.size() != 5) throw std::invalid_argument("--ein needs 5 coordinates");
  EinPoint p = project_null(m.inverse() * v, ein_form(), o.eps);
  try {
    rep = {{"patch", to_json(chart_inverse(p, o.eps))}};
  } catch (const ChartError& e) {
    err << "point is not in the Minkowski patch: " << stratum_name(e.stratum) << "\n";
    rep = {{"stratum", stratum_name(e.stratum)}};
    return kExitGeometry;
  }
  return kExitOk;
}

int cmd_invert(const Options& o, json& rep) {
  if (o.point.empty()) throw std::invalid_argument("invert needs --point");
  EinPoint img = inversion_apply(minkowski_chart(parse_list(o.point)));
  rep["ein"] = to_json(normalize_projective(intertwiner(ein_form(), form_of(o)) * img.rep));
  try {
    rep["image"] = to_json(chart_inverse(img, o.eps));
  } catch (const ChartError& e) {
    rep["image_stratum"] = stratum_name(e.stratum);
  }
  return kExitOk;
}

Vec basis_token(const std::string& tok) {
  if (tok.size() == 2 && tok[0] == 'e' && tok[1] >= '1' && tok[1] <= '4') {
    Vec v = Vec::Zero(4);
    v(tok[1] - '1') = 1;
    return v;
  }
  throw std::invalid_argument("bad basis token " + tok);
}

std::vector<Vec> parse_vectors(const std::string& text) {
  std::vector<Vec> out;
  if (text.find(';') != std::string::npos) {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) out.push_back(parse_list(part));
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(basis_token(tok));
  return out;
}

int cmd_dict(const Options& o, json& rep) {
  if (!o.lagrangian.empty()) {
    auto vs = parse_vectors(o.lagrangian);
    if (vs.size() != 2) throw std::invalid_argument("--lagrangian needs two vectors");
    EinPoint p = lagrangian_to_point(make_lagrangian(vs[0], vs[1], o.eps), o.eps);
    Vec c = normalize_projective(p.rep);
    rep["point_f"] = to_json(c);
    for (int i = 0; i < 5; ++i) {
      Vec e = Vec::Zero(5);
      e(i) = 1;
      if (projective_distance(c, e) <= 1e-9) rep["label"] = "f" + std::to_string(i + 1);
    }
    return kExitOk;
  }
  if (!o.point.empty()) {
    Vec c = parse_list(o.point);
    Lagrangian l = point_to_lagrangian({c, w0_form()}, 1e-7);
    rep["lagrangian"] = cols_json(l.span);
    return kExitOk;
  }
  if (!o.line.empty()) {
    Photon ph = line_to_photon(parse_list(o.line), o.eps);
    rep["photon_f"] = cols_json(ph.basis());
    return kExitOk;
  }
  throw std::invalid_argument("dict needs --lagrangian, --point or --line");
}

int cmd_lie(const Options& o, json& rep) {
  Vec v0 = o.vector.empty() ? vec({1, 2}) : parse_list(o.vector);
  if (v0.size() != 2) throw std::invalid_argument("--vector takes the regular element a,b");
  rep["roots"] = json::array();
  for (const auto& r : roots()) rep["roots"].push_back({{"root", {r.root.x, r.root.y}}, {"generator", to_json(r.generator)}});
  PositiveSystem ps = positive_system(v0(0), v0(1));
  rep["positive"] = json::array();
  for (const auto& r : ps.positive) rep["positive"].push_back({r.x, r.y});
  rep["simple"] = json::array();
  for (const auto& r : ps.simple) rep["simple"].push_back({r.x, r.y});
  rep["parabolic_dims"] = {{"minus_alpha", parabolic_basis(true, false).size()},
                           {"minus_beta", parabolic_basis(false, true).size()},
                           {"borel", parabolic_basis(false, false).size()}};
  return kExitOk;
}

int cmd_kak(const Options& o, json& rep) {
  Mat g = read_matrix(o);
  KAKDecomp d = g.rows() == 4 ? kak(g, Group::Sp4) : kak(g, Group::SO32, form_of(o));
  rep = {{"group", g.rows() == 4 ? "Sp(4,R)" : "SO(3,2)"},
         {"exponents", {d.x1, d.x2}},
         {"k", to_json(d.k)},
         {"a", to_json(d.a)},
         {"kp", to_json(d.kp)}};
  return kExitOk;
}

int cmd_distortion(const Options& o, json& rep) {
  Mat g = read_matrix(o);
  const int n = o.samples ? static_cast<int>(o.samples) : 32;
  Sequence seq = powers(g, n);
  DistortionReport d = g.rows() == 4 ? classify_distortion(seq) : classify_distortion_so(seq, form_of(o));
  if (g.rows() == 4) rep["sp_class"] = sp_class_name(d.sp_class);
  rep["so_class"] = so_class_name(d.so_class);
  const ExponentRow& last = d.trace.back();
  rep["last"] = {{"alpha1", last.alpha1}, {"alpha2", last.alpha2}, {"a1", last.a1}, {"a2", last.a2}};
  rep["terms"] = n;
  return kExitOk;
}

int cmd_limits(const Options& o, json& rep) {
  Mat g = read_matrix(o);
  const int n = o.samples ? static_cast<int>(o.samples) : 32;
  FormSpec f = form_of(o);
  if (g.rows() == 4) {
    FlagLimits fl = flag_limits(powers(g, n));
    rep["flag"] = {{"q_line", to_json(fl.q_line)}, {"alpha_minus", cols_json(fl.alpha_minus.span)}};
    g = sp_to_so_group(g).matrix;
    f = w0_form();
  }
  LimitSets ls = limit_sets_ein(powers(g, n), f);
  rep["class"] = so_class_name(ls.cls);
  if (ls.source_photon) rep["source_photon"] = cols_json(ls.source_photon->basis());
  if (ls.target_photon) rep["target_photon"] = cols_json(ls.target_photon->basis());
  if (ls.source_vertex) rep["source_vertex"] = to_json(normalize_projective(ls.source_vertex->rep));
  if (ls.target_point) rep["target_point"] = to_json(normalize_projective(ls.target_point->rep));
  return kExitOk;
}

json surface_json(const CrookedPlane& c) {
  json j = plane_json(c);
  for (bool dc : {false, true}) {
    CrookedSurface s = closure_strata(c, dc);
    j[dc ? "double_cover" : "ein"] = {{"points", s.points.size()},
                                      {"segments", s.segments.size()},
                                      {"faces", s.faces.size()},
                                      {"euler", s.euler()}};
  }
  return j;
}

int cmd_crooked(const Options& o, json& rep) {
  if (!o.scene.empty()) {
    Scene sc = need_scene(o);
    rep["planes"] = json::array();
    for (const auto& [id, c] : planes_of(sc)) {
      json j = surface_json(c);
      j["id"] = id;
      rep["planes"].push_back(j);
    }
    return kExitOk;
  }
  if (o.vertex.empty() || o.spine.empty()) throw std::invalid_argument("crooked needs --vertex and --spine, or --scene");
  CrookedPlane c = build_crooked(to3(parse_list(o.vertex), "--vertex"), to3(parse_list(o.spine), "--spine"),
                                 o.orientation, o.eps);
  rep = surface_json(c);
  if (!o.point.empty()) rep["membership"] = label_name(membership(to3(parse_list(o.point), "--point"), c, o.eps));
  if (!o.matrix.empty()) rep["automorphism"] = surface_automorphism({read_matrix(o), ein_form()}, c);
  return kExitOk;
}

int cmd_disjoint(const Options& o, json& rep, std::ostream& err) {
  Scene sc = need_scene(o);
  auto planes = planes_of(sc);
  if (planes.size() < 2) throw std::invalid_argument("disjoint needs at least two crooked planes");
  const std::uint64_t samples = o.samples ? o.samples : 100000;
  int code = kExitOk;
  rep["pairs"] = json::array();
  for (size_t i = 0; i < planes.size(); ++i)
    for (size_t j = i + 1; j < planes.size(); ++j) {
      DisjointReport d = disjoint(planes[i].second, planes[j].second, o.eps);
      double box = 4.0 * (1.0 + std::max(planes[i].second.vertex.norm(), planes[j].second.vertex.norm()));
      MonteCarloReport mc = monte_carlo_distance(planes[i].second, planes[j].second, samples, o.seed, box);
      json r{{"a", planes[i].first},
             {"b", planes[j].first},
             {"disjoint", d.disjoint},
             {"gap", d.gap},
             {"faces", {d.closest.face_a, d.closest.face_b}},
             {"witness", to_json(Vec(d.closest.point_a))},
             {"monte_carlo", {{"samples", mc.samples}, {"min_distance", mc.min_distance}, {"box", box}}}};
      if (mc.min_distance < d.gap - 1e-9 * (1 + d.gap)) {
        err << "sampled distance below the exact gap for " << planes[i].first << ", " << planes[j].first << "\n";
        code = kExitGeometry;
      }
      rep["pairs"].push_back(r);
    }
  return code;
}

int cmd_group_certify(const Options& o, json& rep, std::ostream& err) {
  Scene sc = need_scene(o);
  GroupPresentation g = group_hyp2(sc, first_group(sc));
  auto named = planes_of(sc);
  std::vector<CrookedPlane> planes;
  for (const auto& p : named) planes.push_back(p.second);
  const int depth = o.depth >= 0 ? o.depth : 4;
  try {
    ProperCertificate c = properness_certificate(planes, g, depth, o.samples ? o.samples : 2000, o.seed, o.eps);
    rep = {{"verdict", c.certified ? "certified-to-depth-" + std::to_string(depth) : std::string("failed")},
           {"depth", depth},
           {"words_checked", c.words_checked},
           {"region_samples", c.region_samples}};
    if (!c.certified) {
      rep["failing_word"] = c.failing_word;
      rep["failing_point"] = to_json(Vec(c.failing_point));
      err << "region meets its image under a group element\n";
      return kExitGeometry;
    }
  } catch (const WallIntersection& e) {
    rep = {{"verdict", "walls-intersect"},
           {"walls", {named[static_cast<size_t>(e.first)].first, named[static_cast<size_t>(e.second)].first}},
           {"witness", to_json(Vec(e.witness))}};
    err << e.what() << "\n";
    return kExitGeometry;
  }
  return kExitOk;
}

int cmd_orbit(const Options& o, json& rep) {
  Scene sc = need_scene(o);
  GroupPresentation g = group_hyp2(sc, first_group(sc));
  const int depth = o.depth >= 0 ? o.depth : 2;
  const SceneObject* seed = nullptr;
  if (!o.object.empty()) {
    seed = &sc.find(o.object);
  } else {
    for (const auto& obj : sc.objects)
      if (obj.type == "point" || obj.type == "crooked_plane") {
        seed = &obj;
        break;
      }
  }
  if (!seed) throw std::invalid_argument("orbit needs a point or crooked plane seed");
  rep["seed"] = seed->id;
  rep["orbit"] = json::array();
  if (seed->type == "point") {
    const auto& p = std::get<EinPoint>(seed->value);
    const Mat m = intertwiner(sc.form, ein_form());
    for (const auto& e : orbit(EinPoint{m * p.rep, ein_form()}, g, depth, o.eps))
      rep["orbit"].push_back({{"word", e.word}, {"rep", to_json(normalize_projective(m.inverse() * e.object.rep))}});
  } else if (seed->type == "crooked_plane") {
    for (const auto& e : orbit(std::get<CrookedPlane>(seed->value), g, depth))
      rep["orbit"].push_back({{"word", e.word}, {"plane", plane_json(e.object)}});
  } else {
    throw std::invalid_argument("orbit seed must be a point or a crooked plane");
  }
  rep["size"] = rep["orbit"].size();
  return kExitOk;
}

int cmd_export(const Options& o, json& rep) {
  if (o.out.empty()) throw std::invalid_argument("export needs --out");
  const MeshMode mode = parse_mesh_mode(o.mode);
  Mesh mesh;
  std::string what;
  if (!o.lightcone.empty()) {
    mesh = mesh_lightcone(to3(parse_list(o.lightcone), "--lightcone"), mode, o.resolution);
    what = "lightcone";
  } else if (!o.hypersurface.empty()) {
    if (mode != MeshMode::Patch) throw std::invalid_argument("hypersurfaces export in patch mode only");
    Vec v = parse_list(o.hypersurface);
    if (v.size() != 5) throw std::invalid_argument("--hypersurface needs 5 coordinates");
    mesh = mesh_hypersurface(intertwiner(form_of(o), ein_form()) * v, o.resolution);
    what = "hypersurface";
  } else {
    Scene sc = need_scene(o);
    if (o.object.empty()) throw std::invalid_argument("export from a scene needs --object");
    const SceneObject& obj = sc.find(o.object);
    if (obj.type == "crooked_plane") {
      mesh = mesh_crooked(std::get<CrookedPlane>(obj.value), mode, o.resolution);
    } else if (obj.type == "point") {
      const auto& p = std::get<EinPoint>(obj.value);
      EinPoint q{intertwiner(sc.form, ein_form()) * p.rep, ein_form()};
      mesh = mesh_lightcone(to3(chart_inverse(q, o.eps), "apex"), mode, o.resolution);
    } else {
      throw std::invalid_argument("object '" + obj.id + "' is not a surface");
    }
    what = obj.type;
  }
  std::ofstream f(o.out);
  if (!f) throw std::invalid_argument("cannot write " + o.out);
  write_obj(mesh, f);
  json tags = json::array();
  for (const auto& g : mesh.groups) tags.push_back(g.tag);
  rep = {{"object", what},
         {"mode", o.mode},
         {"vertices", mesh.vertices.size()},
         {"triangles", mesh.triangle_count()},
         {"groups", tags},
         {"path", o.out}};
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Einstein universe geometry toolkit", "einkit"};
  app.require_subcommand(1);
  Options o;
  std::map<std::string, CLI::App*> subs;
  const std::vector<std::pair<std::string, std::string>> names{
      {"classify", "causal type of a vector, or involution types in a scene"},
      {"chart", "Minkowski chart and its inverse"},
      {"invert", "inversion of a patch point"},
      {"dict", "symplectic and orthogonal conversions"},
      {"lie", "roots and parabolics of sp(4,R)"},
      {"kak", "Cartan decomposition of a matrix"},
      {"distortion", "exponent trichotomy of the powers of a matrix"},
      {"limits", "limit sets of the powers of a matrix"},
      {"crooked", "crooked plane strata and membership"},
      {"disjoint", "pairwise disjointness of the crooked planes of a scene"},
      {"group-certify", "proper-discontinuity certificate to a word depth"},
      {"orbit", "orbit of a scene object"},
      {"export", "OBJ mesh export"}};
  for (const auto& [name, desc] : names) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->add_option("--scene", o.scene, "scene file (JSON)");
    s->add_option("--form", o.form, "form convention")->check(CLI::IsMember({"diag", "cartan", "hyp2"}));
    s->add_option("--eps", o.eps, "tolerance")->check(CLI::PositiveNumber);
    s->add_option("--depth", o.depth, "word length")->check(CLI::NonNegativeNumber);
    s->add_option("--seed", o.seed, "random seed");
    s->add_option("--samples", o.samples, "sample or term count");
    s->add_option("--resolution", o.resolution, "mesh vertex count")->check(CLI::PositiveNumber);
    s->add_option("--out", o.out, "output path");
    subs[name] = s;
  }
  subs["classify"]->add_option("--vector", o.vector, "comma separated coordinates");
  subs["classify"]->add_option("--signature", o.signature, "p,q");
  subs["chart"]->add_option("--point", o.point, "patch point x,y,z");
  subs["chart"]->add_option("--ein", o.ein, "homogeneous coordinates");
  subs["invert"]->add_option("--point", o.point, "patch point x,y,z");
  subs["dict"]->add_option("--lagrangian", o.lagrangian, "e1,e3 or v1;v2");
  subs["dict"]->add_option("--point", o.point, "f-coordinates of a point");
  subs["dict"]->add_option("--line", o.line, "vector of R^4");
  subs["lie"]->add_option("--vector", o.vector, "regular element a,b");
  for (const char* n : {"kak", "distortion", "limits", "crooked"})
    subs[n]->add_option("--matrix", o.matrix, "matrix file");
  subs["crooked"]->add_option("--vertex", o.vertex, "x,y,z");
  subs["crooked"]->add_option("--spine", o.spine, "spacelike direction");
  subs["crooked"]->add_option("--orientation", o.orientation, "+1 or -1")->check(CLI::IsMember({1, -1}));
  subs["crooked"]->add_option("--point", o.point, "query point x,y,z");
  subs["orbit"]->add_option("--object", o.object, "seed object id");
  subs["export"]->add_option("--object", o.object, "scene object id");
  subs["export"]->add_option("--mode", o.mode, "patch or spiral")->check(CLI::IsMember({"patch", "spiral"}));
  subs["export"]->add_option("--lightcone", o.lightcone, "apex x,y,z");
  subs["export"]->add_option("--hypersurface", o.hypersurface, "defining vector");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  json rep = json::object();
  int code = kExitOk;
  try {
    if (cmd == "classify") code = cmd_classify(o, rep);
    else if (cmd == "chart") code = cmd_chart(o, rep, err);
    else if (cmd == "invert") code = cmd_invert(o, rep);
    else if (cmd == "dict") code = cmd_dict(o, rep);
    else if (cmd == "lie") code = cmd_lie(o, rep);
    else if (cmd == "kak") code = cmd_kak(o, rep);
    else if (cmd == "distortion") code = cmd_distortion(o, rep);
    else if (cmd == "limits") code = cmd_limits(o, rep);
    else if (cmd == "crooked") code = cmd_crooked(o, rep);
    else if (cmd == "disjoint") code = cmd_disjoint(o, rep, err);
    else if (cmd == "group-certify") code = cmd_group_certify(o, rep, err);
    else if (cmd == "orbit") code = cmd_orbit(o, rep);
    else if (cmd == "export") code = cmd_export(o, rep);
  } catch (const GeometryError& e) {
    err << "geometric invariant failed: " << e.what() << "\n";
    return kExitGeometry;
  } catch (const std::invalid_argument& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  }
  rep["command"] = cmd;
  const std::string text = rep.dump(2) + "\n";
  if (!o.out.empty() && cmd != "export") {
    std::ofstream f(o.out);
    if (!f) {
      err << "usage: cannot write " << o.out << "\n";
      return kExitUsage;
    }
    f << text;
  } else {
    out << text;
  }
  return code;
}

}  // namespace ein::cli
