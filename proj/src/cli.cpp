#include "assocvar/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "assocvar/algebra.hpp"
#include "assocvar/error.hpp"
#include "assocvar/geodesic.hpp"
#include "assocvar/localrep.hpp"
#include "assocvar/metric.hpp"
#include "assocvar/phase.hpp"
#include "assocvar/points.hpp"

namespace assocvar {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSchema = "assocvar/1";

struct Options {
  std::vector<std::string> files;
  std::optional<int> bound;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  std::string poly;
  std::vector<std::string> points;
  std::string format = "json";
  std::optional<std::size_t> rank;
  bool square = false;
  bool orthonormal = false;
  std::size_t samples = 20;
  // geodesic
  std::string from, dir;
  double length = 0, step = 0;
  std::size_t stride = 1;
  bool no_renormalize = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read file", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PresentationFile load_file(const std::string& path, const Options& o) {
  PresentationFile f = parse_presentation_file(read_file(path));
  if (o.bound) {
    f.pres.bound = *o.bound;
    f.pres.validate();
  }
  return f;
}

FpAlgebra make_algebra(Presentation p, std::ostream& err) {
  FpAlgebra a(std::move(p));
  const RewriteSystem& s = a.rewriting();
  if (!s.complete())
    err << "warning: rewrite system complete only up to degree " << s.complete_up_to() << " < bound "
        << s.bound() << "\n";
  return a;
}

std::vector<Scalar> parse_csv_scalars(const std::string& text) {
  std::vector<Scalar> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Scalar v;
    if (!parse_scalar(item, v)) throw Error(ErrorCode::Syntax, "bad coordinate", item);
    out.push_back(v);
  }
  return out;
}

std::vector<Point> parse_points(const FpAlgebra& a, const std::vector<std::string>& specs) {
  std::vector<Point> out;
  for (const auto& s : specs) {
    Point p{parse_csv_scalars(s)};
    if (p.values.size() != a.num_gens())
      throw Error(ErrorCode::Mismatch, "point needs one coordinate per generator", s);
    for (auto& v : p.values) v = a.field().normalize(v);
    out.push_back(std::move(p));
  }
  return out;
}

Json point_json(const Point& p) {
  Json j = Json::array();
  for (const auto& v : p.values) j.push_back(to_string(v));
  return j;
}

Json points_json(const std::vector<Point>& pts) {
  Json j = Json::array();
  for (const auto& p : pts) j.push_back(point_json(p));
  return j;
}

Json matrix_json(const Matrix& m) { return Json(to_strings(m)); }

Json vector_json(const Vector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(to_string(x));
  return j;
}

Json system_json(const FpAlgebra& a) {
  const RewriteSystem& s = a.rewriting();
  return Json{{"rules", s.rules().size()},
              {"bound", s.bound()},
              {"complete_up_to", s.complete_up_to()},
              {"exact", s.exact()}};
}

Json document() { return Json{{"schema", kSchema}}; }

void emit(std::ostream& out, const Json& doc, const Options& o) {
  if (o.format == "text") {
    for (const auto& [key, value] : doc.items()) {
      if (key == "schema") continue;
      out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
    return;
  }
  out << doc.dump(2) << "\n";
}

const std::string& single_file(const Options& o) {
  if (o.files.size() != 1) throw CLI::ValidationError("expected exactly one input file");
  return o.files[0];
}

NcPoly require_poly(const FpAlgebra& a, const Options& o) {
  if (o.poly.empty()) throw CLI::ValidationError("--poly is required");
  return a.parse_poly(o.poly);
}

int cmd_parse(const Options& o, std::ostream& out, std::ostream& err) {
  PresentationFile f = load_file(single_file(o), o);
  if (o.format == "text") {
    out << print_presentation(f.pres);
    return 0;
  }
  FpAlgebra a = make_algebra(f.pres, err);
  Json doc = document();
  doc["field"] = a.field().name();
  doc["gens"] = a.gens();
  Json rels = Json::array();
  for (const auto& r : a.pres().rels) rels.push_back(a.format(r));
  doc["rels"] = rels;
  doc["bound"] = a.bound();
  doc["modules"] = f.modules.size();
  doc["rewrite_system"] = system_json(a);
  doc["presentation"] = print_presentation(a.pres());
  emit(out, doc, o);
  return 0;
}

int cmd_nf(const Options& o, std::ostream& out, std::ostream& err) {
  FpAlgebra a = make_algebra(load_file(single_file(o), o).pres, err);
  NcPoly p = require_poly(a, o);
  Json doc = document();
  doc["input"] = a.format(p);
  doc["normal_form"] = a.format(a.normal_form(p));
  doc["complete_up_to"] = a.rewriting().complete_up_to();
  doc["exact"] = a.rewriting().exact();
  emit(out, doc, o);
  return 0;
}

int cmd_member(const Options& o, std::ostream& out, std::ostream& err) {
  FpAlgebra a = make_algebra(load_file(single_file(o), o).pres, err);
  NcPoly p = require_poly(a, o);
  MembershipResult r = ideal_member(p, a.rewriting());
  Json doc = document();
  doc["input"] = a.format(p);
  doc["member"] = r.answer == Membership::Yes ? "yes" : "no-up-to-bound";
  doc["semidecision"] = r.semidecision;
  doc["complete_up_to"] = r.complete_up_to;
  doc["normal_form"] = a.format(r.normal_form);
  emit(out, doc, o);
  return 0;
}

PointSet all_points(const FpAlgebra& a, const Options& o) {
  EnumerateOptions eo;
  eo.jobs = std::max(1u, o.jobs);
  return enumerate_points(a, eo);
}

int cmd_points(const Options& o, std::ostream& out, std::ostream& err) {
  FpAlgebra a = make_algebra(load_file(single_file(o), o).pres, err);
  PointSet x = all_points(a, o);
  if (o.format == "text") {
    for (const auto& p : x.points()) {
      for (std::size_t i = 0; i < p.values.size(); ++i) out << (i ? " " : "") << to_string(p.values[i]);
      out << "\n";
    }
    return 0;
  }
  Json doc = document();
  doc["field"] = a.field().name();
  doc["gens"] = a.gens();
  doc["count"] = x.size();
  doc["points"] = points_json(x.points());
  emit(out, doc, o);
  return 0;
}

int cmd_open(const Options& o, std::ostream& out, std::ostream& err) {
  FpAlgebra a = make_algebra(load_file(single_file(o), o).pres, err);
  NcPoly f = require_poly(a, o);
  PointSet u = basic_open(f, all_points(a, o));
  Json doc = document();
  doc["f"] = a.format(f);
  doc["count"] = u.size();
  doc["points"] = points_json(u.points());
  emit(out, doc, o);
  return 0;
}

int cmd_sections(const Options& o, std::ostream& out, std::ostream& err) {
  FpAlgebra a = make_algebra(load_file(single_file(o), o).pres, err);
  PointSet x = all_points(a, o);
  PointSet u = o.poly.empty() ? x : basic_open(require_poly(a, o), x);
  SectionSpace s = section_space(u);
  Json doc = document();
  if (!o.poly.empty()) doc["f"] = o.poly;
  doc["open_set"] = points_json(u.points());
  doc["dimension"] = s.dimension();
  doc["contains_unit_inverses"] = s.contains_unit_inverses;
  Json basis = Json::array();
  for (const auto& b : s.basis) basis.push_back(vector_json(b));
  doc["basis"] = basis;
  emit(out, doc, o);
  return 0;
}

Json local_ring_json(const LocalRing& r) {
  Json j;
  j["dimension"] = r.dimension();
  j["matrix_dim"] = r.matrix_dim;
  j["blocks"] = r.blocks;
  j["adjoined_inverses"] = r.adjoined_inverses.size();
  Json basis = Json::array();
  for (const auto& b : r.basis) basis.push_back(matrix_json(b));
  j["basis"] = basis;
  return j;
}

int cmd_localring(const Options& o, std::ostream& out, std::ostream& err) {
  PresentationFile f = load_file(single_file(o), o);
  FpAlgebra a = make_algebra(f.pres, err);
  if (f.modules.empty()) throw Error(ErrorCode::InvalidArgument, "file declares no module");
  std::vector<MatrixModule> mods = modules_from_file(a, f.modules);
  Json doc = document();
  Json list = Json::array();
  for (const auto& m : mods) {
    ModuleCheck c = check_module(m);
    if (!c.valid)
      throw Error(ErrorCode::InvalidArgument, "module action violates a relation", a.format(*c.witness));
    Json mj{{"dim", m.dim()}, {"commutant_dim", commutant(m).size()}};
    if (a.field().is_prime()) {
      try {
        mj["simple"] = is_simple(m);
      } catch (const Error&) {
        mj["simple"] = nullptr;
      }
    }
    list.push_back(mj);
  }
  doc["modules"] = list;
  doc["local_ring"] = local_ring_json(mods.size() == 1 ? local_ring(mods[0]) : product_local_rings(mods));
  emit(out, doc, o);
  return 0;
}

int cmd_ph(const Options& o, std::ostream& out, std::ostream& err) {
  FpAlgebra a = make_algebra(load_file(single_file(o), o).pres, err);
  PhasePresentation ph = phase_space(a);
  if (o.format == "json") {
    Json doc = document();
    doc["presentation"] = print_presentation(ph.pres());
    doc["rewrite_system"] = system_json(ph.phase);
    emit(out, doc, o);
    return 0;
  }
  out << print_presentation(ph.pres());
  return 0;
}

int cmd_tensor(const Options& o, std::ostream& out, std::ostream& err) {
  Presentation result;
  if (o.square) {
    FpAlgebra a = make_algebra(load_file(single_file(o), o).pres, err);
    result = tensor_square(a).algebra.pres();
  } else {
    if (o.files.size() != 2) throw CLI::ValidationError("tensor needs two files, or one file with --square");
    FpAlgebra a = make_algebra(load_file(o.files[0], o).pres, err);
    FpAlgebra b = make_algebra(load_file(o.files[1], o).pres, err);
    result = tensor_over_k(a, b).pres();
  }
  if (o.format == "json") {
    Json doc = document();
    doc["presentation"] = print_presentation(result);
    emit(out, doc, o);
    return 0;
  }
  out << print_presentation(result);
  return 0;
}

Json tangent_json(const TangentSpace& t) {
  return Json{{"point", point_json(t.point)}, {"dim", t.dim()}, {"basis", matrix_json(t.basis)}};
}

std::vector<Point> require_points(const FpAlgebra& a, const Options& o) {
  if (o.points.empty()) throw CLI::ValidationError("at least one --point is required");
  return parse_points(a, o.points);
}

int cmd_tangent(const Options& o, std::ostream& out, std::ostream& err) {
  FpAlgebra a = make_algebra(load_file(single_file(o), o).pres, err);
  Json doc = document();
  Json list = Json::array();
  for (const auto& p : require_points(a, o)) {
    TangentSpace t = tangent_space_at(a, p);
    list.push_back(tangent_json(o.orthonormal ? orthonormalized(t) : t));
  }
  doc["tangent_spaces"] = list;
  emit(out, doc, o);
  return 0;
}

int cmd_metric_at(const Options& o, std::ostream& out, std::ostream& err) {
  FpAlgebra a = make_algebra(load_file(single_file(o), o).pres, err);
  MetricTensor g = euclidean_metric(a);
  Json doc = document();
  doc["metric"] = g.ambient.algebra.format(g.g_of_t);
  Json list = Json::array();
  for (const auto& p : require_points(a, o)) {
    TangentSpace t = tangent_space_at(a, p);
    if (o.orthonormal) t = orthonormalized(t);
    InnerProduct ip = metric_at(g, t);
    Json j = tangent_json(t);
    j["gram"] = matrix_json(ip.gram);
    j["symmetric"] = ip.symmetric;
    if (ip.positive_definite) j["positive_definite"] = *ip.positive_definite;
    list.push_back(j);
  }
  doc["results"] = list;
  emit(out, doc, o);
  return 0;
}

// Random rational points of a relation-free chart, fixed by the seed.
std::vector<Point> sample_free_points(const FpAlgebra& a, const Options& o) {
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  std::vector<Point> out;
  for (std::size_t s = 0; s < o.samples; ++s) {
    Point p;
    for (std::size_t i = 0; i < a.num_gens(); ++i) {
      long n = num(rng), d = den(rng);
      Scalar v(n, d);
      v.canonicalize();
      p.values.push_back(a.field().normalize(v));
    }
    out.push_back(std::move(p));
  }
  return out;
}

int cmd_riemannian(const Options& o, std::ostream& out, std::ostream& err) {
  FpAlgebra a = make_algebra(load_file(single_file(o), o).pres, err);
  std::vector<Point> sample;
  if (!o.points.empty())
    sample = parse_points(a, o.points);
  else if (a.is_free() || a.pres().rels.empty())
    sample = sample_free_points(a, o);
  RiemannianCheck r = is_riemannian(euclidean_metric(a), sample);
  Json doc = document();
  doc["riemannian"] = r.riemannian ? "yes" : "no";
  doc["vacuous"] = r.vacuous;
  doc["sample_size"] = sample.size();
  if (r.witness) doc["witness"] = point_json(*r.witness);
  emit(out, doc, o);
  return 0;
}

int cmd_fiber(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.files.size() != 2) throw CLI::ValidationError("fiber needs BASE and BUNDLE files");
  FpAlgebra base = make_algebra(load_file(o.files[0], o).pres, err);
  Presentation total = load_file(o.files[1], o).pres;
  Bundle e = make_bundle(base, total);
  std::vector<Point> pts = require_points(base, o);
  Json doc = document();
  doc["fiber_generators"] = std::vector<std::string>(e.total.gens().begin() + static_cast<long>(base.num_gens()),
                                                     e.total.gens().end());
  Json list = Json::array();
  for (const auto& p : pts)
    list.push_back(Json{{"point", point_json(p)}, {"fiber", print_presentation(bundle_fiber_at(e, p))}});
  doc["fibers"] = list;
  if (o.rank) {
    RankCheck rc = check_bundle_rank(e, pts, *o.rank);
    doc["rank"] = *o.rank;
    doc["rank_ok"] = rc.ok;
    if (!rc.ok) {
      doc["witness"] = rc.witness;
      if (rc.point) doc["witness_point"] = point_json(*rc.point);
    }
  }
  emit(out, doc, o);
  return 0;
}

Eigen::VectorXd parse_real_vector(const std::string& text, std::size_t m, const char* what) {
  std::vector<Scalar> v = parse_csv_scalars(text);
  if (v.size() != m) throw Error(ErrorCode::Mismatch, std::string(what) + " needs one coordinate per generator", text);
  Eigen::VectorXd out(static_cast<long>(m));
  for (std::size_t i = 0; i < m; ++i) out(static_cast<long>(i)) = v[i].get_d();
  return out;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_geodesic(const Options& o, std::ostream& out, std::ostream& err) {
  FpAlgebra a = make_algebra(load_file(single_file(o), o).pres, err);
  if (o.from.empty() || o.dir.empty()) throw CLI::ValidationError("--from and --dir are required");
  RealChart chart = RealChart::from_algebra(a);
  Eigen::VectorXd p0 = parse_real_vector(o.from, a.num_gens(), "--from");
  Eigen::VectorXd v0 = parse_real_vector(o.dir, a.num_gens(), "--dir");
  GeodesicOptions go;
  go.renormalize = !o.no_renormalize;
  GeodesicTrace tr = integrate_geodesic(chart, p0, v0, o.length, o.step, go);
  out << "s";
  for (const auto& g : a.gens()) out << "," << g;
  out << "\n";
  const std::size_t stride = std::max<std::size_t>(1, o.stride);
  for (std::size_t i = 0; i < tr.samples.size(); ++i) {
    if (i % stride != 0 && i + 1 != tr.samples.size()) continue;
    const auto& s = tr.samples[i];
    out << fmt_double(s.arclength);
    for (long c = 0; c < s.position.size(); ++c) out << "," << fmt_double(s.position(c));
    out << "\n";
  }
  Json diag{{"schema", kSchema},
            {"samples", tr.samples.size()},
            {"length", o.length},
            {"step", o.step},
            {"max_constraint_drift", tr.max_constraint_drift},
            {"speed_drift", tr.speed_drift},
            {"renormalized", go.renormalize},
            {"projection_tolerance", go.projection.tolerance}};
  out << "# " << diag.dump() << "\n";
  return 0;
}

Json error_json(const Error& e) {
  Json j{{"code", to_string(e.code())}, {"message", e.what()}};
  if (e.witness()) j["witness"] = *e.witness();
  return Json{{"schema", kSchema}, {"error", j}};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finitely presented algebras, points, phase spaces, metrics and geodesics", "assocvar"};
  app.require_subcommand(1);
  Options o;

  using Handler = int (*)(const Options&, std::ostream&, std::ostream&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const char* name, const char* help, Handler h, std::size_t max_files = 1) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("files", o.files, "input file(s)")->required()->expected(1, static_cast<int>(max_files));
    sub->add_option("--bound", o.bound, "override the truncation degree");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
    commands.emplace_back(sub, h);
    return sub;
  };

  add("parse", "parse and complete a presentation", cmd_parse);
  add("nf", "normal form of a polynomial", cmd_nf)->add_option("--poly", o.poly)->required();
  add("member", "ideal membership of a polynomial", cmd_member)->add_option("--poly", o.poly)->required();
  add("points", "enumerate F_p-points", cmd_points)->add_option("--jobs", o.jobs);
  {
    auto* s = add("open", "basic open set D(f)", cmd_open);
    s->add_option("--poly", o.poly)->required();
    s->add_option("--jobs", o.jobs);
  }
  {
    auto* s = add("sections", "section space over D(f) or all points", cmd_sections);
    s->add_option("--poly", o.poly);
    s->add_option("--jobs", o.jobs);
  }
  add("localring", "local function ring of the declared modules", cmd_localring);
  add("ph", "phase-space presentation", cmd_ph);
  add("tensor", "tensor product of two presentations, or --square", cmd_tensor, 2)
      ->add_flag("--square", o.square, "tensor square Ph(A) (x)_A Ph(A)");
  {
    auto* s = add("tangent", "tangent space at points", cmd_tangent);
    s->add_option("--point", o.points, "comma-separated coordinates")->required();
    s->add_flag("--orthonormal", o.orthonormal);
  }
  {
    auto* s = add("metric-at", "Euclidean Gram matrix on tangent spaces", cmd_metric_at);
    s->add_option("--point", o.points)->required();
    s->add_flag("--orthonormal", o.orthonormal);
  }
  {
    auto* s = add("riemannian", "positive-definiteness of the Euclidean metric on a sample", cmd_riemannian);
    s->add_option("--point", o.points);
    s->add_option("--seed", o.seed);
    s->add_option("--samples", o.samples);
  }
  {
    auto* s = add("fiber", "fibers of a bundle BASE BUNDLE", cmd_fiber, 2);
    s->add_option("--point", o.points)->required();
    s->add_option("--rank", o.rank);
  }
  {
    auto* s = add("geodesic", "integrate a geodesic on the real chart", cmd_geodesic);
    s->add_option("--from", o.from)->required();
    s->add_option("--dir", o.dir)->required();
    s->add_option("--length", o.length)->required();
    s->add_option("--step", o.step)->required();
    s->add_option("--stride", o.stride, "emit every n-th sample");
    s->add_flag("--no-renormalize", o.no_renormalize, "debug: skip unit-speed renormalization");
  }

  // ph and tensor print presentations unless JSON is asked for explicitly.
  bool format_given = false;
  for (int i = 1; i < argc; ++i)
    if (std::string_view(argv[i]).rfind("--format", 0) == 0) format_given = true;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  try {
    for (const auto& [sub, handler] : commands) {
      if (!sub->parsed()) continue;
      std::string name = sub->get_name();
      if (!format_given && (name == "ph" || name == "tensor")) o.format = "text";
      return handler(o, out, err);
    }
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    out << error_json(e).dump(2) << "\n";
    return 1;
  }
  return 2;
}

}  // namespace assocvar
