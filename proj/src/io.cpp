#include "ncmatch/io.hpp"

#include "ncmatch/error.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ncm {

namespace {

std::string color_name(Color c) { return std::string(to_string(c)); }

Json bit_array(const std::vector<std::uint8_t>& bits) {
  Json arr = Json::array();
  for (auto b : bits) arr.push_back(static_cast<int>(b));
  return arr;
}

std::vector<std::uint8_t> read_bits(const Json& arr, std::size_t expected, const char* name) {
  if (!arr.is_array() || arr.size() != expected) fail(ErrorCode::bad_input, std::string("annotation ") + name + " has the wrong length");
  std::vector<std::uint8_t> out;
  for (const auto& v : arr) {
    if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
      fail(ErrorCode::bad_input, std::string("annotation ") + name + " must hold 0/1 values");
    }
    out.push_back(static_cast<std::uint8_t>(v.get<int>()));
  }
  return out;
}

const Json& require(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorCode::bad_input, std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const Json& obj, const char* key) {
  const Json& v = require(obj, key);
  if (!v.is_string()) fail(ErrorCode::bad_input, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

Json instance_to_json(const AnnotatedInstance& ai) {
  const Instance& inst = ai.instance;
  Json doc;
  doc["kind"] = std::string(to_string(inst.kind));
  doc["geometry"] = std::string(to_string(inst.geometry));
  doc["n"] = inst.n;
  Json points = Json::array();
  for (const Point& p : inst.points) {
    Json jp;
    jp["x"] = to_string(p.x);
    jp["y"] = to_string(p.y);
    if (p.angle) jp["angle"] = to_string(*p.angle);
    jp["color"] = p.color == Color::none ? Json(nullptr) : Json(color_name(p.color));
    points.push_back(std::move(jp));
  }
  doc["points"] = std::move(points);

  Json ann = Json::object();
  if (ai.markov) {
    const MarkovTrace& t = *ai.markov;
    ann["markov"] = {{"seed", t.seed},          {"parent", bit_array(t.parent)}, {"fake", bit_array(t.fake)},
                     {"F", bit_array(t.f)}, {"R", bit_array(t.r)}};
  }
  if (ai.hidden_perm) ann["hidden_perm"] = ai.hidden_perm->values;
  if (ai.hidden_choice) {
    ann["hidden_choice"] = {{"k", ai.family_k}, {"j", ai.hidden_choice->j}, {"S", ai.hidden_choice->intervals}};
  }
  doc["annotations"] = std::move(ann);

  Json meta = Json::object();
  for (const auto& [key, value] : ai.meta) meta[key] = value;
  doc["meta"] = std::move(meta);
  return doc;
}

AnnotatedInstance instance_from_json(const Json& doc) {
  if (!doc.is_object()) fail(ErrorCode::bad_input, "instance document must be a JSON object");
  AnnotatedInstance ai;
  Instance& inst = ai.instance;

  const std::string kind = require_string(doc, "kind");
  if (kind == "MNM") {
    inst.kind = ProblemKind::mnm;
  } else if (kind == "BNM") {
    inst.kind = ProblemKind::bnm;
  } else {
    fail(ErrorCode::bad_input, "kind must be MNM or BNM");
  }
  const std::string geometry = require_string(doc, "geometry");
  if (geometry == "circle") {
    inst.geometry = GeometryClass::circle;
  } else if (geometry == "convex") {
    inst.geometry = GeometryClass::convex;
  } else if (geometry == "general") {
    inst.geometry = GeometryClass::general;
  } else {
    fail(ErrorCode::bad_input, "geometry must be circle, convex or general");
  }
  const Json& n = require(doc, "n");
  if (!n.is_number_unsigned() || n.get<std::size_t>() == 0) fail(ErrorCode::bad_input, "n must be a positive integer");
  inst.n = n.get<std::size_t>();

  const Json& points = require(doc, "points");
  if (!points.is_array()) fail(ErrorCode::bad_input, "points must be an array");
  for (const Json& jp : points) {
    if (!jp.is_object()) fail(ErrorCode::bad_input, "each point must be an object");
    Point p;
    p.x = parse_rational(require_string(jp, "x"));
    p.y = parse_rational(require_string(jp, "y"));
    if (auto it = jp.find("angle"); it != jp.end() && !it->is_null()) {
      if (!it->is_string()) fail(ErrorCode::bad_input, "angle must be a \"p/q\" string");
      p.angle = parse_rational(it->get<std::string>());
    }
    if (auto it = jp.find("color"); it != jp.end() && !it->is_null()) {
      const std::string c = it->is_string() ? it->get<std::string>() : "";
      if (c == "blue") {
        p.color = Color::blue;
      } else if (c == "red") {
        p.color = Color::red;
      } else {
        fail(ErrorCode::bad_input, "color must be blue, red or null");
      }
    }
    p.arrival_index = inst.points.size() + 1;
    inst.points.push_back(std::move(p));
  }
  validate_instance(inst);

  if (auto it = doc.find("annotations"); it != doc.end() && it->is_object()) {
    const Json& ann = *it;
    if (auto m = ann.find("markov"); m != ann.end()) {
      const std::size_t total = inst.points.size();
      MarkovTrace t;
      t.seed = require(*m, "seed").get<std::uint64_t>();
      t.parent = read_bits(require(*m, "parent"), total, "parent");
      t.fake = read_bits(require(*m, "fake"), total, "fake");
      t.f = read_bits(require(*m, "F"), total, "F");
      t.r = read_bits(require(*m, "R"), total, "R");
      ai.markov = std::move(t);
    }
    if (auto h = ann.find("hidden_perm"); h != ann.end()) {
      Permutation sigma;
      sigma.values = h->get<std::vector<int>>();
      ai.hidden_perm = std::move(sigma);
    }
    if (auto h = ann.find("hidden_choice"); h != ann.end()) {
      FamilyChoice choice;
      ai.family_k = require(*h, "k").get<unsigned>();
      choice.j = require(*h, "j").get<unsigned>();
      choice.intervals = require(*h, "S").get<std::vector<unsigned>>();
      ai.hidden_choice = std::move(choice);
    }
  }
  if (auto it = doc.find("meta"); it != doc.end() && it->is_object()) {
    for (const auto& [key, value] : it->items()) {
      ai.meta.emplace_back(key, value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
  return ai;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::bad_input, "cannot open " + path + " for writing");
  out << text;
  if (!out) fail(ErrorCode::bad_input, "failed writing " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::bad_input, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json simulation_report(const AnnotatedInstance& ai, const std::string& algorithm, const SimulationResult& sim) {
  const Instance& inst = ai.instance;
  Json report;
  report["algorithm"] = algorithm;
  report["kind"] = std::string(to_string(inst.kind));
  report["geometry"] = std::string(to_string(inst.geometry));
  report["n"] = inst.n;
  report["points"] = inst.points.size();
  report["matched"] = 2 * sim.matching.size();
  report["unmatched"] = inst.points.size() - 2 * sim.matching.size();
  report["bits_written"] = sim.bits_written;
  report["bits_read"] = sim.bits_read;
  report["advice"] = bits_to_string(sim.advice);
  Json edges = Json::array();
  for (const Edge& e : sim.matching.edges()) edges.push_back({e.a + 1, e.b + 1});
  report["edges"] = std::move(edges);

  const MatchingReport& v = sim.report;
  Json crossings = Json::array();
  for (const auto& [e, f] : v.crossing_pairs) crossings.push_back({{e.a + 1, e.b + 1}, {f.a + 1, f.b + 1}});
  Json colors = Json::array();
  for (const Edge& e : v.color_violations) colors.push_back({e.a + 1, e.b + 1});
  Json dups = Json::array();
  for (std::size_t i : v.duplicate_endpoints) dups.push_back(i + 1);
  Json invalid = Json::array();
  for (const Edge& e : v.invalid_edges) invalid.push_back({e.a + 1, e.b + 1});
  report["violations"] = {{"crossing_pairs", crossings},
                          {"color_violations", colors},
                          {"duplicate_endpoints", dups},
                          {"invalid_edges", invalid}};
  report["valid"] = v.valid();
  report["perfect"] = v.perfect;

  Json steps = Json::array();
  for (const StepRecord& s : sim.log) {
    steps.push_back({{"point", s.index + 1},
                     {"partner", s.partner ? Json(*s.partner + 1) : Json(nullptr)},
                     {"available", s.available_count}});
  }
  report["steps"] = std::move(steps);
  for (const auto& [key, value] : ai.meta) {
    if (key == "seed") report["seed"] = value;
  }
  return report;
}

namespace {

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string render_svg(const Instance& instance, const Matching& matching) {
  constexpr double kSize = 640.0;
  constexpr double kCenter = kSize / 2;
  constexpr double kRadius = 290.0;
  const auto& pts = instance.points;

  // Map into [-1, 1]^2; circle instances already live there.
  double min_x = -1, max_x = 1, min_y = -1, max_y = 1;
  if (instance.geometry != GeometryClass::circle && !pts.empty()) {
    min_x = max_x = to_double(pts[0].x);
    min_y = max_y = to_double(pts[0].y);
    for (const Point& p : pts) {
      min_x = std::min(min_x, to_double(p.x));
      max_x = std::max(max_x, to_double(p.x));
      min_y = std::min(min_y, to_double(p.y));
      max_y = std::max(max_y, to_double(p.y));
    }
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-12});
  const double mid_x = (min_x + max_x) / 2, mid_y = (min_y + max_y) / 2;
  auto sx = [&](const Point& p) { return kCenter + kRadius * 2 * (to_double(p.x) - mid_x) / span; };
  auto sy = [&](const Point& p) { return kCenter - kRadius * 2 * (to_double(p.y) - mid_y) / span; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n"
      << "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
  if (instance.geometry == GeometryClass::circle) {
    svg << "<circle cx=\"" << fixed3(kCenter) << "\" cy=\"" << fixed3(kCenter) << "\" r=\"" << fixed3(kRadius)
        << "\" fill=\"none\" stroke=\"#bbbbbb\"/>\n";
  }
  for (const Edge& e : matching.edges()) {
    svg << "<line x1=\"" << fixed3(sx(pts[e.a])) << "\" y1=\"" << fixed3(sy(pts[e.a])) << "\" x2=\""
        << fixed3(sx(pts[e.b])) << "\" y2=\"" << fixed3(sy(pts[e.b])) << "\" stroke=\"black\" stroke-width=\"1.500\"/>\n";
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point& p = pts[i];
    const char* fill = p.color == Color::blue ? "#1f5fd6" : p.color == Color::red ? "#d62828" : "#333333";
    svg << "<circle cx=\"" << fixed3(sx(p)) << "\" cy=\"" << fixed3(sy(p)) << "\" r=\"4.000\" fill=\"" << fill << "\"/>\n";
    svg << "<text x=\"" << fixed3(sx(p) + 6) << "\" y=\"" << fixed3(sy(p) - 6)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << p.arrival_index << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ncm
