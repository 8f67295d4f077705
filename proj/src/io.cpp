#include "whitesurf/io.hpp"

#include <fstream>
#include <sstream>

#include "whitesurf/error.hpp"

namespace whitesurf::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::schema, "schema error: " + what); }

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class F>
auto guarded(const char* what, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    bad(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json field_to_json(const Field& f) {
  return json{{"char", f.characteristic()}, {"deg", f.degree()}};
}

Field field_from_json(const json& j) {
  return guarded("field", [&] {
    const auto p = need(j, "char").get<std::uint64_t>();
    const int k = need(j, "deg").get<int>();
    if (p == 0) {
      if (k != 1) bad("the rationals have degree 1");
      return Field::rationals();
    }
    return Field::extension(p, k);
  });
}

json scalar_to_json(const Field& f, const Scalar& s) {
  switch (f.kind()) {
    case FieldKind::rational:
      return s.rational().get_str();
    case FieldKind::prime:
      return s.code();
    case FieldKind::extension:
      return f.digits(s);
  }
  return nullptr;
}

Scalar scalar_from_json(const Field& f, const json& j) {
  return guarded("scalar", [&] {
    switch (f.kind()) {
      case FieldKind::rational: {
        if (j.is_number_integer()) return f.from_int(j.get<long long>());
        mpq_class q(j.get<std::string>());
        q.canonicalize();
        return Scalar(q);
      }
      case FieldKind::prime: {
        const auto v = j.get<std::uint64_t>();
        if (v >= f.characteristic()) bad("residue out of range");
        return Scalar::from_code(v);
      }
      case FieldKind::extension: {
        const auto d = j.get<std::vector<std::uint64_t>>();
        if (d.size() != static_cast<std::size_t>(f.degree())) bad("coefficient array of wrong length");
        return f.from_digits(d);
      }
    }
    bad("unknown field kind");
  });
}

json point_to_json(const Field& f, const ProjPoint& p) {
  return json::array({scalar_to_json(f, p[0]), scalar_to_json(f, p[1]), scalar_to_json(f, p[2])});
}

ProjPoint point_from_json(const Field& f, const json& j) {
  return guarded("point", [&] {
    if (!j.is_array() || j.size() != 3) bad("a point needs 3 coordinates");
    return ProjPoint::make(f, scalar_from_json(f, j[0]), scalar_from_json(f, j[1]), scalar_from_json(f, j[2]));
  });
}

json curve_to_json(const Field& f, const CurveForm& c) {
  json coeffs = json::array();
  for (const auto& s : c.coeffs) coeffs.push_back(scalar_to_json(f, s));
  return json{{"degree", c.degree}, {"coeffs", coeffs}};
}

CurveForm curve_from_json(const Field& f, const json& j) {
  return guarded("curve", [&] {
    CurveForm c;
    c.degree = need(j, "degree").get<int>();
    const auto& cs = need(j, "coeffs");
    if (c.degree < 0 || cs.size() != monomial_count(c.degree)) bad("coefficient count does not match degree");
    for (const auto& e : cs) c.coeffs.push_back(scalar_from_json(f, e));
    return c;
  });
}

json config_to_json(const WhiteConfig& cfg) {
  const Field& f = cfg.field;
  json pts = json::array();
  for (const auto& p : cfg.points) pts.push_back(point_to_json(f, p));
  json prov{{"kind", to_string(cfg.provenance)}, {"seed", cfg.seed}};
  if (!cfg.lines.empty()) {
    json ls = json::array();
    for (const auto& l : cfg.lines) ls.push_back(json::array({scalar_to_json(f, l.coeffs[0]), scalar_to_json(f, l.coeffs[1]), scalar_to_json(f, l.coeffs[2])}));
    prov["lines"] = ls;
  }
  if (!cfg.params.empty()) {
    json ps = json::array();
    for (const auto& s : cfg.params) ps.push_back(scalar_to_json(f, s));
    prov["params"] = ps;
  }
  return json{{"schema", kSchemaVersion}, {"field", field_to_json(f)}, {"points", pts}, {"provenance", prov}};
}

WhiteConfig config_from_json(const json& j) {
  return guarded("config", [&] {
    if (need(j, "schema").get<int>() != kSchemaVersion) bad("unsupported schema version");
    WhiteConfig cfg;
    cfg.field = field_from_json(need(j, "field"));
    const Field& f = cfg.field;
    const auto& pts = need(j, "points");
    if (!pts.is_array() || pts.size() != 15) bad("a configuration has 15 points");
    for (const auto& e : pts) cfg.points.push_back(point_from_json(f, e));
    for (std::size_t a = 0; a < cfg.points.size(); ++a)
      for (std::size_t b = a + 1; b < cfg.points.size(); ++b)
        if (cfg.points[a] == cfg.points[b]) bad("repeated point");
    const auto& prov = need(j, "provenance");
    const auto kind = need(prov, "kind").get<std::string>();
    if (kind == "random")
      cfg.provenance = Provenance::random;
    else if (kind == "polygonal")
      cfg.provenance = Provenance::polygonal;
    else if (kind == "segre")
      cfg.provenance = Provenance::segre;
    else
      bad("unknown provenance '" + kind + "'");
    cfg.seed = prov.value("seed", std::uint64_t{0});
    if (prov.contains("lines"))
      for (const auto& l : prov.at("lines")) {
        if (!l.is_array() || l.size() != 3) bad("a line needs 3 coefficients");
        cfg.lines.push_back(CurveForm::linear(f, scalar_from_json(f, l[0]), scalar_from_json(f, l[1]), scalar_from_json(f, l[2])));
      }
    if (prov.contains("params"))
      for (const auto& s : prov.at("params")) cfg.params.push_back(scalar_from_json(f, s));
    if (cfg.provenance != Provenance::random && cfg.lines.size() != 6) bad("polygonal provenance needs 6 lines");
    if (cfg.provenance == Provenance::segre && cfg.params.size() != 6) bad("Segre provenance needs 6 parameters");
    return cfg;
  });
}

json scheme_to_json(const Field& f, const PointScheme& z) {
  json pts = json::array();
  json mult = json::array();
  bool reduced = true;
  for (const auto& it : z.items()) {
    pts.push_back(point_to_json(f, it.point));
    mult.push_back(it.mult);
    reduced = reduced && it.mult == 1;
  }
  json j{{"schema", kSchemaVersion}, {"field", field_to_json(f)}, {"points", pts}};
  if (!reduced) j["multiplicities"] = mult;
  return j;
}

std::pair<Field, PointScheme> scheme_from_json(const json& j) {
  return guarded("points", [&] {
    if (need(j, "schema").get<int>() != kSchemaVersion) bad("unsupported schema version");
    Field f = field_from_json(need(j, "field"));
    const auto& pts = need(j, "points");
    if (!pts.is_array()) bad("points must be an array");
    std::vector<int> mult(pts.size(), 1);
    if (j.contains("multiplicities")) {
      mult = j.at("multiplicities").get<std::vector<int>>();
      if (mult.size() != pts.size()) bad("multiplicities do not match points");
    }
    PointScheme z;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      try {
        z.add(point_from_json(f, pts[i]), mult[i]);
      } catch (const std::invalid_argument& e) {
        bad(e.what());
      }
    }
    return std::make_pair(f, z);
  });
}

namespace {

json codes_to_json(const Field& f, const std::vector<std::uint64_t>& codes) {
  json a = json::array();
  for (auto c : codes) a.push_back(scalar_to_json(f, Scalar::from_code(c)));
  return a;
}

json vector_to_json(const Field& f, const Vector& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(scalar_to_json(f, s));
  return a;
}

Vector vector_from_json(const Field& f, const json& j) {
  Vector v;
  for (const auto& e : j) v.push_back(scalar_from_json(f, e));
  return v;
}

ClassKind kind_from(const std::string& s) {
  for (auto k : {ClassKind::improper, ClassKind::proper, ClassKind::quadrisecant, ClassKind::other})
    if (to_string(k) == s) return k;
  bad("unknown class kind '" + s + "'");
}

}  // namespace

json census_to_json(const CensusReport& r) {
  const Field fp = Field::prime(r.p);
  json levels = json::array();
  for (const auto& l : r.levels)
    levels.push_back(json{{"k", l.k},
                          {"points", l.points},
                          {"buckets", l.buckets},
                          {"proper", l.proper},
                          {"improper", l.improper},
                          {"quadrisecant", l.quadrisecant},
                          {"other", l.other}});
  json classes = json::array();
  for (const auto& c : r.classes) {
    const Field fk = Field::extension(r.p, c.level);
    json members = json::array();
    for (const auto& m : c.members) members.push_back(point_to_json(fk, m));
    json jc{{"level", c.level},
            {"key", codes_to_json(fk, c.key)},
            {"kind", to_string(c.kind)},
            {"member_count", c.member_count},
            {"members", members},
            {"distinct_images", c.distinct_images}};
    if (c.contracted_line) jc["contracted_line"] = *c.contracted_line;
    if (!c.image.empty()) jc["image"] = vector_to_json(fk, c.image);
    classes.push_back(jc);
  }
  return json{{"schema", kSchemaVersion},
              {"config_id", r.config_id},
              {"field", field_to_json(fp)},
              {"q", point_to_json(fp, r.q)},
              {"maxext", r.maxext},
              {"levels", levels},
              {"classes", classes},
              {"counts",
               {{"proper", r.proper},
                {"improper", r.improper},
                {"quadrisecant", r.quadrisecant},
                {"other", r.other},
                {"contracted_line_hits", r.contracted_line_hits},
                {"at_center", r.at_center}}},
              {"lower_bound", r.lower_bound}};
}

CensusReport census_from_json(const json& j) {
  return guarded("census", [&] {
    if (need(j, "schema").get<int>() != kSchemaVersion) bad("unsupported schema version");
    CensusReport r;
    r.config_id = need(j, "config_id").get<std::string>();
    const Field fp = field_from_json(need(j, "field"));
    r.p = fp.characteristic();
    r.q = point_from_json(fp, need(j, "q"));
    r.maxext = need(j, "maxext").get<int>();
    for (const auto& l : need(j, "levels")) {
      LevelStats s;
      s.k = need(l, "k").get<int>();
      s.points = need(l, "points").get<std::uint64_t>();
      s.buckets = need(l, "buckets").get<std::size_t>();
      s.proper = need(l, "proper").get<std::size_t>();
      s.improper = need(l, "improper").get<std::size_t>();
      s.quadrisecant = need(l, "quadrisecant").get<std::size_t>();
      s.other = need(l, "other").get<std::size_t>();
      r.levels.push_back(s);
    }
    for (const auto& jc : need(j, "classes")) {
      CollisionClass c;
      c.level = need(jc, "level").get<int>();
      const Field fk = Field::extension(r.p, c.level);
      for (const auto& e : need(jc, "key")) c.key.push_back(scalar_from_json(fk, e).code());
      c.kind = kind_from(need(jc, "kind").get<std::string>());
      c.member_count = need(jc, "member_count").get<std::size_t>();
      for (const auto& m : need(jc, "members")) c.members.push_back(point_from_json(fk, m));
      c.distinct_images = need(jc, "distinct_images").get<std::size_t>();
      if (jc.contains("contracted_line")) c.contracted_line = jc.at("contracted_line").get<std::size_t>();
      if (jc.contains("image")) c.image = vector_from_json(fk, jc.at("image"));
      r.classes.push_back(std::move(c));
    }
    const auto& counts = need(j, "counts");
    r.proper = need(counts, "proper").get<std::size_t>();
    r.improper = need(counts, "improper").get<std::size_t>();
    r.quadrisecant = need(counts, "quadrisecant").get<std::size_t>();
    r.other = need(counts, "other").get<std::size_t>();
    r.contracted_line_hits = need(counts, "contracted_line_hits").get<std::size_t>();
    r.at_center = need(counts, "at_center").get<std::size_t>();
    r.lower_bound = need(j, "lower_bound").get<bool>();
    return r;
  });
}

json trial_to_json(const TrialRecord& t) {
  const Field& f = t.config.field;
  json pairs = json::array();
  for (const auto& [a, b] : t.pairs) pairs.push_back(json::array({point_to_json(f, a), point_to_json(f, b)}));
  json j{{"schema", kSchemaVersion},
         {"seed", t.seed},
         {"config", config_to_json(t.config)},
         {"q", point_to_json(f, t.q)},
         {"pairs", pairs},
         {"h0_z5", t.h0_z5},
         {"triple_kernel_dim", t.triple_kernel_dim},
         {"timings", {{"seconds", t.seconds}}}};
  if (t.character) j["character"] = *t.character;
  if (t.census) j["census"] = census_to_json(*t.census);
  if (t.quadric_dim) j["quadric_dim"] = *t.quadric_dim;
  if (t.segre_product) j["segre_product"] = *t.segre_product;
  return j;
}

TrialRecord trial_from_json(const json& j) {
  return guarded("trial", [&] {
    if (need(j, "schema").get<int>() != kSchemaVersion) bad("unsupported schema version");
    TrialRecord t;
    t.seed = need(j, "seed").get<std::uint64_t>();
    t.config = config_from_json(need(j, "config"));
    const Field& f = t.config.field;
    t.q = point_from_json(f, need(j, "q"));
    for (const auto& pr : need(j, "pairs")) {
      if (!pr.is_array() || pr.size() != 2) bad("a pair has two points");
      t.pairs.emplace_back(point_from_json(f, pr[0]), point_from_json(f, pr[1]));
    }
    t.h0_z5 = need(j, "h0_z5").get<std::size_t>();
    t.triple_kernel_dim = need(j, "triple_kernel_dim").get<std::size_t>();
    t.seconds = need(need(j, "timings"), "seconds").get<double>();
    if (j.contains("character")) t.character = j.at("character").get<NumericalCharacter>();
    if (j.contains("census")) t.census = census_from_json(j.at("census"));
    if (j.contains("quadric_dim")) t.quadric_dim = j.at("quadric_dim").get<std::size_t>();
    if (j.contains("segre_product")) t.segre_product = j.at("segre_product").get<bool>();
    return t;
  });
}

json scorecard_to_json(const AcceptanceOutcome& o, const AcceptanceOptions& opt) {
  json crit = json::array();
  for (const auto& r : o.results)
    crit.push_back(json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
  return json{{"schema", kSchemaVersion},
              {"seed", opt.seed},
              {"trials", opt.trials},
              {"criteria", crit},
              {"warnings", o.warnings},
              {"pass", o.all_pass()}};
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::generic, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad(std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::generic, "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace whitesurf::io
