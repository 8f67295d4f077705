// whitesurf: generate White configurations, run trisecant censuses, compute
// numerical characters and drive the acceptance suite.

#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "whitesurf/acceptance.hpp"
#include "whitesurf/charnum.hpp"
#include "whitesurf/error.hpp"
#include "whitesurf/io.hpp"
#include "whitesurf/linsys.hpp"
#include "whitesurf/surface.hpp"
#include "whitesurf/trisec.hpp"

namespace ws = whitesurf;
namespace io = whitesurf::io;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

ws::Field make_field(std::uint64_t prime, int ext) {
  if (prime == 0) {
    if (ext != 1) throw UsageError("--ext needs a finite field");
    return ws::Field::rationals();
  }
  try {
    return ws::extension_field(prime, ext);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

ws::Scalar parse_scalar(const ws::Field& f, const std::string& s) {
  try {
    mpq_class q(s);
    q.canonicalize();
    return f.is_finite() ? f.from_rational(q) : ws::Scalar(q);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
}

std::string show(const ws::Field& f, const ws::ProjPoint& p) {
  return "(" + f.to_string(p[0]) + ":" + f.to_string(p[1]) + ":" + f.to_string(p[2]) + ")";
}

void emit_json(const std::string& sink, const io::json& j) {
  if (sink == "-")
    std::cout << j.dump(2) << '\n';
  else
    io::write_file(sink, j);
}

// ---- gen ---------------------------------------------------------------

struct GenArgs {
  std::string kind;
  std::uint64_t seed = 0;
  std::uint64_t prime = 1009;
  int ext = 1;
  std::string out;
  std::string params;
};

int cmd_gen(const GenArgs& a) {
  const ws::Field f = make_field(a.prime, a.ext);
  ws::WhiteConfig cfg;
  if (a.kind == "random") {
    cfg = ws::gen_random_config(a.seed, f);
  } else if (a.kind == "polygonal") {
    cfg = ws::gen_polygonal(a.seed, f);
  } else {
    if (a.params.empty()) {
      cfg = ws::gen_segre_random(a.seed, f);
    } else {
      ws::Vector t;
      for (const auto& s : split(a.params, ',')) t.push_back(parse_scalar(f, s));
      std::set<ws::Scalar> uniq(t.begin(), t.end());
      if (t.size() != 6 || uniq.size() != 6)
        throw UsageError("a Segre configuration takes exactly 6 distinct parameters, got " + std::to_string(t.size()));
      cfg = ws::gen_segre(f, t);
      cfg.seed = a.seed;
    }
  }
  const std::string text = io::config_to_json(cfg).dump(2) + "\n";
  if (a.out.empty() || a.out == "-")
    std::cout << text;
  else {
    std::ofstream o(a.out, std::ios::binary);
    if (!o) throw ws::Error(ws::ErrorKind::generic, "cannot write " + a.out);
    o << text;
  }

  std::ostream& log = (a.out.empty() || a.out == "-") ? std::cerr : std::cout;
  const auto pts = cfg.scheme();
  log << ws::to_string(cfg.provenance) << " configuration over " << f.name() << ", seed " << cfg.seed << "\n";
  log << "no quartic through the 15 points: " << (ws::h0(f, pts, 4) == 0 ? "yes" : "no")
      << ", h0(I_P(5)) = " << ws::h0(f, pts, 5) << "\n";
  const auto emb = ws::embedding(cfg);
  const auto lines = ws::contracted_lines(emb);
  log << "contracted lines: " << lines.size() << "\n";
  for (const auto& cl : lines) {
    log << "  points";
    for (auto i : cl.point_indices) log << " " << i;
    log << "\n";
  }
  return 0;
}

// ---- census ------------------------------------------------------------

struct CensusArgs {
  std::string config;
  std::string q = "auto";
  std::uint64_t prime = 0;
  int maxext = 1;
  std::uint64_t seed = 0;
  std::string json;
};

int cmd_census(const CensusArgs& a) {
  ws::WhiteConfig cfg = io::config_from_json(io::read_file(a.config));
  std::uint64_t p = a.prime;
  if (cfg.field.kind() == ws::FieldKind::rational) {
    if (p == 0) throw UsageError("--prime is required for a configuration over Q");
    cfg = ws::reduce_mod(cfg, p);
  } else if (cfg.field.kind() == ws::FieldKind::prime) {
    if (p != 0 && p != cfg.field.characteristic())
      throw UsageError("--prime does not match the configuration field " + cfg.field.name());
    p = cfg.field.characteristic();
  } else {
    throw UsageError("census needs a configuration over Q or a prime field");
  }
  const ws::Field& f = cfg.field;
  const ws::SurfaceEmbedding emb = ws::embedding(cfg);
  ws::ProjPoint q;
  if (a.q == "auto") {
    q = ws::choose_q(emb, a.seed);
  } else {
    const auto c = split(a.q, ',');
    if (c.size() != 3) throw UsageError("--q takes 'auto' or three comma-separated coordinates");
    q = ws::ProjPoint::make(f, parse_scalar(f, c[0]), parse_scalar(f, c[1]), parse_scalar(f, c[2]));
  }
  const ws::CensusReport r = ws::census(emb, q, p, a.maxext);
  if (!a.json.empty()) emit_json(a.json, io::census_to_json(r));
  if (a.json == "-") return 0;

  std::cout << "census " << r.config_id << ", q = " << show(f, r.q) << ", maxext " << r.maxext << "\n";
  std::cout << std::left << std::setw(7) << "level" << std::setw(14) << "kind" << std::setw(9) << "members"
            << "points\n";
  for (const auto& c : r.classes) {
    const ws::Field fk = ws::Field::extension(p, c.level);
    std::cout << std::setw(7) << c.level << std::setw(14) << ws::to_string(c.kind) << std::setw(9) << c.member_count;
    for (std::size_t i = 0; i < c.members.size() && i < 3; ++i) std::cout << show(fk, c.members[i]) << " ";
    if (c.member_count > 3) std::cout << "...";
    std::cout << "\n";
  }
  std::cout << "proper: " << r.proper << ", improper: " << r.improper << "\n";
  std::cout << "quadrisecant alerts: " << r.quadrisecant << ", other: " << r.other
            << ", contracted-line hits: " << r.contracted_line_hits << "\n";
  if (r.lower_bound)
    std::cout << "(lower bound: lines defined only over F_" << p << "^k with k > " << r.maxext << " are not seen)\n";
  return 0;
}

// ---- character ---------------------------------------------------------

struct CharArgs {
  std::string points;
  int degree = -1;
  std::uint64_t seed = 0;
};

int cmd_character(const CharArgs& a) {
  const io::json j = io::read_file(a.points);
  ws::Field f = ws::Field::rationals();
  ws::PointScheme z;
  if (j.is_object() && j.contains("config") && j.contains("pairs")) {
    const ws::TrialRecord t = io::trial_from_json(j);
    if (t.pairs.empty()) throw ws::Error(ws::ErrorKind::generic, "the trial record has no associated pair");
    f = t.config.field;
    z = t.config.scheme().with(t.q).with(t.pairs.front().first).with(t.pairs.front().second);
  } else {
    std::tie(f, z) = io::scheme_from_json(j);
  }
  if (!z.reduced()) throw UsageError("the point scheme is not reduced");
  if (z.empty()) throw UsageError("the point scheme is empty");
  const ws::NumericalCharacter chi = ws::character_of(f, z, a.seed);
  std::cout << ws::to_string(chi) << ", deg " << ws::degree_of_character(chi);
  if (a.degree >= 0) std::cout << ", h1@" << a.degree << " = " << ws::superabundance(chi, a.degree);
  std::cout << ", " << (ws::is_uniform(chi) ? "uniform" : "not uniform") << "\n";
  return 0;
}

// ---- trial -------------------------------------------------------------

struct TrialArgs {
  std::uint64_t seed = 0;
  std::uint64_t prime = 1009;
  std::string out;
};

int cmd_trial(const TrialArgs& a) {
  const ws::TrialRecord t = ws::white_trial(a.seed, a.prime);
  const ws::Field& f = t.config.field;
  if (!a.out.empty()) emit_json(a.out, io::trial_to_json(t));
  std::ostream& log = a.out == "-" ? std::cerr : std::cout;
  log << "trial seed " << t.seed << " over " << f.name() << ", q = " << show(f, t.q) << "\n";
  log << "proper pairs over " << f.name() << ": " << t.pairs.size() << "\n";
  if (t.pairs.empty()) return 0;
  log << "first pair " << show(f, t.pairs.front().first) << " " << show(f, t.pairs.front().second)
      << ", h0(I_Z(5)) = " << t.h0_z5 << "\n";
  if (t.character) log << "character " << ws::to_string(*t.character) << "\n";
  log << "triple curve kernel dimension " << t.triple_kernel_dim;
  if (t.quadric_dim) log << ", quadrics through the image " << *t.quadric_dim;
  log << "\n";
  return 0;
}

// ---- verify-all --------------------------------------------------------

struct VerifyArgs {
  std::uint64_t seed = ws::AcceptanceOptions{}.seed;
  int trials = ws::AcceptanceOptions{}.trials;
  std::string primes = "31,61";
  std::string out = "scorecard.json";
  std::string records;
};

int cmd_verify_all(const VerifyArgs& a) {
  ws::AcceptanceOptions opt;
  opt.seed = a.seed;
  if (a.trials < 1) throw UsageError("--trials must be positive");
  opt.trials = a.trials;
  opt.census_primes.clear();
  for (const auto& s : split(a.primes, ',')) {
    std::uint64_t p = 0;
    try {
      p = std::stoull(s);
    } catch (const std::exception&) {
      throw UsageError("not a prime: '" + s + "'");
    }
    if (p < 3 || !ws::is_prime(p)) throw UsageError("not an odd prime: '" + s + "'");
    opt.census_primes.push_back(p);
  }
  if (opt.census_primes.empty()) throw UsageError("--primes is empty");
  opt.on_result = [](const ws::CriterionResult& r) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << ": " << r.detail << " ("
              << std::fixed << std::setprecision(1) << r.seconds << " s)" << std::endl;
  };
  opt.on_warning = [](const std::string& w) { std::cerr << "warning: " << w << std::endl; };
  const ws::AcceptanceOutcome out = ws::run_acceptance(opt);
  io::json card = io::scorecard_to_json(out, opt);
  card["primes"] = opt.census_primes;
  card["timestamp"] = static_cast<long long>(std::time(nullptr));
  emit_json(a.out, card);
  if (!a.records.empty()) {
    io::json recs = io::json::array();
    for (const auto& r : out.records) recs.push_back(io::trial_to_json(r));
    emit_json(a.records, recs);
  }
  std::size_t passed = 0;
  for (const auto& r : out.results) passed += r.pass;
  std::cout << passed << "/" << out.results.size() << " criteria pass" << std::endl;
  return out.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"White surfaces in P^5: configurations, trisecant census and numerical characters"};
  app.require_subcommand(1);

  GenArgs g;
  auto* gen = app.add_subcommand("gen", "generate a White configuration");
  gen->add_option("kind", g.kind, "random, polygonal or segre")
      ->required()
      ->check(CLI::IsMember({"random", "polygonal", "segre"}));
  gen->add_option("--seed", g.seed, "random seed");
  gen->add_option("--prime", g.prime, "field characteristic, 0 for Q")->capture_default_str();
  gen->add_option("--ext", g.ext, "extension degree k of F_{p^k}")->capture_default_str();
  gen->add_option("--out", g.out, "output file (default standard output)");
  gen->add_option("--params", g.params, "segre: 6 comma-separated tangency parameters");

  CensusArgs c;
  auto* cen = app.add_subcommand("census", "trisecant lines through a surface point");
  cen->add_option("--config", c.config, "configuration JSON")->required();
  cen->add_option("--q", c.q, "'auto' or x,y,z")->capture_default_str();
  cen->add_option("--prime", c.prime, "prime for a configuration over Q");
  cen->add_option("--maxext", c.maxext, "largest extension degree")->capture_default_str()->check(CLI::Range(1, 3));
  cen->add_option("--seed", c.seed, "seed for --q auto");
  cen->add_option("--json", c.json, "write the report as JSON ('-' for standard output)");

  CharArgs ch;
  auto* chr = app.add_subcommand("character", "numerical character of a reduced point scheme");
  chr->add_option("--points", ch.points, "point-scheme or trial-record JSON")->required();
  chr->add_option("--degree", ch.degree, "report superabundance h1 in this degree");
  chr->add_option("--seed", ch.seed, "seed for the coordinate change");

  TrialArgs t;
  auto* tri = app.add_subcommand("trial", "run one seeded White trial");
  tri->add_option("--seed", t.seed, "random seed");
  tri->add_option("--prime", t.prime, "field characteristic")->capture_default_str();
  tri->add_option("--out", t.out, "write the trial record JSON ('-' for standard output)");

  VerifyArgs v;
  auto* ver = app.add_subcommand("verify-all", "run the acceptance suite");
  ver->add_option("--seed", v.seed, "master seed")->capture_default_str();
  ver->add_option("--trials", v.trials, "trials per criterion")->capture_default_str();
  ver->add_option("--primes", v.primes, "census primes, comma-separated")->capture_default_str();
  ver->add_option("--out", v.out, "scorecard JSON ('-' for standard output)")->capture_default_str();
  ver->add_option("--records", v.records, "write the White trial records as a JSON array");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gen) return cmd_gen(g);
    if (*cen) return cmd_census(c);
    if (*chr) return cmd_character(ch);
    if (*tri) return cmd_trial(t);
    if (*ver) return cmd_verify_all(v);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const ws::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
