// Python extension: every structured value crosses the boundary as JSON text
// in the same schema the command-line tool reads and writes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "whitesurf/acceptance.hpp"
#include "whitesurf/charnum.hpp"
#include "whitesurf/error.hpp"
#include "whitesurf/io.hpp"
#include "whitesurf/linsys.hpp"
#include "whitesurf/surface.hpp"
#include "whitesurf/trisec.hpp"

namespace py = pybind11;
namespace ws = whitesurf;
namespace io = whitesurf::io;

namespace {

ws::Field field_of(std::uint64_t prime, int ext) {
  return prime == 0 ? ws::Field::rationals() : ws::extension_field(prime, ext);
}

std::string gen(const std::string& kind, std::uint64_t seed, std::uint64_t prime, int ext) {
  const ws::Field f = field_of(prime, ext);
  if (kind == "random") return io::config_to_json(ws::gen_random_config(seed, f)).dump();
  if (kind == "polygonal") return io::config_to_json(ws::gen_polygonal(seed, f)).dump();
  if (kind == "segre") return io::config_to_json(ws::gen_segre_random(seed, f)).dump();
  throw std::invalid_argument("unknown configuration kind '" + kind + "'");
}

ws::WhiteConfig finite_config(const std::string& config, std::uint64_t prime) {
  ws::WhiteConfig cfg = io::config_from_json(io::json::parse(config));
  if (cfg.field.kind() == ws::FieldKind::rational) {
    if (prime == 0) throw std::invalid_argument("a prime is required for a configuration over Q");
    cfg = ws::reduce_mod(cfg, prime);
  }
  return cfg;
}

std::string census(const std::string& config, std::uint64_t prime, int maxext, std::uint64_t seed) {
  const ws::WhiteConfig cfg = finite_config(config, prime);
  const ws::SurfaceEmbedding emb = ws::embedding(cfg);
  const ws::ProjPoint q = ws::choose_q(emb, seed);
  return io::census_to_json(ws::census(emb, q, cfg.field.characteristic(), maxext)).dump();
}

std::size_t contracted_line_count(const std::string& config) {
  return ws::contracted_lines(ws::embedding(io::config_from_json(io::json::parse(config)))).size();
}

ws::NumericalCharacter character(const std::string& scheme, std::uint64_t seed) {
  const auto [f, z] = io::scheme_from_json(io::json::parse(scheme));
  return ws::character_of(f, z, seed);
}

std::size_t h0_of(const std::string& scheme, int d) {
  const auto [f, z] = io::scheme_from_json(io::json::parse(scheme));
  return ws::h0(f, z, d);
}

std::string trial(std::uint64_t seed, std::uint64_t prime) {
  return io::trial_to_json(ws::white_trial(seed, prime)).dump();
}

}  // namespace

PYBIND11_MODULE(_whitesurf, m) {
  m.doc() = "White surfaces in P^5: configurations, trisecant census and numerical characters";

  static py::handle error = py::exception<ws::Error>(m, "WhitesurfError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ws::Error& e) {
      py::object exc = error(e.what());
      exc.attr("exit_code") = e.exit_code();
      py::set_error(error, exc);
    }
  });

  m.def("gen", &gen, py::arg("kind"), py::arg("seed"), py::arg("prime") = 1009, py::arg("ext") = 1);
  m.def("census", &census, py::arg("config"), py::arg("prime") = 0, py::arg("maxext") = 1, py::arg("seed") = 0);
  m.def("contracted_line_count", &contracted_line_count, py::arg("config"));
  m.def("character", &character, py::arg("scheme"), py::arg("seed") = 0);
  m.def("h0", &h0_of, py::arg("scheme"), py::arg("degree"));
  m.def("trial", &trial, py::arg("seed"), py::arg("prime") = 1009);
  m.def("hilbert_from_character", &ws::hilbert_from_character, py::arg("chi"));
  m.def("degree_of_character", &ws::degree_of_character, py::arg("chi"));
  m.def("superabundance", &ws::superabundance, py::arg("chi"), py::arg("degree"));
  m.def("is_uniform", &ws::is_uniform, py::arg("chi"));
  m.def("is_valid_character", &ws::is_valid_character, py::arg("chi"));
}
