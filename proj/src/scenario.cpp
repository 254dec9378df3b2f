#include "gecert/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gecert {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (key == a) known = true;
    if (!known)
      fail(Errc::validation_error, "unknown key '" + key + "' in " + where);
  }
}

double require_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key))
    fail(Errc::validation_error, "missing '" + std::string(key) + "' in " + where);
  if (!obj[key].is_number())
    fail(Errc::validation_error, "'" + std::string(key) + "' in " + where + " must be a number");
  return obj[key].get<double>();
}

Interval parse_domain(const json& obj, const std::string& where) {
  reject_unknown(obj, {"lo", "hi", "lo_closed", "hi_closed"}, where);
  Interval iv;
  if (obj.contains("lo")) iv.lo = require_number(obj, "lo", where);
  if (obj.contains("hi")) iv.hi = require_number(obj, "hi", where);
  if (obj.contains("lo_closed")) iv.lo_closed = obj["lo_closed"].get<bool>();
  if (obj.contains("hi_closed")) iv.hi_closed = obj["hi_closed"].get<bool>();
  if (iv.lo >= iv.hi) fail(Errc::validation_error, "empty domain in " + where);
  if (!std::isfinite(iv.lo)) iv.lo_closed = false;
  if (!std::isfinite(iv.hi)) iv.hi_closed = false;
  return iv;
}

PiecewiseGraph parse_graph(const json& obj, const Tolerances& tol, const std::string& where) {
  reject_unknown(obj, {"pieces", "segments"}, where);
  std::vector<Piece> pieces;
  for (const auto& pj : obj.value("pieces", json::array())) {
    const std::string type = pj.value("type", "");
    const std::string pw = where + ".pieces";
    if (!pj.contains("domain")) fail(Errc::validation_error, "piece without domain in " + pw);
    const Interval dom = parse_domain(pj["domain"], pw + ".domain");
    if (type == "constant") {
      reject_unknown(pj, {"type", "domain", "value"}, pw);
      pieces.push_back(Piece::constant(dom, require_number(pj, "value", pw)));
    } else if (type == "affine") {
      reject_unknown(pj, {"type", "domain", "slope", "intercept"}, pw);
      pieces.push_back(
          Piece::affine(dom, require_number(pj, "slope", pw), require_number(pj, "intercept", pw)));
    } else if (type == "rational") {
      reject_unknown(pj, {"type", "domain", "num_slope", "num_offset", "den_slope", "den_offset",
                          "shift"}, pw);
      pieces.push_back(Piece::shifted_rational(
          dom, require_number(pj, "num_slope", pw), require_number(pj, "num_offset", pw),
          require_number(pj, "den_slope", pw), require_number(pj, "den_offset", pw),
          require_number(pj, "shift", pw)));
    } else {
      fail(Errc::validation_error, "unknown piece type '" + type + "' in " + pw);
    }
  }
  std::vector<VerticalSegment> segments;
  for (const auto& sj : obj.value("segments", json::array())) {
    const std::string sw = where + ".segments";
    reject_unknown(sj, {"z0", "lo", "hi"}, sw);
    segments.push_back({require_number(sj, "z0", sw), require_number(sj, "lo", sw),
                        require_number(sj, "hi", sw)});
  }
  return PiecewiseGraph::make(std::move(pieces), std::move(segments), tol);
}

Signal parse_signal(const json& obj, const std::string& where) {
  reject_unknown(obj, {"dc", "sinusoids", "table"}, where);
  Signal s;
  if (obj.contains("table")) {
    if (obj.contains("dc") || obj.contains("sinusoids"))
      fail(Errc::validation_error, where + ": table excludes dc/sinusoids");
    for (const auto& row : obj["table"]) {
      if (!row.is_array() || row.size() != 2)
        fail(Errc::validation_error, where + ".table rows must be [t, v] pairs");
      s.table.push_back({row[0].get<double>(), row[1].get<double>()});
    }
    if (s.table.size() < 2) fail(Errc::validation_error, where + ".table needs >= 2 rows");
    for (size_t i = 0; i + 1 < s.table.size(); ++i)
      if (s.table[i].first >= s.table[i + 1].first)
        fail(Errc::validation_error, where + ".table times must be strictly increasing");
    if (s.table.front().first != 0.0 || s.table.back().first != 1.0)
      fail(Errc::validation_error, where + ".table must cover [0, 1]");
    return s;
  }
  s.dc = obj.contains("dc") ? require_number(obj, "dc", where) : 0.0;
  for (const auto& sj : obj.value("sinusoids", json::array())) {
    const std::string sw = where + ".sinusoids";
    reject_unknown(sj, {"amplitude", "angular_frequency", "angular_frequency_over_pi", "phase",
                        "phase_over_pi"}, sw);
    Signal::Sinusoid sin_term;
    sin_term.amplitude = require_number(sj, "amplitude", sw);
    const bool omega_raw = sj.contains("angular_frequency");
    const bool omega_pi = sj.contains("angular_frequency_over_pi");
    if (omega_raw == omega_pi)
      fail(Errc::validation_error,
           sw + " needs exactly one of angular_frequency / angular_frequency_over_pi");
    sin_term.omega = omega_raw ? require_number(sj, "angular_frequency", sw)
                               : require_number(sj, "angular_frequency_over_pi", sw) * M_PI;
    if (sj.contains("phase") && sj.contains("phase_over_pi"))
      fail(Errc::validation_error, sw + " allows at most one of phase / phase_over_pi");
    if (sj.contains("phase")) sin_term.phase = require_number(sj, "phase", sw);
    if (sj.contains("phase_over_pi"))
      sin_term.phase = require_number(sj, "phase_over_pi", sw) * M_PI;
    s.sinusoids.push_back(sin_term);
  }
  return s;
}

Component parse_component(const json& obj, const Tolerances& tol) {
  const std::string type = obj.value("type", "");
  if (type == "resistor") {
    reject_unknown(obj, {"type", "resistance"}, "resistor");
    return Component::resistor_of(require_number(obj, "resistance", "resistor"));
  }
  if (type == "diac") {
    reject_unknown(obj, {"type", "d"}, "diac");
    return Component::diac(require_number(obj, "d", "diac"));
  }
  if (type == "practical_diode") {
    reject_unknown(obj, {"type", "forward_voltage", "breakdown_voltage"}, "practical_diode");
    return Component::practical_diode(require_number(obj, "forward_voltage", "practical_diode"),
                                      require_number(obj, "breakdown_voltage", "practical_diode"));
  }
  if (type == "zener") {
    reject_unknown(obj, {"type", "graph"}, "zener");
    if (!obj.contains("graph")) fail(Errc::validation_error, "zener without graph");
    return Component::zener_of(parse_graph(obj["graph"], tol, "zener.graph"));
  }
  fail(Errc::validation_error, "unknown component type '" + type + "'");
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::parse_error, e.what());
  }
  if (!root.is_object()) fail(Errc::validation_error, "scenario must be a JSON object");
  reject_unknown(root, {"name", "components", "source", "perturbed_source", "grid", "delta_link",
                        "tolerances"}, "scenario");
  Scenario sc;
  sc.name = root.value("name", "");
  if (root.contains("tolerances")) {
    const json& tj = root["tolerances"];
    reject_unknown(tj, {"tol_z", "tol_eval", "tol_res"}, "tolerances");
    if (tj.contains("tol_z")) sc.tol.tol_z = require_number(tj, "tol_z", "tolerances");
    if (tj.contains("tol_eval")) sc.tol.tol_eval = require_number(tj, "tol_eval", "tolerances");
    if (tj.contains("tol_res")) sc.tol.tol_res = require_number(tj, "tol_res", "tolerances");
  }
  if (!root.contains("components") || !root["components"].is_array() ||
      root["components"].empty())
    fail(Errc::validation_error, "scenario needs a nonempty 'components' array");
  for (const auto& cj : root["components"]) sc.components.push_back(parse_component(cj, sc.tol));
  if (!root.contains("source")) fail(Errc::validation_error, "scenario needs a 'source'");
  sc.source = parse_signal(root["source"], "source");
  if (root.contains("perturbed_source"))
    sc.perturbed_source = parse_signal(root["perturbed_source"], "perturbed_source");
  if (root.contains("grid")) {
    if (!root["grid"].is_number_integer() || root["grid"].get<int>() < 2)
      fail(Errc::validation_error, "'grid' must be an integer >= 2");
    sc.grid_n = root["grid"].get<int>();
  }
  if (root.contains("delta_link")) {
    sc.delta_link = require_number(root, "delta_link", "scenario");
    if (*sc.delta_link <= 0.0) fail(Errc::validation_error, "'delta_link' must be positive");
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::parse_error, "cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace gecert
