// Command-line driver: load a frame + map from a JSON config and run
// classification, line integrals, Taylor tables, or frame diagnostics.
//
// Exit codes: 0 success, 2 config/parse problem, 3 evaluation failure,
// 4 operation unsupported for the configured map kind.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "biquat/integration.hpp"
#include "biquat/monogenic.hpp"
#include "biquat/sampling.hpp"
#include "biquat/serialize.hpp"

using nlohmann::json;
using namespace biquat;

namespace {

struct ConfigError : Error {
  using Error::Error;
};

struct UnsupportedMapKind : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Deterministic JSON emission: floats at 17 significant digits, keys sorted
// (nlohmann::json object order), no timing or other run-dependent fields.
// ---------------------------------------------------------------------------

void dump17(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump17(it.value(), out);
      }
      out += '}';
      return;
    }
    case json::value_t::array: {
      out += '[';
      for (size_t k = 0; k < j.size(); ++k) {
        if (k > 0) out += ',';
        dump17(j[k], out);
      }
      out += ']';
      return;
    }
    case json::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
      out += buf;
      return;
    }
    default: out += j.dump(); return;
  }
}

std::string dump17(const json& j) {
  std::string out;
  dump17(j, out);
  return out;
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }
json quat_json(const Quat& q) {
  return json::array(
      {complex_json(q.q1), complex_json(q.q2), complex_json(q.q3), complex_json(q.q4)});
}
json point_json(Point3 p) { return json::array({p.x, p.y, p.z}); }

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

enum class MapKind { RightG, LeftG, Components };

struct JobConfig {
  Frame frame;
  MapKind kind = MapKind::Components;
  std::array<std::string, 4> exprs;
  DomainBox box{{-1, -1, -1}, {1, 1, 1}};
  double tol = 1e-9;
  std::uint64_t seed = 1;
  int samples = 100;
  int nodes = 16;
  json echo;
};

Point3 point_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) {
    throw ConfigError(std::string(what) + " must be [x,y,z]");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();

  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  JobConfig cfg;
  cfg.echo = j;
  try {
    cfg.frame = frame_from_json(j.at("frame").dump());

    const json& map = j.at("map");
    if (map.contains("right_g")) {
      cfg.kind = MapKind::RightG;
      const json& m = map.at("right_g");
      cfg.exprs = {m.at("F1").get<std::string>(), m.at("F2").get<std::string>(),
                   m.at("F3").get<std::string>(), m.at("F4").get<std::string>()};
    } else if (map.contains("left_g")) {
      cfg.kind = MapKind::LeftG;
      const json& m = map.at("left_g");
      cfg.exprs = {m.at("F1").get<std::string>(), m.at("F2").get<std::string>(),
                   m.at("F3").get<std::string>(), m.at("F4").get<std::string>()};
    } else if (map.contains("components")) {
      cfg.kind = MapKind::Components;
      const json& m = map.at("components");
      cfg.exprs = {m.at("U1").get<std::string>(), m.at("U2").get<std::string>(),
                   m.at("U3").get<std::string>(), m.at("U4").get<std::string>()};
    } else {
      throw ConfigError("map must contain one of right_g, left_g, components");
    }

    if (j.contains("domain")) {
      cfg.box.min = point_from(j["domain"].at("min"), "domain.min");
      cfg.box.max = point_from(j["domain"].at("max"), "domain.max");
    }
    cfg.tol = j.value("tol", cfg.tol);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.samples = j.value("samples", cfg.samples);
    cfg.nodes = j.value("nodes", cfg.nodes);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config schema: ") + e.what());
  }
  return cfg;
}

RightGMap right_map(const JobConfig& cfg) {
  return {cfg.frame, AnalyticFn::parse(cfg.exprs[0]), AnalyticFn::parse(cfg.exprs[1]),
          AnalyticFn::parse(cfg.exprs[2]), AnalyticFn::parse(cfg.exprs[3])};
}

LeftGMap left_map(const JobConfig& cfg) {
  return {cfg.frame, AnalyticFn::parse(cfg.exprs[0]), AnalyticFn::parse(cfg.exprs[1]),
          AnalyticFn::parse(cfg.exprs[2]), AnalyticFn::parse(cfg.exprs[3])};
}

ComponentMap component_map(const JobConfig& cfg) {
  switch (cfg.kind) {
    case MapKind::RightG: return to_components(right_map(cfg));
    case MapKind::LeftG: return to_components(left_map(cfg));
    case MapKind::Components:
      return {cfg.frame,
              {Component(BivarFn::parse(cfg.exprs[0])),
               Component(BivarFn::parse(cfg.exprs[1])),
               Component(BivarFn::parse(cfg.exprs[2])),
               Component(BivarFn::parse(cfg.exprs[3]))}};
  }
  throw ConfigError("unreachable map kind");
}

void write_json_report(const std::string& path, const json& report) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open JSON output file: " + path);
  out << dump17(report) << "\n";
}

// ---------------------------------------------------------------------------
// Morera battery
// ---------------------------------------------------------------------------

struct MoreraStats {
  int triangles = 0, zero_count = 0;
  double max_scaled = 0.0;
};

MoreraStats morera_battery(const ComponentMap& cm, const DomainBox& box, Side side,
                           int triangles, int nodes, std::uint64_t seed) {
  std::mt19937_64 gen(seed * 2 + (side == Side::Right ? 0 : 1));
  auto coord = [&gen](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  };
  auto pick = [&] {
    return Point3{coord(box.min.x, box.max.x), coord(box.min.y, box.max.y),
                  coord(box.min.z, box.max.z)};
  };
  MoreraStats stats;
  stats.triangles = triangles;
  const auto f = [&cm](Point3 p) { return cm.value(p); };
  for (int k = 0; k < triangles; ++k) {
    Triangle t{pick(), pick(), pick()};
    while (t.area() <= 0.05) t = Triangle{pick(), pick(), pick()};
    double max_val = 0.0;
    for (const auto& v : {t.v0, t.v1, t.v2, 0.5 * (t.v0 + t.v1), 0.5 * (t.v1 + t.v2),
                          0.5 * (t.v2 + t.v0)}) {
      max_val = std::max(max_val, norm(cm.value(v)));
    }
    const double scale = (1.0 + max_val) * t.perimeter();
    const double scaled = morera_residual(f, t, cm.frame(), side, nodes) / scale;
    stats.max_scaled = std::max(stats.max_scaled, scaled);
    if (scaled <= 1e-8) ++stats.zero_count;
  }
  return stats;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_classify(const std::string& config_path, const std::string& json_path,
                 std::optional<std::uint64_t> seed, std::optional<double> tol,
                 std::optional<int> samples, std::optional<int> nodes) {
  JobConfig cfg = load_config(config_path);
  if (seed) cfg.seed = *seed;
  if (tol) cfg.tol = *tol;
  if (samples) cfg.samples = *samples;
  if (nodes) cfg.nodes = *nodes;

  const auto t0 = std::chrono::steady_clock::now();
  const ComponentMap cm = component_map(cfg);
  const auto rep = classify(cm, cfg.box, cfg.samples, cfg.tol, cfg.seed);
  const auto right = morera_battery(cm, cfg.box, Side::Right, 20, cfg.nodes, cfg.seed);
  const auto left = morera_battery(cm, cfg.box, Side::Left, 20, cfg.nodes, cfg.seed);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();

  std::printf("classification over %d points (tol %.6g, seed %llu):\n",
              rep.points_tested, cfg.tol, static_cast<unsigned long long>(cfg.seed));
  auto line = [](const char* name, bool verdict, double residual) {
    std::printf("  %-8s %-5s (max residual %.6g)\n", name, verdict ? "true" : "false",
                residual);
  };
  line("right-G:", rep.right_g, rep.right_cr_residual);
  line("left-G:", rep.left_g, rep.left_cr_residual);
  line("H:", rep.h, rep.h_residual);
  line("right-H:", rep.right_h, rep.right_h_residual);
  line("left-H:", rep.left_h, rep.left_h_residual);
  std::printf("morera battery (20 triangles, %d nodes/edge):\n", cfg.nodes);
  std::printf("  right: max scaled residual %.6g, zero on %d/%d\n", right.max_scaled,
              right.zero_count, right.triangles);
  std::printf("  left:  max scaled residual %.6g, zero on %d/%d\n", left.max_scaled,
              left.zero_count, left.triangles);
  std::printf("elapsed: %.1f ms\n", ms);

  if (!json_path.empty()) {
    json out;
    out["command"] = "classify";
    out["config"] = cfg.echo;
    out["classification"] = {
        {"right_g", rep.right_g},
        {"left_g", rep.left_g},
        {"h", rep.h},
        {"right_h", rep.right_h},
        {"left_h", rep.left_h},
        {"points_tested", rep.points_tested},
        {"residuals",
         {{"right_cr", rep.right_cr_residual},
          {"left_cr", rep.left_cr_residual},
          {"h", rep.h_residual},
          {"right_h", rep.right_h_residual},
          {"left_h", rep.left_h_residual}}}};
    out["morera"] = {{"triangles", right.triangles},
                     {"nodes_per_edge", cfg.nodes},
                     {"right",
                      {{"max_scaled_residual", right.max_scaled},
                       {"zero_fraction", double(right.zero_count) / right.triangles}}},
                     {"left",
                      {{"max_scaled_residual", left.max_scaled},
                       {"zero_fraction", double(left.zero_count) / left.triangles}}}};
    write_json_report(json_path, out);
  }
  return 0;
}

int cmd_integrate(const std::string& config_path, const std::string& path_spec,
                  const std::string& order, bool closed, std::optional<int> nodes,
                  const std::string& json_path) {
  JobConfig cfg = load_config(config_path);
  if (nodes) cfg.nodes = *nodes;

  std::string path_text = path_spec;
  if (!path_spec.empty() && path_spec[0] != '[' && path_spec[0] != '{') {
    std::ifstream in(path_spec);
    if (!in) throw ConfigError("cannot open path file: " + path_spec);
    std::stringstream buf;
    buf << in.rdbuf();
    path_text = buf.str();
  }
  Polyline path;
  try {
    path = polyline_from_json(path_text);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (closed) path.closed = true;
  if (path.vertices.size() < 2) throw ConfigError("path needs at least two vertices");

  const ComponentMap cm = component_map(cfg);
  const auto f = [&cm](Point3 p) { return cm.value(p); };
  const Quat v = order == "left" ? integral_dzeta_left(path, f, cfg.frame, cfg.nodes)
                                 : integral_dzeta_right(path, f, cfg.frame, cfg.nodes);

  std::printf("integral (%s order, %d nodes/segment, %s path):\n", order.c_str(),
              cfg.nodes, path.closed ? "closed" : "open");
  std::printf("  e1: %.6g%+.6gi\n", v.q1.real(), v.q1.imag());
  std::printf("  e2: %.6g%+.6gi\n", v.q2.real(), v.q2.imag());
  std::printf("  e3: %.6g%+.6gi\n", v.q3.real(), v.q3.imag());
  std::printf("  e4: %.6g%+.6gi\n", v.q4.real(), v.q4.imag());

  if (!json_path.empty()) {
    json out;
    out["command"] = "integrate";
    out["config"] = cfg.echo;
    out["order"] = order;
    out["closed"] = path.closed;
    out["nodes_per_segment"] = cfg.nodes;
    out["value"] = quat_json(v);
    write_json_report(json_path, out);
  }
  return 0;
}

Point3 parse_triplet(const std::string& text, const char* what) {
  Point3 p;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &p.x, &p.y, &p.z, &extra) != 3) {
    throw ConfigError(std::string(what) + " must be x,y,z");
  }
  return p;
}

int cmd_taylor(const std::string& config_path, const std::string& center_s,
               const std::string& probe_s, int order, const std::string& json_path) {
  JobConfig cfg = load_config(config_path);
  if (cfg.kind == MapKind::Components) {
    throw UnsupportedMapKind("taylor requires a right_g or left_g map");
  }
  const Point3 center = parse_triplet(center_s, "--center");
  const Point3 probe = parse_triplet(probe_s, "--probe");
  const Side side = cfg.kind == MapKind::RightG ? Side::Right : Side::Left;

  std::vector<Quat> coeffs;
  Quat direct;
  if (side == Side::Right) {
    const RightGMap m = right_map(cfg);
    coeffs = taylor_expand(m, center, order);
    direct = value(m, probe);
  } else {
    const LeftGMap m = left_map(cfg);
    coeffs = taylor_expand(m, center, order);
    direct = value(m, probe);
  }

  std::vector<double> errors;
  for (int n = 0; n <= order; ++n) {
    const Quat sn = eval_taylor(std::span(coeffs.data(), static_cast<size_t>(n) + 1),
                                cfg.frame, center, probe, side);
    errors.push_back(norm(sn - direct));
  }

  std::printf("taylor coefficients about (%.6g, %.6g, %.6g), %s series:\n", center.x,
              center.y, center.z, side == Side::Right ? "right" : "left");
  for (int n = 0; n <= order; ++n) {
    const Quat& c = coeffs[static_cast<size_t>(n)];
    std::printf("  p_%-2d e1: %.6g%+.6gi  e2: %.6g%+.6gi  e3: %.6g%+.6gi  e4: %.6g%+.6gi\n",
                n, c.q1.real(), c.q1.imag(), c.q2.real(), c.q2.imag(), c.q3.real(),
                c.q3.imag(), c.q4.real(), c.q4.imag());
  }
  std::printf("truncation error at probe (%.6g, %.6g, %.6g):\n", probe.x, probe.y,
              probe.z);
  for (int n = 0; n <= order; ++n) {
    std::printf("  n=%-2d  |Phi - S_n| = %.6g\n", n, errors[static_cast<size_t>(n)]);
  }

  if (!json_path.empty()) {
    json out;
    out["command"] = "taylor";
    out["config"] = cfg.echo;
    out["center"] = point_json(center);
    out["probe"] = point_json(probe);
    out["order"] = order;
    json cj = json::array();
    for (const auto& c : coeffs) cj.push_back(quat_json(c));
    out["coefficients"] = cj;
    out["truncation_errors"] = errors;
    write_json_report(json_path, out);
  }
  return 0;
}

int cmd_verify_frame(const std::string& config_path, const std::string& json_path) {
  const JobConfig cfg = load_config(config_path);
  const auto rep = validate(cfg.frame);
  std::printf("frame: %s\n", frame_to_json(cfg.frame).c_str());
  std::printf("  independent: %s (rank %d)\n", rep.independent ? "true" : "false",
              rep.rank);
  std::printf("  surjective:  %s\n", rep.surjective ? "true" : "false");

  json lines = json::object();
  if (rep.surjective) {
    const auto [l1, l2] = degeneracy_lines(cfg.frame);
    for (const auto& l : {l1, l2}) {
      std::printf("  L%d: origin + t*(%.6g, %.6g, %.6g)\n", l.label, l.direction[0],
                  l.direction[1], l.direction[2]);
      lines["l" + std::to_string(l.label)] = {
          {"anchor", point_json(l.anchor)},
          {"direction", json::array({l.direction[0], l.direction[1], l.direction[2]})}};
    }
  } else {
    std::printf("  degeneracy locus is a plane on side %d\n",
                rep.pencil1_degenerate ? 1 : 2);
  }

  if (!json_path.empty()) {
    json out;
    out["command"] = "verify-frame";
    out["config"] = cfg.echo;
    out["independent"] = rep.independent;
    out["rank"] = rep.rank;
    out["surjective"] = rep.surjective;
    out["pencil1_degenerate"] = rep.pencil1_degenerate;
    out["pencil2_degenerate"] = rep.pencil2_degenerate;
    out["degeneracy_lines"] = lines;
    write_json_report(json_path, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monogenic-map toolkit for quaternions over the complex field"};
  app.require_subcommand(1);

  std::string config_path, json_path, path_spec, order = "left";
  std::string center_s = "0,0,0", probe_s = "0,0,0";
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> samples, nodes;
  int taylor_order = 8;
  bool closed = false;

  auto* classify_cmd = app.add_subcommand("classify", "run the monogenicity classifier");
  classify_cmd->add_option("config", config_path, "job config JSON")->required();
  classify_cmd->add_option("--json", json_path, "write a JSON report here");
  classify_cmd->add_option("--seed", seed, "sampling seed");
  classify_cmd->add_option("--tol", tol, "residual tolerance");
  classify_cmd->add_option("--samples", samples, "number of sample points");
  classify_cmd->add_option("--nodes", nodes, "quadrature nodes per edge");

  auto* integrate_cmd = app.add_subcommand("integrate", "line integral along a path");
  integrate_cmd->add_option("config", config_path, "job config JSON")->required();
  integrate_cmd->add_option("path", path_spec, "path JSON (file or inline)")->required();
  integrate_cmd->add_option("--order", order, "dzeta placement: left or right")
      ->check(CLI::IsMember({"left", "right"}));
  integrate_cmd->add_flag("--closed", closed, "close the path");
  integrate_cmd->add_option("--nodes", nodes, "quadrature nodes per segment");
  integrate_cmd->add_option("--json", json_path, "write a JSON report here");

  auto* taylor_cmd = app.add_subcommand("taylor", "series coefficients and truncation");
  taylor_cmd->add_option("config", config_path, "job config JSON")->required();
  taylor_cmd->add_option("--center", center_s, "expansion point x,y,z")->required();
  taylor_cmd->add_option("--order", taylor_order, "series order N");
  taylor_cmd->add_option("--probe", probe_s, "evaluation point x,y,z")->required();
  taylor_cmd->add_option("--json", json_path, "write a JSON report here");

  auto* verify_cmd = app.add_subcommand("verify-frame", "frame diagnostics");
  verify_cmd->add_option("config", config_path, "job config JSON")->required();
  verify_cmd->add_option("--json", json_path, "write a JSON report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify_cmd->parsed()) {
      return cmd_classify(config_path, json_path, seed, tol, samples, nodes);
    }
    if (integrate_cmd->parsed()) {
      return cmd_integrate(config_path, path_spec, order, closed, nodes, json_path);
    }
    if (taylor_cmd->parsed()) {
      return cmd_taylor(config_path, center_s, probe_s, taylor_order, json_path);
    }
    if (verify_cmd->parsed()) {
      return cmd_verify_frame(config_path, json_path);
    }
  } catch (const UnsupportedMapKind& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const SyntaxError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "evaluation error: %s\n", e.what());
    return 3;
  }
  return 0;
}
