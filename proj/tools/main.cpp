#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mcq/blockcore.hpp"
#include "mcq/modnet.hpp"

using json = nlohmann::ordered_json;
using namespace mcq;

namespace {

constexpr int kFormatVersion = 1;
constexpr int kMaxBlockK = 12;

// Exit-code contract: 0 pass, 1 verification failure, 2 input error,
// 3 non-convergence.
enum ExitCode { kPass = 0, kFail = 1, kBadInput = 2, kNoConverge = 3 };

std::string fl(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

Pattern load_pattern(const std::string& path) {
  json j = read_json_file(path);
  if (!j.is_object() || !j.contains("seeds") || !j["seeds"].is_array())
    throw std::invalid_argument(path + ": expected {\"seeds\": [...]}");
  std::vector<std::string> words;
  for (const auto& w : j["seeds"]) {
    if (!w.is_string())
      throw std::invalid_argument(path + ": seed words must be strings");
    words.push_back(w.get<std::string>());
  }
  return pattern_from_words(words);
}

// Weights arrive as exact strings.  An empty object means the all-ones
// weighting.  "explicit" entries address axes directly by their key.
Weighting load_weighting(const std::string& path) {
  Weighting f = uniform_weighting(Rational(1));
  if (path.empty()) return f;
  json j = read_json_file(path);
  if (!j.is_object())
    throw std::invalid_argument(path + ": expected a weighting object");
  if (j.contains("fallback"))
    f.fallback = rat_parse(j["fallback"].get<std::string>());
  if (j.contains("orbit_weights"))
    for (const auto& [word, val] : j["orbit_weights"].items())
      f.orbit_weights[word] = rat_parse(val.get<std::string>());
  if (j.contains("axis_weights"))
    for (const auto& [key, val] : j["axis_weights"].items())
      f.axis_weights[key] = rat_parse(val.get<std::string>());
  if (j.contains("explicit"))
    for (const auto& row : j["explicit"]) {
      if (!row.is_object() || !row.contains("axis") || !row.contains("weight"))
        throw std::invalid_argument(
            path + ": explicit entries need {\"axis\", \"weight\"}");
      f.axis_weights[row["axis"].get<std::string>()] =
          rat_parse(row["weight"].get<std::string>());
    }
  validate_weighting(f);
  return f;
}

std::vector<std::string> rat_strings(const Vec& v) {
  std::vector<std::string> out;
  for (const auto& c : v) out.push_back(rat_str(c));
  return out;
}

std::vector<double> rat_floats(const Vec& v) {
  std::vector<double> out;
  for (const auto& c : v) out.push_back(c.get_d());
  return out;
}

// Named linear maps for renderings.  "paper" is the three sign vectors that
// send the six k=2 block vertices to the unit-cube coordinates of the
// original picture; "first3" truncates; "none" keeps everything.
std::vector<Vec> projection_rows(const std::string& name, int dim) {
  if (name == "none") return {};
  if (name == "paper") {
    if (dim != 4)
      throw std::invalid_argument("projection 'paper' needs 4 coordinates");
    auto r = [](int a, int b, int c, int d) {
      return Vec{Rational(a), Rational(b), Rational(c), Rational(d)};
    };
    return {r(1, 1, -1, -1), r(1, -1, 1, -1), r(1, -1, -1, 1)};
  }
  if (name == "first3") {
    if (dim < 3)
      throw std::invalid_argument("projection 'first3' needs 3 coordinates");
    std::vector<Vec> rows(3, Vec(dim, Rational(0)));
    for (int i = 0; i < 3; ++i) rows[i][i] = Rational(1);
    return rows;
  }
  throw std::invalid_argument("unknown projection: " + name);
}

Vec project(const std::vector<Vec>& rows, const Vec& x) {
  Vec y;
  for (const Vec& r : rows) {
    Rational acc(0);
    for (size_t i = 0; i < r.size(); ++i) acc = acc + r[i] * x[i];
    y.push_back(acc);
  }
  return y;
}

int cmd_verify_block(int k, const std::string& level_name,
                     const std::string& output) {
  if (k < 2 || k > kMaxBlockK)
    throw std::invalid_argument("k must lie in 2.." + std::to_string(kMaxBlockK));
  VerifyLevel level;
  if (level_name == "structural")
    level = VerifyLevel::Structural;
  else if (level_name == "full")
    level = VerifyLevel::Full;
  else
    throw std::invalid_argument("level must be structural or full");

  ModularBlock blk = build_block(k);
  BlockReport rep = verify_block(blk, level);

  json out;
  out["format_version"] = kFormatVersion;
  out["command"] = "verify-block";
  out["k"] = k;
  out["n"] = blk.n();
  out["level"] = level_name;
  out["pass"] = rep.pass;
  out["checks"] = json::array();
  for (const auto& c : rep.checks)
    out["checks"].push_back(
        {{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  // Face-sharing graph of the core pieces; for k=2 this is the 6-cycle.
  json adj = json::array();
  auto graph = core_adjacency(blk);
  for (size_t i = 0; i < graph.size(); ++i)
    adj.push_back({{"piece", selector_key(blk.core[i])}, {"shares_face_with",
                    [&] {
                      json row = json::array();
                      for (int t : graph[i]) row.push_back(selector_key(blk.core[t]));
                      return row;
                    }()}});
  out["core_adjacency"] = adj;

  write_text(output, out.dump(2) + "\n");
  return rep.pass ? kPass : kFail;
}

int cmd_build_export(const std::string& pattern_path,
                     const std::string& weighting_path, int depth,
                     const std::string& format, std::string projection,
                     const std::string& output) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  Pattern P = load_pattern(pattern_path);
  Weighting f = load_weighting(weighting_path);
  ModifiedNetwork M = build_modified_network(P, f, depth);
  LimitSetF L = limit_set_f(M);

  if (projection.empty())
    projection = format == "ply" ? (M.k == 2 ? "paper" : "first3") : "none";
  auto rows = projection_rows(projection, 2 * M.k);

  if (format == "json") {
    json out;
    out["format_version"] = kFormatVersion;
    out["command"] = "build-export";
    out["pattern"] = json::array();
    for (const auto& s : P.seeds) out["pattern"].push_back(s.word);
    out["k"] = M.k;
    out["depth"] = depth;
    out["projection"] = projection;
    out["counts"] = {{"blocks", M.blocks.size()},
                     {"entries", M.entries.size()},
                     {"frontier", M.frontier.size()},
                     {"points", L.points.size()},
                     {"merged", L.merged.size()}};
    out["points"] = json::array();
    for (const auto& [pk, pt] : L.points) {
      std::string label = pk.substr(0, pk.rfind('|'));
      json row;
      row["pair"] = pk;
      row["label"] = label;
      row["edge"] = pk.substr(pk.rfind('|') + 1);
      row["chart"] = pt.chart;
      row["weight"] = rat_str(M.weight_of.at(label));
      row["coords"] = rat_strings(pt.x);
      if (!rows.empty()) row["projected_float"] = rat_floats(project(rows, pt.x));
      out["points"].push_back(row);
    }
    out["merged"] = json::array();
    for (const auto& [label, pt] : L.merged)
      out["merged"].push_back({{"label", label},
                               {"chart", pt.chart},
                               {"coords", rat_strings(pt.x)}});
    write_text(output, out.dump(2) + "\n");
    return kPass;
  }

  if (format == "csv") {
    std::ostringstream os;
    os << "# format_version " << kFormatVersion << "\n";
    os << "# coordinates are exact rationals";
    if (!rows.empty()) os << "; p* columns are float renderings";
    os << "\n";
    os << "pair,label,edge,chart,weight";
    for (int i = 0; i < 2 * M.k; ++i) os << ",x" << i;
    for (size_t i = 0; i < rows.size(); ++i) os << ",p" << i;
    os << "\n";
    for (const auto& [pk, pt] : L.points) {
      std::string label = pk.substr(0, pk.rfind('|'));
      os << pk << "," << label << "," << pk.substr(pk.rfind('|') + 1) << ","
         << pt.chart << "," << rat_str(M.weight_of.at(label));
      for (const auto& c : pt.x) os << "," << rat_str(c);
      if (!rows.empty())
        for (const auto& c : project(rows, pt.x)) os << "," << fl(c.get_d());
      os << "\n";
    }
    write_text(output, os.str());
    return kPass;
  }

  if (format == "ply") {
    if (rows.size() != 3)
      throw std::invalid_argument("ply export needs a 3-row projection");
    std::ostringstream os;
    os << "ply\nformat ascii 1.0\n";
    os << "comment format_version " << kFormatVersion << "\n";
    os << "comment projection " << projection << "\n";
    os << "comment coordinates are float renderings of exact rationals\n";
    os << "element vertex " << L.points.size() << "\n";
    os << "property double x\nproperty double y\nproperty double z\n";
    os << "property uchar chart\n";
    os << "end_header\n";
    for (const auto& [pk, pt] : L.points) {
      Vec p = project(rows, pt.x);
      os << fl(p[0].get_d()) << " " << fl(p[1].get_d()) << " "
         << fl(p[2].get_d()) << " " << pt.chart << "\n";
    }
    write_text(output, os.str());
    return kPass;
  }

  throw std::invalid_argument("format must be csv, ply, or json");
}

int cmd_degenerate(const std::string& pattern_path,
                   const std::string& sub_path, int steps, int depth,
                   const std::string& weighting_path,
                   const std::string& output) {
  Pattern big = load_pattern(pattern_path);
  Pattern sub = load_pattern(sub_path);
  Weighting target = load_weighting(weighting_path);
  DegenerationReport R = degenerate(big, sub, target, steps, depth);

  json out;
  out["format_version"] = kFormatVersion;
  out["command"] = "degenerate";
  out["k1"] = R.k1;
  out["k2"] = R.k2;
  out["steps"] = R.steps;
  out["depth"] = R.depth;
  out["monotone"] = R.monotone;
  out["eps"] = json::array();
  for (const auto& e : R.eps) out["eps"].push_back(rat_str(e));
  out["max_dist_sq"] = json::array();
  out["max_dist_sq_float"] = json::array();
  for (const auto& d : R.max_dist_sq) {
    out["max_dist_sq"].push_back(rat_str(d));
    out["max_dist_sq_float"].push_back(d.get_d());
  }
  out["terminals"] = json::array();
  for (size_t e = 0; e < R.edge_keys.size(); ++e) {
    json row;
    row["edge"] = R.edge_keys[e];
    row["chart"] = R.charts[e];
    row["labels"] = R.labels[e];
    row["surviving"] = json::array();
    for (bool s : R.surviving[e]) row["surviving"].push_back(s);
    row["targets"] = json::array();
    for (const auto& t : R.targets[e]) row["targets"].push_back(rat_strings(t));
    row["dist_sq"] = json::array();
    row["dist_sq_float"] = json::array();
    for (const auto& per_step : R.dist_sq[e]) {
      json ex = json::array(), rn = json::array();
      for (const auto& d : per_step) {
        ex.push_back(rat_str(d));
        rn.push_back(d.get_d());
      }
      row["dist_sq"].push_back(ex);
      row["dist_sq_float"].push_back(rn);
    }
    out["terminals"].push_back(row);
  }

  write_text(output, out.dump(2) + "\n");
  return R.monotone ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact modular block networks: verification, export, sweeps"};
  app.require_subcommand(1);

  int k = 2;
  std::string level = "full", output;
  auto* vb = app.add_subcommand("verify-block", "Run block certificates");
  vb->add_option("--k", k, "Block size (n = 2k-1)")->required();
  vb->add_option("--level", level, "structural or full");
  vb->add_option("--output", output, "Report path (default stdout)");

  std::string pattern_path, weighting_path, format = "json", projection;
  int depth = 1;
  auto* be = app.add_subcommand("build-export", "Build a network and export its vertex cloud");
  be->add_option("--pattern", pattern_path, "Pattern JSON")->required();
  be->add_option("--weighting", weighting_path, "Weighting JSON (default all ones)");
  be->add_option("--depth", depth, "Build depth")->required();
  be->add_option("--format", format, "csv, ply, or json");
  be->add_option("--projection", projection, "none, paper, or first3");
  be->add_option("--output", output, "Output path (default stdout)");

  std::string sub_path;
  int steps = 6;
  auto* dg = app.add_subcommand("degenerate", "Weight sweep onto a sub-pattern");
  dg->add_option("--pattern", pattern_path, "Pattern JSON")->required();
  dg->add_option("--sub-pattern", sub_path, "Sub-pattern JSON")->required();
  dg->add_option("--steps", steps, "Sweep length")->required();
  dg->add_option("--depth", depth, "Build depth")->required();
  dg->add_option("--weighting", weighting_path, "Target weighting on the sub-pattern");
  dg->add_option("--output", output, "Report path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (vb->parsed()) return cmd_verify_block(k, level, output);
    if (be->parsed())
      return cmd_build_export(pattern_path, weighting_path, depth, format,
                              projection, output);
    if (dg->parsed())
      return cmd_degenerate(pattern_path, sub_path, steps, depth,
                            weighting_path, output);
  } catch (const IncompleteEnumeration& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return kNoConverge;
  } catch (const DepthError& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return kNoConverge;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
