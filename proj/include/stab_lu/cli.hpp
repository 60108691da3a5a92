#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stab_lu/census.hpp"
#include "stab_lu/graph.hpp"
#include "stab_lu/mls.hpp"
#include "stab_lu/oracle.hpp"
#include "stab_lu/pipeline.hpp"

namespace stab_lu {

// ---------------------------------------------------------------------------
// Command-line surface. Exit codes for `check` / `verify`: 0 = equivalent /
// verified, 1 = not equivalent / rejected, 2 = undecided because the level
// search was capped, 3 = input error, 4 = internal error; other commands use
// 0 / 3 / 4. All machine output is JSON on stdout; `--format text` switches
// to a one-line human summary.

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;   // graph files (graph6 or JSON edge list)
  std::string builtin;               // named constructor instead of files
  std::string mode = "lu";           // lu | lc | lcr
  std::optional<int> r_max;
  std::size_t dense_guard = 12;      // max n for statevector verification
  std::size_t census_max_n = 8;
  std::string db_dir;
  std::string format = "json";       // json | text
  std::uint64_t seed = 0;            // reserved for randomized harnesses
  std::string sets;                  // cutrank: explicit vertex sets
};

// ---------------------------------------------------------------------------
// Graph input: a graph6 line, or a JSON object {"n": N, "edges": [[u,v],...]}
// with 0-based vertices.

inline Graph parse_graph_text(const std::string& raw) {
  std::string s = raw;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw std::invalid_argument("empty graph input");
  if (s.front() == '{') {
    nlohmann::json j = nlohmann::json::parse(s);
    const std::size_t n = j.at("n").get<std::size_t>();
    Graph g(n);
    for (const auto& e : j.at("edges")) {
      const std::size_t u = e.at(0).get<std::size_t>();
      const std::size_t v = e.at(1).get<std::size_t>();
      if (u >= n || v >= n || u == v)
        throw std::invalid_argument("edge list entry out of range");
      g.set_edge(u, v, true);
    }
    return g;
  }
  // graph6 may span only the first line of the file
  const std::size_t nl = s.find('\n');
  if (nl != std::string::npos) s = s.substr(0, nl);
  return from_graph6(s);
}

inline Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph_text(buf.str());
}

// ---------------------------------------------------------------------------
// Builtin constructors: "star:n", "complete:n", "kneser:k:t1,t2[,hat]".
// Pair-producing names for `check`: "kneser:k:t1,t2" (plain vs hat) and
// "ghz-pair" (star vs triangle on 3 vertices).

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::size_t parse_nat(const std::string& s) {
  std::size_t pos = 0;
  const unsigned long long v = std::stoull(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("not a number: " + s);
  return static_cast<std::size_t>(v);
}

}  // namespace detail

inline Graph builtin_graph(const std::string& spec) {
  const auto parts = detail::split(spec, ':');
  if (parts[0] == "star" && parts.size() == 2)
    return star(detail::parse_nat(parts[1]));
  if (parts[0] == "complete" && parts.size() == 2)
    return complete_graph(detail::parse_nat(parts[1]));
  if (parts[0] == "kneser" && parts.size() == 3) {
    auto szparts = detail::split(parts[2], ',');
    bool hat = false;
    if (!szparts.empty() && szparts.back() == "hat") {
      hat = true;
      szparts.pop_back();
    }
    std::vector<std::size_t> sizes;
    for (const auto& t : szparts) sizes.push_back(detail::parse_nat(t));
    if (sizes.empty()) throw std::invalid_argument("kneser: no subset sizes");
    return kneser(detail::parse_nat(parts[1]), sizes, hat);
  }
  throw std::invalid_argument("unknown builtin graph: " + spec);
}

inline std::pair<Graph, Graph> builtin_pair(const std::string& spec) {
  if (spec == "ghz-pair") return {star(3), complete_graph(3)};
  const auto parts = detail::split(spec, ':');
  if (parts[0] == "kneser" && parts.size() == 3)
    return {builtin_graph(spec), builtin_graph(spec + ",hat")};
  throw std::invalid_argument("builtin is not a graph pair: " + spec);
}

// ---------------------------------------------------------------------------
// Certificate parsing (inverse of certificate_json).

inline LocalFactor parse_factor(const std::string& s) {
  if (s.size() < 4 || s[0] != 'q')
    throw std::invalid_argument("malformed factor: " + s);
  const std::size_t colon = s.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("malformed factor: " + s);
  const int qubit = static_cast<int>(detail::parse_nat(s.substr(1, colon - 1))) - 1;
  if (qubit < 0) throw std::invalid_argument("factor qubit must be positive: " + s);
  std::string rest = s.substr(colon + 1);
  auto axis_of = [&s](char c) -> Axis {
    switch (c) {
      case 'X': return Axis::X;
      case 'Y': return Axis::Y;
      case 'Z': return Axis::Z;
    }
    throw std::invalid_argument("malformed factor axis: " + s);
  };
  if (rest.rfind("C(", 0) == 0) {
    bool dagger = false;
    if (!rest.empty() && rest.back() == '\'') {
      dagger = true;
      rest.pop_back();
    }
    if (rest.size() != 6 || rest[3] != ',' || rest[5] != ')')
      throw std::invalid_argument("malformed transition factor: " + s);
    return LocalFactor::transition(qubit, axis_of(rest[2]), axis_of(rest[4]), dagger);
  }
  if (rest.rfind("Z^", 0) == 0)
    return LocalFactor::pow_z(qubit, Dyadic::parse(rest.substr(2)));
  if (rest.rfind("X^", 0) == 0)
    return LocalFactor::pow_x(qubit, Dyadic::parse(rest.substr(2)));
  throw std::invalid_argument("malformed factor: " + s);
}

inline LocalOpChain parse_chain(const nlohmann::json& arr) {
  LocalOpChain out;
  for (const auto& f : arr) out.push_back(parse_factor(f.get<std::string>()));
  return out;
}

inline Certificate certificate_from_json(const nlohmann::json& in) {
  const nlohmann::json& j = in.contains("certificate") ? in.at("certificate") : in;
  Certificate cert;
  cert.reduced.k = j.at("k").get<std::size_t>();
  cert.r = j.at("r").get<int>();
  cert.reduced.g_hat = from_graph6(j.at("g_hat").get<std::string>());
  cert.reduced.gp_hat = from_graph6(j.at("gp_hat").get<std::string>());
  for (const auto& p : j.at("qubit_perm")) {
    const std::size_t v = p.get<std::size_t>();
    if (v == 0) throw std::invalid_argument("qubit_perm entries are 1-based");
    cert.reduced.qubit_perm.push_back(v - 1);
  }
  for (const auto& a : j.at("alpha"))
    cert.alpha.push_back(Dyadic::parse(a.get<std::string>()));
  cert.reduced.chain_g = parse_chain(j.at("chain_g"));
  cert.reduced.chain_gp = parse_chain(j.at("chain_gp"));
  cert.composed = parse_chain(j.at("composed"));
  return cert;
}

// ---------------------------------------------------------------------------
// Commands.

namespace detail {

inline void emit(std::ostream& out, const RunConfig& cfg, const nlohmann::json& j,
                 const std::string& text) {
  if (cfg.format == "text")
    out << text << "\n";
  else
    out << j.dump(2) << "\n";
}

inline std::vector<std::size_t> parse_vertex_set(const std::string& s, std::size_t n) {
  std::vector<std::size_t> vs;
  for (const auto& tok : split(s, ',')) {
    const std::size_t v = parse_nat(tok);
    if (v < 1 || v > n) throw std::invalid_argument("vertex out of range: " + tok);
    vs.push_back(v - 1);
  }
  return vs;
}

inline std::pair<Graph, Graph> check_inputs(const RunConfig& cfg) {
  if (!cfg.builtin.empty()) {
    if (!cfg.inputs.empty())
      throw std::invalid_argument("give either two files or --builtin, not both");
    return builtin_pair(cfg.builtin);
  }
  if (cfg.inputs.size() != 2)
    throw std::invalid_argument("check needs two graph files or --builtin");
  return {read_graph_file(cfg.inputs[0]), read_graph_file(cfg.inputs[1])};
}

inline Graph single_input(const RunConfig& cfg) {
  if (!cfg.builtin.empty()) {
    if (!cfg.inputs.empty())
      throw std::invalid_argument("give either a file or --builtin, not both");
    return builtin_graph(cfg.builtin);
  }
  if (cfg.inputs.size() != 1)
    throw std::invalid_argument("this command needs one graph file or --builtin");
  return read_graph_file(cfg.inputs[0]);
}

}  // namespace detail

inline int cmd_check(const RunConfig& cfg, std::ostream& out) {
  auto [g, gp] = detail::check_inputs(cfg);
  std::optional<int> r_max = cfg.r_max;
  if (cfg.mode == "lc")
    r_max = 1;
  else if (cfg.mode == "lcr" && !r_max)
    throw std::invalid_argument("--mode lcr requires --r-max");
  else if (cfg.mode != "lu" && cfg.mode != "lcr")
    throw std::invalid_argument("unknown mode: " + cfg.mode);

  const Verdict v = check_lu(g, gp, r_max);
  std::string text;
  switch (v.kind) {
    case VerdictKind::Equivalent:
      text = "equivalent r=" + std::to_string(v.certificate->r);
      break;
    case VerdictKind::NotEquivalent:
      text = "not_equivalent stage=" + reject_stage_name(*v.stage) +
             (v.detail.empty() ? "" : " (" + v.detail + ")");
      break;
    case VerdictKind::NotEquivalentUpTo:
      text = "not_equivalent_up_to r=" + std::to_string(v.r_cap);
      break;
  }
  detail::emit(out, cfg, verdict_json(v), text);
  switch (v.kind) {
    case VerdictKind::Equivalent: return 0;
    case VerdictKind::NotEquivalent: return 1;
    case VerdictKind::NotEquivalentUpTo: return 2;
  }
  return 4;
}

inline int cmd_mls(const RunConfig& cfg, std::ostream& out) {
  const Graph g = detail::single_input(cfg);
  const MlsCover cover = mls_cover(g);
  const std::string text = "cover with " + std::to_string(cover.sets.size()) + " sets";
  const nlohmann::json j = {{"graph", to_graph6(g)}, {"sets", cover_json(cover)}};
  detail::emit(out, cfg, j, text);
  return 0;
}

inline int cmd_cutrank(const RunConfig& cfg, std::ostream& out) {
  const Graph g = detail::single_input(cfg);
  std::vector<std::vector<std::size_t>> sets;
  if (!cfg.sets.empty()) {
    for (const auto& part : detail::split(cfg.sets, ';'))
      sets.push_back(detail::parse_vertex_set(part, g.n));
  } else {
    for (std::size_t i = 0; i < g.n; ++i) sets.push_back({i});
    for (std::size_t i = 0; i < g.n; ++i)
      for (std::size_t j = i + 1; j < g.n; ++j) sets.push_back({i, j});
  }
  nlohmann::json rows = nlohmann::json::array();
  std::string text;
  for (const auto& vs : sets) {
    VertexSet m = 0;
    for (std::size_t v : vs) m |= VertexSet{1} << v;
    const std::size_t r = cut_rank(g, m);
    nlohmann::json verts = nlohmann::json::array();
    for (std::size_t v : vs) verts.push_back(v + 1);
    rows.push_back({{"vertices", verts}, {"cut_rank", r}});
    if (!text.empty()) text += " ";
    text += "{";
    for (std::size_t i = 0; i < vs.size(); ++i)
      text += (i ? "," : "") + std::to_string(vs[i] + 1);
    text += "}=" + std::to_string(r);
  }
  detail::emit(out, cfg, {{"graph", to_graph6(g)}, {"sets", rows}}, text);
  return 0;
}

namespace detail {

// Unordered pairs of representatives whose cut-rank functions agree under
// some relabeling; candidates for a genuine LU check.
inline std::vector<std::pair<std::size_t, std::size_t>> cutrank_matching_pairs(
    const std::vector<Graph>& reps) {
  std::map<std::vector<std::uint8_t>, std::vector<std::size_t>> by_profile;
  for (std::size_t i = 0; i < reps.size(); ++i)
    by_profile[cutrank_profile(reps[i])].push_back(i);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& [prof, members] : by_profile)
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b)
        if (cutrank_function_match_exists(reps[members[a]], reps[members[b]]))
          out.emplace_back(members[a], members[b]);
  return out;
}

inline nlohmann::json census_for_reps(const std::vector<Graph>& reps) {
  nlohmann::json j;
  j["orbits"] = reps.size();
  const auto pairs = cutrank_matching_pairs(reps);
  j["cutrank_matching_pairs"] = pairs.size();
  nlohmann::json lu_pairs = nlohmann::json::array();
  for (const auto& [a, b] : pairs) {
    const Verdict v = check_lu(reps[a], reps[b]);
    if (v.kind == VerdictKind::Equivalent)
      lu_pairs.push_back({{"a", to_graph6(reps[a])},
                          {"b", to_graph6(reps[b])},
                          {"r", v.certificate->r}});
  }
  j["lu_equivalent_cross_orbit_pairs"] = lu_pairs;
  return j;
}

}  // namespace detail

inline int cmd_census(const RunConfig& cfg, std::ostream& out) {
  nlohmann::json j;
  std::string text;
  if (!cfg.db_dir.empty()) {
    // Ingest representative files: every *.g6 line is one orbit representative.
    if (!std::filesystem::is_directory(cfg.db_dir))
      throw std::invalid_argument("not a directory: " + cfg.db_dir);
    std::map<std::size_t, std::vector<Graph>> by_n;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(cfg.db_dir))
      if (entry.path().extension() == ".g6") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty())
      throw std::invalid_argument("no .g6 files in " + cfg.db_dir);
    for (const auto& path : files) {
      std::ifstream in(path);
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        Graph g = parse_graph_text(line);
        by_n[g.n].push_back(std::move(g));
      }
    }
    j["db"] = cfg.db_dir;
    for (const auto& [n, reps] : by_n) {
      j["by_n"][std::to_string(n)] = detail::census_for_reps(reps);
      text += "n=" + std::to_string(n) + ": " + std::to_string(reps.size()) +
              " representatives ";
    }
  } else {
    if (cfg.census_max_n < 2 || cfg.census_max_n > 8)
      throw std::invalid_argument(
          "native census supports --max-n 2..8; use --db for larger tables");
    for (std::size_t n = 2; n <= cfg.census_max_n; ++n) {
      const CensusResult res = census_orbits(n);
      nlohmann::json jn = detail::census_for_reps(res.reps);
      j["by_n"][std::to_string(n)] = jn;
      text += "n=" + std::to_string(n) + ": " + std::to_string(res.orbit_count) +
              " orbits, " + std::to_string(jn["cutrank_matching_pairs"].get<std::size_t>()) +
              " matching pairs; ";
    }
  }
  detail::emit(out, cfg, j, text);
  return 0;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.inputs.size() != 3)
    throw std::invalid_argument("verify needs: certificate.json graph1 graph2");
  std::ifstream in(cfg.inputs[0]);
  if (!in) throw std::invalid_argument("cannot open " + cfg.inputs[0]);
  nlohmann::json jcert = nlohmann::json::parse(in);
  const Certificate cert = certificate_from_json(jcert);
  const Graph g = read_graph_file(cfg.inputs[1]);
  const Graph gp = read_graph_file(cfg.inputs[2]);

  bool ok = true;
  std::string reason;
  if (g.n != gp.n || g.n != cert.reduced.g_hat.n) {
    ok = false;
    reason = "vertex counts disagree";
  } else if (!verify_certificate_hyper(cert.reduced.g_hat, cert.reduced.gp_hat,
                                       cert.reduced.k, cert.alpha)) {
    ok = false;
    reason = "hypergraph check failed";
  } else if (g.n <= cfg.dense_guard &&
             !verify_chain_dense(g, gp, cert.composed, 1e-9)) {
    ok = false;
    reason = "statevector check failed";
  }
  nlohmann::json j = {{"verified", ok}};
  if (!ok) j["reason"] = reason;
  j["dense_checked"] = g.n <= cfg.dense_guard;
  detail::emit(out, cfg, j, ok ? "verified" : ("failed: " + reason));
  return ok ? 0 : 1;
}

inline int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  if (cfg.builtin.empty()) throw std::invalid_argument("gen needs --builtin");
  std::vector<Graph> gs;
  if (cfg.builtin == "ghz-pair" ||
      (cfg.builtin.rfind("kneser:", 0) == 0 &&
       cfg.builtin.find(",hat") == std::string::npos)) {
    // pair-producing names emit both members, plain then hat
    auto [a, b] = builtin_pair(cfg.builtin);
    gs.push_back(a);
    gs.push_back(b);
  } else {
    gs.push_back(builtin_graph(cfg.builtin));
  }
  nlohmann::json arr = nlohmann::json::array();
  std::string text;
  for (const Graph& g : gs) {
    arr.push_back(to_graph6(g));
    text += to_graph6(g) + "\n";
  }
  if (!text.empty()) text.pop_back();
  detail::emit(out, cfg, {{"graphs", arr}}, text);
  return 0;
}

// ---------------------------------------------------------------------------
// Argument parsing and dispatch.

inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"graph-state local-unitary equivalence toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed", cfg.seed, "seed for randomized harnesses");
  };

  CLI::App* check = app.add_subcommand("check", "decide equivalence of two graph states");
  check->add_option("inputs", cfg.inputs, "two graph files (graph6 or JSON)");
  check->add_option("--builtin", cfg.builtin, "builtin pair, e.g. kneser:7:5 or ghz-pair");
  check->add_option("--mode", cfg.mode, "lu (full), lc (level 1), lcr (capped)")
      ->check(CLI::IsMember({"lu", "lc", "lcr"}));
  int r_max_val = 0;
  CLI::Option* r_max_opt =
      check->add_option("--r-max", r_max_val, "cap the level search")->check(CLI::PositiveNumber);
  add_common(check);

  CLI::App* mls = app.add_subcommand("mls", "minimal-local-set cover of a graph");
  mls->add_option("inputs", cfg.inputs, "one graph file");
  mls->add_option("--builtin", cfg.builtin, "builtin graph, e.g. star:4");
  add_common(mls);

  CLI::App* cutrank = app.add_subcommand("cutrank", "cut ranks of vertex sets");
  cutrank->add_option("inputs", cfg.inputs, "one graph file");
  cutrank->add_option("--builtin", cfg.builtin, "builtin graph");
  cutrank->add_option("--sets", cfg.sets,
                      "semicolon-separated 1-based vertex sets, e.g. 2,3;1,4");
  add_common(cutrank);

  CLI::App* census = app.add_subcommand("census", "orbit census with LU cross-checks");
  census->add_option("--max-n", cfg.census_max_n, "native enumeration bound (2..8)");
  census->add_option("--db", cfg.db_dir, "directory of .g6 orbit representatives");
  add_common(census);

  CLI::App* verify = app.add_subcommand("verify", "re-verify an emitted certificate");
  verify->add_option("inputs", cfg.inputs, "certificate.json graph1 graph2");
  verify->add_option("--max-n", cfg.dense_guard, "statevector verification bound");
  add_common(verify);

  CLI::App* gen = app.add_subcommand("gen", "print builtin graphs as graph6");
  gen->add_option("--builtin", cfg.builtin, "e.g. star:5, kneser:6:5,4, ghz-pair")
      ->required();
  add_common(gen);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (check->parsed()) {
      if (r_max_opt->count()) cfg.r_max = r_max_val;
      return cmd_check(cfg, out);
    }
    if (mls->parsed()) return cmd_mls(cfg, out);
    if (cutrank->parsed()) return cmd_cutrank(cfg, out);
    if (census->parsed()) return cmd_census(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (gen->parsed()) return cmd_gen(cfg, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 3;
}

}  // namespace stab_lu
