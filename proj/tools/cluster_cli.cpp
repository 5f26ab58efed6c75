#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "cluster/affine.hpp"
#include "cluster/errors.hpp"
#include "cluster/gca.hpp"
#include "cluster/json_io.hpp"
#include "cluster/log.hpp"
#include "cluster/scatter2.hpp"
#include "cluster/seeds.hpp"
#include "cluster/theta.hpp"
#include "cluster/verify.hpp"

using namespace cluster;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;

struct RunConfig {
  std::string matrix_path;
  std::string coeff = "principal";
  std::string format = "text";
  VerifyOptions opt;
};

std::vector<long long> parse_list(const std::string& s) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      out.push_back(std::stoll(item, &pos));
      while (pos < item.size() && item[pos] == ' ') ++pos;
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "cannot parse integer list '" + s + "'");
    }
  }
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "empty integer list");
  return out;
}

std::vector<int> parse_word(const std::string& s, int n) {
  std::vector<int> w;
  if (s.empty()) return w;
  for (long long v : parse_list(s)) {
    if (v < 1 || v > n) throw Error(ErrorKind::InvalidArgument, "mutation index out of range: " + std::to_string(v));
    w.push_back(static_cast<int>(v - 1));
  }
  return w;
}

void emit(const RunConfig& cfg, const Json& j, const std::string& text) {
  if (cfg.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

// The extended matrix used for seeds and polynomial output under the chosen coefficient mode.
IntMatrix coefficient_matrix(const RunConfig& cfg, const MatrixSpec& ms) {
  if (cfg.coeff == "principal") return principal_extension(ms.B());
  if (cfg.coeff == "free") return ms.B();
  if (ms.m == 0) throw Error(ErrorKind::InvalidArgument, "--coeff rows needs coefficient rows in the matrix file");
  return ms.Btilde;
}

LaurentPoly present(const RunConfig& cfg, const MatrixSpec& ms, const LaurentPoly& p) {
  if (cfg.coeff == "principal") return p;
  IntMatrix Bt = coefficient_matrix(cfg, ms);
  return specialize_coefficients(p, Bt, make_context(ms.n, Bt.rows() - ms.n));
}

std::string vec_text(const std::vector<long long>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

int cmd_mutate(const RunConfig& cfg, const std::string& word_s, const std::string& out_path, bool gvec_only) {
  MatrixSpec ms = read_matrix_file(cfg.matrix_path);
  auto word = parse_word(word_s, ms.n);
  IntMatrix Bt = gvec_only ? principal_extension(ms.B()) : coefficient_matrix(cfg, ms);
  Seed s = mutate_seed_word(initial_seed(Bt), word);
  Json j;
  std::ostringstream os;
  j["word"] = word_s;
  if (gvec_only) {
    Json g = Json::array();
    for (int i = 0; i < ms.n; ++i) {
      auto v = g_vector_of(s, i).c;
      g.push_back(v);
      os << "g" << i + 1 << " = " << vec_text(v) << "\n";
    }
    j["gvectors"] = g;
    emit(cfg, j, os.str());
    return 0;
  }
  j["matrix"] = matrix_to_json(s.matrix, ms.n);
  Json cl = Json::array();
  os << "matrix " << s.matrix.to_string() << "\n";
  for (int i = 0; i < ms.n; ++i) {
    cl.push_back(poly_to_json(s.cluster[i]));
    os << "x" << i + 1 << "' = " << s.cluster[i].to_string() << "\n";
  }
  j["cluster"] = cl;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + out_path);
    out << matrix_to_json(s.matrix, ms.n).dump(2) << "\n";
  }
  emit(cfg, j, os.str());
  return 0;
}

int cmd_tube_info(const RunConfig& cfg) {
  MatrixSpec ms = read_matrix_file(cfg.matrix_path);
  ThetaEngine e(ms.B(), cfg.opt.bfs_depth, cfg.opt.height_bound);
  Json j = tube_info_json(e);
  j["name"] = ms.name;
  emit(cfg, j, report_text(j));
  return 0;
}

int cmd_expand(const RunConfig& cfg, const std::string& root_s) {
  MatrixSpec ms = read_matrix_file(cfg.matrix_path);
  ThetaEngine e(ms.B(), cfg.opt.bfs_depth, cfg.opt.height_bound);
  RootVec phi(parse_list(root_s));
  if (phi.size() != ms.n) throw Error(ErrorKind::InvalidArgument, "root has the wrong length");
  ClusterExpansion ex = cluster_expansion_imaginary(e.data(), e.tubes(), phi);
  Json j;
  std::ostringstream os;
  j["root"] = phi.c;
  j["m_delta"] = ex.m_delta;
  Json arcs = Json::array();
  os << phi.to_string() << " = " << ex.m_delta << "*delta";
  for (const auto& [r, mult] : ex.arcs) {
    Json a;
    a["tube"] = r.tube;
    a["start"] = r.start;
    a["length"] = r.length;
    a["multiplicity"] = mult;
    a["root"] = tube_root_vector(e.tubes()[r.tube], r).c;
    arcs.push_back(a);
    os << " + " << mult << "*" << tube_root_vector(e.tubes()[r.tube], r).to_string();
  }
  os << "\n";
  j["arcs"] = arcs;
  j["nu_c"] = nu_c(e.data(), phi).c;
  os << "nu_c = " << vec_text(nu_c(e.data(), phi).c) << "\n";
  emit(cfg, j, os.str());
  return reconstruct(e.tubes(), e.data(), ex) == phi ? 0 : kExitViolation;
}

ThetaFunction theta_for_target(ThetaEngine& e, const std::string& target) {
  std::string t;
  for (char c : target)
    if (c != ' ') t += c;
  if (t == "delta") return e.theta_delta();
  auto pos = t.find("delta");
  if (pos != std::string::npos && pos + 5 == t.size()) {
    std::string k = t.substr(0, pos);
    if (!k.empty() && k.back() == '*') k.pop_back();
    long long kk = parse_list(k).at(0);
    if (kk < 0) throw Error(ErrorKind::InvalidArgument, "negative multiple of delta");
    if (kk == 0) return {WeightVec::zero(e.n()), e.one()};
    return e.theta_k_delta(static_cast<int>(kk));
  }
  RootVec phi(parse_list(t));
  if (phi.size() != e.n()) throw Error(ErrorKind::InvalidArgument, "root has the wrong length");
  if (e.in_imaginary_wall(nu_c(e.data(), phi))) return e.theta_imaginary(phi);
  return e.theta_real(phi);
}

int cmd_theta(const RunConfig& cfg, const std::string& target, const std::string& lambda_s) {
  MatrixSpec ms = read_matrix_file(cfg.matrix_path);
  ThetaEngine e(ms.B(), cfg.opt.bfs_depth, cfg.opt.height_bound);
  if (target.empty() == lambda_s.empty()) throw Error(ErrorKind::InvalidArgument, "give exactly one of --target, --lambda");
  ThetaFunction t;
  if (!lambda_s.empty()) {
    WeightVec l(parse_list(lambda_s));
    if (l.size() != ms.n) throw Error(ErrorKind::InvalidArgument, "weight has the wrong length");
    t = e.theta_label(l);
  } else {
    t = theta_for_target(e, target);
  }
  LaurentPoly p = present(cfg, ms, t.poly);
  Json j;
  j["label"] = t.label.c;
  j["poly"] = poly_to_json(p);
  emit(cfg, j, "label " + t.label.to_string() + "\n" + p.to_string() + "\n");
  return 0;
}

int cmd_theta2(const RunConfig& cfg, const std::string& lambda_s) {
  MatrixSpec ms = read_matrix_file(cfg.matrix_path);
  if (ms.n != 2) throw Error(ErrorKind::InvalidArgument, "theta2 needs a rank-2 matrix");
  WeightVec l(parse_list(lambda_s));
  if (l.size() != 2) throw Error(ErrorKind::InvalidArgument, "weight has the wrong length");
  ScatteringDiagram2 d = complete_scattering_rank2(ms.B(), cfg.opt.order);
  auto lines = enumerate_broken_lines_rank2(d, l, default_endpoint(), cfg.opt.order);
  LaurentPoly p = theta_via_broken_lines(d, l, cfg.opt.order);
  Json j;
  j["lambda"] = l.c;
  j["order"] = cfg.opt.order;
  j["broken_lines"] = lines.size();
  j["poly"] = poly_to_json(p);
  emit(cfg, j, p.to_string() + "\n");
  return 0;
}

int cmd_scatter2(const RunConfig& cfg, const std::string& dump) {
  MatrixSpec ms = read_matrix_file(cfg.matrix_path);
  if (ms.n != 2) throw Error(ErrorKind::InvalidArgument, "scatter2 needs a rank-2 matrix");
  ScatteringDiagram2 d = complete_scattering_rank2(ms.B(), cfg.opt.order);
  Json j = walls_to_json(d);
  if (!dump.empty()) {
    std::ofstream out(dump);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + dump);
    out << j.dump(2) << "\n";
  }
  std::ostringstream os;
  os << d.walls.size() << " walls to order " << d.order << (d.consistent ? ", consistent" : ", NOT consistent")
     << "\n";
  for (const auto& w : d.walls) os << "  " << w.to_string() << "\n";
  emit(cfg, j, os.str());
  return d.consistent ? 0 : kExitViolation;
}

FramePtr frame_for(const ThetaEngine& e, const std::string& tube_s, std::vector<TubeRoot>& J) {
  const auto& tubes = e.tubes();
  if (tubes.empty()) throw Error(ErrorKind::InvalidArgument, "matrix has no tubes");
  std::vector<int> which;
  if (tube_s == "all") {
    which.resize(tubes.size());
    std::iota(which.begin(), which.end(), 0);
  } else {
    long long t = parse_list(tube_s).at(0);
    if (t < 0 || t >= static_cast<long long>(tubes.size()))
      throw Error(ErrorKind::InvalidArgument, "tube index out of range");
    which.push_back(static_cast<int>(t));
  }
  for (int t : which)
    for (const auto& g : standard_maximal_set(t, tubes[t].size())) J.push_back(g);
  return make_frame(tubes, which);
}

Json gca_seed_json(const GCASeed& s) {
  Json v;
  Json J = Json::array();
  for (const auto& r : s.J) J.push_back({r.tube, r.start, r.length});
  v["J"] = J;
  v["B"] = s.B.to_rows();
  v["d"] = s.d;
  Json p = Json::array();
  for (const auto& pg : s.p) {
    Json row = Json::array();
    for (const auto& t : pg) row.push_back(t.to_string(s.frame->trop_names));
    p.push_back(row);
  }
  v["p"] = p;
  Json x = Json::array();
  for (const auto& xi : s.x) x.push_back(poly_to_json(xi));
  v["x"] = x;
  return v;
}

int cmd_gca_graph(const RunConfig& cfg, const std::string& tube_s, const std::string& out_path) {
  MatrixSpec ms = read_matrix_file(cfg.matrix_path);
  ThetaEngine e(ms.B(), cfg.opt.bfs_depth, cfg.opt.height_bound);
  std::vector<TubeRoot> J;
  FramePtr f = frame_for(e, tube_s, J);
  ExchangeGraph g = enumerate_exchange_graph(build_tube_seed(f, J), cfg.opt.graph_budget);
  Json j;
  j["tubes"] = f->tube_ids;
  j["variables"] = f->ctx->names();
  Json verts = Json::array(), rels = Json::array();
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    verts.push_back(gca_seed_json(g.vertices[v]));
    for (int pos = 0; pos < g.vertices[v].size(); ++pos) {
      Json r;
      r["vertex"] = v;
      r["position"] = pos;
      r["rhs"] = poly_to_json(exchange_rhs(g.vertices[v], pos));
      rels.push_back(r);
    }
  }
  j["vertices"] = verts;
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({a, b});
  j["edges"] = edges;
  j["relations"] = rels;
  j["failures"] = g.failures;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + out_path);
    out << j.dump(2) << "\n";
  }
  std::ostringstream os;
  os << g.vertices.size() << " seeds, " << g.edges.size() << " edges, " << g.variables.size() << " variables\n";
  for (const auto& fl : g.failures) os << "FAIL " << fl << "\n";
  emit(cfg, j, os.str());
  return g.ok() ? 0 : kExitViolation;
}

int print_results(const RunConfig& cfg, const std::string& name, const std::vector<CheckResult>& results) {
  Json j;
  j["matrix"] = name;
  Json arr = Json::array();
  std::ostringstream os;
  bool ok = true;
  for (const auto& r : results) {
    Json x;
    x["identity"] = r.identity;
    x["ok"] = r.ok();
    x["checked"] = r.checked;
    x["failures"] = r.failures;
    x["notes"] = r.notes;
    arr.push_back(x);
    os << (r.ok() ? "PASS " : "FAIL ") << r.identity << " on " << name << " (" << r.checked << " checks)\n";
    for (const auto& n : r.notes) os << "  note: " << n << "\n";
    for (const auto& fl : r.failures) os << "  violation: " << fl << "\n";
    ok = ok && r.ok();
  }
  j["results"] = arr;
  j["ok"] = ok;
  emit(cfg, j, os.str());
  return ok ? 0 : kExitViolation;
}

int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& identities) {
  MatrixSpec ms = read_matrix_file(cfg.matrix_path);
  std::vector<std::string> ids = identities;
  if (ids.empty() || (ids.size() == 1 && ids[0] == "all")) ids = identity_names();
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (const auto& id : ids)
    if (std::find(identity_names().begin(), identity_names().end(), id) == identity_names().end())
      throw Error(ErrorKind::InvalidArgument, "unknown identity " + id);
  ThetaEngine e(ms.B(), cfg.opt.bfs_depth, cfg.opt.height_bound);
  std::vector<CheckResult> results;
  for (const auto& id : ids) results.push_back(run_identity(e, id, cfg.opt));
  return print_results(cfg, ms.name, results);
}

int cmd_gca_verify(const RunConfig& cfg) {
  MatrixSpec ms = read_matrix_file(cfg.matrix_path);
  ThetaEngine e(ms.B(), cfg.opt.bfs_depth, cfg.opt.height_bound);
  if (e.tubes().empty()) throw Error(ErrorKind::InvalidArgument, "matrix has no tubes");
  std::vector<CheckResult> results;
  for (const char* id : {"gca", "jmut"}) results.push_back(run_identity(e, id, cfg.opt));
  return print_results(cfg, ms.name, results);
}

int cmd_report(const RunConfig& cfg) {
  MatrixSpec ms = read_matrix_file(cfg.matrix_path);
  ThetaEngine e(ms.B(), cfg.opt.bfs_depth, cfg.opt.height_bound);
  Json j = build_report(e, ms.name, cfg.opt);
  emit(cfg, j, report_text(j));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  log_init_from_env();
  CLI::App app{"Exact computations for cluster algebras of acyclic affine type"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--matrix", cfg.matrix_path, "Matrix JSON file")->required();
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--coeff", cfg.coeff, "Coefficients: principal, free, or rows from the matrix file")
        ->check(CLI::IsMember({"principal", "free", "rows"}));
    sub->add_option("--depth", cfg.opt.bfs_depth, "Breadth-first search depth")->check(CLI::Range(0, 64));
    sub->add_option("--height-bound", cfg.opt.height_bound, "Root height bound for tube detection");
    sub->add_option("--order", cfg.opt.order, "Series order for scattering diagrams")->check(CLI::Range(1, 40));
    sub->add_option("--budget", cfg.opt.peel_budget, "Peeling budget for theta expansions")->check(CLI::Range(1, 100000));
    sub->add_option("--kmax", cfg.opt.kmax, "Largest multiple of delta in identity checks")->check(CLI::Range(1, 8));
    sub->add_option("--seed", cfg.opt.seed, "Random seed for sampled property checks");
    sub->add_option("--samples", cfg.opt.samples, "Sampled lattice points per orbit check")->check(CLI::Range(2, 100000));
    sub->add_option("--words", cfg.opt.words, "Random mutation words for the Laurent check")->check(CLI::Range(1, 1000000));
  };

  std::string word, out_path, root, target, lambda, dump, tube = "0";
  std::vector<std::string> identities;

  auto* mutate = app.add_subcommand("mutate", "Mutate the initial seed along a word");
  add_common(mutate);
  mutate->add_option("--word", word, "Comma-separated 1-based mutation directions")->required();
  mutate->add_option("--out", out_path, "Write the mutated matrix as JSON");

  auto* gvec = app.add_subcommand("gvec", "g-vectors of the cluster reached by a word");
  add_common(gvec);
  gvec->add_option("--word", word, "Comma-separated 1-based mutation directions")->required();

  auto* tinfo = app.add_subcommand("tube-info", "Affine data, tubes, Simples orbits and arcs");
  add_common(tinfo);

  auto* expand = app.add_subcommand("expand", "Cluster expansion of a root in the imaginary cone");
  add_common(expand);
  expand->add_option("--root", root, "Root in simple-root coordinates")->required();

  auto* theta = app.add_subcommand("theta", "Theta function for a target or a weight");
  add_common(theta);
  theta->add_option("--target", target, "delta, k*delta, or a root vector");
  theta->add_option("--lambda", lambda, "Weight label");

  auto* theta2 = app.add_subcommand("theta2", "Rank-2 theta function from broken lines");
  add_common(theta2);
  theta2->add_option("--lambda", lambda, "Weight label")->required();

  auto* scatter = app.add_subcommand("scatter2", "Rank-2 scattering diagram to a given order");
  add_common(scatter);
  scatter->add_option("--dump", dump, "Write the walls as JSON");

  auto* gg = app.add_subcommand("gca-graph", "Exchange graph of the tube generalized cluster algebra");
  add_common(gg);
  gg->add_option("--tube", tube, "Tube index, or all for the product seed");
  gg->add_option("--json", out_path, "Write vertices, edges and relations as JSON");

  auto* gv = app.add_subcommand("gca-verify", "Check the exchange graphs and their theta-function images");
  add_common(gv);

  auto* verify = app.add_subcommand("verify", "Check identities exactly");
  add_common(verify);
  verify->add_option("--identity", identities, "Identity names, or all")->delimiter(',');

  auto* report = app.add_subcommand("report", "Tubes, theta functions and exchange-graph statistics");
  add_common(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*mutate) return cmd_mutate(cfg, word, out_path, false);
    if (*gvec) return cmd_mutate(cfg, word, "", true);
    if (*tinfo) return cmd_tube_info(cfg);
    if (*expand) return cmd_expand(cfg, root);
    if (*theta) return cmd_theta(cfg, target, lambda);
    if (*theta2) return cmd_theta2(cfg, lambda);
    if (*scatter) return cmd_scatter2(cfg, dump);
    if (*gg) return cmd_gca_graph(cfg, tube, out_path);
    if (*gv) return cmd_gca_verify(cfg);
    if (*verify) return cmd_verify(cfg, identities);
    if (*report) return cmd_report(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::IdentityViolated ? kExitViolation : kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
