/// \file experiment.cpp
/// \brief Config handling, convergence runs and output writers.

#include "stis/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace stis {

namespace {

const std::set<std::string> kCases2d{"disk2d_smooth", "disk2d_kink", "poly2d"};
const std::set<std::string> kCases3d{"paper3d_case1", "paper3d_case2"};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::exception&) {
      throw Error("invalid grid entry '" + item + "'");
    }
    if (pos != item.size() || v < 1) throw Error("invalid grid entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error("empty grid list");
  return out;
}

template <class T>
void read_opt(const nlohmann::json& j, const char* key, std::optional<T>& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

template <int d>
RunRecord run_one(const ExperimentConfig& cfg, const ProblemCase<d>& c, int ns, int nt,
                  const ProgressCallback& log) {
  RunRecord rec;
  rec.ns = ns;
  rec.nt = nt;
  const DiscretizationParams prm = discretization(cfg, ns, nt);
  rec.slabs = nlohmann::json::array();
  auto t0 = std::chrono::steady_clock::now();
  const auto sol = march<d>(c.coeff, prm, [&](int n, const nlohmann::json& st) {
    rec.slabs.push_back(st);
    if (log && (n == 1 || n == nt || n % 8 == 0)) {
      std::ostringstream os;
      os << "  slab " << n << "/" << nt << " residual " << st.at("residual").get<double>();
      log(os.str());
    }
  });
  rec.march_seconds = seconds_since(t0);
  rec.max_residual = sol.max_residual();
  rec.max_divergence_ratio = sol.max_divergence_ratio();
  rec.mesh = sol.mesh->summary();

  long vel = 0, pres = 0, base = 0, enriched = 0, filtered = 0;
  for (const auto& s : rec.slabs) {
    vel += s.at("velocity_dofs").get<long>();
    const auto& p = s.at("pressure");
    pres += p.at("dofs").get<long>();
    base += p.at("base_dofs").get<long>();
    enriched += p.at("enriched_vertices").get<long>();
    filtered += p.at("filtered_vertices").get<long>();
  }
  rec.dofs = {{"velocity", vel},
              {"pressure", pres},
              {"pressure_base", base},
              {"enriched_vertices", enriched},
              {"filtered_vertices", filtered},
              {"multipliers", static_cast<long>(nt) * (cfg.q + 1)}};

  if (c.exact) {
    t0 = std::chrono::steady_clock::now();
    rec.errors = compute_errors<d>(sol, *c.exact, c.coeff.phi);
    rec.error_seconds = seconds_since(t0);
  }
  return rec;
}

template <int d>
ConvergenceResult run_all(const ExperimentConfig& cfg, const ProgressCallback& log) {
  const ProblemCase<d> c = make_experiment_case<d>(cfg);
  for (const auto& [ns, nt] : cfg.runs()) {
    const long est = estimate_slab_unknowns<d>(c.coeff.domain, discretization(cfg, ns, nt));
    if (est > cfg.max_dofs) {
      throw Error("grid point (N_S=" + std::to_string(ns) + ", N=" + std::to_string(nt) + ") needs about " +
                  std::to_string(est) + " unknowns per slab, above the budget of " +
                  std::to_string(cfg.max_dofs) + " (raise --max-dofs)");
    }
  }
  ConvergenceResult res;
  std::vector<int> ns = cfg.ns, nt = cfg.nt;
  res.velocity_l2h1 = ErrorTable(ns, nt, "velocity L2(H1) error");
  res.velocity_l2l2 = ErrorTable(ns, nt, "velocity L2(L2) error");
  res.pressure_l2l2 = ErrorTable(ns, nt, "pressure L2(L2) error");
  for (const auto& [a, b] : cfg.runs()) {
    if (log) log("run N_S=" + std::to_string(a) + " N=" + std::to_string(b));
    RunRecord rec = run_one<d>(cfg, c, a, b, log);
    if (c.exact) {
      res.velocity_l2h1.set(a, b, rec.errors.velocity_l2h1);
      res.velocity_l2l2.set(a, b, rec.errors.velocity_l2l2);
      res.pressure_l2l2.set(a, b, rec.errors.pressure_l2l2);
    }
    if (log) {
      std::ostringstream os;
      os << "  velocity " << format_value(rec.errors.velocity_l2h1) << " pressure "
         << format_value(rec.errors.pressure_l2l2) << " (" << rec.march_seconds << " s + "
         << rec.error_seconds << " s)";
      log(os.str());
    }
    res.runs.push_back(std::move(rec));
  }
  return res;
}

template <int d>
SlabSolution<d> first_point_slab(const ExperimentConfig& cfg, int n, ProblemCase<d>& c,
                                 std::shared_ptr<const SpatialMesh<d>>& mesh) {
  c = make_experiment_case<d>(cfg);
  const auto [ns, nt] = cfg.runs().front();
  if (n < 1 || n > nt) throw Error("slab index " + std::to_string(n) + " outside 1.." + std::to_string(nt));
  const DiscretizationParams prm = discretization(cfg, ns, nt);
  const TimePartition time = build_time_partition(c.coeff.final_time, nt);
  mesh = build_structured_mesh<d>(c.coeff.domain, ns);
  return setup_slab<d>(c.coeff, prm, mesh, time, n);
}

template <int d>
std::string export_impl(const ExperimentConfig& cfg, int n) {
  ProblemCase<d> c;
  std::shared_ptr<const SpatialMesh<d>> mesh;
  const auto s = first_point_slab<d>(cfg, n, c, mesh);
  const SlabSystem sys = assemble_slab_system<d>(*s.vspace, *s.pspace, *s.geometry, c.coeff, {});
  std::filesystem::create_directories(cfg.out_dir);
  const std::string path = cfg.out_dir + "/matrix_slab" + std::to_string(n) + ".coo";
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path);
  sys.export_coo(os);
  return path;
}

template <int d>
std::string dump_impl(const ExperimentConfig& cfg, int n) {
  ProblemCase<d> c;
  std::shared_ptr<const SpatialMesh<d>> mesh;
  const auto s = first_point_slab<d>(cfg, n, c, mesh);
  nlohmann::json j = nlohmann::json::array();
  for (const auto& cut : s.geometry->cuts)
    if (cut) j.push_back(cut->to_json());
  std::filesystem::create_directories(cfg.out_dir);
  const std::string path = cfg.out_dir + "/decomposition_slab" + std::to_string(n) + ".json";
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path);
  os << j.dump(1) << "\n";
  return path;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path);
  os << text;
}

}  // namespace

// ---------------------------------------------------------------------------

int ExperimentConfig::dimension() const {
  const std::string& id = case_id == "custom" ? custom_base : case_id;
  if (kCases2d.count(id)) return 2;
  if (kCases3d.count(id)) return 3;
  throw Error("unknown case '" + id + "'");
}

std::vector<std::pair<int, int>> ExperimentConfig::runs() const {
  std::vector<std::pair<int, int>> out;
  if (diagonal) {
    for (std::size_t i = 0; i < ns.size() && i < nt.size(); ++i) out.emplace_back(ns[i], nt[i]);
  } else {
    for (int a : ns)
      for (int b : nt) out.emplace_back(a, b);
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (case_id == "custom" && custom_base == "custom") throw Error("custom_base must name a built-in case");
  const int dim = dimension();
  if (case_id != "custom" && !overrides.empty()) {
    throw Error("coefficient overrides are only accepted for case 'custom' (built-in cases fix their coefficients)");
  }
  if (dim == 3 && !enable_3d) throw Error("3D cases need --enable-3d");
  if (ns.empty() || nt.empty()) throw Error("empty (N_S, N) grid");
  for (int v : ns)
    if (v < 1) throw Error("N_S must be positive");
  for (int v : nt)
    if (v < 1) throw Error("N must be positive");
  if (diagonal && ns.size() != nt.size()) throw Error("diagonal grid needs equal N_S and N list lengths");
  auto unique = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (!unique(ns) || !unique(nt)) throw Error("repeated grid values");
  if (r != 2) throw Error("only r = 2 is implemented");
  if (q < 0 || q > 3) throw Error("temporal degree q must lie in 0..3");
  if (theta < 0.0 || theta >= 1.0) throw Error("theta must lie in [0, 1)");
  if (!(solver_tolerance > 0.0)) throw Error("solver tolerance must be positive");
  if (max_dofs < 1) throw Error("max_dofs must be positive");
  if (threads < 0) throw Error("threads must be >= 0");
  for (const auto& v : {overrides.rho_neg, overrides.rho_pos, overrides.mu_neg, overrides.mu_pos})
    if (v && !(*v > 0.0)) throw Error("density and viscosity overrides must be positive");
  if (overrides.tau && *overrides.tau < 0.0) throw Error("surface tension must be >= 0");
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json o = nlohmann::json::object();
  if (overrides.rho_neg) o["rho_neg"] = *overrides.rho_neg;
  if (overrides.rho_pos) o["rho_pos"] = *overrides.rho_pos;
  if (overrides.mu_neg) o["mu_neg"] = *overrides.mu_neg;
  if (overrides.mu_pos) o["mu_pos"] = *overrides.mu_pos;
  if (overrides.tau) o["tau"] = *overrides.tau;
  return {{"case", case_id},
          {"custom_base", custom_base},
          {"grid", {{"ns", ns}, {"nt", nt}, {"diagonal", diagonal}}},
          {"space", {{"r", r}, {"q", q}}},
          {"pressure_space", to_string(pressure)},
          {"coefficients", o},
          {"theta", theta},
          {"solver_tolerance", solver_tolerance},
          {"out_dir", out_dir},
          {"max_dofs", max_dofs},
          {"threads", threads},
          {"seed", seed},
          {"enable_3d", enable_3d}};
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  static const std::set<std::string> keys{"case",    "custom_base",      "grid",    "space",
                                          "pressure_space", "coefficients", "theta", "solver_tolerance",
                                          "out_dir", "max_dofs",         "threads", "seed",
                                          "enable_3d"};
  if (!j.is_object()) throw Error("config must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (!keys.count(k)) throw Error("unknown config key '" + k + "'");
  ExperimentConfig c;
  try {
    if (j.contains("case")) c.case_id = j.at("case").get<std::string>();
    if (j.contains("custom_base")) c.custom_base = j.at("custom_base").get<std::string>();
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      if (g.contains("ns")) c.ns = g.at("ns").get<std::vector<int>>();
      if (g.contains("nt")) c.nt = g.at("nt").get<std::vector<int>>();
      if (g.contains("diagonal")) c.diagonal = g.at("diagonal").get<bool>();
    }
    if (j.contains("space")) {
      const auto& s = j.at("space");
      if (s.contains("r")) c.r = s.at("r").get<int>();
      if (s.contains("q")) c.q = s.at("q").get<int>();
    }
    if (j.contains("pressure_space")) c.pressure = pressure_space_from_string(j.at("pressure_space").get<std::string>());
    if (j.contains("coefficients")) {
      const auto& o = j.at("coefficients");
      for (const auto& [k, v] : o.items())
        if (k != "rho_neg" && k != "rho_pos" && k != "mu_neg" && k != "mu_pos" && k != "tau")
          throw Error("unknown coefficient '" + k + "'");
      read_opt(o, "rho_neg", c.overrides.rho_neg);
      read_opt(o, "rho_pos", c.overrides.rho_pos);
      read_opt(o, "mu_neg", c.overrides.mu_neg);
      read_opt(o, "mu_pos", c.overrides.mu_pos);
      read_opt(o, "tau", c.overrides.tau);
    }
    if (j.contains("theta")) c.theta = j.at("theta").get<double>();
    if (j.contains("solver_tolerance")) c.solver_tolerance = j.at("solver_tolerance").get<double>();
    if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("max_dofs")) c.max_dofs = j.at("max_dofs").get<long>();
    if (j.contains("threads")) c.threads = j.at("threads").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<unsigned>();
    if (j.contains("enable_3d")) c.enable_3d = j.at("enable_3d").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid config: ") + e.what());
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot read config " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is, nullptr, true, true);
  } catch (const nlohmann::json::exception& e) {
    throw Error("config " + path + ": " + e.what());
  }
  return from_json(j);
}

void ExperimentConfig::save(const std::string& path) const { write_file(path, to_json().dump(2) + "\n"); }

void parse_grid(const std::string& spec, std::vector<int>& ns, std::vector<int>& nt) {
  const auto x = spec.find('x');
  if (x == std::string::npos) {
    ns = parse_list(spec);
    nt = ns;
    return;
  }
  ns = parse_list(spec.substr(0, x));
  nt = parse_list(spec.substr(x + 1));
}

template <int d>
ProblemCase<d> make_experiment_case(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.dimension() != d) throw Error("case dimension mismatch");
  const std::string& id = cfg.case_id == "custom" ? cfg.custom_base : cfg.case_id;
  ProblemCase<d> c;
  if constexpr (d == 2) {
    c = make_case_2d(id);
  } else {
    c = make_case_3d(id);
  }
  if (cfg.case_id == "custom") {
    c.id = "custom";
    const auto& o = cfg.overrides;
    if (o.rho_neg) c.coeff.rho[0] = *o.rho_neg;
    if (o.rho_pos) c.coeff.rho[1] = *o.rho_pos;
    if (o.mu_neg) c.coeff.mu[0] = *o.mu_neg;
    if (o.mu_pos) c.coeff.mu[1] = *o.mu_pos;
    if (o.tau) c.coeff.tau = *o.tau;
    attach_manufactured_data<d>(c);
  }
  c.coeff.validate();
  return c;
}

DiscretizationParams discretization(const ExperimentConfig& cfg, int ns, int nt) {
  DiscretizationParams p;
  p.ns = ns;
  p.n_slabs = nt;
  p.r = cfg.r;
  p.q = cfg.q;
  p.pressure = cfg.pressure;
  p.theta = cfg.theta;
  p.solver_tolerance = cfg.solver_tolerance;
  return p;
}

ConvergenceResult run_convergence(const ExperimentConfig& cfg, const ProgressCallback& log) {
  cfg.validate();
  return cfg.dimension() == 2 ? run_all<2>(cfg, log) : run_all<3>(cfg, log);
}

nlohmann::json provenance(const ExperimentConfig& cfg, const ConvergenceResult& res) {
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& r : res.runs) {
    runs.push_back({{"ns", r.ns},
                    {"nt", r.nt},
                    {"errors",
                     {{"velocity_l2h1", r.errors.velocity_l2h1},
                      {"velocity_l2l2", r.errors.velocity_l2l2},
                      {"pressure_l2l2", r.errors.pressure_l2l2}}},
                    {"march_seconds", r.march_seconds},
                    {"error_seconds", r.error_seconds},
                    {"max_residual", r.max_residual},
                    {"max_divergence_ratio", r.max_divergence_ratio},
                    {"dofs", r.dofs},
                    {"mesh", r.mesh},
                    {"slabs", r.slabs}});
  }
  nlohmann::json build = {{"compiler", __VERSION__}, {"cxx_standard", static_cast<long>(__cplusplus)}};
#ifdef STIS_HAVE_OPENMP
  build["openmp"] = true;
#else
  build["openmp"] = false;
#endif
  return {{"config", cfg.to_json()}, {"build", build}, {"runs", runs}};
}

std::string markdown_summary(const ExperimentConfig& cfg, const ConvergenceResult& res) {
  std::ostringstream os;
  os << "# Convergence study: " << cfg.case_id << "\n\n";
  os << "Pressure space " << to_string(cfg.pressure) << ", (r, q) = (" << cfg.r << ", " << cfg.q
     << "), theta = " << cfg.theta << ".\n\n";
  for (const ErrorTable* t : {&res.velocity_l2h1, &res.velocity_l2l2, &res.pressure_l2l2}) {
    os << "## " << t->title() << "\n\n" << t->to_markdown() << "\n";
  }
  os << "## Runs\n\n| N_S | N | unknowns | max residual | max div ratio | march [s] | errors [s] |\n"
     << "|---|---|---|---|---|---|---|\n";
  for (const auto& r : res.runs) {
    const long n = r.dofs.at("velocity").get<long>() + r.dofs.at("pressure").get<long>() +
                   r.dofs.at("multipliers").get<long>();
    char buf[256];
    std::snprintf(buf, sizeof buf, "| %d | %d | %ld | %.2e | %.2e | %.1f | %.1f |\n", r.ns, r.nt, n,
                  r.max_residual, r.max_divergence_ratio, r.march_seconds, r.error_seconds);
    os << buf;
  }
  return os.str();
}

void write_outputs(const ExperimentConfig& cfg, const ConvergenceResult& res, const nlohmann::json& extra) {
  std::filesystem::create_directories(cfg.out_dir);
  write_file(cfg.out_dir + "/velocity_l2h1.csv", res.velocity_l2h1.to_csv());
  write_file(cfg.out_dir + "/velocity_l2l2.csv", res.velocity_l2l2.to_csv());
  write_file(cfg.out_dir + "/pressure_l2l2.csv", res.pressure_l2l2.to_csv());
  write_file(cfg.out_dir + "/summary.md", markdown_summary(cfg, res));
  nlohmann::json p = provenance(cfg, res);
  if (!extra.is_null()) p["extra"] = extra;
  write_file(cfg.out_dir + "/provenance.json", p.dump(1) + "\n");
}

std::string export_slab_matrix(const ExperimentConfig& cfg, int n) {
  cfg.validate();
  return cfg.dimension() == 2 ? export_impl<2>(cfg, n) : export_impl<3>(cfg, n);
}

std::string dump_decompositions(const ExperimentConfig& cfg, int n) {
  cfg.validate();
  return cfg.dimension() == 2 ? dump_impl<2>(cfg, n) : dump_impl<3>(cfg, n);
}

template ProblemCase<2> make_experiment_case<2>(const ExperimentConfig&);
template ProblemCase<3> make_experiment_case<3>(const ExperimentConfig&);

}  // namespace stis
