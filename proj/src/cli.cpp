#include "suppvar/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "suppvar/errors.hpp"
#include "suppvar/io.hpp"

namespace suppvar {

namespace {

namespace fs = std::filesystem;

constexpr const char* kFixtureEnv = "SUPPVAR_FIXTURES";

struct Flags {
  std::string command;
  std::string file;
  std::string object;
  std::string against;
  std::string field;
  std::string window;
  std::optional<int> n_max;
  std::optional<int> d_max;
  std::optional<std::uint64_t> budget;
  unsigned workers = 1;
  std::optional<std::size_t> rank_limit;
  bool override_hypothesis = false;
  std::string out;
  std::string format = "json";
};

struct FieldArg {
  std::uint32_t p = 0;
  std::uint32_t e = 0;
};

FieldArg parse_field(const std::string& text) {
  FieldArg f;
  if (text.empty()) return f;
  auto comma = text.find(',');
  try {
    f.p = static_cast<std::uint32_t>(std::stoul(text.substr(0, comma)));
    f.e = comma == std::string::npos ? 1 : static_cast<std::uint32_t>(std::stoul(text.substr(comma + 1)));
  } catch (const std::exception&) {
    throw InputError("--field expects p or p,e");
  }
  return f;
}

std::pair<int, int> parse_window(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("window must look like lo:hi");
  try {
    int lo = std::stoi(text.substr(0, colon));
    int hi = std::stoi(text.substr(colon + 1));
    if (hi < lo) throw InputError("window has hi < lo");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw InputError("window must look like lo:hi");
  }
}

fs::path locate(const std::string& file) {
  fs::path path(file);
  if (fs::exists(path)) return path;
  if (path.is_relative()) {
    if (const char* dir = std::getenv(kFixtureEnv)) {
      fs::path candidate = fs::path(dir) / path;
      if (fs::exists(candidate)) return candidate;
    }
#ifdef SUPPVAR_DEFAULT_FIXTURES
    fs::path candidate = fs::path(SUPPVAR_DEFAULT_FIXTURES) / path;
    if (fs::exists(candidate)) return candidate;
#endif
  }
  throw InputError("cannot open input file '" + file + "' (also looked in $" + kFixtureEnv + ")");
}

// Resolved bounds of one job; every field is echoed in the output.
struct Bounds {
  std::uint32_t e = 1;
  std::optional<std::pair<int, int>> window;
  std::uint64_t budget = 1'000'000;
  int n_max = 12;
  int d_max = 4;
  std::size_t rank_limit = 4096;
  bool override_hypothesis = false;
  unsigned workers = 1;

  Json to_json(const std::string& command) const {
    Json b;
    b["e"] = e;
    b["budget"] = budget;
    if (window) {
      b["window"] = Json::array({window->first, window->second});
    } else {
      b["window"] = "default";
    }
    if (command == "ext" || command == "pipeline" || command == "nilpotence") b["n_max"] = n_max;
    if (command == "pipeline") b["d_max"] = d_max;
    if (command == "nilpotence") {
      b["rank_limit"] = rank_limit;
      b["override_hypothesis"] = override_hypothesis;
    }
    return b;
  }

  SupportOptions support() const {
    SupportOptions o;
    o.extension = e;
    o.window = window;
    o.budget = budget;
    o.workers = workers;
    return o;
  }
};

std::string level_warning(std::uint32_t p, std::uint32_t e) {
  return "support computed from F_{" + std::to_string(p) + "^" + std::to_string(e) +
         "}-rational points only; containment verdicts hold at level e = " + std::to_string(e);
}

Json point_json(const Point& p) { return Json(p); }

Json containment_json(const ContainmentVerdict& v, const std::string& conclusion, std::uint32_t e) {
  Json out;
  out["contained"] = v.contained;
  if (v.witness_is_origin) {
    out["witness"] = "origin";
  } else if (v.witness) {
    out["witness"] = point_json(*v.witness);
  } else {
    out["witness"] = nullptr;
  }
  out["left"] = to_json(v.left);
  out["right"] = to_json(v.right);
  out["conclusion"] = v.contained ? conclusion : "no conclusion: the support of the first object is not contained";
  out["level"] = level_warning(v.left.field.characteristic(), e);
  return out;
}

ContainmentVerdict compare_sets(VarietySet left, VarietySet right) {
  ContainmentVerdict v;
  v.left = std::move(left);
  v.right = std::move(right);
  if (v.left.contains_origin && !v.right.contains_origin) {
    v.contained = false;
    v.witness_is_origin = true;
    return v;
  }
  for (const auto& p : v.left.points)
    if (!v.right.contains(p)) {
      v.contained = false;
      v.witness = p;
      break;
    }
  return v;
}

Json run_support(const Workspace& ws, const Json& job, const Bounds& b) {
  const std::string name = job.at("object").get<std::string>();
  Json out;
  FreeDGModule m = ws.kind(name) == "ideal" ? realize(ws.ring(), ws.ideal(name).generators) : ws.module(name);
  VarietySet v = support_points(m, b.support());
  out["variety"] = to_json(v);
  out["conical"] = is_conical(v, *m.ring());
  out["level"] = level_warning(v.field.characteristic(), b.e);
  return out;
}

Json run_compare(const Workspace& ws, const Json& job, const Bounds& b) {
  const std::string left = job.at("object").get<std::string>();
  if (!job.contains("against")) throw InputError("compare needs a second object (--against)");
  const std::string right = job.at("against").get<std::string>();
  if (ws.kind(left) == "ci_complex" || ws.kind(right) == "ci_complex") {
    const ComplexOverR& m = ws.ci_complex(left);
    const ComplexOverR& n = ws.ci_complex(right);
    if (m.ring != n.ring) throw InputError("compare needs both complexes over the same ring object");
    ContainmentVerdict v = compare_sets(v_r_pipeline(m, b.support()), v_r_pipeline(n, b.support()));
    return containment_json(
        v,
        "V_R(M) ⊆ V_R(N); by the classification of thick subcategories of D^f(R) for artinian complete "
        "intersections R by support varieties, M lies in Thick_R(N). Equivalently V_Λ(itM) ⊆ V_Λ(itN), and by the "
        "classification of thick subcategories of D^f(Λ) for the exterior algebra Λ, itM lies in Thick_Λ(itN)",
        b.e);
  }
  ContainmentVerdict v = support_contains(ws.module(left), ws.module(right), b.support());
  return containment_json(
      v,
      "Supp M ⊆ Supp N; by the classification of thick subcategories of perfect DG S-modules by support "
      "(Hopkins-type theorem for graded-commutative S), M lies in Thick_S(N)",
      b.e);
}

Json run_realize(const Workspace& ws, const Json& job, const Bounds& b) {
  const std::string name = job.at("object").get<std::string>();
  const Ideal& ideal = ws.ideal(name);
  FreeDGModule k = realize(ws.ring(), ideal.generators);
  VarietySet v = support_points(k, b.support());
  // Elementary vanishing locus of the generators, for comparison.
  bool origin = true;
  for (const auto& g : ideal.generators) origin = origin && g.constant_term() == 0;
  std::vector<Point> locus;
  const std::uint64_t total = point_count(v.field, ws.ring()->nvars());
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    Point p = point_at(v.field, ws.ring()->nvars(), idx);
    if (vanishes_at(ideal.generators, v.field, p)) locus.push_back(std::move(p));
  }
  Json out;
  out["module"] = to_json(k);
  out["variety"] = to_json(v);
  out["vanishing_locus"] = locus;
  out["matches_vanishing_locus"] = locus == v.points && origin == v.contains_origin;
  out["level"] = level_warning(v.field.characteristic(), b.e);
  if (!out["matches_vanishing_locus"].get<bool>()) {
    throw ConsistencyError("support of S//I differs from the vanishing locus of I");
  }
  return out;
}

Json run_bgg(const Workspace& ws, const Json& job, const Bounds& b) {
  const ComplexOverR& m = ws.ci_complex(job.at("object").get<std::string>());
  KoszulModule t = t_functor(m);
  LambdaModule n = restrict_i(t, *m.ring);
  RelationReport rel = exterior_relations(n);
  FreeDGModule h = bgg_h(n, theta_ring(*m.ring));
  Json out;
  out["lambda_module_dim"] = n.space.dim();
  Json r;
  r["anticommutator_reading_holds"] = rel.anticommutator;
  r["literal_reading_holds"] = rel.literal;
  out["exterior_relations"] = r;
  out["h_rank"] = h.rank();
  out["variety"] = to_json(support_points(h, b.support()));
  out["level"] = level_warning(m.ring->characteristic(), b.e);
  return out;
}

Json run_ext(const Workspace& ws, const Json& job, const Bounds& b) {
  const ComplexOverR& m = ws.ci_complex(job.at("object").get<std::string>());
  ExtOptions o;
  o.n_max = b.n_max;
  Json out;
  out["ring"] = m.ring->describe();
  out["ext"] = to_json(ext_oracle(m, o));
  return out;
}

Json run_pipeline(const Workspace& ws, const Json& job, const Bounds& b) {
  const ComplexOverR& m = ws.ci_complex(job.at("object").get<std::string>());
  ExtOptions o;
  o.n_max = b.n_max;
  VarietySet v = v_r_pipeline(m, b.support());
  AdjunctionReport adj = adjunction_check(m, o);
  AnnihilatorReport ann = ann_theta(m, b.d_max, o);
  std::vector<Polynomial> polys = ann.all();
  bool consistent = true;
  for (const auto& p : v.points) consistent = consistent && vanishes_at(polys, v.field, p);

  Json out;
  out["ring"] = m.ring->describe();
  out["variety"] = to_json(v);
  Json a;
  a["lo"] = adj.lo;
  a["hi"] = adj.hi;
  a["ext_dims"] = adj.ext;
  a["h_homology_dims"] = adj.homology;
  a["agree"] = adj.ok;
  out["adjunction"] = a;
  Json an;
  an["n_max"] = ann.n_max;
  an["d_max"] = ann.d_max;
  an["stable_against_n_max_minus_2"] = ann.stable;
  Json levels = Json::array();
  for (const auto& level : ann.by_degree) {
    Json l = Json::array();
    for (const auto& p : level) l.push_back(p.to_string());
    levels.push_back(l);
  }
  an["forms_by_degree"] = levels;
  an["vanish_on_variety"] = consistent;
  out["annihilator"] = an;
  out["level"] = level_warning(m.ring->characteristic(), b.e);
  if (!adj.ok) throw ConsistencyError("adjunction check failed: Ext_R(k,M) and H(h(itM)) disagree");
  if (!consistent) throw ConsistencyError("annihilator forms do not vanish on the pipeline variety");
  return out;
}

Json run_nilpotence(const Workspace& ws, const Json& job, const Bounds& b) {
  const DGMorphism& f = ws.morphism(job.at("object").get<std::string>());
  if (!job.contains("against")) throw InputError("nilpotence needs the module G (--against)");
  const FreeDGModule& g = ws.module(job.at("against").get<std::string>());
  NilpotenceOptions o;
  o.n_max = static_cast<std::size_t>(b.n_max);
  o.rank_limit = b.rank_limit;
  o.override_hypothesis = b.override_hypothesis;
  o.support = b.support();
  NilpotenceReport rep = nilpotence_search(f, g, o);
  Json out;
  Json hyp;
  hyp["holds"] = rep.hypothesis.vanishes;
  hyp["points_checked"] = rep.hypothesis.points_checked;
  hyp["origin_checked"] = rep.hypothesis.origin_checked;
  if (rep.hypothesis.fails_at_origin) hyp["failing_point"] = "origin";
  if (rep.hypothesis.failing_point) hyp["failing_point"] = point_json(*rep.hypothesis.failing_point);
  out["hypothesis"] = hyp;
  Json steps = Json::array();
  for (const auto& s : rep.steps) {
    Json j;
    j["n"] = s.n;
    j["rank"] = s.rank;
    j["vanishes"] = s.vanishes;
    steps.push_back(j);
  }
  out["steps"] = steps;
  switch (rep.status) {
    case NilpotenceReport::Status::Found:
      out["outcome"] = "found";
      out["n"] = *rep.n_found;
      out["hom_module"] = to_json(*rep.hom);
      out["cycle"] = to_json(rep.cycle);
      out["witness"] = to_json(rep.witness);
      out["witness_verified"] = rep.witness_verified;
      if (rep.monotone) {
        out["vanishes_at_n_plus_1"] = *rep.monotone;
      } else {
        out["vanishes_at_n_plus_1"] = "skipped (rank limit)";
      }
      break;
    case NilpotenceReport::Status::Exhausted:
      out["outcome"] = "exhausted";
      out["note"] = "no vanishing up to n_max; inconclusive, not a counterexample";
      break;
    case NilpotenceReport::Status::Aborted:
      out["outcome"] = "aborted";
      out["note"] = "rank of G ⊗ X^{⊗n} exceeded the rank limit";
      break;
  }
  if (rep.status == NilpotenceReport::Status::Aborted) throw BudgetError("nilpotence search hit the rank limit");
  return out;
}

Json run_validate(const Workspace& ws, const Json& job, const Bounds&) {
  const std::string name = job.at("object").get<std::string>();
  const std::string& kind = ws.kind(name);
  Json out;
  out["kind"] = kind;
  std::optional<std::string> problem;
  if (kind == "dg_module") {
    if (auto v = validate(ws.module(name))) problem = v->message;
  } else if (kind == "morphism") {
    if (auto v = validate(ws.morphism(name))) problem = v->message;
  } else if (kind == "ci_complex") {
    problem = validate(ws.ci_complex(name));
  } else if (kind == "ideal") {
    for (const auto& g : ws.ideal(name).generators)
      if (!g.is_zero() && !g.is_homogeneous()) problem = "generator " + g.to_string() + " is not homogeneous";
  } else if (kind == "ci") {
    out["ring"] = ws.ci(name)->describe();
  }
  if (problem) throw InputError(*problem);
  out["valid"] = true;
  return out;
}

using Runner = Json (*)(const Workspace&, const Json&, const Bounds&);

Runner runner_for(const std::string& command) {
  static const std::map<std::string, Runner> table = {
      {"support", run_support}, {"compare", run_compare}, {"realize", run_realize},       {"bgg", run_bgg},
      {"pipeline", run_pipeline}, {"ext", run_ext},       {"nilpotence", run_nilpotence}, {"validate", run_validate},
  };
  auto it = table.find(command);
  if (it == table.end()) throw InputError("unknown command '" + command + "'");
  return it->second;
}

Bounds resolve_bounds(const Flags& flags, const Json& job, std::uint32_t file_e, unsigned job_workers) {
  Bounds b;
  const std::string command = job.at("command").get<std::string>();
  if (command == "nilpotence") b.n_max = 5;
  b.e = job.value("e", file_e);
  if (job.contains("window")) b.window = std::make_pair(job.at("window")[0].get<int>(), job.at("window")[1].get<int>());
  b.budget = job.value("budget", b.budget);
  b.n_max = job.value("n_max", b.n_max);
  b.d_max = job.value("d_max", b.d_max);
  b.rank_limit = job.value("rank_limit", b.rank_limit);
  b.override_hypothesis = job.value("override", false);
  const FieldArg field = parse_field(flags.field);
  if (field.e) b.e = field.e;
  if (!flags.window.empty()) b.window = parse_window(flags.window);
  if (flags.budget) b.budget = *flags.budget;
  if (flags.n_max) b.n_max = *flags.n_max;
  if (flags.d_max) b.d_max = *flags.d_max;
  if (flags.rank_limit) b.rank_limit = *flags.rank_limit;
  if (flags.override_hypothesis) b.override_hypothesis = true;
  b.workers = job_workers;
  if (b.e == 0) throw InputError("extension degree must be positive");
  if (b.budget == 0 || b.rank_limit == 0) throw InputError("bounds must be positive");
  if (b.n_max < 0 || b.d_max < 0) throw InputError("n_max and d_max must be nonnegative");
  return b;
}

struct JobOutcome {
  Json doc;
  int code = 0;
};

JobOutcome execute(const Workspace& ws, const Flags& flags, const Json& job, std::uint32_t file_e, unsigned workers) {
  JobOutcome o;
  o.doc["command"] = job.value("command", std::string());
  o.doc["object"] = job.value("object", std::string());
  if (job.contains("against")) o.doc["against"] = job.at("against");
  auto fail = [&](int code, const char* kind, const std::exception& e) {
    o.code = code;
    o.doc["status"] = "error";
    o.doc["exit_code"] = code;
    o.doc["error"] = Json{{"kind", kind}, {"message", e.what()}};
  };
  try {
    if (!job.contains("command") || !job.contains("object")) throw InputError("each job needs \"command\" and \"object\"");
    Bounds b = resolve_bounds(flags, job, file_e, workers);
    o.doc["bounds"] = b.to_json(job.at("command").get<std::string>());
    Json result = runner_for(job.at("command").get<std::string>())(ws, job, b);
    o.doc["status"] = "ok";
    o.doc["exit_code"] = 0;
    o.doc["result"] = std::move(result);
  } catch (const BudgetError& e) {
    fail(3, "budget", e);
  } catch (const ConsistencyError& e) {
    fail(4, "consistency", e);
  } catch (const InputError& e) {
    fail(2, "precondition", e);
  } catch (const nlohmann::json::exception& e) {
    fail(2, "precondition", e);
  } catch (const std::exception& e) {
    fail(4, "internal", e);
  }
  return o;
}

void render_text(const Json& doc, std::ostream& out) {
  out << "suppvar " << doc["artifact"]["version"].get<std::string>() << "\n";
  out << "input sha256: " << doc["input_sha256"].get<std::string>() << "\n";
  out << "field: " << doc["field"].dump() << "\n";
  std::size_t k = 0;
  for (const auto& job : doc["jobs"]) {
    out << "\n[job " << ++k << "] " << job["command"].get<std::string>() << " " << job["object"].get<std::string>();
    if (job.contains("against")) out << " vs " << job["against"].get<std::string>();
    out << "\n";
    out << "  status: " << job["status"].get<std::string>() << " (exit " << job["exit_code"].get<int>() << ")\n";
    if (job.contains("bounds")) out << "  bounds: " << job["bounds"].dump() << "\n";
    if (job.contains("error")) out << "  error: " << job["error"]["message"].get<std::string>() << "\n";
    if (job.contains("result"))
      for (const auto& [key, value] : job["result"].items()) {
        if (value.is_string()) {
          out << "  " << key << ": " << value.get<std::string>() << "\n";
        } else {
          out << "  " << key << ": " << value.dump() << "\n";
        }
      }
  }
}

void write_atomically(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write output file '" + path.string() + "'");
    f << content;
    if (!f.flush()) throw InputError("cannot write output file '" + path.string() + "'");
  }
  fs::rename(tmp, path);
}

int run(const Flags& flags, std::ostream& out) {
  fs::path path = locate(flags.file);
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string bytes = buffer.str();
  Json doc;
  try {
    doc = Json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("input is not valid JSON: ") + e.what());
  }
  const FieldArg field = parse_field(flags.field);
  Workspace ws(doc, field.p);
  std::uint32_t file_e = 1;
  if (doc.contains("field") && doc["field"].is_object()) file_e = doc["field"].value("e", 1u);

  Json jobs = Json::array();
  if (flags.command == "run") {
    jobs = doc.value("jobs", Json::array());
    if (!jobs.is_array() || jobs.empty()) throw InputError("input has no \"jobs\" list");
  } else {
    runner_for(flags.command);
    if (flags.object.empty()) throw InputError("command '" + flags.command + "' needs --object");
    Json job;
    job["command"] = flags.command;
    job["object"] = flags.object;
    if (!flags.against.empty()) job["against"] = flags.against;
    jobs.push_back(job);
  }

  const unsigned workers = std::max(1u, flags.workers);
  const unsigned pool = std::min<unsigned>(workers, static_cast<unsigned>(jobs.size()));
  const unsigned per_job = jobs.size() == 1 ? workers : 1;
  std::vector<JobOutcome> outcomes(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) outcomes[i] = execute(ws, flags, jobs[i], file_e, per_job);
  };
  if (pool <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < pool; ++t) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }

  Json result;
  result["artifact"] = Json{{"name", "suppvar"}, {"version", kVersion}};
  result["input_sha256"] = sha256_hex(bytes);
  result["field"] = Json{{"p", ws.characteristic()}, {"e", field.e ? field.e : file_e}};
  Json global;
  global["budget"] = flags.budget ? *flags.budget : 1'000'000;
  global["window"] = flags.window.empty() ? Json("default") : Json(flags.window);
  if (flags.n_max) global["n_max"] = *flags.n_max;
  if (flags.d_max) global["d_max"] = *flags.d_max;
  if (flags.rank_limit) global["rank_limit"] = *flags.rank_limit;
  result["bounds"] = global;
  result["jobs"] = Json::array();
  int code = 0;
  for (auto& o : outcomes) {
    if (code == 0) code = o.code;
    result["jobs"].push_back(std::move(o.doc));
  }

  std::ostringstream rendered;
  if (flags.format == "text") {
    render_text(result, rendered);
  } else {
    rendered << result.dump(2) << "\n";
  }
  if (flags.out.empty()) {
    out << rendered.str();
  } else {
    write_atomically(flags.out, rendered.str());
  }
  return code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Support varieties of perfect DG modules and of complexes over artinian complete intersections"};
  app.set_version_flag("--version", kVersion);
  Flags flags;
  app.add_option("command", flags.command,
                 "support | compare | realize | bgg | pipeline | ext | nilpotence | validate | run")
      ->required();
  app.add_option("file", flags.file, "input JSON document")->required();
  app.add_option("--object", flags.object, "name of the object to process");
  app.add_option("--against", flags.against, "second object (compare: N, nilpotence: G)");
  app.add_option("--field", flags.field, "p or p,e (overrides the input file)");
  app.add_option("--window", flags.window, "degree window lo:hi for the origin test");
  app.add_option("--nmax", flags.n_max, "homological bound (ext, pipeline, nilpotence)");
  app.add_option("--dmax", flags.d_max, "θ-degree bound for annihilators");
  app.add_option("--budget", flags.budget, "maximum number of points to enumerate");
  app.add_option("--workers", flags.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--rank-limit", flags.rank_limit, "abort threshold for tensor powers");
  app.add_flag("--override", flags.override_hypothesis, "run the nilpotence search even if its hypothesis fails");
  app.add_option("--out", flags.out, "write the report here (atomically) instead of stdout");
  app.add_option("--format", flags.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, ee;
    int status = app.exit(e, o, ee);
    out << o.str();
    err << ee.str();
    return status == 0 ? 0 : 2;
  }
  try {
    return run(flags, out);
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << "\n";
    return 4;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace suppvar
