#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include "gj/bounds.hpp"
#include "gj/complex2d.hpp"
#include "gj/errors.hpp"
#include "gj/groupfn.hpp"
#include "gj/mipgen.hpp"
#include "gj/patterns.hpp"
#include "gj/polytope.hpp"
#include "gj/search.hpp"

namespace gj::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int f_index_of(int q, const std::string& text, const char* flag = "--f") {
  Fraction f = parse_fraction(text);
  if (f <= 0 || f >= 1) throw ArgumentError(std::string(flag) + " must lie strictly between 0 and 1");
  Fraction idx = f * q;
  if (idx.get_den() != 1) throw ArgumentError(std::string(flag) + " " + text + " is not a multiple of 1/q");
  return static_cast<int>(idx.get_num().get_si());
}

void check_q(int q) {
  if (q < 2) throw ArgumentError("--q must be at least 2");
}

json function_json(const GridFunction& fn) { return json::parse(to_json(fn)); }

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory " + dir);
  return fs::path(dir);
}

// One function file per result plus index.jsonl.
void write_results_dir(const std::string& dir, const std::vector<json>& records,
                       const std::vector<GridFunction>& fns) {
  fs::path root = prepare_dir(dir);
  std::ofstream index(root / "index.jsonl");
  if (!index) throw IoError("cannot write " + (root / "index.jsonl").string());
  for (size_t i = 0; i < fns.size(); ++i) {
    std::ostringstream name;
    name << "fn_" << std::setw(4) << std::setfill('0') << i << ".json";
    write_function_file(fns[i], (root / name.str()).string());
    json rec = records[i];
    rec.erase("function");
    rec["file"] = name.str();
    index << rec.dump() << "\n";
  }
  if (!index) throw IoError("error while writing " + (root / "index.jsonl").string());
}

std::string mip_target(const std::string& out, const std::string& filename) {
  if (out.empty()) return filename;
  if (fs::is_directory(out)) return (fs::path(out) / filename).string();
  return out;
}

SearchMode parse_mode(const std::string& s) {
  if (s == "vertex-filter") return SearchMode::VertexFilter;
  if (s == "heuristic") return SearchMode::Heuristic;
  if (s == "combined") return SearchMode::Combined;
  throw ArgumentError("unknown --mode " + s);
}

struct Options {
  int q = 0;
  std::string f, a;
  int slopes = 2;
  std::string mode = "combined";
  int threshold = 11;
  std::string epsilon;
  bool exact = false;
  int workers = 1;
  long max_results = 0;
  std::string out;
  std::string file;
  int oversampling = 0;
  bool triple = false;
  bool no_redund = false;
  int maxstep = 2;
  int m = 12;
  std::string cover = "standard";
  std::string sol;
  bool verify = false;
  int r = 1;
  long samples = 10000;
  std::uint64_t seed = 1;
  bool exhaustive = false;
  bool complexity = false;
};

int cmd_search(const Options& o, std::ostream& out, std::ostream& err) {
  check_q(o.q);
  SearchConfig c;
  c.q = o.q;
  c.f_index = f_index_of(o.q, o.f);
  c.target_slopes = o.slopes;
  c.mode = parse_mode(o.mode);
  c.exp_dim_threshold = o.threshold;
  c.worker_count = o.workers;
  if (o.max_results > 0) c.max_results = static_cast<std::size_t>(o.max_results);
  if (o.exact)
    c.epsilon = exact_epsilon(o.q);
  else if (!o.epsilon.empty())
    c.epsilon = parse_fraction(o.epsilon);
  validate(c);
  SearchStats stats;
  auto found = run_search(c, &stats);
  std::sort(found.begin(), found.end(), [](const FoundFunction& x, const FoundFunction& y) { return x.fn < y.fn; });
  std::vector<json> records;
  std::vector<GridFunction> fns;
  for (const auto& r : found) {
    json rec = {{"function", function_json(r.fn)}, {"slopes", r.slopes},  {"components", r.components},
                {"mode", o.mode},                  {"depth", r.depth},    {"exp_dim", r.exp_dim}};
    out << rec.dump() << "\n";
    records.push_back(rec);
    fns.push_back(r.fn);
  }
  if (!o.out.empty()) write_results_dir(o.out, records, fns);
  err << json{{"nodes", stats.nodes},
              {"infeasible", stats.infeasible},
              {"component_prunes", stats.component_prunes},
              {"lp_solves", stats.lp_solves},
              {"results", found.size()}}
             .dump()
      << "\n";
  return 0;
}

int cmd_test(const Options& o, std::ostream& out, std::ostream& err) {
  GridFunction fn = read_function_file(o.file, &err);
  ExtremeCertificate cert = is_extreme(fn);
  auto yn = [](bool b) { return b ? "true" : "false"; };
  out << "q: " << fn.q() << "\n";
  out << "f: " << to_string(fn.f()) << "\n";
  out << "minimal: " << yn(cert.minimal) << "\n";
  out << "vertex: " << yn(cert.vertex) << "\n";
  out << "covered: " << yn(cert.covered) << "\n";
  if (cert.minimal) {
    out << "slopes: " << number_of_slopes(fn) << "\n";
    out << "components: " << cert.components << "\n";
    out << "uncovered:";
    for (int z : cert.uncovered) out << " " << z;
    out << "\n";
  }
  if (o.oversampling > 0)
    out << "oversampling_vertex(" << o.oversampling << "): " << yn(oversampling_vertex_test(fn, o.oversampling))
        << "\n";
  out << "extreme: " << yn(cert.extreme()) << "\n";
  return 0;
}

int cmd_vertices(const Options& o, std::ostream& out, std::ostream& err) {
  check_q(o.q);
  int f = f_index_of(o.q, o.f);
  Polytope p = o.triple ? build_triple_system_polytope(o.q, f) : build_minimal_function_polytope(o.q, f);
  EnumerateOptions opt;
  opt.auto_redund = !o.no_redund;
  auto vs = enumerate_vertices(p, opt);
  std::vector<GridFunction> fns;
  for (const auto& v : vs) fns.push_back(function_from_vertex(o.q, f, v));
  std::sort(fns.begin(), fns.end());
  for (const auto& fn : fns) out << to_json(fn) << "\n";
  err << fns.size() << " vertices\n";
  return 0;
}

int cmd_emit_mip(const Options& o, std::ostream& out) {
  check_q(o.q);
  int f = f_index_of(o.q, o.f);
  CoverType t = parse_cover_type(o.cover);
  std::string path = mip_target(o.out, mip_filename(o.q, f, o.slopes, o.maxstep, o.m, t));
  out << emit_mip(o.q, f, o.slopes, o.maxstep, o.m, t, path) << "\n";
  return 0;
}

int cmd_emit_mip_2q(const Options& o, std::ostream& out) {
  check_q(o.q);
  int f = f_index_of(o.q, o.f);
  int a = f_index_of(o.q, o.a, "--a");
  std::string path = mip_target(o.out, mip_2q_filename(o.q, f, a, o.slopes, o.maxstep, o.m));
  out << emit_mip_2q(o.q, f, a, o.slopes, o.maxstep, o.m, path) << "\n";
  return 0;
}

int cmd_refind(const Options& o, std::ostream& out, std::ostream& err) {
  check_q(o.q);
  GridFunction fn = refind_function(read_solution_file(o.sol), o.q, f_index_of(o.q, o.f));
  if (!o.out.empty()) write_function_file(fn, o.out);
  out << to_json(fn) << "\n";
  if (o.verify) {
    ExtremeCertificate cert = is_extreme(fn);
    err << "minimal: " << (cert.minimal ? "true" : "false") << ", extreme: " << (cert.extreme() ? "true" : "false")
        << "\n";
  }
  return 0;
}

int cmd_pattern(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.r < 1) throw ArgumentError("--r must be positive");
  auto fns = pattern_extreme(o.r, o.slopes);
  std::vector<json> records;
  for (const auto& fn : fns) {
    json rec = {{"function", function_json(fn)},
                {"slopes", number_of_slopes(fn)},
                {"slope_values", json::array()},
                {"r", o.r}};
    for (const auto& s : slopes_from_pi(o.r, fn)) rec["slope_values"].push_back(to_string(s));
    out << rec.dump() << "\n";
    records.push_back(rec);
  }
  if (!o.out.empty()) write_results_dir(o.out, records, fns);
  err << fns.size() << " functions, q = " << pattern_q(o.r) << "\n";
  return 0;
}

int cmd_plot(const Options& o, std::ostream& out, std::ostream& err) {
  GridFunction fn = read_function_file(o.file, &err);
  write_svg(render_2d_diagram(fn), o.out);
  out << o.out << "\n";
  return 0;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  check_q(o.q);
  std::vector<int> fs;
  if (!o.f.empty())
    fs.push_back(f_index_of(o.q, o.f));
  else
    for (int f = 1; f < o.q; ++f) fs.push_back(f);
  std::vector<BoundRow> rows;
  for (int f : fs) {
    if (o.q % 2 == 1 && o.q >= 3 && std::gcd(o.q, f) == 1) {
      rows.push_back({o.q, f, "basis_determinant", basis_determinant(construct_sequence(o.q, f)).get_str()});
    }
    UpperBoundReport rep =
        o.exhaustive ? check_upper_bound_exhaustive(o.q, f) : check_upper_bound(o.q, f, o.samples, o.seed);
    for (auto& r : rep.rows()) rows.push_back(r);
  }
  if (o.complexity) {
    EmpiricalComplexity c = empirical_complexity(o.q);
    rows.push_back({o.q, 0, "d_ext", c.d_ext.get_str()});
    rows.push_back({o.q, 0, "d_ver", c.d_ver.get_str()});
  }
  out << to_jsonl(rows);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact search for extreme Gomory-Johnson functions", "gj"};
  app.require_subcommand(1);
  Options o;

  auto* search = app.add_subcommand("search", "Search for extreme functions with a given slope count");
  search->add_option("--mode", o.mode, "vertex-filter, heuristic or combined")
      ->check(CLI::IsMember({"vertex-filter", "heuristic", "combined"}));
  search->add_option("--q", o.q)->required();
  search->add_option("--f", o.f, "f as P/Q")->required();
  search->add_option("--slopes", o.slopes)->required();
  search->add_option("--threshold", o.threshold, "exp_dim switch threshold");
  auto* eps = search->add_option("--epsilon", o.epsilon, "strict-subadditivity margin P/Q");
  search->add_flag("--exact", o.exact, "use epsilon = 1/10^ceil(q/4)")->excludes(eps);
  search->add_option("--workers", o.workers);
  search->add_option("--max-results", o.max_results);
  search->add_option("--out", o.out, "directory for function files");

  auto* test = app.add_subcommand("test", "Extremality certificate of a function file");
  test->add_option("--file", o.file)->required();
  test->add_option("--oversampling", o.oversampling, "also run the restriction vertex test");

  auto* vertices = app.add_subcommand("vertices", "Vertices of the minimal-function polytope");
  vertices->add_option("--q", o.q)->required();
  vertices->add_option("--f", o.f)->required();
  vertices->add_flag("--triple-system", o.triple);
  vertices->add_flag("--no-redund", o.no_redund);

  auto* emit = app.add_subcommand("emit-mip", "Write the MIP model in LP format");
  emit->add_option("--q", o.q)->required();
  emit->add_option("--f", o.f)->required();
  emit->add_option("--slopes", o.slopes)->required();
  emit->add_option("--maxstep", o.maxstep);
  emit->add_option("--m", o.m, "epsilon = 1/m");
  emit->add_option("--type", o.cover)->check(CLI::IsMember({"standard", "fulldim", "fulldim_covers"}));
  emit->add_option("--out", o.out, "file or directory");

  auto* emit2 = app.add_subcommand("emit-mip-2q", "Write the 2q-example MIP model");
  emit2->add_option("--q", o.q)->required();
  emit2->add_option("--f", o.f)->required();
  emit2->add_option("--a", o.a)->required();
  emit2->add_option("--slopes", o.slopes)->required();
  emit2->add_option("--maxstep", o.maxstep);
  emit2->add_option("--m", o.m);
  emit2->add_option("--out", o.out, "file or directory");

  auto* refind = app.add_subcommand("refind", "Recover an exact function from a solver solution");
  refind->add_option("--sol", o.sol)->required();
  refind->add_option("--q", o.q)->required();
  refind->add_option("--f", o.f)->required();
  refind->add_option("--out", o.out, "function file to write");
  refind->add_flag("--verify", o.verify, "report minimality and extremality on stderr");

  auto* pattern = app.add_subcommand("pattern", "Many-slope search on q = 36r+22");
  pattern->add_option("--r", o.r)->required();
  pattern->add_option("--slopes", o.slopes)->required();
  pattern->add_option("--out", o.out);

  auto* plot = app.add_subcommand("plot", "Render the additivity diagram as SVG");
  plot->add_option("--file", o.file)->required();
  plot->add_option("--out", o.out)->required();

  auto* bounds = app.add_subcommand("bounds", "Basis determinant and complexity bounds");
  bounds->add_option("--q", o.q)->required();
  bounds->add_option("--f", o.f);
  bounds->add_option("--samples", o.samples);
  bounds->add_option("--seed", o.seed);
  bounds->add_flag("--exhaustive", o.exhaustive);
  bounds->add_flag("--complexity", o.complexity, "also compute d_ext and d_ver");

  std::vector<const char*> argv{"gj"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (*search) return cmd_search(o, out, err);
    if (*test) return cmd_test(o, out, err);
    if (*vertices) return cmd_vertices(o, out, err);
    if (*emit) return cmd_emit_mip(o, out);
    if (*emit2) return cmd_emit_mip_2q(o, out);
    if (*refind) return cmd_refind(o, out, err);
    if (*pattern) return cmd_pattern(o, out, err);
    if (*plot) return cmd_plot(o, out, err);
    if (*bounds) return cmd_bounds(o, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace gj::cli
