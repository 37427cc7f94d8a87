#include "tukey/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "tukey/data.hpp"
#include "tukey/dualgraph.hpp"
#include "tukey/errors.hpp"
#include "tukey/oracle.hpp"

namespace tukey::cli {

namespace fs = std::filesystem;

std::string format_region_file(const Dataset& data, const SearchResult& search,
                               const RegionPolytope& region) {
  std::ostringstream out;
  out << "level " << search.level << '\n'
      << "strategy " << to_string(search.strategy) << '\n'
      << "n " << data.n() << '\n'
      << "d " << data.dim() << '\n'
      << "status " << to_string(region.status) << '\n';
  out << "halfspaces " << search.halfspaces.size() << '\n';
  for (const auto& h : search.halfspaces) out << format_halfspace(h) << '\n';
  out << "vertices " << region.vertices.size() << '\n';
  for (const auto& v : region.vertices) {
    for (int i = 0; i < v.dim(); ++i) out << (i ? "," : "") << format_double(v[i]);
    out << '\n';
  }
  out << "facets " << region.facet_rows.size() << '\n';
  for (std::size_t r : region.facet_rows) out << r << '\n';
  return out.str();
}

namespace {

struct Source {
  std::string in;
  std::string gen;
  int n = 50;
  int d = 3;
  std::uint64_t seed = 1;
  bool skip_gp = false;
};

Predicates predicates(const std::string& arith) {
  Predicates p;
  p.mode = parse_arithmetic(arith);
  return p;
}

std::string default_arith() {
  const char* env = std::getenv(kArithEnv);
  return env && *env ? std::string(env) : std::string("float");
}

bool is_generator(const std::string& name) {
  return name == "counterexample" || name == "octagon" || name == "gaussian";
}

Dataset generate(const std::string& kind, const Source& s) {
  if (kind == "counterexample") {
    CounterexampleSpec spec;
    spec.seed = 0;
    return generate_counterexample(spec);
  }
  if (kind == "octagon") return generate_octagon();
  if (kind == "gaussian") return generate_gaussian(s.n, s.d, s.seed);
  throw PreconditionError("unknown generator '" + kind +
                          "' (counterexample, octagon or gaussian)");
}

Dataset load_source(const Source& s, const Predicates& pred) {
  if (!s.gen.empty()) return generate(s.gen, s);
  if (s.in.empty()) throw PreconditionError("no input: pass --in <file> or --gen <generator>");
  if (!fs::exists(s.in) && is_generator(s.in)) return generate(s.in, s);
  LoadOptions opts;
  opts.check_general_position = !s.skip_gp;
  opts.pred = pred;
  return load_points(s.in, opts);
}

void add_source(CLI::App* cmd, Source& s) {
  cmd->add_option("--in", s.in, "CSV point file, or a generator name");
  cmd->add_option("--gen", s.gen, "generator: counterexample, octagon, gaussian");
  cmd->add_option("--n", s.n, "gaussian sample size");
  cmd->add_option("--d", s.d, "gaussian dimension");
  cmd->add_option("--seed", s.seed, "gaussian seed");
  cmd->add_flag("--skip-gp-check", s.skip_gp, "do not verify general position on load");
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_file_atomic(path, text);
}

RegionPolytope region_of(const Dataset& x, const SearchResult& r) {
  if (r.halfspaces.empty()) {
    RegionPolytope empty;
    empty.level = r.level;
    empty.dim = x.dim();
    return empty;
  }
  return intersect_halfspaces(r.halfspaces, x.dim(), r.level);
}

SearchResult search_level(SearchEngine& e, int k, Strategy s) {
  if (s != Strategy::B) return e.search(k, InitStrategy{s, {}});
  // B needs the exact previous level; build it up from level 1.
  SearchResult r = e.search(1, InitStrategy{Strategy::A, {}});
  r.strategy = Strategy::B;
  for (int level = 2; level <= k; ++level) {
    if (r.halfspaces.empty())
      throw EmptyPrior("level " + std::to_string(level - 1) + " has no relevant halfspaces");
    r = e.search(level, InitStrategy{Strategy::B, r.halfspaces});
  }
  return r;
}

std::vector<double> parse_point(const std::string& text, const Dataset& x) {
  if (auto idx = x.index_of_label(text)) {
    const auto p = x.point(*idx);
    return {p.begin(), p.end()};
  }
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string cell = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                     : comma - start);
    double v = 0.0;
    const char* b = cell.data();
    while (*b == ' ') ++b;
    const auto res = std::from_chars(b, cell.data() + cell.size(), v);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
      throw ParseError("--point: '" + text + "' is neither a label nor a coordinate list");
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (static_cast<int>(out.size()) != x.dim())
    throw DimensionMismatch("--point has " + std::to_string(out.size()) +
                            " coordinates, data has d = " + std::to_string(x.dim()));
  return out;
}

// ------------------------------------------------------------- commands

struct Common {
  Source src;
  std::string arith = default_arith();
  std::string out;
};

int cmd_region(const Common& c, int k, const std::string& strategy, std::ostream& out,
               std::ostream& err) {
  const Predicates pred = predicates(c.arith);
  const Dataset x = load_source(c.src, pred);
  const Strategy s = parse_strategy(strategy);
  if (s == Strategy::A && x.dim() > 2 && k > 2)
    err << "warning: strategy A is not exact for d > 2 and k > 2; "
           "relevant halfspaces may be missing and the region may be too large\n";
  SearchEngine engine(x, pred);
  const SearchResult r = search_level(engine, k, s);
  emit(c.out, format_region_file(x, r, region_of(x, r)), out);
  return 0;
}

int cmd_all_regions(const Common& c, int max_level, const std::string& dir,
                    std::ostream& out) {
  const Predicates pred = predicates(c.arith);
  const Dataset x = load_source(c.src, pred);
  const auto levels = compute_all_regions(x, max_level, pred);
  if (!dir.empty()) fs::create_directories(dir);
  for (const auto& r : levels) {
    const RegionPolytope region = region_of(x, r);
    const std::string text = format_region_file(x, r, region);
    if (!dir.empty())
      write_file_atomic(fs::path(dir) / ("region_k" + std::to_string(r.level) + ".txt"), text);
    out << "k=" << r.level << " halfspaces=" << r.halfspaces.size()
        << " status=" << to_string(region.status) << " vertices=" << region.vertices.size()
        << (r.skipped ? " skipped" : "") << '\n';
  }
  return 0;
}

int cmd_median(const Common& c, std::ostream& out) {
  const Predicates pred = predicates(c.arith);
  const Dataset x = load_source(c.src, pred);
  const MedianResult m = tukey_median(x, pred);
  std::ostringstream text;
  text << "k_max " << m.k_max << '\n' << "status " << to_string(m.region.status) << '\n';
  text << "barycentre ";
  for (int i = 0; i < m.barycentre.dim(); ++i)
    text << (i ? "," : "") << format_double(m.barycentre[i]);
  text << '\n' << "vertices " << m.region.vertices.size() << '\n';
  for (const auto& v : m.region.vertices) {
    for (int i = 0; i < v.dim(); ++i) text << (i ? "," : "") << format_double(v[i]);
    text << '\n';
  }
  emit(c.out, text.str(), out);
  return 0;
}

int cmd_depth(const Common& c, const std::string& point, std::ostream& out) {
  const Predicates pred = predicates(c.arith);
  const Dataset x = load_source(c.src, pred);
  const auto p = parse_point(point, x);
  emit(c.out, std::to_string(exact_depth(p, x, pred)) + "\n", out);
  return 0;
}

int cmd_dual_graph(const Common& c, std::optional<int> level, const std::string& fmt,
                   std::ostream& out, std::ostream& err) {
  const Predicates pred = predicates(c.arith);
  const Dataset x = load_source(c.src, pred);
  const GraphFormat f = parse_graph_format(fmt);
  const DualGraph g = build_dual_graph(x, pred);
  emit(c.out, export_graph(g, f, level), out);
  err << "vertices=" << g.size() << " edges=" << g.edge_count()
      << " max_weight=" << g.max_weight();
  if (level) {
    const auto sub = monochrome_subgraph(g, *level);
    err << " level=" << *level << " level_vertices=" << sub.vertex_ids.size()
        << " components=" << sub.components.size() << " component_sizes=";
    for (std::size_t i = 0; i < sub.components.size(); ++i)
      err << (i ? "," : "") << sub.components[i].size();
  }
  err << '\n';
  return 0;
}

int cmd_gen(const Common& c, std::ostream& out) {
  if (c.src.gen.empty() && !is_generator(c.src.in))
    throw PreconditionError("gen needs --gen <counterexample|octagon|gaussian>");
  const Dataset x = generate(c.src.gen.empty() ? c.src.in : c.src.gen, c.src);
  emit(c.out, format_points(x), out);
  return 0;
}

struct BenchConfig {
  std::vector<int> ns{100};
  std::vector<int> ds{4};
  int max_level = 0;  // 0: ceil(n / 10)
  int seeds = 3;
  std::uint64_t first_seed = 1;
  bool timing = false;
};

int cmd_bench(const Common& c, const BenchConfig& b, std::ostream& out) {
  using clock = std::chrono::steady_clock;
  const Predicates pred = predicates(c.arith);
  std::ostringstream csv;
  csv << "n,d,seed,k,h_A,h_B,h_C,visited_A,visited_B,visited_C,visited_ratio_BC,A_matches_C";
  if (b.timing) csv << ",ms_A,ms_B,ms_C,time_ratio_BC,time_ratio_BA";
  csv << '\n';
  csv << std::setprecision(6);
  for (int n : b.ns) {
    for (int d : b.ds) {
      const int max_level = b.max_level > 0 ? b.max_level : (n + 9) / 10;
      for (int s = 0; s < b.seeds; ++s) {
        const std::uint64_t seed = b.first_seed + static_cast<std::uint64_t>(s);
        const Dataset x = generate_gaussian(n, d, seed);
        // One engine per strategy so no strategy profits from another's memo.
        SearchEngine ea(x, pred), eb(x, pred), ec(x, pred);
        std::vector<Halfspace> prior;
        for (int k = 1; k <= max_level && k <= n / 2; ++k) {
          auto t0 = clock::now();
          const SearchResult ra = ea.search(k, InitStrategy{Strategy::A, {}});
          auto t1 = clock::now();
          SearchResult rb = k == 1 ? eb.search(1, InitStrategy{Strategy::A, {}})
                                   : eb.search(k, InitStrategy{Strategy::B, prior});
          auto t2 = clock::now();
          const SearchResult rc = ec.search(k, InitStrategy{Strategy::C, {}});
          auto t3 = clock::now();
          prior = std::move(rb.halfspaces);
          const double ratio =
              static_cast<double>(rb.ridges_visited) / static_cast<double>(rc.ridges_visited);
          csv << n << ',' << d << ',' << seed << ',' << k << ',' << ra.halfspaces.size() << ','
              << prior.size() << ',' << rc.halfspaces.size() << ',' << ra.ridges_visited << ','
              << rb.ridges_visited << ',' << rc.ridges_visited << ',' << ratio << ','
              << (ra.keys() == rc.keys() ? 1 : 0);
          if (b.timing) {
            auto ms = [](auto a, auto z) {
              return std::chrono::duration<double, std::milli>(z - a).count();
            };
            const double ta = ms(t0, t1), tb = ms(t1, t2), tc = ms(t2, t3);
            csv << ',' << ta << ',' << tb << ',' << tc << ',' << tb / tc << ',' << tb / ta;
          }
          csv << '\n';
          if (prior.empty()) break;
        }
      }
    }
  }
  emit(c.out, csv.str(), out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Tukey depth central regions", "tukeyregion"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tukeyregion 1.0.0");

  Common c;
  auto common = [&](CLI::App* cmd) {
    add_source(cmd, c.src);
    cmd->add_option("--arith", c.arith, "float or exact (default from $TUKEY_ARITH)");
    cmd->add_option("--out,-o", c.out, "output file (default stdout)");
  };

  int k = 1;
  std::string strategy = "C";
  auto* region = app.add_subcommand("region", "relevant halfspaces and region at one level");
  common(region);
  region->add_option("--k", k, "depth level")->required();
  region->add_option("--strategy", strategy, "A, B, C, A2, ReducedD2 or ReducedK2");

  int max_level = 1;
  std::string out_dir;
  auto* all = app.add_subcommand("all-regions", "regions for levels 1..K");
  common(all);
  all->add_option("--K", max_level, "deepest level")->required();
  all->add_option("--out-dir", out_dir, "directory for region_k<k>.txt files");

  auto* median = app.add_subcommand("median", "deepest non-empty region and its barycentre");
  common(median);

  std::string point;
  auto* depth = app.add_subcommand("depth", "Tukey depth of a point");
  common(depth);
  depth->add_option("--point", point, "label or comma-separated coordinates")->required();

  std::optional<int> level;
  std::string fmt = "dot";
  auto* dual = app.add_subcommand("dual-graph", "dual graph export");
  common(dual);
  dual->add_option("--level", level, "restrict to the weight-k subgraph");
  dual->add_option("--fmt", fmt, "dot or csv");

  auto* gen = app.add_subcommand("gen", "write a generated dataset as CSV");
  common(gen);

  BenchConfig bench_cfg;
  auto* bench = app.add_subcommand("bench", "strategy comparison on Gaussian samples");
  common(bench);
  bench->add_option("--ns", bench_cfg.ns, "sample sizes");
  bench->add_option("--ds", bench_cfg.ds, "dimensions");
  bench->add_option("--K", bench_cfg.max_level, "deepest level (default ceil(n/10))");
  bench->add_option("--seeds", bench_cfg.seeds, "datasets per (n, d)");
  bench->add_option("--first-seed", bench_cfg.first_seed, "seed of the first dataset");
  bench->add_flag("--timing", bench_cfg.timing, "add wall-clock columns (not deterministic)");

  std::vector<const char*> argv{"tukeyregion"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << "tukeyregion 1.0.0\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (region->parsed()) return cmd_region(c, k, strategy, out, err);
    if (all->parsed()) return cmd_all_regions(c, max_level, out_dir, out);
    if (median->parsed()) return cmd_median(c, out);
    if (depth->parsed()) return cmd_depth(c, point, out);
    if (dual->parsed()) return cmd_dual_graph(c, level, fmt, out, err);
    if (gen->parsed()) return cmd_gen(c, out);
    if (bench->parsed()) return cmd_bench(c, bench_cfg, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what();
    if (e.row() >= 0) err << " (row " << e.row() << ", column " << e.column() << ')';
    err << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  }
  return 2;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace tukey::cli
