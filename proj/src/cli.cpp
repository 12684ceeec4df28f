#include "dcpgen/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "dcpgen/analytics.hpp"
#include "dcpgen/convexity_oracle.hpp"
#include "dcpgen/dcp.hpp"
#include "dcpgen/errors.hpp"

namespace dcpgen::cli {

namespace {

using nlohmann::ordered_json;

std::string num(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string segments_field(const SegmentMultiset& m) {
  std::string s;
  for (const auto& e : m.entries()) {
    if (!s.empty()) s += ';';
    s += std::to_string(e.segment.east()) + ',' + std::to_string(e.segment.north()) + ',' +
         std::to_string(e.multiplicity);
  }
  return s;
}

// One record per line: "key=value" pairs separated by spaces, or a JSON object.
class Record {
 public:
  Record& add(const std::string& key, const std::string& value) {
    text_ += (text_.empty() ? "" : " ") + key + '=' + value;
    json_[key] = value;
    return *this;
  }
  Record& add(const std::string& key, std::uint64_t value) {
    text_ += (text_.empty() ? "" : " ") + key + '=' + std::to_string(value);
    json_[key] = value;
    return *this;
  }
  Record& add(const std::string& key, double value) {
    text_ += (text_.empty() ? "" : " ") + key + '=' + num(value);
    json_[key] = value;
    return *this;
  }
  Record& add(const std::string& key, bool value) {
    text_ += (text_.empty() ? "" : " ") + key + '=' + (value ? "true" : "false");
    json_[key] = value;
    return *this;
  }
  std::string str(const std::string& format) const { return (format == "json" ? json_.dump() : text_) + '\n'; }

 private:
  std::string text_;
  ordered_json json_ = ordered_json::object();
};

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void require_format(const RunConfig& c, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (c.format == f) return;
  std::string list;
  for (const char* f : allowed) list += std::string(list.empty() ? "" : ", ") + f;
  throw std::invalid_argument("--format for " + c.command + " must be one of: " + list);
}

// Exactly one of --x and --n; n maps to the refined tuned parameter.
double sampling_parameter(const RunConfig& c, double n_scale, std::ostream& err) {
  require(c.x.has_value() != c.n.has_value(), c.command + ": give exactly one of --x and --n");
  if (c.x) return *c.x;
  require(*c.n >= 1, c.command + ": --n must be >= 1");
  const double x = tune_parameter(static_cast<double>(*c.n) * n_scale, true);
  err << c.command << ": tuned x=" << num(x) << " for n=" << *c.n << '\n';
  return x;
}

// Runs body(i) for i < count on `workers` threads and writes the returned
// strings in index order.
void for_each_sample(std::uint64_t count, unsigned workers, std::ostream& out,
                     const std::function<std::string(std::uint64_t)>& body) {
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) out << body(i);
    return;
  }
  std::vector<std::string> results(count);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto work = [&] {
    for (std::uint64_t i; (i = next.fetch_add(1)) < count;) {
      try {
        results[i] = body(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  for (const auto& r : results) out << r;
}

int cmd_tune(const RunConfig& c, std::ostream& out, std::ostream&) {
  require(c.n.has_value(), "tune: --n is required");
  require(*c.n >= 1, "tune: --n must be >= 1");
  require_format(c, {"text", "json"});
  const double n = static_cast<double>(*c.n);
  const double closed = tune_parameter(n, false);
  const double refined = tune_parameter(n, true);
  Record r;
  r.add("n", *c.n).add("closed_form", closed).add("refined", refined);
  if (closed > 0 && closed < 1) r.add("mean_size_closed_form", mean_size(closed, c.tail_tol));
  r.add("mean_size_refined", mean_size(refined, c.tail_tol));
  out << r.str(c.format);
  return kOk;
}

int cmd_sample_path(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_format(c, {"text", "json"});
  const double x = sampling_parameter(c, 1.0, err);
  require(!c.exact || c.n, "sample-path: --exact needs --n");
  require(c.eps > 0 && c.eps < 1, "sample-path: --eps must lie in (0, 1)");
  const GfContext ctx = build_context(x, c.tail_tol);
  for_each_sample(c.samples, c.workers, out, [&](std::uint64_t i) {
    RngStream rng(c.seed, i);
    SampleReport<PathSample> s = !c.n     ? sample_path_free(ctx, rng)
                                 : c.exact ? sample_path_exact(ctx, *c.n, rng, c.trial_cap)
                                           : sample_path_approx(ctx, *c.n, c.eps, rng, c.trial_cap);
    Record r;
    r.add("sample", i).add("size", s.size).add("trials", s.trials).add("word", s.value.word.bits());
    r.add("segments", segments_field(s.value.multiset));
    return r.str(c.format);
  });
  return kOk;
}

DcpMethod parse_method(const std::string& m) {
  if (m == "naive") return DcpMethod::Naive;
  if (m == "collapsed") return DcpMethod::Collapsed;
  throw std::invalid_argument("--method must be naive or collapsed");
}

Record& add_polyomino(Record& r, const Polyomino& p) {
  r.add("perimeter", p.perimeter).add("width", static_cast<std::uint64_t>(p.width));
  r.add("height", static_cast<std::uint64_t>(p.height)).add("area", p.area);
  r.add("wn", p.wn.bits()).add("ne", p.ne.bits()).add("es", p.es.bits()).add("sw", p.sw.bits());
  return r;
}

int cmd_sample_dcp(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_format(c, {"text", "json"});
  // --n is the target quarter-path size, a quarter of the mean perimeter.
  const double x = sampling_parameter(c, 0.25, err);
  const DcpMethod method = parse_method(c.method);
  const GfContext ctx = build_context(x, c.tail_tol);
  for_each_sample(c.samples, c.workers, out, [&](std::uint64_t i) {
    RngStream rng(c.seed, i);
    const SampleReport<Polyomino> s = sample_dcp(ctx, rng, method, c.trial_cap);
    Record r;
    r.add("sample", i).add("trials", s.trials);
    return add_polyomino(r, s.value).str(c.format);
  });
  return kOk;
}

int cmd_count(const RunConfig& c, std::ostream& out, std::ostream&) {
  require_format(c, {"text", "csv"});
  out << format_count_table(count_paths(c.count_limit));
  return kOk;
}

int cmd_check(const RunConfig& c, std::ostream& out, std::ostream&) {
  require_format(c, {"text", "json"});
  require(!c.words.empty(), "check: give at least one word");
  bool all = true;
  for (const std::string& s : c.words) {
    const PathWord w(s);
    const auto factors = nw_factorization(w);
    const bool geometric = is_nw_convex_geometric(w);
    std::string f;
    if (factors) {
      f = "1";
      for (const PathWord& piece : *factors) f += '|' + piece.bits();
    }
    Record r;
    r.add("word", s).add("nw_convex", factors.has_value()).add("geometric", geometric);
    if (factors) r.add("factorization", f);
    out << r.str(c.format);
    all = all && factors.has_value() == geometric;
  }
  return all ? kOk : kInternalError;
}

int cmd_shape(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_format(c, {"text", "csv"});
  require(c.n.has_value(), "shape: --n is required");
  require(c.eps > 0 && c.eps < 1, "shape: --eps must lie in (0, 1)");
  const double x = c.x ? *c.x : tune_parameter(static_cast<double>(*c.n), true);
  const GfContext ctx = build_context(x, c.tail_tol);
  const ShapeProfile p = shape_profile(ctx, *c.n, c.samples, c.grid_points, c.seed, c.eps, c.workers, c.trial_cap);
  err << "shape: sup distance to the limit curve " << num(sup_distance(p)) << '\n';
  out << "# sampler=approximate-size eps=" << num(p.eps) << " x=" << num(x) << " seed=" << c.seed << '\n';
  out << "# size=multiset size (the leading north step is not counted); heights piecewise constant, "
         "divided by each sample's size\n";
  out << "# endpoint_east=" << num(p.endpoint_east) << " endpoint_north=" << num(p.endpoint_north)
      << " slope1_east=" << num(p.slope1_east) << " slope1_north=" << num(p.slope1_north)
      << " initial_run=" << num(p.initial_run) << " mean_size=" << num(p.mean_size)
      << " mean_trials=" << num(p.mean_trials) << '\n';
  out << "z,mean_height,reference,n,samples\n";
  for (std::size_t i = 0; i < p.grid.size(); ++i)
    out << num(p.grid[i]) << ',' << num(p.mean_heights[i]) << ',' << num(p.reference[i]) << ',' << p.n << ','
        << p.samples << '\n';
  return kOk;
}

int cmd_render(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_format(c, {"text", "svg"});
  require(c.scale > 0, "render: --scale must be positive");
  Polyomino p;
  if (!c.words.empty()) {
    require(c.words.size() == 4, "render: give four words (wn ne es sw) or sample with --x/--n");
    p = assemble_contour(PathWord(c.words[0]), PathWord(c.words[1]), PathWord(c.words[2]), PathWord(c.words[3]));
  } else {
    const double x = sampling_parameter(c, 0.25, err);
    const GfContext ctx = build_context(x, c.tail_tol);
    RngStream rng(c.seed, 0);
    p = sample_dcp(ctx, rng, parse_method(c.method), c.trial_cap).value;
  }
  Record r;
  err << "render: " << add_polyomino(r, p).str("text");
  out << render(p, c.scale);
  return kOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream&) {
  require_format(c, {"text", "json"});
  require(c.max_length <= 24, "verify: --max-length is capped at 24");
  bool ok = true;
  auto report = [&](const std::string& name, bool pass, const std::function<void(Record&)>& fields) {
    Record r;
    r.add("check", name).add("pass", pass);
    fields(r);
    out << r.str(c.format);
    ok = ok && pass;
  };

  {
    std::uint64_t words = 0, disagreements = 0;
    for (std::size_t len = 1; len <= c.max_length; ++len) {
      std::string bits(len, '0');
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << len); ++m) {
        for (std::size_t i = 0; i < len; ++i) bits[i] = (m >> (len - 1 - i)) & 1 ? '1' : '0';
        const PathWord w(bits);
        disagreements += is_nw_convex(w) != is_nw_convex_geometric(w);
        ++words;
      }
    }
    report("checker-agreement", disagreements == 0, [&](Record& r) {
      r.add("max_length", static_cast<std::uint64_t>(c.max_length)).add("words", words);
      r.add("disagreements", disagreements);
    });
  }
  {
    const CountTable t = count_paths(12);
    std::uint64_t mismatches = 0, bad_words = 0;
    for (std::size_t n = 0; n <= 12; ++n) {
      const auto all = enumerate_paths(n);
      mismatches += BigInt(all.size()) != t.counts[n];
      for (const auto& m : all) {
        const PathWord w = assemble_path(m);
        bad_words += !is_nw_convex(w) || !is_nw_convex_geometric(w);
      }
    }
    report("enumeration-vs-counts", mismatches == 0 && bad_words == 0, [&](Record& r) {
      r.add("max_n", std::uint64_t{12}).add("count_mismatches", mismatches).add("rejected_words", bad_words);
    });
  }
  for (double x : {0.3, 0.5, 0.7, 0.9, 0.95}) {
    const double gap = series_identity_check(build_context(x, c.tail_tol));
    report("series-identity", gap < 1e-8, [&](Record& r) { r.add("x", x).add("max_relative_gap", gap); });
  }
  return ok ? kOk : kFailure;
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.command == "tune") return cmd_tune(c, out, err);
  if (c.command == "sample-path") return cmd_sample_path(c, out, err);
  if (c.command == "sample-dcp") return cmd_sample_dcp(c, out, err);
  if (c.command == "count") return cmd_count(c, out, err);
  if (c.command == "check") return cmd_check(c, out, err);
  if (c.command == "shape") return cmd_shape(c, out, err);
  if (c.command == "render") return cmd_render(c, out, err);
  if (c.command == "verify") return cmd_verify(c, out, err);
  throw std::invalid_argument("unknown command '" + c.command + "'");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.out.empty()) return dispatch(config, out, err);
    std::ostringstream buffer;
    const int code = dispatch(config, buffer, err);
    std::ofstream file(config.out, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open --out file '" + config.out + "'");
    file << buffer.str();
    return code;
  } catch (const TrialCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kTrialCap;
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArgs;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArgs;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boltzmann sampling of NW-convex paths and digitally convex polyominoes", "dcpgen"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--tail-tol", c.tail_tol, "Relative tail tolerance of the truncated series")->capture_default_str();
    s->add_option("--out", c.out, "Write machine output to this file");
    s->add_option("--format", c.format, "Output format")->capture_default_str();
  };
  auto add_sampling = [&](CLI::App* s) {
    add_common(s);
    s->add_option("--x", c.x, "Boltzmann parameter in (0, 1)");
    s->add_option("-n,--n", c.n, "Target size (tunes x)");
    s->add_option("--samples", c.samples, "Number of samples")->capture_default_str();
    s->add_option("--seed", c.seed, "Random seed")->capture_default_str();
    s->add_option("--workers", c.workers, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
    s->add_option("--trial-cap", c.trial_cap, "Rejection rounds before giving up")->capture_default_str();
  };

  CLI::App* tune = app.add_subcommand("tune", "Boltzmann parameter for a target size");
  add_common(tune);
  tune->add_option("-n,--n", c.n, "Target size")->required();

  CLI::App* sp = app.add_subcommand("sample-path", "Sample NW-convex paths");
  add_sampling(sp);
  sp->add_option("--eps", c.eps, "Approximate-size window")->capture_default_str();
  sp->add_flag("--exact", c.exact, "Exact size n");

  CLI::App* sd = app.add_subcommand("sample-dcp", "Sample digitally convex polyominoes");
  add_sampling(sd);
  sd->add_option("--method", c.method, "naive or collapsed")->capture_default_str();

  CLI::App* count = app.add_subcommand("count", "Exact number of NW-convex paths of each size");
  add_common(count);
  count->add_option("-N", c.count_limit, "Largest size")->required();

  CLI::App* check = app.add_subcommand("check", "Test words for NW-convexity");
  add_common(check);
  check->add_option("words", c.words, "Binary words")->required();

  CLI::App* shape = app.add_subcommand("shape", "Mean renormalized path profile");
  add_sampling(shape);
  shape->add_option("--eps", c.eps, "Approximate-size window (default 0.05)");
  shape->add_option("--grid", c.grid_points, "Grid points on [0, 1/2]")->capture_default_str();

  CLI::App* render_cmd = app.add_subcommand("render", "SVG image of a polyomino");
  add_sampling(render_cmd);
  render_cmd->add_option("words", c.words, "Four words wn ne es sw instead of sampling");
  render_cmd->add_option("--scale", c.scale, "Pixels per unit")->capture_default_str();
  render_cmd->add_option("--method", c.method, "naive or collapsed")->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify", "Cross-check the oracles");
  add_common(verify);
  verify->add_option("--max-length", c.max_length, "Longest word in the checker sweep")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInvalidArgs;
  }

  c.command = app.get_subcommands().front()->get_name();
  if (c.command == "shape" && shape->count("--eps") == 0) c.eps = 0.05;
  if ((c.command == "shape" || c.command == "render") && c.format == "text")
    c.format = c.command == "shape" ? "csv" : "svg";
  if (c.command == "count" && c.format == "text") c.format = "csv";
  return run(c, out, err);
}

}  // namespace dcpgen::cli
