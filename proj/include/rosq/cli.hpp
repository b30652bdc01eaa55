#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rosq/cache.hpp"
#include "rosq/chart.hpp"
#include "rosq/detection.hpp"
#include "rosq/homotopy.hpp"
#include "rosq/oracle.hpp"

namespace rosq::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kPatternViolation = 3 };

struct Range {
  int lo = 0;
  int hi = 0;
};

inline Range parse_range(const std::string& text) {
  static const std::regex re(R"(^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) {
    static const std::regex single(R"(^\s*(-?\d+)\s*$)");
    if (std::regex_match(text, m, single)) {
      const int v = std::stoi(m[1]);
      return {v, v};
    }
    throw ArgumentError("expected a range A..B, got '" + text + "'");
  }
  Range r{std::stoi(m[1]), std::stoi(m[2])};
  if (r.lo > r.hi) throw ArgumentError("empty range '" + text + "'");
  return r;
}

/// Flags shared by every subcommand that builds a spectral sequence.
struct SequenceOptions {
  std::string theory = "en";
  int height = 2;
  int series_degree = 6;
  int witt_precision = 0;  // 0: n + 3
  int vbar_generators = 0;  // 0: as many as the window needs
  std::string stems = "-8..40";
  std::string sigma = "0..0";
  std::string filt = "0..48";
  std::string cache;
  bool recompute = false;

  CLI::Option* stems_opt = nullptr;
  CLI::Option* sigma_opt = nullptr;
  CLI::Option* filt_opt = nullptr;
  CLI::Option* height_opt = nullptr;
  CLI::Option* theory_opt = nullptr;

  void add_to(CLI::App& app, bool with_theory = true) {
    if (with_theory) theory_opt = app.add_option("--theory", theory, "en or bpr")->capture_default_str();
    height_opt = app.add_option("--height", height, "height n of E_n (bpr uses --vgens)")
                     ->capture_default_str();
    app.add_option("--series-deg", series_degree, "power series truncation D")->capture_default_str();
    app.add_option("--witt-prec", witt_precision, "2-adic precision M (default n+3)");
    if (with_theory) app.add_option("--vgens", vbar_generators, "number of v-generators for bpr (default: auto)");
    stems_opt = app.add_option("--stems", stems, "integer stem range A..B")->capture_default_str();
    sigma_opt = app.add_option("--sigma", sigma, "sigma-coordinate range C..D")->capture_default_str();
    filt_opt = app.add_option("--filt", filt, "filtration range 0..S")->capture_default_str();
    app.add_option("--cache", cache, "cache file to read or write");
    app.add_flag("--recompute", recompute, "ignore any cached result");
  }

  CoefficientContext context() const {
    CoefficientContext ctx;
    ctx.theory = parse_theory(theory);
    if (ctx.theory == Theory::en) {
      if (height < 1 || height > 8) throw ArgumentError("--height must be in 1..8");
      ctx.height = height;
    } else {
      ctx.height = vbar_generators;
    }
    ctx.series_degree = ctx.theory == Theory::en ? series_degree : 1;
    ctx.witt_precision = witt_precision > 0 ? witt_precision : (ctx.theory == Theory::en ? height + 3 : 5);
    if (series_degree < 1) throw ArgumentError("--series-deg must be >= 1");
    return ctx;
  }

  Window window() const {
    const Range a = parse_range(stems), b = parse_range(sigma), s = parse_range(filt);
    Window w{a.lo, a.hi, b.lo, b.hi, s.lo, s.hi};
    w.validate();
    return w;
  }
};

inline std::filesystem::path cache_dir() {
  const char* env = std::getenv("ROSQ_CACHE_DIR");
  return env && *env ? std::filesystem::path(env) : std::filesystem::path();
}

inline std::string cache_name(const CoefficientContext& ctx, const Window& w) {
  auto r = [](int lo, int hi) { return std::to_string(lo) + "_" + std::to_string(hi); };
  return std::string(theory_name(ctx.theory)) + "-n" + std::to_string(ctx.height) + "-D" +
         std::to_string(ctx.series_degree) + "-M" + std::to_string(ctx.witt_precision) + "-a" + r(w.a_min, w.a_max) +
         "-b" + r(w.b_min, w.b_max) + "-s" + r(w.s_min, w.s_max) + ".rosq";
}

inline SpectralSequenceRun compute_run(CoefficientContext ctx, const Window& w) {
  if (ctx.theory == Theory::en) return run_to_einfty(build_e2_en(ctx.height, w, ctx.series_degree, ctx.witt_precision));
  const int v = ctx.height > 0 ? ctx.height : suggested_bpr_generators(w);
  return run_to_einfty(build_e2_bpr(w, v, ctx.witt_precision));
}

/// Resolves the context (auto v-generator count) before naming the cache.
inline CoefficientContext resolved_context(CoefficientContext ctx, const Window& w) {
  if (ctx.theory == Theory::bpr && ctx.height <= 0) ctx.height = suggested_bpr_generators(w);
  return ctx;
}

/// Cached run for the options: an explicit --cache file, else the entry in
/// $ROSQ_CACHE_DIR, else a fresh computation (stored when a cache directory
/// is configured).
inline SpectralSequenceRun obtain_run(const SequenceOptions& o, CoefficientContext ctx, const Window& w,
                                      std::ostream& err) {
  ctx = resolved_context(ctx, w);
  std::filesystem::path path;
  if (!o.cache.empty()) {
    path = o.cache;
  } else if (!cache_dir().empty()) {
    path = cache_dir() / cache_name(ctx, w);
  }
  if (!path.empty() && !o.recompute && std::filesystem::exists(path)) {
    SpectralSequenceRun run = load_run(path);
    if (!(run.context() == ctx) || !(run.einfty.window() == w)) {
      if (!o.cache.empty() && !o.height_opt->count() && !o.stems_opt->count() && !o.sigma_opt->count() &&
          !o.filt_opt->count() && (!o.theory_opt || !o.theory_opt->count()))
        return run;
      throw CacheError("cache " + path.string() + " was computed for different parameters");
    }
    return run;
  }
  if (!o.cache.empty() && !o.recompute && !std::filesystem::exists(path))
    throw CacheError("cache " + path.string() + " does not exist (use --recompute)");
  SpectralSequenceRun run = compute_run(ctx, w);
  if (!path.empty()) {
    save_run(path, run);
    err << "cached " << path.string() << "\n";
  }
  return run;
}

inline std::string page_name(const PageLattice& L) {
  return L.is_final() ? "E" + std::to_string(L.page()) + " (E-infinity)" : "E" + std::to_string(L.page());
}

inline int cmd_compute(SequenceOptions& o, const std::string& out_path, const std::string& json_path,
                       std::ostream& out, std::ostream& err) {
  const Window w = o.window();
  const CoefficientContext ctx = resolved_context(o.context(), w);
  SpectralSequenceRun run = compute_run(ctx, w);
  out << theory_name(ctx.theory) << " height " << ctx.height << ", D=" << ctx.series_degree
      << ", M=" << ctx.witt_precision << ", stems " << w.a_min << ".." << w.a_max << ", sigma " << w.b_min << ".."
      << w.b_max << ", filtration " << w.s_min << ".." << w.s_max << "\n";
  for (std::size_t i = 0; i < run.pages.size(); ++i) {
    std::size_t effective = 0;
    for (const auto& d : run.arrows[i]) effective += d.effective && w.contains(d.source) ? 1 : 0;
    out << page_name(run.pages[i]) << ": " << run.pages[i].count_nonzero() << " nonzero points, " << effective
        << " nonzero arrows\n";
  }
  out << page_name(run.einfty) << ": " << run.einfty.count_nonzero() << " nonzero points\n";
  std::filesystem::path path = !out_path.empty() ? std::filesystem::path(out_path)
                               : !o.cache.empty() ? std::filesystem::path(o.cache)
                               : !cache_dir().empty() ? cache_dir() / cache_name(ctx, w)
                                                      : std::filesystem::path(cache_name(ctx, w));
  save_run(path, run);
  out << "wrote " << path.string() << "\n";
  if (!json_path.empty()) {
    std::ofstream js(json_path);
    if (!js) throw ArgumentError("cannot write " + json_path);
    js << export_json(run).dump(2) << "\n";
    out << "wrote " << json_path << "\n";
  }
  (void)err;
  return kOk;
}

struct CheckFlags {
  bool periodicity = false;
  bool vanishing = false;
  bool strongly_even = false;
  bool oracle = false;
  std::string k = "-2..2";
};

inline int cmd_check(SequenceOptions& o, CheckFlags f, std::ostream& out, std::ostream& err) {
  if (parse_theory(o.theory) != Theory::en && !f.oracle)
    throw ArgumentError("structural checks apply to --theory en; use --oracle for bpr");
  if (!f.periodicity && !f.vanishing && !f.strongly_even && !f.oracle)
    f.periodicity = f.vanishing = f.strongly_even = true;
  const Range k = parse_range(f.k);
  const CoefficientContext ctx = o.context();
  Window w = o.window();
  // two full periods and every (kρ-1), kρ stem, unless the user fixed the window
  if (ctx.theory == Theory::en) {
    if (!o.stems_opt->count() && f.periodicity) w.a_max = std::max(w.a_max, w.a_min + (1 << (ctx.height + 3)) + 8);
    if (!o.sigma_opt->count() && (f.vanishing || f.strongly_even)) {
      w.b_min = std::min(w.b_min, k.lo);
      w.b_max = std::max(w.b_max, k.hi);
    }
    if (!o.filt_opt->count()) w.s_max = std::max(w.s_max, family_page(ctx.height) + 16);
  }
  const SpectralSequenceRun run = obtain_run(o, ctx, w, err);
  bool ok = true;

  if (f.periodicity) {
    auto p = periodicity(run.einfty);
    const int expected = 1 << (run.context().height + 2);
    if (p) {
      out << "period " << *p << "\n";
    } else {
      out << "period not found in the window\n";
    }
    if (!p || *p != expected) {
      out << "FAIL periodicity: expected " << expected << "\n";
      ok = false;
    }
  }
  if (f.vanishing) {
    for (const auto& v : check_vanishing_krho_minus_1(run, k.lo, k.hi)) {
      out << (v.passed ? "pass" : "FAIL") << " vanishing k=" << v.k << " (" << v.points.size() << " points)";
      if (!v.passed) out << ": " << v.detail;
      out << "\n";
      ok = ok && v.passed;
    }
  }
  if (f.strongly_even) {
    for (const auto& v : check_strongly_even(run, k.lo, k.hi)) {
      out << (v.passed ? "pass" : "FAIL") << " strongly-even k=" << v.k;
      if (!v.passed) out << ": " << v.detail;
      out << "\n";
      ok = ok && v.passed;
    }
  }
  if (f.oracle) {
    const auto rep = oracle_page_homology(run.context(), run.einfty.window(), run.einfty.padded());
    std::size_t compared = 0, mismatched = 0;
    for (std::size_t i = 0; i < rep.pages.size(); ++i) {
      const PageLattice& L = i < run.pages.size() ? run.pages[i] : run.einfty;
      for (const auto& [t, orders] : rep.log2_orders) {
        const LatticePoint* p = L.find(t);
        if (!p || !p->exact) continue;
        ++compared;
        const long long mine = expand(p->descriptor, L.context(), p->weight).log2_order();
        if (mine != orders[i]) {
          if (mismatched < 10)
            out << "mismatch on " << page_name(L) << " at " << to_string(t) << ": engine 2^" << mine << ", oracle 2^"
                << orders[i] << "\n";
          ++mismatched;
        }
      }
    }
    out << (mismatched == 0 ? "pass" : "FAIL") << " oracle: " << compared << " point-pages compared, " << mismatched
        << " mismatches\n";
    ok = ok && mismatched == 0;
  }
  return ok ? kOk : kCheckFailed;
}

inline int cmd_chart(SequenceOptions& o, const std::string& page, const std::string& format,
                     const std::string& out_path, std::ostream& out, std::ostream& err) {
  if (format != "svg" && format != "json") throw ArgumentError("--format must be svg or json");
  const Window w = o.window();
  if (w.b_min > 0 || w.b_max < 0) throw WindowError("charts show integer stems; --sigma must contain 0");
  const SpectralSequenceRun run = obtain_run(o, o.context(), w, err);
  int r = 0;
  if (page != "inf" && page != "infty" && page != "einfty") {
    try {
      r = std::stoi(page);
    } catch (const std::exception&) {
      throw ArgumentError("--page must be a number or inf");
    }
    if (r < 2) throw ArgumentError("--page must be >= 2");
  }
  const PageLattice& L = run.page(r);
  static const std::vector<Differential> none;
  const auto& arrows = (r == L.page() && !L.is_final()) ? run.arrows_on(r) : none;
  const ChartData c = chart_data(L, arrows, {w.a_min, w.a_max, w.s_min, w.s_max});
  const std::string doc = format == "svg" ? render_svg(c) : render_json(c);
  if (out_path.empty()) {
    out << doc;
  } else {
    write_file_atomic(out_path, doc);
  }
  return kOk;
}

inline int cmd_detect(int height, const std::string& name, int series_degree, int witt_precision, bool as_json,
                      std::ostream& out) {
  if (height < 1 || height > 8) throw ArgumentError("--height must be in 1..8");
  const DetectionClass c = DetectionClass::parse(name);
  const DetectionResult r = certify_detection(c, height, series_degree, witt_precision);
  if (as_json) {
    nlohmann::json j;
    j["family"] = c.family_name();
    j["index"] = c.index;
    j["height"] = height;
    j["image-monomial"] = r.image ? r.image->str() : "0";
    j["verdict"] = std::string(verdict_name(r.verdict));
    j["einfty-page-of-death-if-any"] = r.death_page > 0 ? nlohmann::json(r.death_page) : nlohmann::json(nullptr);
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << c.label();
  if (!c.alias().empty()) out << " (as " << c.alias() << ")";
  out << " at height " << height << ": " << verdict_name(r.verdict) << "\n";
  out << "  BP_R class  " << r.bpr_monomial.str() << "\n";
  out << "  E_n image   " << (r.image ? r.image->str() : "0");
  if (r.degree) out << " at " << to_string(*r.degree);
  out << "\n  stem        " << c.expected_stem() << "\n";
  return kOk;
}

inline int cmd_homotopy(SequenceOptions& o, std::ostream& out, std::ostream& err) {
  const Window requested = o.window();
  if (requested.b_min != requested.b_max) throw ArgumentError("homotopy reports one sigma-coordinate at a time");
  const CoefficientContext ctx = o.context();
  Window w = requested;
  if (ctx.theory == Theory::en && !o.filt_opt->count()) w.s_max = std::max(w.s_max, family_page(ctx.height) - 1);
  const SpectralSequenceRun run = obtain_run(o, ctx, w, err);
  const auto& rc = run.context();
  out << "stem  " << (rc.theory == Theory::en ? "E" + std::to_string(rc.height) : std::string("BPR"))
      << " associated graded (filtration: descriptor)\n";
  for (const auto& rep : homotopy_groups(run.einfty, w.a_min, w.a_max, w.b_min)) {
    out << rep.stem.a;
    if (rep.stem.b != 0) out << (rep.stem.b > 0 ? "+" : "") << rep.stem.b << "sigma";
    out << "  " << rep.group;
    if (!rep.entries.empty()) {
      out << "  [";
      for (std::size_t i = 0; i < rep.entries.size(); ++i) {
        const auto& e = rep.entries[i];
        out << (i ? ", " : "") << "s=" << e.s << ": " << e.descriptor.annotation() << " " << e.generator.str();
      }
      out << "]";
    }
    out << "\n";
  }
  return kOk;
}

/// Entry point of the rosq tool. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"RO(C2)-graded homotopy fixed point spectral sequences of E_n and BP_R at p = 2"};
  app.require_subcommand(1);

  SequenceOptions compute_opts;
  std::string compute_out, compute_json;
  auto* compute = app.add_subcommand("compute", "compute all pages and write a cache file");
  compute_opts.add_to(*compute);
  compute->add_option("--out", compute_out, "cache file to write");
  compute->add_option("--json", compute_json, "also export the pages as JSON");

  SequenceOptions check_opts;
  CheckFlags check_flags;
  auto* check = app.add_subcommand("check", "verify structural properties of E-infinity");
  check_opts.add_to(*check);
  check->add_flag("--periodicity", check_flags.periodicity, "integer-stem period equals 2^(n+2)");
  check->add_flag("--vanishing", check_flags.vanishing, "stems k*rho-1 vanish");
  check->add_flag("--strongly-even", check_flags.strongly_even, "stems k*rho are W[[u]] with bijective restriction");
  check->add_flag("--oracle", check_flags.oracle, "compare every page with the brute-force oracle");
  check->add_option("--k", check_flags.k, "range of k")->capture_default_str();

  SequenceOptions chart_opts;
  chart_opts.stems = "-4..36";
  chart_opts.filt = "0..40";
  std::string chart_page = "inf", chart_format = "svg", chart_out;
  auto* chart = app.add_subcommand("chart", "render one page as SVG or JSON");
  chart_opts.add_to(*chart);
  chart->add_option("--page", chart_page, "page number or inf")->capture_default_str();
  chart->add_option("--format", chart_format, "svg or json")->capture_default_str();
  chart->add_option("--out", chart_out, "output file (default stdout)");

  int detect_height = 2, detect_degree = 6, detect_prec = 0;
  std::string detect_class;
  bool detect_json = false;
  auto* detect = app.add_subcommand("detect", "certify Hurewicz detection of a class");
  detect->add_option("--height", detect_height, "height n")->capture_default_str();
  detect->add_option("--class", detect_class, "h<i>, h<j>^2 or g<k>")->required();
  detect->add_option("--series-deg", detect_degree, "power series truncation D")->capture_default_str();
  detect->add_option("--witt-prec", detect_prec, "2-adic precision M (default n+3)");
  detect->add_flag("--json", detect_json, "print a JSON record");

  SequenceOptions homotopy_opts;
  homotopy_opts.stems = "0..8";
  auto* homotopy = app.add_subcommand("homotopy", "associated graded of the homotopy groups");
  homotopy_opts.add_to(*homotopy);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*compute) return cmd_compute(compute_opts, compute_out, compute_json, out, err);
    if (*check) return cmd_check(check_opts, check_flags, out, err);
    if (*chart) return cmd_chart(chart_opts, chart_page, chart_format, chart_out, out, err);
    if (*detect) return cmd_detect(detect_height, detect_class, detect_degree, detect_prec, detect_json, out);
    if (*homotopy) return cmd_homotopy(homotopy_opts, out, err);
  } catch (const PatternViolation& e) {
    err << "pattern violation: " << e.what() << "\n";
    return kPatternViolation;
  } catch (const WindowError& e) {
    err << "window error: " << e.what() << "\n";
    return kUsage;
  } catch (const CacheError& e) {
    err << "cache error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace rosq::cli
