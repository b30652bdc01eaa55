#pragma once

// Single-file page cache. Layout, all integers little-endian:
//   "ROSQ" u32:version u8:theory i32:height i32:D i32:M
//   window[6] padded[6] u32:section_count
//   per section: u64:byte_length, then one page table
// A page table is i32:page u8:final u32:count and per point
//   i32:a i32:b i32:s u8:exact i32:death_page u8:shape ideal:Z ideal:B
// with ideal = u32:gens u32:nvars i32[gens*nvars].

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <unistd.h>

#include <json.hpp>

#include "rosq/engine.hpp"

namespace rosq {

inline constexpr std::uint32_t kCacheVersion = 1;

namespace detail {

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void i32(int v) { u32(static_cast<std::uint32_t>(v)); }
  void raw(std::string_view s) { out_.append(s); }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view in) : in_(in) {}
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(in_[pos_++]);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return v;
  }
  int i32() { return static_cast<int>(u32()); }
  std::string_view raw(std::size_t n) {
    need(n);
    auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw CacheError("truncated cache data");
  }
  std::string_view in_;
  std::size_t pos_ = 0;
};

inline void write_window(ByteWriter& w, const Window& win) {
  for (int v : {win.a_min, win.a_max, win.b_min, win.b_max, win.s_min, win.s_max}) w.i32(v);
}

inline Window read_window(ByteReader& r) {
  Window w;
  w.a_min = r.i32();
  w.a_max = r.i32();
  w.b_min = r.i32();
  w.b_max = r.i32();
  w.s_min = r.i32();
  w.s_max = r.i32();
  return w;
}

inline void write_ideal(ByteWriter& w, const MonomialIdeal& I) {
  w.u32(static_cast<std::uint32_t>(I.generators().size()));
  w.u32(static_cast<std::uint32_t>(I.nvars()));
  for (const auto& g : I.generators())
    for (int e : g) w.i32(e);
}

inline MonomialIdeal read_ideal(ByteReader& r) {
  const std::uint32_t gens = r.u32();
  const std::uint32_t nvars = r.u32();
  if (nvars > 64 || gens > 1u << 20) throw CacheError("corrupt ideal in cache");
  std::vector<std::vector<int>> g(gens, std::vector<int>(nvars));
  for (auto& row : g)
    for (auto& e : row) e = r.i32();
  return MonomialIdeal::generated_by(static_cast<int>(nvars), std::move(g));
}

inline std::string write_page(const PageLattice& L) {
  ByteWriter w;
  w.i32(L.page());
  w.u8(L.is_final() ? 1 : 0);
  w.u32(static_cast<std::uint32_t>(L.points().size()));
  for (const auto& p : L.points()) {
    w.i32(p.degree.stem.a);
    w.i32(p.degree.stem.b);
    w.i32(p.degree.s);
    w.u8(p.exact ? 1 : 0);
    w.i32(p.death_page);
    w.u8(static_cast<std::uint8_t>(p.descriptor.shape()));
    write_ideal(w, p.descriptor.cycles());
    write_ideal(w, p.descriptor.boundaries());
  }
  return w.take();
}

inline PageLattice read_page(std::string_view bytes, const CoefficientContext& ctx, const Window& window,
                             const Window& padded) {
  ByteReader r(bytes);
  const int page = r.i32();
  const bool final = r.u8() != 0;
  PageLattice L(ctx, window, padded, page);
  L.set_final(final);
  const std::uint32_t count = r.u32();
  if (count != L.points().size()) throw CacheError("cache page has the wrong number of points");
  for (auto& p : L.points()) {
    TriDegree t;
    t.stem.a = r.i32();
    t.stem.b = r.i32();
    t.s = r.i32();
    if (t != p.degree) throw CacheError("cache point order does not match the lattice");
    p.exact = r.u8() != 0;
    p.death_page = r.i32();
    const auto shape = static_cast<ModuleDescriptor::Shape>(r.u8());
    MonomialIdeal z = read_ideal(r);
    MonomialIdeal b = read_ideal(r);
    switch (shape) {
      case ModuleDescriptor::Shape::zero: p.descriptor = ModuleDescriptor::zero(); break;
      case ModuleDescriptor::Shape::witt: p.descriptor = ModuleDescriptor::witt(std::move(z)); break;
      case ModuleDescriptor::Shape::tors: p.descriptor = ModuleDescriptor::tors(std::move(z), std::move(b)); break;
      default: throw CacheError("unknown descriptor shape in cache");
    }
  }
  if (!r.done()) throw CacheError("trailing bytes in cache page");
  return L;
}

}  // namespace detail

inline std::string serialize(const SpectralSequenceRun& run) {
  const auto& ctx = run.context();
  detail::ByteWriter w;
  w.raw("ROSQ");
  w.u32(kCacheVersion);
  w.u8(static_cast<std::uint8_t>(ctx.theory));
  w.i32(ctx.height);
  w.i32(ctx.series_degree);
  w.i32(ctx.witt_precision);
  detail::write_window(w, run.einfty.window());
  detail::write_window(w, run.einfty.padded());
  w.u32(static_cast<std::uint32_t>(run.pages.size() + 1));
  auto section = [&](const PageLattice& L) {
    const std::string body = detail::write_page(L);
    w.u64(body.size());
    w.raw(body);
  };
  for (const auto& p : run.pages) section(p);
  section(run.einfty);
  return w.take();
}

inline SpectralSequenceRun deserialize(std::string_view bytes) {
  detail::ByteReader r(bytes);
  if (bytes.size() < 8 || r.raw(4) != "ROSQ") throw CacheError("not a rosq cache file");
  const std::uint32_t version = r.u32();
  if (version != kCacheVersion)
    throw CacheError("cache format version " + std::to_string(version) + ", expected " +
                     std::to_string(kCacheVersion));
  CoefficientContext ctx;
  const std::uint8_t theory = r.u8();
  if (theory > 1) throw CacheError("unknown theory in cache");
  ctx.theory = static_cast<Theory>(theory);
  ctx.height = r.i32();
  ctx.series_degree = r.i32();
  ctx.witt_precision = r.i32();
  const Window window = detail::read_window(r);
  const Window padded = detail::read_window(r);
  try {
    ctx.validate();
    window.validate();
    padded.validate();
  } catch (const Error& e) {
    throw CacheError(std::string("corrupt cache header: ") + e.what());
  }
  const std::uint32_t sections = r.u32();
  if (sections < 2 || sections > 64) throw CacheError("corrupt section count in cache");
  SpectralSequenceRun run;
  for (std::uint32_t i = 0; i < sections; ++i) {
    const std::uint64_t len = r.u64();
    PageLattice L = detail::read_page(r.raw(static_cast<std::size_t>(len)), ctx, window, padded);
    if (i + 1 < sections) {
      run.arrows.push_back(arrows_for_page(L));
      run.pages.push_back(std::move(L));
    } else {
      run.einfty = std::move(L);
    }
  }
  if (!r.done()) throw CacheError("trailing bytes in cache file");
  if (!run.einfty.is_final()) throw CacheError("cache lacks an E-infinity page");
  // cached data is not trusted further than freshly computed data
  for (const auto& p : run.pages) p.check_invariants();
  run.einfty.check_invariants();
  audit_convergence(run.einfty);
  return run;
}

/// Writes through a temporary file in the same directory, then renames.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw CacheError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw CacheError("cannot rename into " + path.string() + ": " + ec.message());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void save_run(const std::filesystem::path& path, const SpectralSequenceRun& run) {
  write_file_atomic(path, serialize(run));
}

inline SpectralSequenceRun load_run(const std::filesystem::path& path) { return deserialize(read_file(path)); }

inline nlohmann::json window_json(const Window& w) {
  return {{"a_min", w.a_min}, {"a_max", w.a_max}, {"b_min", w.b_min},
          {"b_max", w.b_max}, {"s_min", w.s_min}, {"s_max", w.s_max}};
}

/// Nonzero window points of every page.
inline nlohmann::json export_json(const SpectralSequenceRun& run) {
  const auto& ctx = run.context();
  nlohmann::json j;
  j["version"] = kCacheVersion;
  j["theory"] = std::string(theory_name(ctx.theory));
  j["height"] = ctx.height;
  j["series_degree"] = ctx.series_degree;
  j["witt_precision"] = ctx.witt_precision;
  j["window"] = window_json(run.einfty.window());
  j["pages"] = nlohmann::json::array();
  const char* prefix = ctx.theory == Theory::en ? "u" : "v";
  auto page_json = [&](const PageLattice& L) {
    nlohmann::json pj;
    pj["page"] = L.page();
    pj["einfty"] = L.is_final();
    pj["points"] = nlohmann::json::array();
    for (const auto* p : L.window_points()) {
      if (p->descriptor.is_zero()) continue;
      pj["points"].push_back({{"a", p->degree.stem.a},
                              {"b", p->degree.stem.b},
                              {"s", p->degree.s},
                              {"weight", p->weight},
                              {"kind", std::string(p->descriptor.kind_name())},
                              {"annot", p->descriptor.annotation(prefix)},
                              {"monomial", p->generator.str()}});
    }
    return pj;
  };
  for (const auto& p : run.pages) j["pages"].push_back(page_json(p));
  j["pages"].push_back(page_json(run.einfty));
  return j;
}

}  // namespace rosq
