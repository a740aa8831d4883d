#include "wpfp/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "wpfp/errors.hpp"

namespace wpfp {

namespace {

void put_le64(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  unsigned char raw[8];
  for (int i = 0; i < 8; ++i) raw[i] = static_cast<unsigned char>(bits >> (8 * i));
  os.write(reinterpret_cast<const char*>(raw), 8);
}

double get_le64(std::istream& is) {
  unsigned char raw[8];
  is.read(reinterpret_cast<char*>(raw), 8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(raw[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

void write_snapshot(const WignerField& w, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw config_error("write_snapshot: cannot open '" + path + "'");
  const GridSpec& g = *w.grid;
  os << "WPFP1 " << g.M << " " << g.N << " " << fmt(g.a) << " " << fmt(g.b) << " " << fmt(g.c)
     << " " << fmt(g.d) << " " << fmt(w.time) << "\n";
  for (double v : w.values) put_le64(os, v);
  if (!os) throw config_error("write_snapshot: write failed for '" + path + "'");
}

WignerField read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw config_error("read_snapshot: cannot open '" + path + "'");
  std::string header;
  if (!std::getline(is, header)) throw config_error("read_snapshot: missing header in '" + path + "'");
  std::istringstream hs(header);
  std::string magic;
  int m = 0, n = 0;
  double a, b, c, d, t;
  if (!(hs >> magic >> m >> n >> a >> b >> c >> d >> t) || magic != "WPFP1")
    throw config_error("read_snapshot: malformed header in '" + path + "'");
  WignerField w(std::make_shared<GridSpec>(build_grid(a, b, c, d, m, n)));
  w.time = t;
  for (double& v : w.values) v = get_le64(is);
  if (!is) throw config_error("read_snapshot: truncated payload in '" + path + "'");
  return w;
}

void write_series(const ObservableSeries& series, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw config_error("write_series: cannot open '" + path + "'");
  os << "t,N,J,E\n";
  for (const auto& r : series.records)
    os << fmt(r.t) << "," << fmt(r.n) << "," << fmt(r.j) << "," << fmt(r.e) << "\n";
  if (!os) throw config_error("write_series: write failed for '" + path + "'");
}

void write_heatmap(const WignerField& w, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw config_error("write_heatmap: cannot open '" + path + "'");
  const GridSpec& g = *w.grid;
  os << "x,xi,W\n";
  for (int m = 0; m < g.M; ++m)
    for (int l = 0; l < g.N; ++l)
      os << fmt(g.x[m]) << "," << fmt(g.xi[l]) << "," << fmt(w(m, l)) << "\n";
  if (!os) throw config_error("write_heatmap: write failed for '" + path + "'");
}

} // namespace wpfp
