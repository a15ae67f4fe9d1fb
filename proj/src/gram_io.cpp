#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqk/config_json.hpp"
#include "seqk/gram.hpp"

namespace seqk {

namespace {

constexpr char kMagic[4] = {'S', 'Q', 'K', 'G'};
constexpr std::uint32_t kVersion = 1;

void write_bytes(std::ostream& out, const void* p, std::size_t n) {
  out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

void read_bytes(std::istream& in, void* p, std::size_t n, const char* what) {
  in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n)
    throw std::runtime_error(std::string("gram file truncated while reading ") + what);
}

template <class T>
void write_pod(std::ostream& out, const T& v) {
  write_bytes(out, &v, sizeof v);
}

template <class T>
T read_pod(std::istream& in, const char* what) {
  T v{};
  read_bytes(in, &v, sizeof v, what);
  return v;
}

}  // namespace

void save_gram(const GramMatrix& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());

  write_bytes(out, kMagic, sizeof kMagic);
  write_pod(out, kVersion);
  const std::uint64_t n = static_cast<std::uint64_t>(g.values.rows());
  write_pod(out, n);
  for (const auto& id : g.ids) {
    const auto len = static_cast<std::uint32_t>(id.size());
    write_pod(out, len);
    write_bytes(out, id.data(), id.size());
  }
  const std::string cfg = to_json(g.config).dump();
  const auto cfg_len = static_cast<std::uint32_t>(cfg.size());
  write_pod(out, cfg_len);
  write_bytes(out, cfg.data(), cfg.size());
  write_pod(out, g.input_checksum);

  // row-major doubles so the layout is independent of Eigen's storage order
  for (Index i = 0; i < g.values.rows(); ++i)
    for (Index j = 0; j < g.values.cols(); ++j) write_pod(out, g.values(i, j));
  if (!out) throw std::runtime_error("failed while writing " + path.string());
}

GramMatrix load_gram(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());

  char magic[4];
  read_bytes(in, magic, sizeof magic, "magic");
  if (std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw std::runtime_error("not a gram file (bad magic): " + path.string());
  const auto version = read_pod<std::uint32_t>(in, "version");
  if (version != kVersion)
    throw std::runtime_error("unsupported gram file version " + std::to_string(version));

  GramMatrix g;
  const auto n = read_pod<std::uint64_t>(in, "matrix size");
  if (n > (1ULL << 24)) throw std::runtime_error("gram file header declares implausible size");
  g.ids.resize(n);
  for (auto& id : g.ids) {
    const auto len = read_pod<std::uint32_t>(in, "id length");
    id.resize(len);
    if (len > 0) read_bytes(in, id.data(), len, "id");
  }
  const auto cfg_len = read_pod<std::uint32_t>(in, "config length");
  std::string cfg(cfg_len, '\0');
  if (cfg_len > 0) read_bytes(in, cfg.data(), cfg_len, "config");
  try {
    g.config = config_from_json(nlohmann::json::parse(cfg));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("gram file has malformed config: ") + e.what());
  }
  g.input_checksum = read_pod<std::uint64_t>(in, "input checksum");

  const auto ni = static_cast<Index>(n);
  g.values.resize(ni, ni);
  for (Index i = 0; i < ni; ++i)
    for (Index j = 0; j < ni; ++j) g.values(i, j) = read_pod<double>(in, "matrix values");

  char extra;
  in.read(&extra, 1);
  if (!in.eof()) throw std::runtime_error("gram file has trailing bytes: " + path.string());
  return g;
}

void write_gram_csv(const GramMatrix& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  for (std::size_t i = 0; i < g.ids.size(); ++i) {
    if (i > 0) out << ',';
    out << g.ids[i];
  }
  out << '\n';
  char buf[40];
  for (Index i = 0; i < g.values.rows(); ++i) {
    for (Index j = 0; j < g.values.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", g.values(i, j));
      if (j > 0) out << ',';
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed while writing " + path.string());
}

}  // namespace seqk
