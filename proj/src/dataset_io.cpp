#include "seqk/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string_view>

namespace seqk {

LengthStats Dataset::length_stats() const {
  LengthStats st;
  if (sequences.empty()) return st;
  std::vector<Index> lens;
  lens.reserve(sequences.size());
  for (const auto& s : sequences) lens.push_back(s.length());
  std::sort(lens.begin(), lens.end());
  st.min = lens.front();
  st.max = lens.back();
  const std::size_t n = lens.size();
  st.median = n % 2 == 1 ? static_cast<double>(lens[n / 2])
                         : 0.5 * static_cast<double>(lens[n / 2 - 1] + lens[n / 2]);
  return st;
}

std::vector<int> Dataset::label_indices() const {
  std::vector<int> out;
  out.reserve(sequences.size());
  for (const auto& s : sequences) {
    const auto it = std::lower_bound(class_names.begin(), class_names.end(), s.label);
    if (it == class_names.end() || *it != s.label)
      throw std::invalid_argument("sequence '" + s.id + "' has unknown class '" + s.label + "'");
    out.push_back(static_cast<int>(it - class_names.begin()));
  }
  return out;
}

std::vector<std::string> Dataset::labels() const {
  std::vector<std::string> out;
  out.reserve(sequences.size());
  for (const auto& s : sequences) out.push_back(s.label);
  return out;
}

Dataset make_dataset(std::vector<Sequence> sequences,
                     std::vector<std::pair<std::string, std::string>> metadata) {
  Dataset d;
  d.sequences = std::move(sequences);
  d.metadata = std::move(metadata);
  std::set<std::string> names;
  Index dim = -1;
  for (const auto& s : d.sequences) {
    check_finite(s);
    names.insert(s.label);
    if (s.empty()) continue;
    if (dim < 0)
      dim = s.dim();
    else if (s.dim() != dim)
      throw std::invalid_argument("sequence '" + s.id + "' has symbol dimension " +
                                  std::to_string(s.dim()) + ", expected " + std::to_string(dim));
  }
  d.dim = std::max<Index>(dim, 0);
  d.class_names.assign(names.begin(), names.end());
  return d;
}

namespace {

[[noreturn]] void format_error(const std::filesystem::path& path, std::size_t line,
                               const std::string& what) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what);
}

double parse_double(std::string_view tok, const std::filesystem::path& path, std::size_t line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    format_error(path, line, "unparseable real value '" + std::string(tok) + "'");
  if (!std::isfinite(v))
    format_error(path, line, "non-finite value '" + std::string(tok) + "'");
  return v;
}

}  // namespace

Dataset parse_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path.string());

  std::vector<Sequence> sequences;
  std::string line;
  std::size_t lineno = 0;
  Index dim = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') continue;

    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      format_error(path, lineno, "expected 'label<TAB>symbols' record");
    const std::string label = line.substr(0, tab);
    const std::string_view body(line.data() + tab + 1, line.size() - tab - 1);
    if (body.empty()) format_error(path, lineno, "record has an empty symbol list");

    std::vector<std::vector<double>> symbols;
    std::size_t pos = 0;
    while (pos <= body.size()) {
      const auto semi = body.find(';', pos);
      const auto end = semi == std::string_view::npos ? body.size() : semi;
      const std::string_view sym = body.substr(pos, end - pos);
      if (sym.empty()) format_error(path, lineno, "empty symbol");
      std::vector<double> values;
      std::size_t vpos = 0;
      while (vpos <= sym.size()) {
        const auto comma = sym.find(',', vpos);
        const auto vend = comma == std::string_view::npos ? sym.size() : comma;
        values.push_back(parse_double(sym.substr(vpos, vend - vpos), path, lineno));
        if (comma == std::string_view::npos) break;
        vpos = comma + 1;
      }
      symbols.push_back(std::move(values));
      if (semi == std::string_view::npos) break;
      pos = semi + 1;
    }

    const auto d = static_cast<Index>(symbols.front().size());
    for (const auto& sym : symbols)
      if (static_cast<Index>(sym.size()) != d)
        format_error(path, lineno, "ragged symbol dimensions within record");
    if (dim < 0)
      dim = d;
    else if (d != dim)
      format_error(path, lineno,
                   "symbol dimension " + std::to_string(d) + " differs from earlier records (" +
                       std::to_string(dim) + ")");

    Eigen::MatrixXd m(d, static_cast<Index>(symbols.size()));
    for (Index j = 0; j < m.cols(); ++j)
      for (Index r = 0; r < d; ++r) m(r, j) = symbols[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];

    char idbuf[16];
    std::snprintf(idbuf, sizeof idbuf, "seq%05zu", sequences.size());
    sequences.emplace_back(std::move(m), idbuf, label);
  }
  if (sequences.empty())
    throw std::runtime_error(path.string() + ": dataset file contains no records");
  return make_dataset(std::move(sequences));
}

void write_dataset(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  for (const auto& [key, value] : data.metadata) out << "# " << key << " = " << value << '\n';
  char buf[40];
  for (const auto& s : data.sequences) {
    out << s.label << '\t';
    for (Index j = 0; j < s.length(); ++j) {
      if (j > 0) out << ';';
      for (Index r = 0; r < s.dim(); ++r) {
        std::snprintf(buf, sizeof buf, "%.17g", s.symbols(r, j));
        if (r > 0) out << ',';
        out << buf;
      }
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed while writing " + path.string());
}

}  // namespace seqk
