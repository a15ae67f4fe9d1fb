#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>

#include "seqk/types.hpp"

namespace seqk {

inline nlohmann::json to_json(const KernelConfig& cfg) {
  nlohmann::json j;
  j["family"] = to_string(cfg.family);
  j["normalize"] = cfg.normalize;
  j["symbol"] = {{"kind", to_string(cfg.symbol.kind)}, {"sigma", cfg.symbol.sigma}};
  nlohmann::json s;
  s["kind"] = to_string(cfg.structure.kind);
  switch (cfg.structure.kind) {
    case StructureKernelKind::exponential: s["alpha"] = cfg.structure.alpha; break;
    case StructureKernelKind::polynomial:
      s["c"] = cfg.structure.poly_c;
      s["degree"] = cfg.structure.poly_degree;
      break;
    case StructureKernelKind::factorial: s["d"] = cfg.structure.fact_d; break;
    case StructureKernelKind::path:
      s["chv"] = cfg.structure.chv;
      s["cd"] = cfg.structure.cd;
      break;
  }
  j["structure"] = s;
  return j;
}

inline SymbolKernelKind symbol_kind_from_string(const std::string& s) {
  if (s == "rbf") return SymbolKernelKind::rbf;
  if (s == "linear") return SymbolKernelKind::linear;
  if (s == "delta") return SymbolKernelKind::delta;
  throw std::invalid_argument("unknown symbol kernel kind: " + s);
}

inline StructureKernelKind structure_kind_from_string(const std::string& s) {
  if (s == "exponential") return StructureKernelKind::exponential;
  if (s == "polynomial") return StructureKernelKind::polynomial;
  if (s == "factorial") return StructureKernelKind::factorial;
  if (s == "path") return StructureKernelKind::path;
  throw std::invalid_argument("unknown structure kernel kind: " + s);
}

inline KernelConfig config_from_json(const nlohmann::json& j) {
  KernelConfig cfg;
  if (!j.contains("family") || !j.contains("symbol"))
    throw std::invalid_argument("kernel config JSON needs 'family' and 'symbol' entries");
  const std::string family = j.at("family").get<std::string>();
  if (family == "decomposable")
    cfg.family = KernelFamily::decomposable;
  else if (family == "global_alignment")
    cfg.family = KernelFamily::global_alignment;
  else
    throw std::invalid_argument("unknown kernel family: " + family);
  cfg.normalize = j.value("normalize", true);
  const auto& sym = j.at("symbol");
  cfg.symbol.kind = symbol_kind_from_string(sym.value("kind", "rbf"));
  cfg.symbol.sigma = sym.value("sigma", 1.0);
  if (cfg.family == KernelFamily::decomposable) {
    if (!j.contains("structure"))
      throw std::invalid_argument("decomposable kernel config JSON needs a 'structure' entry");
    const auto& s = j.at("structure");
    cfg.structure.kind = structure_kind_from_string(s.value("kind", "exponential"));
    cfg.structure.alpha = s.value("alpha", cfg.structure.alpha);
    cfg.structure.poly_c = s.value("c", cfg.structure.poly_c);
    cfg.structure.poly_degree = s.value("degree", cfg.structure.poly_degree);
    cfg.structure.fact_d = s.value("d", cfg.structure.fact_d);
    cfg.structure.chv = s.value("chv", cfg.structure.chv);
    cfg.structure.cd = s.value("cd", cfg.structure.cd);
  }
  validate(cfg);
  return cfg;
}

/// Finds the kernel config inside a report-style JSON document: accepts a
/// bare config object, {"config": ...}, or {"primary": {"config": ...}} as
/// emitted by the fit command.
inline KernelConfig config_from_report_json(const nlohmann::json& j) {
  if (j.contains("config")) return config_from_json(j.at("config"));
  if (j.contains("primary") && j.at("primary").contains("config"))
    return config_from_json(j.at("primary").at("config"));
  return config_from_json(j);
}

}  // namespace seqk
