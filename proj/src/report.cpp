#include "crn/report.hpp"

#include <openssl/sha.h>

#include <iomanip>
#include <sstream>

#include "crn/stoich.hpp"

namespace crn {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(),
         digest);
  std::ostringstream os;
  for (unsigned char b : digest)
    os << std::hex << std::setw(2) << std::setfill('0')
       << static_cast<int>(b);
  return os.str();
}

std::string boundary_to_string(const BoundaryClass& b) {
  switch (b.kind) {
    case BoundaryKind::Vertex: return "vertex";
    case BoundaryKind::Facet: return "facet";
    case BoundaryKind::Other:
      return "other(" + std::to_string(b.face_dim) + ")";
  }
  return "?";
}

std::string case_to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::CaseI: return "I";
    case CaseLabel::CaseII: return "II";
    case CaseLabel::CaseIII: return "III";
    case CaseLabel::Unclassified: return "unclassified";
  }
  return "?";
}

namespace {

std::string fixed17(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

nlohmann::json species_names(const ReactionNetwork& net, const SpeciesSet& w) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t j : w) arr.push_back(net.species[j].name);
  return arr;
}

}  // namespace

nlohmann::json certificate_document(const ReactionNetwork& net,
                                    const PersistenceCertificate& cert,
                                    const Decomposition& dec) {
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["network_sha256"] = sha256_hex(serialize_network(net));

  nlohmann::json decomp;
  decomp["blocks"] = dec.blocks.size();
  decomp["block_dims"] = dec.block_dims;
  decomp["intersecting_species"] = species_names(net, dec.intersecting);
  {
    const auto basis = conservation_basis(stoich_matrix(net));
    nlohmann::json cons = nlohmann::json::array();
    for (const auto& v : basis.vectors) {
      nlohmann::json vec = nlohmann::json::array();
      for (const auto& q : v) vec.push_back(rat_to_string(q));
      cons.push_back(vec);
    }
    decomp["conservation_basis"] = cons;
    decomp["stoich_dim"] =
        net.n_species() - basis.vectors.size();
  }
  doc["decomposition"] = decomp;

  nlohmann::json records = nlohmann::json::array();
  for (const auto& rec : cert.per_w) {
    nlohmann::json e;
    e["members"] = species_names(net, rec.report.members);
    e["trivial"] = rec.report.trivial;
    e["boundary"] = boundary_to_string(rec.report.boundary);
    e["complement"] = {
        {"tf", species_names(net, rec.report.complement.tf)},
        {"sr", species_names(net, rec.report.complement.sr)},
        {"tr", species_names(net, rec.report.complement.tr)}};
    e["case"] = case_to_string(rec.analysis.label);
    e["meets_intersecting"] = rec.analysis.meets_sc;
    e["cv"] = species_names(net, rec.analysis.cv);
    e["cn"] = species_names(net, rec.analysis.cn);
    e["rule"] = rule_name(rec.discharge.rule);
    e["citation"] = rule_citation(rec.discharge.rule);
    e["witnesses"] = rec.discharge.witnesses;
    records.push_back(std::move(e));
  }
  doc["semilocking"] = records;
  doc["verdict"] =
      cert.verdict == Verdict::Persistent ? "Persistent" : "Undecided";
  if (cert.verdict == Verdict::Persistent && !cert.complex_balance_verified)
    doc["verdict"] = "Persistent (conditional on complex balance)";
  doc["caveats"] = cert.caveats;
  doc["meta"] = {{"tool_version", kToolVersion}};
  return doc;
}

nlohmann::json run_report_json(const ReactionNetwork& net,
                               const RunReport& report) {
  nlohmann::json j;
  j["conservation_drift"] = fixed17(report.conservation_drift);
  nlohmann::json term = nlohmann::json::object();
  for (std::size_t s = 0; s < net.n_species(); ++s)
    term[net.species[s].name] = fixed17(report.terminal_state[s]);
  j["terminal_state"] = term;
  j["equilibrium_residual"] = fixed17(report.equilibrium_residual);
  nlohmann::json mins = nlohmann::json::object();
  for (std::size_t s = 0; s < net.n_species(); ++s)
    mins[net.species[s].name] = fixed17(report.min_concentration[s]);
  j["min_concentration_final_half"] = mins;
  if (!report.lyapunov_series.empty()) {
    j["lyapunov_final"] = fixed17(report.lyapunov_series.back());
  }
  j["warnings"] = report.warnings;
  return j;
}

}  // namespace crn
