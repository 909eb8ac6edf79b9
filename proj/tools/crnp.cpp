#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "crn/compose.hpp"
#include "crn/ddesim.hpp"
#include "crn/reduce.hpp"
#include "crn/report.hpp"
#include "crn/stoich.hpp"

namespace {

constexpr int kExitPersistent = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitUndecided = 3;
constexpr int kExitTooLarge = 4;
constexpr int kExitBlowup = 5;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw crn::Error("cannot read file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::size_t enumeration_cap() {
  if (const char* env = std::getenv("CRNP_MAX_N")) {
    return static_cast<std::size_t>(std::strtoul(env, nullptr, 10));
  }
  return crn::kDefaultMaxN;
}

crn::ReactionNetwork load_network(const std::string& path) {
  auto net = crn::parse_network(read_file(path));
  const auto diags = crn::validate_network(net);
  if (!diags.empty()) {
    std::ostringstream os;
    os << "invalid network:";
    for (const auto& d : diags) os << " " << d << ";";
    throw crn::ParseError(os.str());
  }
  return net;
}

std::vector<double> parse_init(const crn::ReactionNetwork& net,
                               const std::string& spec) {
  std::vector<double> init(net.n_species(), -1.0);
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw crn::Error("bad --init entry '" + item + "'");
    const std::string name = item.substr(0, eq);
    const double value = std::stod(item.substr(eq + 1));
    if (value <= 0)
      throw crn::Error("initial concentration for " + name +
                       " must be positive");
    init[net.species_index(name)] = value;
  }
  for (std::size_t j = 0; j < init.size(); ++j)
    if (init[j] <= 0)
      throw crn::Error("missing initial value for species " +
                       net.species[j].name);
  return init;
}

crn::SpeciesSet parse_set(const crn::ReactionNetwork& net,
                          const std::string& spec) {
  crn::SpeciesSet w;
  std::stringstream ss(spec);
  std::string name;
  while (std::getline(ss, name, ',')) {
    while (!name.empty() && name.front() == ' ') name.erase(name.begin());
    while (!name.empty() && name.back() == ' ') name.pop_back();
    w.insert(net.species_index(name));
  }
  return w;
}

int cmd_analyze(const std::string& path, const std::string& out_path) {
  const auto net = load_network(path);
  const auto cert = crn::certify_persistence(net, enumeration_cap());
  crn::ReactionNetwork work = net;
  if (!work.partition) work.partition = work.effective_blocks();
  const auto dec = crn::decompose(work);
  const auto doc = crn::certificate_document(net, cert, dec);
  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    out << doc.dump(2) << "\n";
  }
  return cert.verdict == crn::Verdict::Persistent ? kExitPersistent
                                                  : kExitUndecided;
}

int cmd_simulate(const std::string& path, const std::string& init,
                 double tau_override, double t_end, double step,
                 const std::string& out_csv, const std::string& report_path,
                 std::size_t every) {
  auto net = load_network(path);
  if (tau_override >= 0)
    for (auto& r : net.reactions) r.delay_tau = tau_override;
  if (step <= 0) throw crn::Error("--step must be positive");
  const auto x0 = parse_init(net, init);
  const auto res = crn::simulate(
      net, crn::HistoryFunction::constant_history(x0), t_end, step);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_csv.empty()) {
    file.open(out_csv);
    os = &file;
  }
  (*os) << "t";
  for (const auto& s : net.species) (*os) << "," << s.name;
  (*os) << "\n";
  const auto& traj = res.trajectory;
  os->precision(12);
  for (std::size_t k = traj.index_of_time_zero(); k < traj.grid.size();
       k += std::max<std::size_t>(1, every)) {
    (*os) << traj.grid[k];
    for (double v : traj.values[k]) (*os) << "," << v;
    (*os) << "\n";
  }

  const auto rep = crn::run_report_json(net, res.report);
  if (report_path.empty()) {
    if (!out_csv.empty()) std::cout << rep.dump(2) << "\n";
  } else {
    std::ofstream out(report_path);
    out << rep.dump(2) << "\n";
  }
  return 0;
}

int cmd_explain(const std::string& path, const std::string& set_spec) {
  const auto net = load_network(path);
  const auto w = parse_set(net, set_spec);
  std::cout << "set: " << crn::species_set_to_string(net, w) << "\n";
  if (!crn::is_semilocking(net, w)) {
    // Point at a reaction producing into W without consuming from it.
    for (std::size_t i = 0; i < net.n_reactions(); ++i) {
      const auto& r = net.reactions[i];
      bool prod = false, reac = false;
      for (const auto& [j, c] : r.product.coeffs)
        if (w.count(j)) prod = true;
      for (const auto& [j, c] : r.reactant.coeffs)
        if (w.count(j)) reac = true;
      if (prod && !reac) {
        std::cout << "semilocking: no; witness reaction "
                  << crn::complex_to_string(net, r.reactant) << " -> "
                  << crn::complex_to_string(net, r.product) << "\n";
        return 0;
      }
    }
    return 0;
  }
  std::cout << "semilocking: yes\n";
  const auto boundary = crn::classify_boundary(net, w);
  std::cout << "boundary: " << crn::boundary_to_string(boundary)
            << " (dim(S ∩ ker pi_W) = " << boundary.face_dim
            << ", literal projected dim = "
            << crn::projected_dimension(
                   net,
                   [&] {
                     crn::SpeciesSet comp;
                     for (std::size_t j = 0; j < net.n_species(); ++j)
                       if (!w.count(j)) comp.insert(j);
                     return comp;
                   }())
            << ")\n";
  const auto part = crn::partition_complement(net, w);
  std::cout << "complement: tf=" << crn::species_set_to_string(net, part.tf)
            << " sr=" << crn::species_set_to_string(net, part.sr)
            << " tr=" << crn::species_set_to_string(net, part.tr) << "\n";

  crn::ReactionNetwork work = net;
  if (!work.partition) work.partition = work.effective_blocks();
  const auto dec = crn::decompose(work);
  const auto analysis = crn::case_label(dec, w);
  std::cout << "case: " << crn::case_to_string(analysis.label) << "\n";

  crn::SemilockingReport rep;
  rep.members = w;
  rep.trivial = w.size() == net.n_species();
  rep.boundary = boundary;
  rep.complement = part;
  const auto discharge = crn::apply_rules(work, dec, rep, analysis);
  std::cout << "rule: " << crn::rule_name(discharge.rule) << " ("
            << crn::rule_citation(discharge.rule) << ")\n";
  for (const auto& wit : discharge.witnesses)
    std::cout << "  witness: " << wit << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"persistence certification for delayed mass-action networks"};
  app.require_subcommand(1);

  std::string path, out_path, init, out_csv, report_path, set_spec;
  double t_end = 50.0, step = 1e-3, tau_override = -1.0;
  std::size_t every = 1;

  auto* analyze = app.add_subcommand("analyze", "certify persistence");
  analyze->add_option("path", path)->required();
  analyze->add_option("--out", out_path);

  auto* sim = app.add_subcommand("simulate", "integrate the delayed dynamics");
  sim->add_option("path", path)->required();
  sim->add_option("--init", init)->required();
  sim->add_option("--tau-override", tau_override);
  sim->add_option("--t-end", t_end);
  sim->add_option("--step", step);
  sim->add_option("--out", out_csv);
  sim->add_option("--report", report_path);
  sim->add_option("--every", every);

  auto* explain = app.add_subcommand("explain", "analyze one candidate set");
  explain->add_option("path", path)->required();
  explain->add_option("--set", set_spec)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(path, out_path);
    if (sim->parsed())
      return cmd_simulate(path, init, tau_override, t_end, step, out_csv,
                          report_path, every);
    if (explain->parsed()) return cmd_explain(path, set_spec);
  } catch (const crn::TooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTooLarge;
  } catch (const crn::NonFiniteState& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBlowup;
  } catch (const crn::NegativeStateAborted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBlowup;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
