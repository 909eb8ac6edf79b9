#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "crn/model.hpp"

namespace crn {
namespace {

struct ParserState {
  ReactionNetwork net;
  bool species_declared = false;
  bool saw_subnet = false;
  bool saw_toplevel_reaction = false;

  std::size_t intern(const std::string& name, int line) {
    for (const auto& s : net.species)
      if (s.name == name) return s.index;
    if (species_declared)
      throw ParseError("line " + std::to_string(line) + ": species '" + name +
                       "' not in species directive");
    net.species.push_back({net.species.size(), name});
    return net.species.back().index;
  }
};

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_name(const std::string& s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

Complex parse_complex(ParserState& st, const std::string& text, int line) {
  Complex cx;
  const std::string t = strip(text);
  if (t == "0") return cx;
  std::size_t pos = 0;
  while (pos < t.size()) {
    std::size_t plus = t.find('+', pos);
    std::string term =
        strip(plus == std::string::npos ? t.substr(pos) : t.substr(pos, plus - pos));
    if (term.empty())
      throw ParseError("line " + std::to_string(line) + ": empty term in complex");
    int coeff = 1;
    std::size_t i = 0;
    if (std::isdigit(static_cast<unsigned char>(term[0]))) {
      std::size_t end = 0;
      coeff = std::stoi(term, &end);
      if (coeff < 1)
        throw ParseError("line " + std::to_string(line) +
                         ": stoichiometric coefficient must be >= 1");
      i = end;
      while (i < term.size() && std::isspace(static_cast<unsigned char>(term[i])))
        ++i;
    }
    std::string name = strip(term.substr(i));
    if (!valid_name(name))
      throw ParseError("line " + std::to_string(line) + ": bad species name '" +
                       name + "'");
    cx.coeffs[st.intern(name, line)] += coeff;
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  return cx;
}

std::vector<double> parse_number_list(const std::string& text, int line,
                                      const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = strip(item);
    try {
      std::size_t end = 0;
      out.push_back(std::stod(item, &end));
      if (end != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line) + ": bad " + what +
                       " value '" + item + "'");
    }
  }
  if (out.empty())
    throw ParseError("line " + std::to_string(line) + ": missing " + what);
  return out;
}

// "<complex> -> <complex> [k=..., tau=...]" or the <-> reversible form.
void parse_reaction_line(ParserState& st, const std::string& line_text,
                         int line, std::vector<std::size_t>* block) {
  std::size_t lb = line_text.find('[');
  std::size_t rb = line_text.rfind(']');
  if (lb == std::string::npos || rb == std::string::npos || rb < lb)
    throw ParseError("line " + std::to_string(line) +
                     ": missing [k=..., tau=...] annotation");
  const std::string head = strip(line_text.substr(0, lb));
  const std::string ann = line_text.substr(lb + 1, rb - lb - 1);

  bool reversible = false;
  std::size_t arrow = head.find("<->");
  std::size_t arrow_len = 3;
  if (arrow != std::string::npos) {
    reversible = true;
  } else {
    arrow = head.find("->");
    arrow_len = 2;
    if (arrow == std::string::npos)
      throw ParseError("line " + std::to_string(line) + ": missing arrow");
  }
  Complex lhs = parse_complex(st, head.substr(0, arrow), line);
  Complex rhs = parse_complex(st, head.substr(arrow + arrow_len), line);
  if (lhs == rhs)
    throw ParseError("line " + std::to_string(line) +
                     ": reactant equals product");

  std::vector<double> ks, taus;
  std::stringstream ss(ann);
  std::string field;
  // Split on '=' boundaries: expect "k=<list>, tau=<list>".
  std::size_t kpos = ann.find("k=");
  std::size_t tpos = ann.find("tau=");
  if (kpos == std::string::npos || tpos == std::string::npos || tpos < kpos)
    throw ParseError("line " + std::to_string(line) +
                     ": annotation must be [k=..., tau=...]");
  std::string kpart = strip(ann.substr(kpos + 2, tpos - kpos - 2));
  if (!kpart.empty() && kpart.back() == ',') kpart.pop_back();
  std::string tpart = strip(ann.substr(tpos + 4));
  ks = parse_number_list(kpart, line, "k");
  taus = parse_number_list(tpart, line, "tau");

  const std::size_t expect = reversible ? 2 : 1;
  if (ks.size() != expect || taus.size() != expect)
    throw ParseError("line " + std::to_string(line) + ": expected " +
                     std::to_string(expect) + " k and tau values");
  for (double k : ks)
    if (k <= 0)
      throw NonPositiveRate("line " + std::to_string(line) +
                            ": rate constant must be positive");
  for (double t : taus)
    if (t < 0)
      throw NegativeDelay("line " + std::to_string(line) +
                          ": delay must be nonnegative");

  auto push = [&](Complex a, Complex b, double k, double tau) {
    if (block) block->push_back(st.net.reactions.size());
    st.net.reactions.push_back({std::move(a), std::move(b), k, tau});
  };
  push(lhs, rhs, ks[0], taus[0]);
  if (reversible) push(rhs, lhs, ks[1], taus[1]);
}

}  // namespace

ReactionNetwork parse_network(const std::string& text) {
  ParserState st;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::string> block_names;
  std::vector<std::size_t>* current_block = nullptr;

  while (std::getline(in, raw)) {
    ++line;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string s = strip(raw);
    if (s.empty()) continue;

    if (s == "}") {
      if (!current_block)
        throw ParseError("line " + std::to_string(line) + ": stray '}'");
      current_block = nullptr;
      continue;
    }
    std::istringstream ls(s);
    std::string word;
    ls >> word;
    if (word == "species") {
      if (current_block)
        throw ParseError("line " + std::to_string(line) +
                         ": species directive inside subnet");
      if (st.species_declared || !st.net.species.empty())
        throw DuplicateSpeciesDecl("line " + std::to_string(line) +
                                   ": duplicate or late species directive");
      std::string name;
      while (ls >> name) {
        if (!valid_name(name))
          throw ParseError("line " + std::to_string(line) +
                           ": bad species name '" + name + "'");
        if (st.net.has_species(name))
          throw DuplicateSpeciesDecl("line " + std::to_string(line) +
                                     ": species '" + name +
                                     "' declared twice");
        st.net.species.push_back({st.net.species.size(), name});
      }
      st.species_declared = true;
      continue;
    }
    if (word == "subnet") {
      if (current_block)
        throw ParseError("line " + std::to_string(line) + ": nested subnet");
      std::string name, brace;
      ls >> name >> brace;
      if (!valid_name(name) || brace != "{")
        throw ParseError("line " + std::to_string(line) +
                         ": expected 'subnet NAME {'");
      st.saw_subnet = true;
      if (st.saw_toplevel_reaction)
        throw ParseError("line " + std::to_string(line) +
                         ": reactions outside subnet blocks are not allowed "
                         "once subnets are used");
      blocks.emplace_back();
      block_names.push_back(name);
      current_block = &blocks.back();
      continue;
    }
    // Reaction line.
    if (!current_block && st.saw_subnet)
      throw ParseError("line " + std::to_string(line) +
                       ": reaction outside subnet block");
    if (!current_block) st.saw_toplevel_reaction = true;
    parse_reaction_line(st, s, line, current_block);
  }
  if (current_block)
    throw ParseError("line " + std::to_string(line) + ": unterminated subnet");
  if (st.net.reactions.empty())
    throw EmptyNetwork("network contains no reactions");
  if (st.saw_subnet) {
    st.net.partition = std::move(blocks);
    st.net.block_names = std::move(block_names);
  }
  return st.net;
}

}  // namespace crn
