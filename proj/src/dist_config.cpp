#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "relac/distribution.hpp"
#include "relac/errors.hpp"

namespace relac {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Node {
  // Either a scalar line "key v1 v2 ..." or a block "key { ... }".
  std::string key;
  std::vector<std::string> values;
  std::vector<Node> children;
  bool is_block = false;
};

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream ss(s);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::vector<Node> parse_block(std::istream& in, bool top_level) {
  std::vector<Node> nodes;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "}") {
      if (top_level) throw config_error("distribution config: unmatched '}'");
      return nodes;
    }
    Node n;
    n.key = toks[0];
    if (toks.size() >= 2 && toks.back() == "{") {
      n.is_block = true;
      n.children = parse_block(in, false);
      for (std::size_t i = 1; i + 1 < toks.size(); ++i) n.values.push_back(toks[i]);
    } else {
      n.values.assign(toks.begin() + 1, toks.end());
    }
    nodes.push_back(std::move(n));
  }
  if (!top_level) throw config_error("distribution config: missing '}'");
  return nodes;
}

double to_number(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw config_error("distribution config: bad number for " + what + ": '" + s + "'");
  }
}

DistributionSpec from_nodes(const std::vector<Node>& nodes);

const Node* find(const std::vector<Node>& nodes, const std::string& key) {
  for (const auto& n : nodes)
    if (n.key == key) return &n;
  return nullptr;
}

double scalar(const std::vector<Node>& nodes, const std::string& key) {
  const Node* n = find(nodes, key);
  if (!n || n->values.size() != 1)
    throw config_error("distribution config: expected scalar key '" + key + "'");
  return to_number(n->values[0], key);
}

DistributionSpec from_nodes(const std::vector<Node>& nodes) {
  const Node* fam = find(nodes, "family");
  if (!fam || fam->values.size() != 1)
    throw config_error("distribution config: missing 'family'");
  const std::string& f = fam->values[0];

  // Reject unknown keys up front.
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (const auto& n : nodes) {
      bool ok = n.key == "family";
      for (const char* k : keys) ok = ok || n.key == k;
      if (!ok)
        throw config_error("distribution config: unknown key '" + n.key + "' for family " +
                           f);
    }
  };

  if (f == "gaussian") {
    allow({"sigma"});
    return DistributionSpec::gaussian(scalar(nodes, "sigma"));
  }
  if (f == "rademacher") {
    allow({});
    return DistributionSpec::rademacher();
  }
  if (f == "laplace") {
    allow({"b"});
    return DistributionSpec::laplace(scalar(nodes, "b"));
  }
  if (f == "exponential-power") {
    allow({"p", "scale"});
    return DistributionSpec::exponential_power(scalar(nodes, "p"), scalar(nodes, "scale"));
  }
  if (f == "uniform") {
    allow({"lo", "hi"});
    return DistributionSpec::uniform(scalar(nodes, "lo"), scalar(nodes, "hi"));
  }
  if (f == "finite-discrete") {
    allow({"atom"});
    std::vector<Atom> atoms;
    for (const auto& n : nodes) {
      if (n.key != "atom") continue;
      if (n.values.size() != 2)
        throw config_error("distribution config: atom wants 'atom value prob'");
      atoms.push_back({to_number(n.values[0], "atom value"),
                       to_number(n.values[1], "atom prob")});
    }
    return DistributionSpec::finite_discrete(std::move(atoms));
  }
  if (f == "scale-mixture") {
    allow({"base", "scale-law"});
    const Node* base = find(nodes, "base");
    const Node* sl = find(nodes, "scale-law");
    if (!base || !base->is_block || !sl || !sl->is_block)
      throw config_error("distribution config: scale-mixture wants base { } and scale-law { }");
    return DistributionSpec::scale_mixture(from_nodes(base->children),
                                           from_nodes(sl->children));
  }
  throw config_error("distribution config: unknown family '" + f + "'");
}

void emit(const DistributionSpec& d, std::ostream& os, int indent) {
  const std::string pad(indent, ' ');
  switch (d.family()) {
    case Family::gaussian:
      os << pad << "family gaussian\n" << pad << "sigma " << fmt(d.sigma()) << "\n";
      break;
    case Family::rademacher:
      os << pad << "family rademacher\n";
      break;
    case Family::laplace:
      os << pad << "family laplace\n" << pad << "b " << fmt(d.b()) << "\n";
      break;
    case Family::exponential_power:
      os << pad << "family exponential-power\n"
         << pad << "p " << fmt(d.power()) << "\n"
         << pad << "scale " << fmt(d.scale()) << "\n";
      break;
    case Family::uniform:
      os << pad << "family uniform\n"
         << pad << "lo " << fmt(d.lo()) << "\n"
         << pad << "hi " << fmt(d.hi()) << "\n";
      break;
    case Family::finite_discrete:
      os << pad << "family finite-discrete\n";
      for (const auto& a : d.atoms())
        os << pad << "atom " << fmt(a.value) << " " << fmt(a.prob) << "\n";
      break;
    case Family::scale_mixture:
      os << pad << "family scale-mixture\n" << pad << "base {\n";
      emit(d.base(), os, indent + 2);
      os << pad << "}\n" << pad << "scale-law {\n";
      emit(d.scale_law(), os, indent + 2);
      os << pad << "}\n";
      break;
    case Family::symm_diff:
      throw capability_error("symm-diff laws are derived, not serialized");
  }
}

// "name(a,b,...)" shorthand; finite-discrete uses ((v,p),(v,p),...).
DistributionSpec parse_shorthand(const std::string& s) {
  const auto lp = s.find('(');
  const std::string name = lp == std::string::npos ? s : s.substr(0, lp);
  std::string args;
  if (lp != std::string::npos) {
    if (s.back() != ')') throw config_error("bad distribution shorthand: " + s);
    args = s.substr(lp + 1, s.size() - lp - 2);
  }
  auto nums = [&]() {
    std::vector<double> out;
    std::string cur;
    for (char c : args) {
      if (c == ',') {
        out.push_back(to_number(cur, name));
        cur.clear();
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        cur += c;
      }
    }
    if (!cur.empty()) out.push_back(to_number(cur, name));
    return out;
  };
  if (name == "gaussian") {
    const auto v = nums();
    if (v.size() != 1) throw config_error("gaussian(sigma) wants one parameter");
    return DistributionSpec::gaussian(v[0]);
  }
  if (name == "rademacher") return DistributionSpec::rademacher();
  if (name == "laplace") {
    const auto v = nums();
    if (v.size() != 1) throw config_error("laplace(b) wants one parameter");
    return DistributionSpec::laplace(v[0]);
  }
  if (name == "uniform") {
    const auto v = nums();
    if (v.size() != 2) throw config_error("uniform(lo,hi) wants two parameters");
    return DistributionSpec::uniform(v[0], v[1]);
  }
  if (name == "exponential-power") {
    const auto v = nums();
    if (v.size() != 2) throw config_error("exponential-power(p,scale) wants two parameters");
    return DistributionSpec::exponential_power(v[0], v[1]);
  }
  if (name == "finite-discrete") {
    std::vector<Atom> atoms;
    std::vector<double> pair;
    std::string cur;
    int depth = 0;
    for (char c : args) {
      if (c == '(') {
        ++depth;
      } else if (c == ')') {
        if (!cur.empty()) pair.push_back(to_number(cur, name));
        cur.clear();
        if (pair.size() != 2) throw config_error("finite-discrete wants (value,prob) pairs");
        atoms.push_back({pair[0], pair[1]});
        pair.clear();
        --depth;
      } else if (c == ',') {
        if (depth == 1 && !cur.empty()) {
          pair.push_back(to_number(cur, name));
          cur.clear();
        }
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        cur += c;
      }
    }
    return DistributionSpec::finite_discrete(std::move(atoms));
  }
  throw config_error("unknown distribution shorthand: " + s);
}

}  // namespace

std::string DistributionSpec::to_config() const {
  std::ostringstream os;
  emit(*this, os, 0);
  return os.str();
}

DistributionSpec DistributionSpec::from_config_text(const std::string& text) {
  std::istringstream in(text);
  return from_nodes(parse_block(in, true));
}

DistributionSpec DistributionSpec::from_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open distribution config: " + path);
  return from_nodes(parse_block(in, true));
}

DistributionSpec DistributionSpec::parse(const std::string& inline_or_path) {
  static const char* families[] = {"gaussian",          "rademacher", "laplace",
                                   "exponential-power", "uniform",    "finite-discrete"};
  for (const char* f : families) {
    if (inline_or_path == f || inline_or_path.rfind(std::string(f) + "(", 0) == 0)
      return parse_shorthand(inline_or_path);
  }
  return from_config_file(inline_or_path);
}

}  // namespace relac
