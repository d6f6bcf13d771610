#include "geoquant/config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "geoquant/parser.hpp"
#include "geoquant/quantize.hpp"

namespace geoquant {
namespace {

using Section = std::map<std::string, std::string>;
using Document = std::map<std::string, Section>;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"model", {"dim", "hamiltonian"}},
      {"frame", {"velocity", "connection"}},
      {"grid", {"min", "max", "points"}},
      {"initial", {"center_q", "center_p", "width"}},
      {"evolve", {"dt", "steps", "observables"}},
  };
  return keys;
}

// Splits the text into [section] headers and key=value pairs. Whitespace
// separates entries; a double-quoted value may contain anything but '"'.
Document scan(std::string_view text) {
  Document doc;
  std::string section;
  std::size_t i = 0;
  auto fail = [&](const std::string& key, const std::string& reason) -> ConfigError {
    return ConfigError(section.empty() ? "<top>" : section, key, reason);
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '[') {
      const auto close = text.find(']', i);
      if (close == std::string_view::npos) throw fail("<header>", "unterminated section header");
      section = std::string(text.substr(i + 1, close - i - 1));
      if (!known_keys().contains(section)) throw ConfigError(section, "<header>", "unknown section");
      if (doc.contains(section)) throw ConfigError(section, "<header>", "section appears twice");
      doc[section];
      i = close + 1;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && text[i] != '=' && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::string key(text.substr(start, i - start));
    auto skip_blanks = [&] {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_blanks();
    if (i >= text.size() || text[i] != '=') throw fail(key, "expected key=value");
    ++i;
    skip_blanks();
    if (section.empty()) throw fail(key, "key outside any section");
    std::string value;
    if (i < text.size() && text[i] == '"') {
      const auto close = text.find('"', i + 1);
      if (close == std::string_view::npos) throw fail(key, "unterminated quoted value");
      value = std::string(text.substr(i + 1, close - i - 1));
      i = close + 1;
    } else {
      start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '#') ++i;
      value = std::string(text.substr(start, i - start));
    }
    if (!known_keys().at(section).contains(key)) throw fail(key, "unknown key");
    if (doc[section].contains(key)) throw fail(key, "key appears twice");
    if (value.empty()) throw fail(key, "empty value");
    doc[section][key] = value;
  }
  return doc;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
  }
  if (!value.empty() && value.back() == ',') out.emplace_back();
  return out;
}

class Reader {
 public:
  explicit Reader(Document doc) : doc_(std::move(doc)) {}

  const std::string& raw(const std::string& section, const std::string& key) const {
    const auto s = doc_.find(section);
    if (s == doc_.end()) throw ConfigError(section, key, "missing (section absent)");
    const auto v = s->second.find(key);
    if (v == s->second.end()) throw ConfigError(section, key, "missing");
    return v->second;
  }

  bool has(const std::string& section, const std::string& key) const {
    const auto s = doc_.find(section);
    return s != doc_.end() && s->second.contains(key);
  }

  Polynomial polynomial(const std::string& section, const std::string& key, const std::string& text, int dim) const {
    try {
      return parse_polynomial(text, dim);
    } catch (const ParseError& e) {
      throw ConfigError(section, key, std::string("cannot parse '") + text + "': " + e.what());
    }
  }

  Rational rational(const std::string& section, const std::string& key, const std::string& text) const {
    const Polynomial p = polynomial(section, key, text, 1);
    if (p.total_degree() > 0) throw ConfigError(section, key, "'" + text + "' is not a number");
    const ComplexRational c = p.constant_term();
    if (!c.is_real()) throw ConfigError(section, key, "'" + text + "' is not real");
    return c.re();
  }

  std::vector<Rational> rationals(const std::string& section, const std::string& key, int dim) const {
    std::vector<Rational> out;
    for (const auto& item : split_list(raw(section, key))) {
      if (item.empty()) throw ConfigError(section, key, "empty list entry");
      out.push_back(rational(section, key, item));
    }
    if (out.size() == 1 && dim > 1) out.resize(static_cast<std::size_t>(dim), out.front());
    if (static_cast<int>(out.size()) != dim) {
      throw ConfigError(section, key, "expected 1 or " + std::to_string(dim) + " entries, got " +
                                          std::to_string(out.size()));
    }
    return out;
  }

  std::vector<double> doubles(const std::string& section, const std::string& key, int dim) const {
    std::vector<double> out;
    for (const auto& r : rationals(section, key, dim)) out.push_back(to_double(r));
    return out;
  }

  long integer(const std::string& section, const std::string& key, const std::string& text) const {
    const Rational r = rational(section, key, text);
    if (r.get_den() != 1 || !r.get_num().fits_slong_p()) {
      throw ConfigError(section, key, "'" + text + "' is not an integer");
    }
    return r.get_num().get_si();
  }

 private:
  Document doc_;
};

}  // namespace

std::vector<double> HamiltonianSpec::velocity_values() const {
  std::vector<double> out;
  for (const auto& v : velocity) out.push_back(to_double(v));
  return out;
}

HamiltonianSpec parse_config(std::string_view text) {
  const Reader r(scan(text));

  const long dim_value = r.integer("model", "dim", r.raw("model", "dim"));
  if (dim_value != 1 && dim_value != 2) throw ConfigError("model", "dim", "must be 1 or 2");
  const int dim = static_cast<int>(dim_value);

  const std::string& h_text = r.raw("model", "hamiltonian");
  const Polynomial h = r.polynomial("model", "hamiltonian", h_text, dim);
  if (h.depends_on(Variable::p0())) throw ConfigError("model", "hamiltonian", "must not depend on p0");
  if (!h.is_real()) throw ConfigError("model", "hamiltonian", "must be real");
  if (h.momentum_degree() > 2) {
    throw ConfigError("model", "hamiltonian",
                      "momentum degree " + std::to_string(h.momentum_degree()) + " > 2 is not quantizable");
  }
  const PhaseFunction hamiltonian = PhaseFunction::on_vq(h);

  const std::vector<Rational> velocity = r.rationals("frame", "velocity", dim);
  FrameConnection frame = FrameConnection::constant(dim, velocity);
  if (r.has("frame", "connection")) {
    std::vector<Polynomial> gamma;
    for (const auto& item : split_list(r.raw("frame", "connection"))) {
      if (item.empty()) throw ConfigError("frame", "connection", "empty list entry");
      gamma.push_back(r.polynomial("frame", "connection", item, dim));
    }
    if (static_cast<int>(gamma.size()) != dim) {
      throw ConfigError("frame", "connection", "expected " + std::to_string(dim) + " entries");
    }
    try {
      frame = FrameConnection(std::move(gamma));
    } catch (const Error& e) {
      throw ConfigError("frame", "connection", e.what());
    }
  }

  const auto lower = r.doubles("grid", "min", dim);
  const auto upper = r.doubles("grid", "max", dim);
  std::vector<std::size_t> points;
  for (const auto& item : split_list(r.raw("grid", "points"))) {
    const long n = r.integer("grid", "points", item);
    if (n < 8) throw ConfigError("grid", "points", "need at least 8 points per axis");
    points.push_back(static_cast<std::size_t>(n));
  }
  if (points.size() == 1 && dim > 1) points.resize(static_cast<std::size_t>(dim), points.front());
  if (static_cast<int>(points.size()) != dim) throw ConfigError("grid", "points", "expected 1 or dim entries");
  for (int k = 0; k < dim; ++k) {
    if (!(lower[k] < upper[k])) throw ConfigError("grid", "min", "must be below max on every axis");
  }
  GridSpec grid(lower, upper, points);

  PacketParams initial{r.doubles("initial", "center_q", dim), r.doubles("initial", "center_p", dim),
                       r.doubles("initial", "width", dim)};
  for (double w : initial.width) {
    if (!(w > 0.0)) throw ConfigError("initial", "width", "must be positive");
  }
  const double tail = packet_tail_mass(grid, initial);
  if (tail > kMaxTailMass) {
    std::ostringstream os;
    os.precision(3);
    os << "packet outside box: tail mass " << tail << " exceeds " << kMaxTailMass;
    throw ConfigError("initial", "center_q", os.str());
  }

  EvolveSettings evolve;
  const Rational dt = r.rational("evolve", "dt", r.raw("evolve", "dt"));
  if (dt <= 0) throw ConfigError("evolve", "dt", "must be positive");
  evolve.dt = to_double(dt);
  const long steps = r.integer("evolve", "steps", r.raw("evolve", "steps"));
  if (steps < 1) throw ConfigError("evolve", "steps", "must be at least 1");
  evolve.steps = static_cast<std::size_t>(steps);
  for (const auto& item : split_list(r.raw("evolve", "observables"))) {
    if (item.empty()) throw ConfigError("evolve", "observables", "empty list entry");
    const Polynomial f = r.polynomial("evolve", "observables", item, dim);
    if (f.depends_on(Variable::p0())) throw ConfigError("evolve", "observables", "'" + item + "' depends on p0");
    if (f.momentum_degree() > 2) {
      throw ConfigError("evolve", "observables", "'" + item + "' has momentum degree > 2");
    }
    const PhaseFunction obs = PhaseFunction::on_vq(f);
    try {
      quantize_observable(obs);
    } catch (const Error& e) {
      throw ConfigError("evolve", "observables", "'" + item + "' is not quantizable: " + e.what());
    }
    evolve.observable_text.push_back(item);
    evolve.observables.push_back(obs);
  }

  return {dim, h_text, hamiltonian, velocity, std::move(frame), std::move(grid), std::move(initial),
          std::move(evolve)};
}

HamiltonianSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", path, "cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace geoquant
