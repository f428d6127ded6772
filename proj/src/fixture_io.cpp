#include "giry/fixture_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace giry {

namespace {

constexpr std::size_t kMaxFixturePoints = 64;

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::size_t parse_index(const std::string& text, const std::string& what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("expected a " + what + ", got '" + text + "'");
  }
  return std::stoul(text);
}

class Parser {
 public:
  Parser(std::string source) : source_(std::move(source)) {}

  void line(std::size_t number, const std::string& raw) {
    line_ = number;
    const std::string text = raw.substr(0, raw.find('#'));
    const auto tokens = split(text);
    if (tokens.empty()) return;
    try {
      dispatch(text, tokens);
    } catch (const FixtureParseError&) {
      throw;
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }

  Fixture finish() {
    close_block();
    if (!fixture_.space && !fixture_.countable) fail("no space given (expected 'points N' or 'space countable')");
    for (const auto& [line, tokens] : pending_measures_) {
      line_ = line;
      try {
        add_measure(tokens);
      } catch (const FixtureParseError&) {
        throw;
      } catch (const std::exception& e) {
        fail(e.what());
      }
    }
    if (fixture_.functional && fixture_.functional->kind == "canonical" && fixture_.measures.empty() &&
        fixture_.countable_measures.empty()) {
      line_ = functional_line_;
      fail("canonical functional needs a measure line");
    }
    return std::move(fixture_);
  }

 private:
  enum class Mode { none, atoms, function };

  [[noreturn]] void fail(const std::string& message) const { throw FixtureParseError(source_, line_, message); }

  void dispatch(const std::string& text, const std::vector<std::string>& tokens) {
    const std::string& head = tokens[0];
    if (head == "atom") {
      atom_line(text);
      return;
    }
    close_block();
    if (head == "points") {
      if (tokens.size() != 2) fail("expected 'points N'");
      if (n_points_ || fixture_.countable) fail("space given twice");
      n_points_ = parse_index(tokens[1], "point count");
      if (*n_points_ == 0 || *n_points_ > kMaxFixturePoints) fail("point count must be in 1.." + std::to_string(kMaxFixturePoints));
      block_ = Mode::atoms;
      block_start_ = line_;
    } else if (head == "space") {
      if (tokens.size() != 2 || tokens[1] != "countable") fail("expected 'space countable'");
      if (n_points_ || fixture_.countable) fail("space given twice");
      fixture_.countable = true;
    } else if (head == "P:") {
      pending_measures_.emplace_back(line_, std::vector<std::string>(tokens.begin() + 1, tokens.end()));
    } else if (head == "function") {
      if (!fixture_.space) fail("function before the space is complete");
      block_ = Mode::function;
      block_start_ = line_;
      function_values_.assign(fixture_.space->n_atoms(), std::nullopt);
    } else if (head == "functional") {
      if (fixture_.functional) fail("functional given twice");
      if (tokens.size() < 2) fail("expected 'functional canonical' or 'functional black-box NAME ...'");
      FunctionalSpec spec;
      spec.kind = tokens[1];
      if (spec.kind == "black-box") {
        if (tokens.size() < 3) fail("black-box functional needs a name");
        spec.name = tokens[2];
        spec.args.assign(tokens.begin() + 3, tokens.end());
      } else if (spec.kind != "canonical" || tokens.size() != 2) {
        fail("unknown functional kind '" + spec.kind + "'");
      }
      fixture_.functional = std::move(spec);
      functional_line_ = line_;
    } else if (head == "violates") {
      if (!fixture_.functional) fail("'violates' before 'functional'");
      fixture_.functional->violates.assign(tokens.begin() + 1, tokens.end());
    } else if (head == "lemma-items") {
      if (!fixture_.functional) fail("'lemma-items' before 'functional'");
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        const auto item = parse_index(tokens[i], "lemma item");
        if (item < 1 || item > 6) fail("lemma items are 1..6");
        fixture_.functional->lemma_items.push_back(static_cast<int>(item));
      }
    } else {
      fail("unknown keyword '" + head + "'");
    }
  }

  void atom_line(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) fail("expected 'atom i: ...'");
    const auto left = split(text.substr(0, colon));
    if (left.size() != 2) fail("expected 'atom i: ...'");
    const std::size_t index = parse_index(left[1], "atom index");
    const auto right = split(text.substr(colon + 1));
    if (block_ == Mode::atoms) {
      if (index != atoms_.size()) fail("atoms must be listed in order; expected atom " + std::to_string(atoms_.size()));
      Block block;
      for (const auto& t : right) {
        const auto p = parse_index(t, "point");
        if (p >= *n_points_) fail("point " + t + " outside 0.." + std::to_string(*n_points_ - 1));
        block.push_back(p);
      }
      atoms_.push_back(std::move(block));
    } else if (block_ == Mode::function) {
      if (index >= function_values_.size()) fail("function atom index out of range");
      if (function_values_[index]) fail("atom " + std::to_string(index) + " given twice");
      if (right.size() != 1) fail("expected a single value");
      function_values_[index] = parse_unit(right[0]);
    } else {
      fail("'atom' line outside a space or function block");
    }
  }

  void close_block() {
    const Mode block = std::exchange(block_, Mode::none);
    if (block == Mode::atoms) {
      const std::size_t saved = line_;
      line_ = block_start_;
      if (atoms_.empty()) fail("space has no atoms");
      try {
        fixture_.space = make_space(*n_points_, atoms_);
      } catch (const std::exception& e) {
        fail(e.what());
      }
      line_ = saved;
    } else if (block == Mode::function) {
      std::vector<UnitRational> values;
      for (std::size_t a = 0; a < function_values_.size(); ++a) {
        if (!function_values_[a]) {
          line_ = block_start_;
          fail("function is missing atom " + std::to_string(a));
        }
        values.push_back(*function_values_[a]);
      }
      fixture_.functions.emplace_back(fixture_.space, std::move(values));
    }
  }

  void add_measure(const std::vector<std::string>& tokens) {
    const std::string prefix = fixture_.countable ? "n" : "atom";
    std::map<std::size_t, UnitRational> masses;
    for (const auto& tok : tokens) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || tok.compare(0, prefix.size(), prefix) != 0) {
        fail("expected '" + prefix + "K=value', got '" + tok + "'");
      }
      const auto index = parse_index(tok.substr(prefix.size(), eq - prefix.size()), "index");
      if (masses.count(index)) fail("mass for " + prefix + std::to_string(index) + " given twice");
      masses.emplace(index, parse_unit(tok.substr(eq + 1)));
    }
    if (fixture_.countable) {
      std::map<NatPoint, UnitRational> m(masses.begin(), masses.end());
      fixture_.countable_measures.emplace_back(std::move(m));
      return;
    }
    std::vector<UnitRational> values(fixture_.space->n_atoms());
    for (const auto& [i, v] : masses) {
      if (i >= values.size()) fail("atom index " + std::to_string(i) + " out of range");
      values[i] = v;
    }
    fixture_.measures.emplace_back(fixture_.space, std::move(values));
  }

  std::string source_;
  std::size_t line_ = 0;
  Fixture fixture_;
  std::optional<std::size_t> n_points_;
  std::vector<Block> atoms_;
  Mode block_ = Mode::none;
  std::size_t block_start_ = 0;
  std::size_t functional_line_ = 0;
  std::vector<std::optional<UnitRational>> function_values_;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> pending_measures_;
};

}  // namespace

Fixture parse_fixture(std::istream& in, const std::string& source) {
  Parser parser(source);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) parser.line(++number, line);
  Fixture f = parser.finish();
  f.source = source;
  return f;
}

Fixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture " + path);
  return parse_fixture(in, path);
}

std::string format_space(const FiniteSpace& space) {
  std::string out = "points " + std::to_string(space.n_points()) + "\n";
  for (std::size_t a = 0; a < space.n_atoms(); ++a) {
    out += "atom " + std::to_string(a) + ":";
    for (Point p : space.atom(a)) out += " " + std::to_string(p);
    out += "\n";
  }
  return out;
}

std::string format_countable_measure(const CountableMeasure& p) {
  std::string out = "P:";
  for (const auto& [n, m] : p.masses()) out += " n" + std::to_string(n) + "=" + to_string(m);
  return out;
}

std::string format_fixture(const Fixture& f) {
  std::string out;
  if (f.countable) {
    out += "space countable\n";
    for (const auto& p : f.countable_measures) out += format_countable_measure(p) + "\n";
  } else {
    out += format_space(*f.space);
    for (const auto& p : f.measures) out += to_string(p) + "\n";
    for (const auto& fn : f.functions) {
      out += "function\n";
      for (std::size_t a = 0; a < fn.atom_values().size(); ++a)
        out += "atom " + std::to_string(a) + ": " + to_string(fn.at_atom(a)) + "\n";
    }
  }
  if (f.functional) {
    const auto& spec = *f.functional;
    out += "functional " + spec.kind;
    if (spec.kind == "black-box") out += " " + spec.name;
    for (const auto& a : spec.args) out += " " + a;
    out += "\n";
    if (!spec.violates.empty()) {
      out += "violates";
      for (const auto& v : spec.violates) out += " " + v;
      out += "\n";
    }
    if (!spec.lemma_items.empty()) {
      out += "lemma-items";
      for (int i : spec.lemma_items) out += " " + std::to_string(i);
      out += "\n";
    }
  }
  return out;
}

std::optional<Functional> finite_functional(const Fixture& f) {
  if (!f.functional || f.countable) return std::nullopt;
  const auto& spec = *f.functional;
  if (spec.kind == "canonical") return Functional::canonical(f.measures.at(0));
  if (spec.name == "max-over-atoms") return adversarial::max_over_atoms(f.space);
  if (spec.name == "square-at-point") {
    if (spec.args.size() != 1) throw std::invalid_argument("square-at-point takes one point argument");
    return adversarial::square_at_point(f.space, std::stoul(spec.args[0]));
  }
  throw std::invalid_argument("unknown finite black box '" + spec.name + "'");
}

std::optional<CountableFunctional> countable_functional(const Fixture& f) {
  if (!f.functional || !f.countable) return std::nullopt;
  const auto& spec = *f.functional;
  if (spec.kind == "canonical") return CountableFunctional::canonical(f.countable_measures.at(0));
  if (spec.name == "tail-limit") {
    if (f.countable_measures.empty()) throw std::invalid_argument("tail-limit needs a measure line");
    const UnitRational w = spec.args.empty() ? UnitRational(1, 2) : parse_unit(spec.args[0]);
    return adversarial::tail_limit(f.countable_measures.front(), w);
  }
  throw std::invalid_argument("unknown countable black box '" + spec.name + "'");
}

SpaceRef generate_space(Rng& rng, std::size_t points, std::size_t atoms) {
  if (points == 0 || points > kMaxFixturePoints) {
    throw SizeCapError("points must be in 1.." + std::to_string(kMaxFixturePoints));
  }
  if (atoms == 0) return random_space(rng, points);
  if (atoms > points) throw std::invalid_argument("more atoms than points");
  std::vector<Point> order(points);
  for (Point p = 0; p < points; ++p) order[p] = p;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Block> blocks(atoms);
  for (std::size_t i = 0; i < points; ++i) {
    const std::size_t b = i < atoms ? i : std::uniform_int_distribution<std::size_t>(0, atoms - 1)(rng);
    blocks[b].push_back(order[i]);
  }
  return make_space(points, std::move(blocks));
}

Fixture generate_fixture(const std::string& kind, std::uint64_t seed, std::size_t points, std::size_t atoms,
                         const std::string& adversarial) {
  Rng rng(seed);
  Fixture f;
  f.source = "generated";
  if (kind == "space") {
    f.space = generate_space(rng, points, atoms);
    return f;
  }
  if (kind == "measure") {
    f.space = generate_space(rng, points, atoms);
    f.measures.push_back(random_measure(rng, f.space));
    return f;
  }
  if (kind != "functional") throw std::invalid_argument("unknown fixture kind '" + kind + "'");

  FunctionalSpec spec;
  if (adversarial.empty()) {
    f.space = generate_space(rng, points, atoms);
    f.measures.push_back(random_measure(rng, f.space));
    f.functions.push_back(random_function(rng, f.space));
    spec.kind = "canonical";
    f.functional = spec;
    return f;
  }
  spec.kind = "black-box";
  adversarial::Declaration decl;
  if (adversarial == "tail-limit") {
    f.countable = true;
    f.countable_measures.push_back(random_countable_measure(rng));
    spec.args = {"1/2"};
    decl = adversarial::tail_limit_declaration();
  } else if (adversarial == "max-over-atoms") {
    if (points < 2) throw std::invalid_argument("max-over-atoms needs at least two points");
    f.space = generate_space(rng, points, std::max<std::size_t>(atoms, 2));
    decl = adversarial::max_over_atoms_declaration();
  } else if (adversarial == "square-at-point") {
    f.space = generate_space(rng, points, atoms);
    spec.args = {std::to_string(std::uniform_int_distribution<std::size_t>(0, points - 1)(rng))};
    decl = adversarial::square_at_point_declaration();
  } else {
    throw std::invalid_argument("unknown adversarial kind '" + adversarial +
                                "' (expected max-over-atoms, square-at-point or tail-limit)");
  }
  spec.name = decl.kind;
  spec.violates = decl.violated_properties;
  spec.lemma_items = decl.lemma_items;
  f.functional = spec;
  return f;
}

}  // namespace giry
