#include "kclab/nnf.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace kclab::nnf {

Circuit::Circuit(unsigned n, std::vector<Gate> gates) : n_(n), gates_(std::move(gates)) {
  if (gates_.empty()) throw std::invalid_argument("circuit needs at least one gate");
  var_sets_.resize(gates_.size());
  for (std::uint32_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    switch (g.kind) {
      case GateKind::True:
      case GateKind::False:
        break;
      case GateKind::Literal:
        if (g.var == 0 || g.var > n_) throw std::invalid_argument("literal variable out of range");
        var_sets_[i] = {g.var - 1};
        break;
      case GateKind::And:
      case GateKind::Or: {
        if (g.children.empty()) throw std::invalid_argument("AND/OR gate without children");
        std::vector<unsigned> acc;
        for (auto ch : g.children) {
          if (ch >= i) throw std::invalid_argument("child does not precede parent");
          acc.insert(acc.end(), var_sets_[ch].begin(), var_sets_[ch].end());
        }
        std::sort(acc.begin(), acc.end());
        acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
        var_sets_[i] = std::move(acc);
        break;
      }
    }
  }
}

std::uint32_t Builder::add_true() {
  gates_.push_back(Gate{GateKind::True, 0, true, {}, 0});
  return static_cast<std::uint32_t>(gates_.size() - 1);
}

std::uint32_t Builder::add_false() {
  gates_.push_back(Gate{GateKind::False, 0, true, {}, 0});
  return static_cast<std::uint32_t>(gates_.size() - 1);
}

std::uint32_t Builder::add_literal(unsigned var, bool positive) {
  gates_.push_back(Gate{GateKind::Literal, var, positive, {}, 0});
  return static_cast<std::uint32_t>(gates_.size() - 1);
}

std::uint32_t Builder::add_and(std::vector<std::uint32_t> children) {
  gates_.push_back(Gate{GateKind::And, 0, true, std::move(children), 0});
  return static_cast<std::uint32_t>(gates_.size() - 1);
}

std::uint32_t Builder::add_or(std::vector<std::uint32_t> children, unsigned hint) {
  gates_.push_back(Gate{GateKind::Or, 0, true, std::move(children), hint});
  return static_cast<std::uint32_t>(gates_.size() - 1);
}

Circuit Builder::finish(std::uint32_t root) {
  if (root + 1 == gates_.size()) return Circuit(n_, std::move(gates_));
  // Root must be last; append a single-child AND as an alias.
  gates_.push_back(Gate{GateKind::And, 0, true, {root}, 0});
  return Circuit(n_, std::move(gates_));
}

Circuit parse(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto nl = text.find('\n', pos);
      if (nl == std::string::npos) {
        if (pos < text.size()) lines.push_back(text.substr(pos));
        break;
      }
      lines.push_back(text.substr(pos, nl - pos));
      pos = nl + 1;
    }
  }
  if (lines.empty()) throw std::runtime_error("nnf parse: empty input");

  auto fail = [](std::size_t lineno, const std::string& what) -> void {
    throw std::runtime_error("nnf parse: line " + std::to_string(lineno + 1) + ": " + what);
  };

  std::istringstream hs(lines[0]);
  std::string tag;
  std::uint64_t v = 0, e = 0, n = 0;
  if (!(hs >> tag >> v >> e >> n) || tag != "nnf" || (hs >> tag))
    fail(0, "malformed header, expected \"nnf V E n\"");
  if (lines.size() < 1 + v) fail(lines.size() - 1, "fewer gate lines than header V");
  for (std::size_t i = 1 + v; i < lines.size(); ++i)
    if (!lines[i].empty()) fail(i, "trailing data after V gates");

  std::vector<Gate> gates;
  gates.reserve(v);
  std::uint64_t edges = 0;
  for (std::uint64_t i = 0; i < v; ++i) {
    std::size_t lineno = 1 + i;
    std::istringstream ls(lines[lineno]);
    std::string kind;
    if (!(ls >> kind)) fail(lineno, "empty gate line");
    Gate g;
    if (kind == "L") {
      long long lit;
      if (!(ls >> lit) || lit == 0) fail(lineno, "malformed literal");
      g.kind = GateKind::Literal;
      g.positive = lit > 0;
      g.var = static_cast<unsigned>(lit > 0 ? lit : -lit);
      if (g.var > n) fail(lineno, "variable index exceeds n");
    } else if (kind == "A") {
      std::uint64_t c;
      if (!(ls >> c)) fail(lineno, "malformed AND gate");
      if (c == 0) {
        g.kind = GateKind::True;
      } else {
        g.kind = GateKind::And;
        for (std::uint64_t k = 0; k < c; ++k) {
          std::uint64_t ch;
          if (!(ls >> ch)) fail(lineno, "missing AND child");
          if (ch >= i) fail(lineno, "forward or self reference");
          g.children.push_back(static_cast<std::uint32_t>(ch));
        }
        edges += c;
      }
    } else if (kind == "O") {
      std::uint64_t j, c;
      if (!(ls >> j >> c)) fail(lineno, "malformed OR gate");
      g.or_hint = static_cast<unsigned>(j);
      if (c == 0) {
        g.kind = GateKind::False;
      } else {
        g.kind = GateKind::Or;
        for (std::uint64_t k = 0; k < c; ++k) {
          std::uint64_t ch;
          if (!(ls >> ch)) fail(lineno, "missing OR child");
          if (ch >= i) fail(lineno, "forward or self reference");
          g.children.push_back(static_cast<std::uint32_t>(ch));
        }
        edges += c;
      }
    } else {
      fail(lineno, "unknown gate kind \"" + kind + "\"");
    }
    std::string extra;
    if (ls >> extra) fail(lineno, "trailing tokens");
    gates.push_back(std::move(g));
  }
  if (edges != e) throw std::runtime_error("nnf parse: header E = " + std::to_string(e) +
                                           " but found " + std::to_string(edges) + " edges");
  return Circuit(static_cast<unsigned>(n), std::move(gates));
}

std::string emit(const Circuit& c) {
  std::uint64_t edges = 0;
  for (std::uint32_t i = 0; i < c.size(); ++i) edges += c.gate(i).children.size();
  std::string out = "nnf " + std::to_string(c.size()) + " " + std::to_string(edges) + " " +
                    std::to_string(c.vars()) + "\n";
  for (std::uint32_t i = 0; i < c.size(); ++i) {
    const Gate& g = c.gate(i);
    switch (g.kind) {
      case GateKind::True:
        out += "A 0";
        break;
      case GateKind::False:
        out += "O " + std::to_string(g.or_hint) + " 0";
        break;
      case GateKind::Literal:
        out += "L " + std::string(g.positive ? "" : "-") + std::to_string(g.var);
        break;
      case GateKind::And:
        out += "A " + std::to_string(g.children.size());
        for (auto ch : g.children) out += " " + std::to_string(ch);
        break;
      case GateKind::Or:
        out += "O " + std::to_string(g.or_hint) + " " + std::to_string(g.children.size());
        for (auto ch : g.children) out += " " + std::to_string(ch);
        break;
    }
    out += "\n";
  }
  return out;
}

namespace {

// Per-gate tables over the full n-variable space, bottom-up.
std::vector<boolfun::TruthTable> gate_tables(const Circuit& c) {
  std::vector<boolfun::TruthTable> tabs;
  tabs.reserve(c.size());
  for (std::uint32_t i = 0; i < c.size(); ++i) {
    const Gate& g = c.gate(i);
    switch (g.kind) {
      case GateKind::True:
        tabs.push_back(boolfun::TruthTable::constant(c.vars(), true));
        break;
      case GateKind::False:
        tabs.push_back(boolfun::TruthTable::constant(c.vars(), false));
        break;
      case GateKind::Literal: {
        unsigned v = g.var - 1;
        bool pos = g.positive;
        tabs.push_back(boolfun::TruthTable::from_predicate(
            c.vars(), [v, pos](std::uint64_t a) { return (((a >> v) & 1u) != 0) == pos; }));
        break;
      }
      case GateKind::And: {
        boolfun::TruthTable t = tabs[g.children[0]];
        for (std::size_t k = 1; k < g.children.size(); ++k)
          t = boolfun::combine_and(t, tabs[g.children[k]]);
        tabs.push_back(std::move(t));
        break;
      }
      case GateKind::Or: {
        boolfun::TruthTable t = tabs[g.children[0]];
        for (std::size_t k = 1; k < g.children.size(); ++k)
          t = boolfun::combine_or(t, tabs[g.children[k]]);
        tabs.push_back(std::move(t));
        break;
      }
    }
  }
  return tabs;
}

bool vars_disjoint(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j]) ++i;
    else ++j;
  }
  return true;
}

}  // namespace

ValidationReport validate(const Circuit& c) {
  ValidationReport rep;
  rep.is_nnf = true;  // Circuit construction already enforces structure.

  rep.decomposable = true;
  for (std::uint32_t i = 0; i < c.size() && rep.decomposable; ++i) {
    const Gate& g = c.gate(i);
    if (g.kind != GateKind::And) continue;
    for (std::size_t a = 0; a < g.children.size() && rep.decomposable; ++a) {
      for (std::size_t b = a + 1; b < g.children.size(); ++b) {
        if (!vars_disjoint(c.gate_vars(g.children[a]), c.gate_vars(g.children[b]))) {
          rep.decomposable = false;
          rep.decomposability_witness = i;
          break;
        }
      }
    }
  }

  if (c.vars() > boolfun::truth_table_cap()) return rep;  // determinism left unchecked

  auto tabs = gate_tables(c);
  rep.deterministic = true;
  for (std::uint32_t i = 0; i < c.size() && *rep.deterministic; ++i) {
    const Gate& g = c.gate(i);
    if (g.kind != GateKind::Or) continue;
    for (std::size_t a = 0; a < g.children.size() && *rep.deterministic; ++a) {
      for (std::size_t b = a + 1; b < g.children.size(); ++b) {
        boolfun::TruthTable shared = boolfun::combine_and(tabs[g.children[a]], tabs[g.children[b]]);
        if (shared.count_models() > 0) {
          rep.deterministic = false;
          rep.determinism_witness_gate = i;
          rep.determinism_witness_model = shared.models().front();
          break;
        }
      }
    }
  }
  return rep;
}

num::BigInt model_count(const Circuit& c, const ValidationReport& validation) {
  if (!validation.is_d_dnnf())
    throw std::invalid_argument("model_count requires a validated d-DNNF");
  std::vector<num::BigInt> counts(c.size());
  for (std::uint32_t i = 0; i < c.size(); ++i) {
    const Gate& g = c.gate(i);
    switch (g.kind) {
      case GateKind::True:
      case GateKind::Literal:
        counts[i] = num::BigInt(1);
        break;
      case GateKind::False:
        counts[i] = num::BigInt(0);
        break;
      case GateKind::And: {
        num::BigInt p(1);
        for (auto ch : g.children) p *= counts[ch];
        counts[i] = std::move(p);
        break;
      }
      case GateKind::Or: {
        num::BigInt s(0);
        unsigned gv = static_cast<unsigned>(c.gate_vars(i).size());
        for (auto ch : g.children) {
          unsigned gap = gv - static_cast<unsigned>(c.gate_vars(ch).size());
          s += counts[ch].shl(gap);
        }
        counts[i] = std::move(s);
        break;
      }
    }
  }
  unsigned root_gap = c.vars() - static_cast<unsigned>(c.gate_vars(c.root()).size());
  return counts[c.root()].shl(root_gap);
}

Circuit condition(const Circuit& c, const std::vector<std::pair<unsigned, bool>>& assignment) {
  std::vector<int> fixed(c.vars(), -1);
  for (auto [v, b] : assignment) {
    if (v >= c.vars()) throw std::invalid_argument("conditioned variable out of range");
    if (fixed[v] != -1) throw std::invalid_argument("variable conditioned twice");
    fixed[v] = b ? 1 : 0;
  }
  std::vector<unsigned> new_var(c.vars(), 0);
  unsigned next = 1;
  for (unsigned v = 0; v < c.vars(); ++v)
    if (fixed[v] == -1) new_var[v] = next++;
  unsigned new_n = next - 1;

  Builder b(new_n);
  // -1 = no gate yet; constants are created on demand and shared.
  std::int64_t true_id = -1, false_id = -1;
  auto get_true = [&]() {
    if (true_id < 0) true_id = b.add_true();
    return static_cast<std::uint32_t>(true_id);
  };
  auto get_false = [&]() {
    if (false_id < 0) false_id = b.add_false();
    return static_cast<std::uint32_t>(false_id);
  };

  enum class Val { False, True, Gate };
  struct Mapped {
    Val val;
    std::uint32_t id = 0;
  };
  std::vector<Mapped> mapped(c.size());

  for (std::uint32_t i = 0; i < c.size(); ++i) {
    const Gate& g = c.gate(i);
    switch (g.kind) {
      case GateKind::True:
        mapped[i] = {Val::True};
        break;
      case GateKind::False:
        mapped[i] = {Val::False};
        break;
      case GateKind::Literal: {
        int fx = fixed[g.var - 1];
        if (fx == -1) mapped[i] = {Val::Gate, b.add_literal(new_var[g.var - 1], g.positive)};
        else mapped[i] = {(fx == 1) == g.positive ? Val::True : Val::False};
        break;
      }
      case GateKind::And: {
        bool any_false = false;
        std::vector<std::uint32_t> kept;
        for (auto ch : g.children) {
          if (mapped[ch].val == Val::False) any_false = true;
          else if (mapped[ch].val == Val::Gate) kept.push_back(mapped[ch].id);
        }
        if (any_false) mapped[i] = {Val::False};
        else if (kept.empty()) mapped[i] = {Val::True};
        else if (kept.size() == 1) mapped[i] = {Val::Gate, kept[0]};
        else mapped[i] = {Val::Gate, b.add_and(std::move(kept))};
        break;
      }
      case GateKind::Or: {
        bool any_true = false;
        std::vector<std::uint32_t> kept;
        for (auto ch : g.children) {
          if (mapped[ch].val == Val::True) any_true = true;
          else if (mapped[ch].val == Val::Gate) kept.push_back(mapped[ch].id);
        }
        if (any_true) mapped[i] = {Val::True};
        else if (kept.empty()) mapped[i] = {Val::False};
        else if (kept.size() == 1) mapped[i] = {Val::Gate, kept[0]};
        else mapped[i] = {Val::Gate, b.add_or(std::move(kept), g.or_hint)};
        break;
      }
    }
  }

  const Mapped& r = mapped[c.root()];
  if (r.val == Val::True) return b.finish(get_true());
  if (r.val == Val::False) return b.finish(get_false());
  return b.finish(r.id);
}

boolfun::TruthTable truth_table(const Circuit& c) {
  return gate_tables(c)[c.root()];
}

Circuit from_truth_table(const boolfun::TruthTable& f, std::vector<unsigned> order) {
  unsigned n = f.vars();
  if (order.empty()) {
    order.resize(n);
    for (unsigned i = 0; i < n; ++i) order[i] = i;
  }
  if (order.size() != n) throw std::invalid_argument("variable order has wrong length");
  {
    std::vector<bool> seen(n, false);
    for (unsigned v : order) {
      if (v >= n || seen[v]) throw std::invalid_argument("variable order is not a permutation");
      seen[v] = true;
    }
  }

  std::uint64_t mc = f.count_models();
  Builder b(n);
  if (mc == 0) return b.finish(b.add_false());
  if (mc == f.size()) return b.finish(b.add_true());

  // Subfunction on suffix levels as raw bits; local bit k is order[level + k].
  using Bits = std::vector<std::uint64_t>;
  auto table_bits = [](const boolfun::TruthTable& t) {
    Bits bits((t.size() + 63) / 64, 0);
    for (std::uint64_t a = 0; a < t.size(); ++a)
      if (t.get(a)) bits[a >> 6] |= std::uint64_t{1} << (a & 63);
    return bits;
  };
  auto bit_of = [](const Bits& bits, std::uint64_t a) -> bool {
    return (bits[a >> 6] >> (a & 63)) & 1u;
  };

  // Reindex f so local variable k is order[k].
  boolfun::TruthTable perm = boolfun::TruthTable::from_predicate(n, [&](std::uint64_t a) {
    std::uint64_t orig = 0;
    for (unsigned k = 0; k < n; ++k)
      if ((a >> k) & 1u) orig |= std::uint64_t{1} << order[k];
    return f.get(orig);
  });

  std::int64_t true_id = -1, false_id = -1;
  std::vector<std::int64_t> lit_id(2 * n, -1);
  auto literal = [&](unsigned level, bool positive) {
    auto& slot = lit_id[2 * order[level] + (positive ? 1 : 0)];
    if (slot < 0) slot = b.add_literal(order[level] + 1, positive);
    return static_cast<std::uint32_t>(slot);
  };
  std::vector<std::map<Bits, std::uint32_t>> memo(n);

  auto build = [&](auto&& self, unsigned level, const Bits& bits,
                   std::uint64_t width) -> std::uint32_t {
    if (level == n) {
      if (bit_of(bits, 0)) {
        if (true_id < 0) true_id = b.add_true();
        return static_cast<std::uint32_t>(true_id);
      }
      if (false_id < 0) false_id = b.add_false();
      return static_cast<std::uint32_t>(false_id);
    }
    auto it = memo[level].find(bits);
    if (it != memo[level].end()) return it->second;
    Bits lo((width / 2 + 63) / 64, 0), hi((width / 2 + 63) / 64, 0);
    for (std::uint64_t a = 0; a < width / 2; ++a) {
      if (bit_of(bits, 2 * a)) lo[a >> 6] |= std::uint64_t{1} << (a & 63);
      if (bit_of(bits, 2 * a + 1)) hi[a >> 6] |= std::uint64_t{1} << (a & 63);
    }
    std::uint32_t lo_id = self(self, level + 1, lo, width / 2);
    std::uint32_t hi_id = self(self, level + 1, hi, width / 2);
    std::uint32_t a0 = b.add_and({literal(level, false), lo_id});
    std::uint32_t a1 = b.add_and({literal(level, true), hi_id});
    std::uint32_t node = b.add_or({a0, a1}, order[level] + 1);
    memo[level][bits] = node;
    return node;
  };

  std::uint32_t root = build(build, 0, table_bits(perm), perm.size());
  return b.finish(root);
}

rect::Cover extract_cover(const Circuit& c) {
  unsigned n = c.vars();
  if (n < 2) throw std::invalid_argument("extract_cover requires n >= 2");
  ValidationReport val = validate(c);
  if (!val.is_d_dnnf()) throw std::invalid_argument("extract_cover requires a validated d-DNNF");

  auto tabs = gate_tables(c);
  const boolfun::TruthTable& f = tabs[c.root()];

  // stop at the first gate with |vars| <= 2n/3, exact comparison
  auto stops = [&](std::uint32_t g) { return 3 * c.gate_vars(g).size() <= 2ull * n; };

  std::map<std::uint32_t, std::vector<std::uint64_t>> groups;
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    if (!f.get(x)) continue;
    std::uint32_t g = c.root();
    while (!stops(g)) {
      const Gate& gate = c.gate(g);
      if (gate.kind == GateKind::And) {
        std::uint32_t best = gate.children[0];
        for (auto ch : gate.children)
          if (c.gate_vars(ch).size() > c.gate_vars(best).size()) best = ch;
        g = best;
      } else if (gate.kind == GateKind::Or) {
        std::uint32_t chosen = gate.children.size();
        bool found = false;
        for (auto ch : gate.children) {
          if (tabs[ch].get(x)) {
            chosen = ch;
            found = true;
            break;  // determinism makes the accepting child unique
          }
        }
        if (!found) throw std::logic_error("not a rectangle (gate " + std::to_string(g) +
                                           ": no accepting child)");
        g = chosen;
      } else {
        // Literal or constant above the threshold can only mean n < 2; guarded.
        break;
      }
    }
    groups[g].push_back(x);
  }

  rect::Cover cover;
  for (auto& [g, members] : groups) {
    std::vector<unsigned> x1 = c.gate_vars(g);
    rect::Partition part = rect::make_partition(n, x1);
    std::vector<std::uint32_t> a, bset;
    for (auto x : members) {
      a.push_back(static_cast<std::uint32_t>(rect::gather(x, part.x1)));
      bset.push_back(static_cast<std::uint32_t>(rect::gather(x, part.x2)));
    }
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    std::sort(bset.begin(), bset.end());
    bset.erase(std::unique(bset.begin(), bset.end()), bset.end());
    if (a.size() * bset.size() != members.size())
      throw std::logic_error("not a rectangle (gate " + std::to_string(g) + ")");
    cover.rectangles.push_back(rect::make_rectangle(part, std::move(a), std::move(bset)));
  }

  rect::CoverReport check = rect::verify_cover(f, cover, true, false);
  if (!check.equivalent || !check.disjoint) {
    std::uint32_t witness = groups.empty() ? c.root() : groups.begin()->first;
    throw std::logic_error("not a rectangle (gate " + std::to_string(witness) +
                           ": cover verification failed)");
  }
  cover.equivalent = true;
  cover.disjoint = true;
  cover.balanced = check.balanced;
  return cover;
}

}  // namespace kclab::nnf
