#include "borel/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "borel/adams.hpp"
#include "borel/duality.hpp"
#include "borel/error.hpp"
#include "borel/groups.hpp"

namespace borel {

namespace {

using nlohmann::ordered_json;

struct Token {
  std::string text;
  int column = 0;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

int to_int(const Token& t, int line) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(t.text, &used);
    if (used == t.text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(line, t.column, "expected an integer, found '" + t.text + "'");
}

bool to_closure(const Token& t, int line) {
  if (t.text == "closed") return true;
  if (t.text == "open") return false;
  throw ParseError(line, t.column, "expected 'closed' or 'open', found '" + t.text + "'");
}

std::string group_text(const GroupData& g) {
  if (g.rank() == 0) return "trivial";
  std::string s;
  for (int i = 0; i < g.rank(); ++i) s += (i ? "," : "") + std::to_string(g.codegree(i));
  return s;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::invalid_argument, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool file_exists(const std::string& path) {
  std::ifstream in(path);
  return static_cast<bool>(in);
}

}  // namespace

DGModule parse_module(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char c : text) {
      if (c == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else if (c != '\r') {
        cur += c;
      }
    }
    if (!cur.empty()) lines.push_back(cur);
  }
  std::optional<AlgebraKind> kind;
  GroupData group;
  std::optional<Window> window;
  GradedVS space;
  std::map<int, std::vector<std::string>> labels;
  struct PendingBlock {
    int generator = -1;  // -1 for d
    int degree = 0;
    Matrix m;
  };
  std::vector<PendingBlock> blocks;

  std::size_t i = 0;
  auto next_nonblank = [&](std::size_t& k) {
    while (k < lines.size() && tokenize(lines[k]).empty()) ++k;
  };
  auto generator_degree = [&](int gen) {
    return *kind == AlgebraKind::poly ? group.poly_degree(gen) : group.ext_degree(gen);
  };
  while (true) {
    next_nonblank(i);
    if (i >= lines.size()) break;
    const int ln = static_cast<int>(i) + 1;
    const auto tok = tokenize(lines[i]);
    const std::string& key = tok[0].text;
    ++i;
    if (key == "algebra") {
      if (tok.size() != 3) throw ParseError(ln, tok[0].column, "expected 'algebra poly|ext <group>'");
      if (kind) throw ParseError(ln, tok[0].column, "algebra given twice");
      if (tok[1].text == "poly") kind = AlgebraKind::poly;
      else if (tok[1].text == "ext") kind = AlgebraKind::ext;
      else throw ParseError(ln, tok[1].column, "expected 'poly' or 'ext', found '" + tok[1].text + "'");
      try {
        group = parse_group(tok[2].text);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(ln, tok[2].column, e.what());
      }
      continue;
    }
    if (!kind) throw ParseError(ln, tok[0].column, "the first entry must be 'algebra'");
    if (key == "window") {
      if (tok.size() != 5) throw ParseError(ln, tok[0].column, "expected 'window <lo> <hi> closed|open closed|open'");
      if (window) throw ParseError(ln, tok[0].column, "window given twice");
      window = Window::make(to_int(tok[1], ln), to_int(tok[2], ln), to_closure(tok[3], ln), to_closure(tok[4], ln));
    } else if (key == "degree") {
      if (tok.size() < 3) throw ParseError(ln, tok[0].column, "expected 'degree <n> <dim> [labels]'");
      const int n = to_int(tok[1], ln);
      const int d = to_int(tok[2], ln);
      if (d < 0) throw ParseError(ln, tok[2].column, "negative dimension");
      if (space.dim(n)) throw ParseError(ln, tok[1].column, "degree " + std::to_string(n) + " given twice");
      if (tok.size() > 3 && tok.size() != 3 + static_cast<std::size_t>(d))
        throw ParseError(ln, tok[3].column, "expected " + std::to_string(d) + " labels");
      if (d) space.set_dim(n, static_cast<std::size_t>(d));
      if (tok.size() > 3)
        for (std::size_t k = 3; k < tok.size(); ++k) labels[n].push_back(tok[k].text);
    } else if (key == "d" || key == "act") {
      PendingBlock b;
      std::size_t at = 1;
      if (key == "act") {
        if (tok.size() != 3) throw ParseError(ln, tok[0].column, "expected 'act <generator> <degree>'");
        b.generator = to_int(tok[1], ln) - 1;
        if (b.generator < 0 || b.generator >= group.rank())
          throw ParseError(ln, tok[1].column, "generator index out of range");
        at = 2;
      } else if (tok.size() != 2) {
        throw ParseError(ln, tok[0].column, "expected 'd <degree>'");
      }
      b.degree = to_int(tok[at], ln);
      const int target = b.degree + (b.generator < 0 ? -1 : generator_degree(b.generator));
      const std::size_t rows = space.dim(target), cols = space.dim(b.degree);
      if (rows == 0 || cols == 0)
        throw ParseError(ln, tok[at].column, "block between degrees " + std::to_string(b.degree) + " and " +
                                                 std::to_string(target) + " has no declared basis");
      b.m = Matrix(rows, cols);
      for (std::size_t r = 0; r < rows; ++r) {
        next_nonblank(i);
        if (i >= lines.size()) throw ParseError(ln, 1, "block ends early: expected " + std::to_string(rows) + " rows");
        const int rl = static_cast<int>(i) + 1;
        const auto row = tokenize(lines[i]);
        ++i;
        if (row.size() != cols)
          throw ParseError(rl, row.front().column, "expected " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) {
          try {
            b.m(r, c) = parse_scalar(row[c].text);
          } catch (const std::exception&) {
            throw ParseError(rl, row[c].column, "expected a rational number, found '" + row[c].text + "'");
          }
        }
      }
      blocks.push_back(std::move(b));
    } else {
      throw ParseError(ln, tok[0].column, "unknown entry '" + key + "'");
    }
  }
  if (!kind) throw ParseError(1, 1, "missing 'algebra' entry");
  if (!window) {
    const auto s = space.support();
    window = s.empty() ? Window::empty() : Window::closed(s.front(), s.back());
  }
  for (int n : space.support())
    require(window->contains(n), ErrorCode::invariant_violation,
            "degree " + std::to_string(n) + " lies outside the window");
  for (const auto& [n, l] : labels) space.set_labels(n, l);
  DGModule m(*kind, group, space, *window);
  for (auto& b : blocks) {
    if (b.generator < 0) m.set_d(b.degree, std::move(b.m));
    else m.set_action(b.generator, b.degree, std::move(b.m));
  }
  m.validate();
  return m;
}

DGModule parse_module_file(const std::string& path) { return parse_module(read_file(path)); }

std::string print_module(const DGModule& m) {
  std::ostringstream out;
  const Window& w = m.window();
  out << "algebra " << (m.kind() == AlgebraKind::poly ? "poly" : "ext") << ' ' << group_text(m.group()) << '\n';
  out << "window " << w.lo << ' ' << w.hi << ' ' << (w.closed_below ? "closed" : "open") << ' '
      << (w.closed_above ? "closed" : "open") << '\n';
  for (int n : m.degrees()) {
    out << "degree " << n << ' ' << m.dim(n);
    if (const auto* l = m.space().labels(n))
      for (const auto& s : *l) out << ' ' << s;
    out << '\n';
  }
  auto emit = [&](const std::string& head, const Matrix& b) {
    if (b.rows() == 0 || b.cols() == 0 || b.is_zero()) return;
    out << head << '\n';
    for (std::size_t r = 0; r < b.rows(); ++r) {
      out << ' ';
      for (std::size_t c = 0; c < b.cols(); ++c) out << ' ' << format_scalar(b(r, c));
      out << '\n';
    }
  };
  for (int n : m.degrees())
    if (m.dim(n - 1)) emit("d " + std::to_string(n), m.d(n));
  for (int i = 0; i < m.generator_count(); ++i)
    for (int n : m.degrees())
      if (m.dim(n + m.generator_degree(i)))
        emit("act " + std::to_string(i + 1) + ' ' + std::to_string(n), m.action(i, n));
  return out.str();
}

std::pair<int, int> parse_window_spec(const std::string& text) {
  const auto colon = text.find(':', text.empty() ? 0 : 1);
  if (colon == std::string::npos) throw ParseError(1, 1, "window must look like lo:hi");
  const Token lo{text.substr(0, colon), 1};
  const Token hi{text.substr(colon + 1), static_cast<int>(colon) + 2};
  const int a = to_int(lo, 1), b = to_int(hi, 1);
  if (a > b) throw ParseError(1, 1, "window lo exceeds hi");
  return {a, b};
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

bool RunReport::all_checks_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ReportCheck& c) { return c.passed; });
}

std::string RunReport::to_json(bool with_time) const {
  ordered_json j;
  j["command"] = command;
  j["inputs"] = ordered_json::array();
  for (const auto& in : inputs) j["inputs"].push_back({{"name", in.name}, {"spec", in.spec}, {"hash", in.hash}});
  if (window) {
    j["window"] = {{"lo", window->lo},
                   {"hi", window->hi},
                   {"guaranteed_lo", window->guaranteed_lo},
                   {"guaranteed_hi", window->guaranteed_hi},
                   {"closed_below", window->closed_below},
                   {"closed_above", window->closed_above}};
  } else {
    j["window"] = nullptr;
  }
  j["tables"] = ordered_json::array();
  for (const auto& t : tables)
    j["tables"].push_back({{"name", t.name}, {"columns", t.columns}, {"rows", t.rows}, {"provisional", t.provisional}});
  j["checks"] = ordered_json::array();
  for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["ms"] = with_time ? ms : 0.0;
  return j.dump(2) + "\n";
}

std::string RunReport::to_table(bool with_time) const {
  std::ostringstream out;
  out << "command: " << command << '\n';
  for (const auto& in : inputs) out << "input " << in.name << ": " << in.spec << " fnv1a:" << in.hash << '\n';
  if (window)
    out << "window: [" << window->lo << ", " << window->hi << "] guaranteed [" << window->guaranteed_lo << ", "
        << window->guaranteed_hi << "]" << (window->closed_below ? " closed" : " open") << "-below"
        << (window->closed_above ? " closed" : " open") << "-above\n";
  else
    out << "window: none\n";
  for (const auto& t : tables) {
    out << "\n[" << t.name << "]\n";
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
    for (const auto& r : t.rows)
      for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
    auto line = [&](const std::vector<std::string>& cells, bool flag) {
      for (std::size_t c = 0; c < cells.size(); ++c)
        out << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << cells[c];
      if (flag) out << "  (provisional)";
      out << '\n';
    };
    line(t.columns, false);
    if (t.rows.empty()) out << "(empty)\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r)
      line(t.rows[r], std::find(t.provisional.begin(), t.provisional.end(), r) != t.provisional.end());
  }
  if (!checks.empty()) out << '\n';
  for (const auto& c : checks)
    out << "check " << c.name << ": " << (c.passed ? "pass" : "FAIL") << (c.detail.empty() ? "" : " (" + c.detail + ")")
        << '\n';
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", with_time ? ms : 0.0);
  out << "ms: " << buf << '\n';
  return out.str();
}

std::string error_json(const Error& e) {
  ordered_json j;
  j["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    j["error"]["line"] = p->line();
    j["error"]["column"] = p->column();
  }
  return j.dump(2) + "\n";
}

namespace {

struct Context {
  const CommandOptions& opt;
  RunReport& report;

  GroupData group() const {
    require(!opt.group.empty(), ErrorCode::invalid_argument, "--group is required");
    return parse_group(opt.group);
  }

  Window window_or(bool closed_below, bool closed_above, const std::string& what) const {
    require(opt.window.has_value(), ErrorCode::window_required, what + " needs --window lo:hi");
    return Window::make(opt.window->first, opt.window->second, closed_below, closed_above);
  }

  DGModule named(const std::string& name, const GroupData& g, bool lambda) const {
    if (name == "k") {
      if (!lambda) return residue_field(g);
      return DGModule(AlgebraKind::ext, g, GradedVS(std::map<int, std::size_t>{{0, 1}}), Window::closed(0, 0));
    }
    if (name == "L") return exterior_quotient(g, {});
    if (name == "kbar") {
      const Window w = g.rank() == 0 ? Window::closed(0, 0)
                                     : window_or(false, true, "the Koszul model");
      return to_degreewise(koszul_model(g), w);
    }
    if (name == "R") {
      const Window w = g.rank() == 0 ? Window::closed(0, 0) : window_or(false, true, "R");
      return to_degreewise(free_rank_one(g), w);
    }
    if (name == "I") {
      const Window w = g.rank() == 0 ? Window::closed(0, 0) : window_or(true, false, "the basic injective");
      return basic_injective(g, w);
    }
    fail(ErrorCode::invalid_argument, "unknown module '" + name + "': expected a file or k, kbar, I, R, L");
  }

  /// A file path, or named summands joined by '+', each optionally suspended by @n.
  DGModule module(const std::string& label, const std::string& spec, std::optional<GroupData> g,
                  bool lambda) const {
    require(!spec.empty(), ErrorCode::invalid_argument, "--" + label + " is required");
    if (file_exists(spec)) {
      const std::string text = read_file(spec);
      report.inputs.push_back({label, spec, hex64(fnv1a(text))});
      DGModule m = parse_module(text);
      if (g) require(m.group() == *g, ErrorCode::algebra_mismatch, spec + " is over a different group");
      return m;
    }
    const GroupData grp = g ? *g : group();
    report.inputs.push_back({label, spec, hex64(fnv1a(spec + "|" + group_text(grp)))});
    std::vector<DGModule> parts;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, '+')) {
      int k = 0;
      const auto at = part.find('@');
      if (at != std::string::npos) {
        k = to_int({part.substr(at + 1), static_cast<int>(at) + 2}, 1);
        part = part.substr(0, at);
      }
      parts.push_back(shift(named(part, grp, lambda), k));
    }
    return parts.size() == 1 ? parts.front() : direct_sum(parts);
  }

  RingMap ring_map() const {
    if (!opt.pair.empty()) return catalog_pair(opt.pair);
    require(!opt.source.empty() && !opt.target.empty(), ErrorCode::invalid_argument,
            "give --pair or --source, --target and --image");
    return parse_ring_map(parse_group(opt.source), parse_group(opt.target), opt.images, "custom");
  }
};

std::string str(long v) { return std::to_string(v); }

ReportTable dims_table(const std::string& name, const GradedVS& v, const Window* w = nullptr) {
  ReportTable t{name, {"degree", "dim"}, {}, {}};
  for (auto [n, d] : v.dims()) {
    if (!d) continue;
    if (w && !w->certifies(n)) t.provisional.push_back(t.rows.size());
    t.rows.push_back({str(n), str(static_cast<long>(d))});
  }
  return t;
}

/// Homology in every stored degree; degrees outside the guaranteed range are flagged.
ReportTable homology_table(const std::string& name, const DGModule& m) {
  GradedVS all;
  const Window& w = m.window();
  for (int n = w.lo; n <= w.hi; ++n)
    if (m.dim(n)) all.set_dim(n, homology(m, n).dim);
  return dims_table(name, all, &w);
}

ReportTable ext_table(const std::string& name, const BigradedTable& e) {
  ReportTable t{name, {"s", "t", "n", "dim"}, {}, {}};
  for (auto [k, d] : e.entries)
    if (d) t.rows.push_back({str(k.first), str(k.second), str(k.second - k.first), str(static_cast<long>(d))});
  return t;
}

ReportTable profile_table(const std::string& name, const HomologyProfile& p) {
  ReportTable t{name, {"degree", "dim"}, {}, {}};
  for (auto [n, d] : p.dims.dims())
    if (d) t.rows.push_back({str(n), str(static_cast<long>(d))});
  return t;
}

void add_check(RunReport& r, const std::string& name, bool ok, const std::string& detail = {}) {
  r.checks.push_back({name, ok, detail});
}

void run_groups(Context& cx) {
  const CommandOptions& o = cx.opt;
  RunReport& rep = cx.report;
  const RingMap r = cx.ring_map();
  rep.inputs.push_back({"pair", r.name, hex64(fnv1a(r.name + "|" + group_text(r.source) + "|" + group_text(r.target)))});
  add_check(rep, "fibre_finite", true, "top codegree " + std::to_string(r.fibre_top()));
  const std::string& sub = o.subcommand;
  if (sub == "restrict") {
    const DGModule n = cx.module("M", o.m, r.target, false);
    const DGModule res = restrict_scalars(r, n);
    res.validate();
    rep.window = res.window();
    rep.tables.push_back(dims_table("underlying", res.space(), &res.window()));
    rep.tables.push_back(homology_table("homology", res));
  } else if (sub == "extend" || sub == "coextend") {
    const DGModule m = cx.module("M", o.m, r.source, false);
    const DGModule out = sub == "extend" ? extend_scalars(r, m) : coextend_scalars(r, m);
    out.validate();
    rep.window = out.window();
    rep.tables.push_back(dims_table("underlying", out.space(), &out.window()));
    rep.tables.push_back(homology_table("homology", out));
  } else if (sub == "dual") {
    const DerivedDual d = derived_dual(r);
    ReportTable gens{"resolution", {"s", "generator_degree"}, {}, {}};
    for (int s = 0; s <= d.resolution.length(); ++s)
      for (int a : d.resolution.generator_degrees(s)) gens.rows.push_back({str(s), str(a)});
    rep.tables.push_back(gens);
    rep.window = d.homology.window();
    rep.tables.push_back(dims_table("dual_homology", d.homology.space(), &d.homology.window()));
    add_check(rep, "hilbert_certificate", d.hilbert_certificate);
    add_check(rep, "shifted_free", d.shifted_free, "c = " + std::to_string(r.shift()));
  } else if (sub == "shriek") {
    const DerivedDual d = derived_dual(r);
    const DGModule m = cx.module("M", o.m, r.source, false);
    const auto c = compare_shriek(d, m);
    rep.tables.push_back(dims_table("tensor_with_dual", c.tensor));
    rep.tables.push_back(dims_table("derived_coextension", c.derived_coextension));
    rep.tables.push_back(dims_table("coextension", c.coextension));
    add_check(rep, "tensor_matches_derived_coextension", c.agree);
    add_check(rep, "tensor_matches_coextension", c.tensor == c.coextension,
              "expected when H*(BH) is free over H*(BG)");
  } else if (sub == "shift-check") {
    const DerivedDual d = derived_dual(r);
    const DGModule n = cx.module("M", o.m, r.target, false);
    const auto s = shift_law_check(d, n);
    rep.window = Window::make(s.lo, s.hi, false, false);
    rep.tables.push_back(dims_table("upper_shriek", s.upper_shriek));
    rep.tables.push_back(dims_table("shifted_restriction", s.shifted_restriction));
    add_check(rep, "shift_law", s.agree, "c = " + std::to_string(s.c));
  } else {
    fail(ErrorCode::invalid_argument,
         "unknown groups subcommand '" + sub + "': expected restrict, extend, coextend, dual, shriek, shift-check");
  }
}

}  // namespace

RunReport run_command(const CommandOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  RunReport rep;
  rep.command = o.command + (o.subcommand.empty() ? "" : " " + o.subcommand);
  Context cx{o, rep};
  const std::string& c = o.command;
  if (c == "homology") {
    const DGModule m = cx.module("M", o.m, std::nullopt, o.lambda);
    rep.window = m.window();
    rep.tables.push_back(homology_table("homology", m));
  } else if (c == "ext") {
    const DGModule m = cx.module("M", o.m, std::nullopt, false);
    const DGModule n = cx.module("N", o.n, m.group(), false);
    std::optional<BigradedTable> free, inj;
    if (o.route != "injective") free = ext_bigraded(m, n, ExtRoute::via_free);
    if (o.route != "free") inj = ext_bigraded(m, n, ExtRoute::via_injective);
    require(free || inj, ErrorCode::invalid_argument, "route must be free, injective or both");
    rep.tables.push_back(ext_table("ext", free ? *free : *inj));
    if (free && inj) add_check(rep, "routes_agree", *free == *inj);
    add_check(rep, "rows_vanish_above_rank", (free ? *free : *inj).max_row() <= m.group().rank());
  } else if (c == "rhom") {
    const DGModule x = cx.module("M", o.m, std::nullopt, false);
    const DGModule y = cx.module("N", o.n, x.group(), false);
    require(o.window.has_value(), ErrorCode::window_required, "rhom needs --window lo:hi");
    const Window w = Window::make(o.window->first, o.window->second, false, false);
    rep.window = w;
    rep.tables.push_back(dims_table("rhom", rhom_homology(x, y, w)));
  } else if (c == "adams") {
    const DGModule x = cx.module("M", o.m, std::nullopt, false);
    const DGModule y = cx.module("N", o.n, x.group(), false);
    const Page p = e2_page(x, y);
    rep.window = Window::closed(p.lo, p.hi);
    rep.tables.push_back(ext_table("e2", p.e2));
    rep.tables.push_back(dims_table("e2_total", p.e2_total));
    rep.tables.push_back(dims_table("abutment", p.abutment));
    add_check(rep, "bounded_by_e2", p.bounded);
    add_check(rep, "rows_vanish_above_rank", p.rows_vanish_above_rank);
    add_check(rep, "euler_characteristic", p.euler_e2 == p.euler_abutment,
              std::to_string(p.euler_e2) + " vs " + std::to_string(p.euler_abutment));
    std::string nd;
    for (int n : p.non_degenerate_degrees) nd += (nd.empty() ? "" : ",") + std::to_string(n);
    rep.checks.push_back({"degenerate", true, p.degenerate ? "yes" : "no, degrees " + nd});
  } else if (c == "koszul-t") {
    const DGModule m = cx.module("M", o.m, std::nullopt, false);
    const DGModule t = functor_T(m);
    rep.window = t.window();
    rep.tables.push_back(homology_table("homology", t));
    add_check(rep, "input_torsion", true);
  } else if (c == "koszul-s") {
    const DGModule n = cx.module("M", o.m, std::nullopt, true);
    require(n.kind() == AlgebraKind::ext, ErrorCode::algebra_mismatch, "koszul-s needs a module over H_*(G)");
    const auto degs = n.degrees();
    const int top = o.window ? o.window->second : (degs.empty() ? 0 : degs.back()) + 12;
    const DGModule s = functor_S(n, top);
    rep.window = s.window();
    rep.tables.push_back(homology_table("homology", s));
  } else if (c == "roundtrip") {
    const DGModule m = cx.module("M", o.m, std::nullopt, o.lambda);
    const RoundTripReport r = m.kind() == AlgebraKind::ext ? roundtrip_lambda(m) : roundtrip_torsion(m);
    rep.window = Window::make(r.lo, r.hi, false, false);
    rep.tables.push_back(profile_table("original", r.original));
    rep.tables.push_back(profile_table("round_trip", r.round_trip));
    add_check(rep, "homology_profiles_agree", r.agree);
  } else if (c == "endcheck") {
    const GroupData g = cx.group();
    rep.inputs.push_back({"group", o.group, hex64(fnv1a(group_text(g)))});
    const auto dc = double_centralizer_check(g);
    rep.tables.push_back(dims_table("end_homology", dc.homology));
    rep.tables.push_back(dims_table("exterior", dc.exterior));
    add_check(rep, "homology_is_exterior", dc.homology == dc.exterior);
    add_check(rep, "iota_cycles", dc.iota_cycles);
    add_check(rep, "exterior_relations", dc.exterior_relations);
    add_check(rep, "iota_basis", dc.iota_basis);
    add_check(rep, "products_in_homology", dc.products_in_homology);
    const CartanMap cm = cartan_map(end_dga(g));
    add_check(rep, "cartan_unital", cm.unital);
    add_check(rep, "cartan_multiplicative_on_iota", cm.multiplicative_on_iota);
    add_check(rep, "cartan_homology_isomorphism", cm.homology_isomorphism);
    rep.checks.push_back({"cartan_chain_level", true,
                          cm.chain_level_failure ? "not multiplicative: " + *cm.chain_level_failure
                                                 : "multiplicative on all matrix units"});
  } else if (c == "recognize-k") {
    const DGModule m = cx.module("M", o.m, std::nullopt, false);
    const RecognitionResult r = recognize_k(m);
    ReportTable t{"images", {"cell", "degree", "image"}, {}, {}};
    const auto& cells = r.kbar.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      std::string v;
      for (const auto& s : r.images[i]) v += (v.empty() ? "" : " ") + format_scalar(s);
      t.rows.push_back({cells[i].label, str(cells[i].degree), "[" + v + "]"});
    }
    rep.window = m.window();
    rep.tables.push_back(t);
    add_check(rep, "cone_acyclic", r.cone_acyclic);
    add_check(rep, "nonzero_on_h0", r.nonzero_on_h0);
  } else if (c == "groups") {
    run_groups(cx);
  } else if (c == "catalog") {
    ReportTable g{"groups", {"name", "codegrees", "dim"}, {}, {}};
    for (const auto& e : group_catalog()) g.rows.push_back({e.name, "[" + group_text(e.group) + "]", str(e.group.dim())});
    ReportTable p{"subgroups", {"name", "H", "G", "images", "c"}, {}, {}};
    for (const auto& r : subgroup_catalog()) {
      std::string im;
      for (const auto& q : r.images) im += (im.empty() ? "" : "; ") + q.to_string("y");
      p.rows.push_back({r.name, "[" + group_text(r.target) + "]", "[" + group_text(r.source) + "]", im, str(r.shift())});
    }
    rep.tables.push_back(g);
    rep.tables.push_back(p);
  } else {
    fail(ErrorCode::invalid_argument, "unknown command '" + c + "'");
  }
  rep.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace borel
