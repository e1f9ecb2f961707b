#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <regex>

#include "borel/cli.hpp"
#include "borel/error.hpp"
#include "support/oracles.hpp"
#include "support/random_modules.hpp"

using namespace borel;

namespace {

GroupData circle() { return GroupData({2}, "T"); }

/// Every integer appearing in the given text, in order.
std::vector<long> numbers(const std::string& text) {
  std::vector<long> out;
  const std::regex num("-?[0-9]+");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), num); it != std::sregex_iterator(); ++it)
    out.push_back(std::stol(it->str()));
  return out;
}

/// Table cells of a report, through the table renderer and through the JSON renderer.
std::pair<std::vector<long>, std::vector<long>> rendered_cells(const RunReport& r) {
  std::string table_part;
  const std::string t = r.to_table(false);
  bool in_table = false;
  std::istringstream lines(t);
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("[", 0) == 0) {
      in_table = true;
      std::getline(lines, line);  // header
      continue;
    }
    if (line.empty() || line.rfind("check", 0) == 0 || line.rfind("ms:", 0) == 0) {
      in_table = false;
      continue;
    }
    if (in_table) table_part += line + "\n";
  }
  std::string json_part;
  const std::string j = r.to_json(false);
  const std::regex rows(R"("rows": \[([\s\S]*?)\],\s*"provisional")");
  for (auto it = std::sregex_iterator(j.begin(), j.end(), rows); it != std::sregex_iterator(); ++it)
    json_part += (*it)[1].str();
  return {numbers(table_part), numbers(json_part)};
}

CommandOptions options(const std::string& command, const std::string& group, const std::string& m = {},
                       const std::string& n = {}) {
  CommandOptions o;
  o.command = command;
  o.group = group;
  o.m = m;
  o.n = n;
  return o;
}

}  // namespace

TEST_CASE("module files: k and the injective") {
  const DGModule k = parse_module("algebra poly 2\ndegree 0 1\n");
  CHECK(k.total_dim() == 1);
  CHECK(k.window() == Window::closed(0, 0));

  const DGModule i = basic_injective(circle(), Window::make(0, 20, true, false));
  const std::string text = print_module(i);
  const DGModule back = parse_module(text);
  for (int n = 0; n <= 20; ++n) CHECK(back.dim(n) == oracle::monomial_count({2}, n));
  CHECK(back.window() == i.window());
  for (int n = 2; n <= 20; n += 2) CHECK(back.action(0, n) == i.action(0, n));
  CHECK(print_module(back) == text);
}

TEST_CASE("module files round trip canonically") {
  test_support::Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const GroupData g = trial % 2 ? GroupData({2, 4}) : circle();
    const DGModule m = trial % 3 ? test_support::random_dg_torsion(g, rng, 6)
                                 : test_support::change_basis(test_support::random_finite_module(g, rng, 6), rng);
    const std::string text = print_module(m);
    const DGModule back = parse_module(text);
    CHECK(print_module(back) == text);
    CHECK(back.space() == m.space());
    for (int n : m.degrees()) CHECK(back.d(n) == m.d(n));
  }
  const DGModule l = exterior_quotient(GroupData({4, 6}), {});
  CHECK(print_module(parse_module(print_module(l))) == print_module(l));
  CHECK(parse_module(print_module(l)).kind() == AlgebraKind::ext);
}

TEST_CASE("module file errors") {
  try {
    parse_module("algebra poly 2\ndegree x 1\n");
    FAIL("malformed degree accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 8);
  }
  CHECK_THROWS_AS(parse_module("degree 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_module("algebra poly 3\n"), ParseError);
  CHECK_THROWS_AS(parse_module("algebra poly 2\ndegree 0 1\ndegree -1 1\nd 0\n  1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_module("algebra poly 2\ndegree 0 1\nwibble\n"), ParseError);
  // d^2 != 0 is reported as an invariant violation.
  try {
    parse_module("algebra poly trivial\ndegree 0 1\ndegree -1 1\ndegree -2 1\nd 0\n  1\nd -1\n  1\n");
    FAIL("d^2 != 0 accepted");
  } catch (const ParseError&) {
    FAIL("wrong error kind");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::composition_not_zero);
  }
  CHECK_THROWS_AS(parse_module("algebra poly 2\nwindow 0 2 closed closed\ndegree 4 1\n"), Error);
  CHECK(parse_window_spec("-4:12") == std::pair{-4, 12});
  CHECK_THROWS_AS(parse_window_spec("4"), ParseError);
  CHECK_THROWS_AS(parse_window_spec("4:1"), ParseError);
}

TEST_CASE("ext command") {
  const RunReport r = run_command(options("ext", "2", "k", "k"));
  REQUIRE(r.tables.size() == 1);
  const auto& rows = r.tables[0].rows;
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"0", "0", "0", "1"});
  CHECK(rows[1] == std::vector<std::string>{"1", "2", "1", "1"});
  CHECK(r.all_checks_passed());
}

TEST_CASE("catalog command") {
  const RunReport r = run_command(options("catalog", ""));
  bool su2 = false;
  for (const auto& row : r.tables[0].rows)
    if (row[0] == "SU(2)") su2 = row[1] == "[4]" && row[2] == "3";
  CHECK(su2);
  bool pair = false;
  for (const auto& row : r.tables[1].rows)
    if (row[0] == "T<SU(2)") pair = row[4] == "2";
  CHECK(pair);
}

TEST_CASE("homology of an acyclic file is empty") {
  const std::string path = "borel_test_acyclic.mod";
  {
    std::ofstream out(path);
    out << print_module(mapping_cone(identity_map(residue_field(circle()))));
  }
  const RunReport r = run_command(options("homology", "", path));
  CHECK(r.tables[0].rows.empty());
  CHECK(r.inputs.size() == 1);
  CHECK(r.inputs[0].hash.size() == 16);
  std::remove(path.c_str());
}

TEST_CASE("reports are deterministic and formats agree") {
  std::vector<CommandOptions> runs = {options("ext", "2,2", "k+k@3", "k"), options("adams", "2", "k+k@1", "k+k@1"),
                                      options("endcheck", "2,2"), options("catalog", "")};
  CommandOptions g = options("groups", "", "I");
  g.subcommand = "shift-check";
  g.pair = "T<SU(2)";
  g.window = std::pair{0, 10};
  runs.push_back(g);
  CommandOptions h = options("homology", "4", "I");
  h.window = std::pair{0, 16};
  runs.push_back(h);
  for (const auto& o : runs) {
    CAPTURE(o.command);
    const RunReport a = run_command(o), b = run_command(o);
    CHECK(a.to_json(false) == b.to_json(false));
    CHECK(a.to_table(false) == b.to_table(false));
    const auto [table, json] = rendered_cells(a);
    CHECK_FALSE(table.empty());
    CHECK(table == json);
  }
}

TEST_CASE("every number outside the guaranteed window is flagged") {
  CommandOptions o = options("homology", "2", "I");
  o.window = std::pair{0, 8};
  const RunReport r = run_command(o);
  REQUIRE(r.window.has_value());
  const auto& t = r.tables[0];
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const bool flagged = std::find(t.provisional.begin(), t.provisional.end(), i) != t.provisional.end();
    CHECK(flagged == !r.window->certifies(std::stoi(t.rows[i][0])));
  }
  CHECK(t.provisional.size() == 1);
}

TEST_CASE("command errors") {
  auto code_of = [](const CommandOptions& o) {
    try {
      run_command(o);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::invalid_argument;
  };
  CHECK(code_of(options("ext", "E8", "k", "k")) == ErrorCode::unknown_group);
  CHECK(code_of(options("rhom", "2", "k", "k")) == ErrorCode::window_required);
  CHECK(code_of(options("homology", "2", "I")) == ErrorCode::window_required);
  try {
    run_command(options("homology", "2", "I"));
  } catch (const Error& e) {
    const std::string j = error_json(e);
    CHECK(j.find("\"code\": \"WindowRequired\"") != std::string::npos);
  }
}
