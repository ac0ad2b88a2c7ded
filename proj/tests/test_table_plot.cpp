#include <catch2/catch_amalgamated.hpp>

#include "mixquant/plot.hpp"
#include "mixquant/table.hpp"

using namespace mixquant;
using Catch::Approx;

namespace {

std::size_t count_substr(const std::string& hay, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = hay.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

}  // namespace

TEST_CASE("table rows round-trip through CSV") {
  TableRow row = make_row(solve(10));
  row.oracle_error = 0.0019123456789012345;
  row.gap = 3.25e-11;
  CHECK(from_csv(to_csv(row)) == row);

  TableRow bare = make_row(solve(3));
  CHECK(from_csv(to_csv(bare)) == bare);

  TableRow noted;
  noted.n = 99;
  noted.note = "solver failed";
  CHECK(from_csv(to_csv(noted)) == noted);

  CHECK_THROWS_AS(from_csv("1,2,3"), std::invalid_argument);
}

TEST_CASE("table rows round-trip through JSON") {
  TableRow row = make_row(solve(11));
  row.oracle_error = 0.00152;
  row.gap = 1e-12;
  row.note = "checked";
  CHECK(from_json(to_json(row)) == row);

  TableRow bare = make_row(solve(2));
  CHECK(from_json(to_json(bare)) == bare);
}

TEST_CASE("row construction records split metadata and the left half") {
  const TableRow r6 = make_row(solve(6));
  CHECK(r6.n == 6);
  CHECK(r6.k == 2);
  CHECK(r6.m == 1);
  CHECK(r6.case_label == "V1");
  CHECK(r6.codebook.size() == 3);  // half of six points
  CHECK(r6.error == Approx(1.0 / 192.0).margin(1e-12));

  const TableRow r5 = make_row(solve(5));
  CHECK(r5.case_label == "explicit");
  CHECK(r5.codebook.size() == 3);  // two left points plus the center
  CHECK(r5.codebook.back() == Approx(0.75).margin(1e-12));
}

TEST_CASE("table generation over a range") {
  TableOptions opt;
  const auto rows = generate_table(1, 6, opt);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].error == Approx(7.0 / 48.0).margin(1e-12));
  CHECK(rows[1].error == Approx(37.0 / 768.0).margin(1e-12));
  CHECK(rows[2].error == Approx(1.0 / 48.0).margin(1e-12));
  CHECK(rows[5].error == Approx(1.0 / 192.0).margin(1e-12));
  for (int i = 0; i < 6; ++i) {
    CHECK(rows[i].n == i + 1);
    CHECK(rows[i].note.empty());
  }
}

TEST_CASE("table content does not depend on the worker count") {
  TableOptions serial;
  serial.jobs = 1;
  TableOptions parallel;
  parallel.jobs = 4;
  const auto a = generate_table(5, 20, serial);
  const auto b = generate_table(5, 20, parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("table generation edge cases") {
  TableOptions opt;
  const auto one = generate_table(1, 1, opt);
  REQUIRE(one.size() == 1);
  CHECK(one[0].n == 1);
  CHECK_THROWS_AS(generate_table(0, 5, opt), std::invalid_argument);
  CHECK_THROWS_AS(generate_table(5, 4, opt), std::invalid_argument);
}

TEST_CASE("oracle columns populate when requested") {
  TableOptions opt;
  opt.with_oracle = true;
  opt.restarts = 8;
  const auto rows = generate_table(1, 3, opt);
  for (const auto& r : rows) {
    REQUIRE(r.oracle_error.has_value());
    REQUIRE(r.gap.has_value());
    CHECK(*r.gap < 1e-8);
  }
}

TEST_CASE("single-result JSON carries the full codebook and metadata") {
  const auto j = result_json(solve(6), 1e-12);
  CHECK(j.at("n") == 6);
  CHECK(j.at("k") == 2);
  CHECK(j.at("m") == 1);
  CHECK(j.at("case") == "V1");
  CHECK(j.at("codebook").size() == 6);
  CHECK(j.at("error").get<double>() == Approx(1.0 / 192.0).margin(1e-12));
  CHECK(j.at("meta").at("tol").get<double>() == 1e-12);
  CHECK(j.at("meta").contains("version"));
}

TEST_CASE("codepoint chart contains one dot per codepoint") {
  const std::string svg = render_codepoints_svg(9);
  CHECK(count_substr(svg, "<circle") == 45);  // 1 + 2 + ... + 9
  CHECK(count_substr(svg, "stroke-dasharray") == 1);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK_THROWS_AS(render_codepoints_svg(0), std::invalid_argument);
}

TEST_CASE("density chart draws the three steps") {
  const std::string svg = render_density_svg(0.5);
  CHECK(count_substr(svg, "#b03030") == 3);
  CHECK(svg.find("</svg>") != std::string::npos);
}
