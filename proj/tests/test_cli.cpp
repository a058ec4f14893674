#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qcoh/cli.hpp"

using json = nlohmann::ordered_json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = qcoh::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

json run_json(const std::vector<std::string>& args, int expect_code = 0) {
  const RunResult r = run(args);
  INFO(r.err);
  REQUIRE(r.code == expect_code);
  return json::parse(r.out);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
}

}  // namespace

TEST_CASE("line bundle cohomology rows") {
  const json top = run_json({"cohomology", "--n", "2", "--twist", "-3"});
  REQUIRE(top["h"] == json::array({0, 0, 1}));
  REQUIRE(top["n"] == 2);
  REQUIRE(top["d"] == -3);
  REQUIRE(top["stabilized"] == true);

  const json bottom = run_json({"cohomology", "--n", "1", "--twist", "0"});
  REQUIRE(bottom["h"] == json::array({1, 0}));

  const json serre = run_json({"cohomology", "--n", "3", "--twist", "-4", "--check"});
  REQUIRE(serre["h"] == json::array({0, 0, 0, 1}));
}

TEST_CASE("stable cohomology table over GF(2)[x]/(x^2)") {
  const json doc =
      run_json({"tate", "--ring", "GF:2:x^2", "--module", "k", "--against", "k", "--range",
                "-3..3"});
  REQUIRE(doc["rows"].size() == 7);
  for (const auto& row : doc["rows"]) REQUIRE(row["dim"] == 1);
  REQUIRE(doc["rows"][0]["i"] == -3);
  REQUIRE(doc["rows"][6]["i"] == 3);
}

TEST_CASE("tate balance check against the injective side") {
  const json doc = run_json({"tate", "--ring", "Zmod:4", "--module", "k", "--against", "k",
                             "--range", "-2..2", "--check"});
  REQUIRE(doc["balanced"] == true);
  for (const auto& row : doc["rows"]) REQUIRE(row["dim"] == 1);
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::string> args = {"cohomology", "--n", "2", "--twist", "-4"};
  REQUIRE(run(args).out == run(args).out);
  const std::vector<std::string> csv_args = {"ext-twists", "--n",      "1",
                                             "--range",    "-2..2",    "--format", "csv"};
  REQUIRE(run(csv_args).out == run(csv_args).out);
  const std::vector<std::string> gor_args = {"gorenstein-report", "--ring", "Zmod:4"};
  REQUIRE(run(gor_args).out == run(gor_args).out);
}

TEST_CASE("csv and json report the same numbers") {
  const json doc = run_json({"cohomology", "--n", "2", "--twist", "-3"});
  const RunResult csv =
      run({"cohomology", "--n", "2", "--twist", "-3", "--format", "csv"});
  REQUIRE(csv.code == 0);
  const auto rows = parse_csv(csv.out);
  REQUIRE(rows.size() == 4);  // header + one row per i
  REQUIRE(rows[0] == std::vector<std::string>({"n", "d", "window", "stabilized", "i", "h"}));
  for (size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i][0] == std::to_string(int(doc["n"])));
    REQUIRE(rows[i][1] == std::to_string(int(doc["d"])));
    REQUIRE(rows[i][5] == std::to_string(int(doc["h"][i - 1])));
  }

  const json tdoc = run_json({"tate", "--ring", "Zmod:4", "--range", "-2..2"});
  const RunResult tcsv = run({"tate", "--ring", "Zmod:4", "--range", "-2..2", "--format", "csv"});
  REQUIRE(tcsv.code == 0);
  const auto trows = parse_csv(tcsv.out);
  REQUIRE(trows.size() == tdoc["rows"].size() + 1);
  for (size_t i = 1; i < trows.size(); ++i) {
    REQUIRE(trows[i][0] == std::to_string(int(tdoc["rows"][i - 1]["i"])));
    REQUIRE(trows[i][1] == std::to_string(int(tdoc["rows"][i - 1]["dim"])));
  }
}

TEST_CASE("flag errors exit with status 2") {
  REQUIRE(run({"cohomology"}).code == 2);                                  // no --n, no --sheaf
  REQUIRE(run({"cohomology", "--n", "2", "--window", "1"}).code == 2);     // window too small
  REQUIRE(run({"tate", "--ring", "Weyl:1"}).code == 2);                    // unreadable ring
  REQUIRE(run({"tate", "--ring", "Zmod:4", "--range", "3..-3"}).code == 2);
  REQUIRE(run({"tate", "--ring", "Zmod:4", "--range", "abc"}).code == 2);
  REQUIRE(run({"nonsense"}).code == 2);
  REQUIRE(run({"cohomology", "--n", "2", "--format", "yaml"}).code == 2);
  REQUIRE(run({"tate", "--ring", "Zmod:4", "--module", "widget"}).code == 2);
  REQUIRE(run({"decompose"}).code == 2);  // no file
  REQUIRE(run({"am-check", "--ring", "Zmod:4", "--degree-range", "0..5"}).code == 2);
  REQUIRE(run({}).code == 2);
}

TEST_CASE("help exits cleanly") {
  const RunResult r = run({"--help"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("cohomology") != std::string::npos);
  REQUIRE(r.out.find("gorenstein-report") != std::string::npos);
}

TEST_CASE("failed stabilization certificate exits with status 1") {
  write_file("cli_o3.p", "n 1\ntargets 3\nsources\n");
  const RunResult r = run({"cohomology", "--sheaf", "cli_o3.p", "--window", "1"});
  REQUIRE(r.code == 1);
  REQUIRE(r.err.find("certificate failed") != std::string::npos);
  // the report is still printed before the failure is diagnosed
  REQUIRE(json::parse(r.out)["stabilized"] == false);

  const json ok = run_json({"cohomology", "--sheaf", "cli_o3.p"});
  REQUIRE(ok["h"] == json::array({4, 0}));
  REQUIRE(ok["stabilized"] == true);
}

TEST_CASE("decompose reports the skyscraper as a pure localization") {
  write_file("cli_sky.p", "n 1\ntargets 0\nsources -1\nentry 0 0 1 [ 0 1 ]\n");
  const json doc = run_json({"decompose", "cli_sky.p"});
  REQUIRE(doc["maximal"] == json::array({"0"}));
  REQUIRE(doc["unit_iso"] == true);
  REQUIRE(doc["certificates"]["supports_stable"] == true);
  REQUIRE(doc["certificates"]["ranks_consistent"] == true);
  REQUIRE(doc["certificates"]["kernel_natural"] == true);
  REQUIRE(doc["certificates"]["strict_decrease"] == true);
  REQUIRE(doc["supports"]["kernel"].empty());
  REQUIRE(doc["supports"]["cokernel"].empty());

  // --sheaf spelling and positional spelling agree
  const RunResult a = run({"decompose", "cli_sky.p"});
  const RunResult b = run({"decompose", "--sheaf", "cli_sky.p"});
  REQUIRE(a.out == b.out);
}

TEST_CASE("adjunction round-trips on the generated corpus") {
  const json doc = run_json({"adjunction-check", "--n", "1"});
  REQUIRE(doc["count"] >= 20);
  REQUIRE(doc["all_ok"] == true);
  for (const auto& row : doc["rows"]) REQUIRE(row["ok"] == true);
}

TEST_CASE("am-check reports an exact comparison sequence over Zmod:4") {
  const json doc = run_json({"am-check", "--ring", "Zmod:4", "--module", "k", "--against",
                             "quot:2", "--degree-range", "1..5"});
  REQUIRE(doc["exact"] == true);
  REQUIRE(doc["rows"].size() == 5);
  for (const auto& row : doc["rows"]) {
    REQUIRE(row["gext"] == 0);
    REQUIRE(row["ext"] == row["tate"]);
    REQUIRE(row["iso"] == true);
  }
}

TEST_CASE("gorenstein report verdicts") {
  const json field = run_json({"gorenstein-report", "--ring", "Zmod:2"});
  REQUIRE(field["verdict"] == "all-true");
  REQUIRE(field["witnesses"].empty());
  REQUIRE(field["four_way_zero"] == true);

  const json z4 = run_json({"gorenstein-report", "--ring", "Zmod:4"});
  REQUIRE(z4["verdict"] == "all-false");
  REQUIRE(z4["conditions"].size() == 8);
  for (const auto& c : z4["conditions"]) REQUIRE(c["holds"] == false);
  REQUIRE(z4["witnesses"].size() == 8);
  REQUIRE(z4["modules"].size() == 6);
  REQUIRE(z4["global_gorenstein"]["pd"] == 0);
  REQUIRE(z4["pd_id_iff"] == true);

  // non-self-injective rings are rejected as unusable input
  REQUIRE(run({"gorenstein-report", "--ring", "Zmod:8"}).code == 0);  // Z/8 is self-injective
}

TEST_CASE("ext-twists agrees with the closed form under --check") {
  const json doc = run_json({"ext-twists", "--n", "2", "--range", "-4..2", "--check"});
  for (const auto& row : doc["rows"]) {
    const int d = row["d"];
    if (d >= 0) REQUIRE(row["dims"][0] == (d + 1) * (d + 2) / 2);
    if (d <= -3) REQUIRE(row["dims"][2] == (-d - 1) * (-d - 2) / 2);
    if (d > -3 && d < 0) REQUIRE(row["dims"] == json::array({0, 0, 0}));
    REQUIRE(row["stabilized"] == true);
  }
}
