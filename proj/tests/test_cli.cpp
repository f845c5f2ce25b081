#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path temp_file(const std::string& tag) {
  static std::mt19937_64 rng(std::random_device{}());
  fs::path p = fs::temp_directory_path() /
               ("pascalforge_cli_" + tag + "_" + std::to_string(rng()) + ".tmp");
  fs::remove(p);
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CliResult run_cli(const std::string& args) {
  const char* bin = std::getenv("PASCALFORGE_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "PASCALFORGE_BIN must point at the built binary");
  fs::path out = temp_file("stdout");
  fs::path err = temp_file("stderr");
  std::string cmd =
      std::string(bin) + " " + args + " >" + out.string() + " 2>" + err.string();
  int status = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(out);
  result.err = read_file(err);
  fs::remove(out);
  fs::remove(err);
  return result;
}

std::vector<json> parse_lines(const std::string& text) {
  std::vector<json> records;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty()) records.push_back(json::parse(line));
  }
  return records;
}

}  // namespace

TEST_CASE("cli row census of row 59 mod 16") {
  CliResult r = run_cli("row --n 59 --mod 16 --census");
  CHECK(r.exit_code == 0);
  std::vector<json> records = parse_lines(r.out);
  REQUIRE(records.size() == 1);
  CHECK(records[0].at("type") == "census");
  std::vector<uint64_t> counts = records[0].at("counts").get<std::vector<uint64_t>>();
  REQUIRE(counts.size() == 16);
  for (uint64_t cls : {1, 11, 13, 15}) CHECK(counts[cls] == 6);
}

TEST_CASE("cli row entries stream every column") {
  CliResult r = run_cli("row --n 6 --mod 4");
  CHECK(r.exit_code == 0);
  std::vector<json> records = parse_lines(r.out);
  REQUIRE(records.size() == 7);
  std::vector<uint64_t> values;
  for (const json& rec : records) {
    CHECK(rec.at("type") == "row_entry");
    values.push_back(rec.at("r").get<uint64_t>());
  }
  CHECK(values == std::vector<uint64_t>{1, 2, 3, 0, 3, 2, 1});
}

TEST_CASE("cli row csv") {
  CliResult r = run_cli("row --n 4 --mod 2 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out.substr(0, r.out.find('\n')) == "row_entry,4,2,0,1");
}

TEST_CASE("cli census csv lines parse back") {
  CliResult r = run_cli("census --from 0 --to 2 --mod 4 --format csv");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  uint64_t n = 0;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::string type, n_field, k_field, counts;
    REQUIRE(std::getline(fields, type, ','));
    REQUIRE(std::getline(fields, n_field, ','));
    REQUIRE(std::getline(fields, k_field, ','));
    REQUIRE(std::getline(fields, counts));
    CHECK(type == "census");
    CHECK(n_field == std::to_string(n));
    CHECK(k_field == "4");
    uint64_t total = 0;
    std::istringstream parts(counts);
    std::string part;
    while (std::getline(parts, part, ';')) total += std::stoull(part);
    CHECK(total == n + 1);
    ++n;
  }
  CHECK(n == 3);
}

TEST_CASE("cli census of row 0 mod 16") {
  CliResult r = run_cli("census --from 0 --to 0 --mod 16");
  CHECK(r.exit_code == 0);
  std::vector<json> records = parse_lines(r.out);
  REQUIRE(records.size() == 1);
  std::vector<uint64_t> counts = records[0].at("counts").get<std::vector<uint64_t>>();
  REQUIRE(counts.size() == 16);
  for (size_t rclass = 0; rclass < counts.size(); ++rclass) {
    CHECK(counts[rclass] == (rclass == 1 ? 1 : 0));
  }
}

TEST_CASE("cli conj2 full period for p = 3") {
  CliResult r = run_cli("conj2 --p 3 --full-period");
  CHECK(r.exit_code == 0);
  std::vector<json> records = parse_lines(r.out);
  REQUIRE(records.size() == 1);
  CHECK(records[0].at("type") == "conj2_report");
  CHECK(records[0].at("checked").get<uint64_t>() == 72);
  CHECK(records[0].at("violations").empty());
  CHECK(records[0].at("exceptional") == json::array({0, 6}));
}

TEST_CASE("cli conj2 single n") {
  CliResult r = run_cli("conj2 --p 3 --n 6");
  CHECK(r.exit_code == 0);
  std::vector<json> records = parse_lines(r.out);
  REQUIRE(records.size() == 1);
  CHECK(records[0].at("predicted") == "1/6");
  CHECK(records[0].at("observed") == "1/6");
  CHECK(records[0].at("match") == true);
  CHECK(records[0].at("j_map") == json::array({{0, 6}, {1, 0}}));
}

TEST_CASE("cli conj2 surfaces the truncated products per j") {
  CliResult r = run_cli("conj2 --p 173 --n 346");
  CHECK(r.exit_code == 0);
  std::vector<json> records = parse_lines(r.out);
  REQUIRE(records.size() == 1);
  CHECK(records[0].at("modulus").get<uint64_t>() == 512);
  bool found = false;
  for (const json& pair : records[0].at("j_map")) {
    if (pair[0].get<uint64_t>() == 13) {
      found = true;
      CHECK((pair[1].get<uint64_t>() + 512 - 346) % 512 == 162);
    }
  }
  CHECK(found);
}

TEST_CASE("cli usage errors exit with 2") {
  CHECK(run_cli("row --n 5").exit_code == 2);                 // missing --mod
  CHECK(run_cli("row --n 5 --mod 4 --bogus").exit_code == 2); // unknown flag
  CHECK(run_cli("row --n abc --mod 4").exit_code == 2);       // malformed integer
  CHECK(run_cli("row --n 0x10 --mod 4").exit_code == 2);      // integers are decimal
  CHECK(run_cli("row --n -3 --mod 4").exit_code == 2);
  CHECK(run_cli("conj2 --p 4").exit_code == 2);               // composite
  CHECK(run_cli("conj2 --p 2").exit_code == 2);               // even prime
  CHECK(run_cli("census --from 0 --to 5 --mod 1").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("cli frac emits reduced fractions") {
  CliResult r = run_cli("frac --m 4 --count 8");
  CHECK(r.exit_code == 0);
  std::vector<json> records = parse_lines(r.out);
  REQUIRE(records.size() == 8);
  std::vector<std::string> values;
  for (const json& rec : records) values.push_back(rec.at("value").get<std::string>());
  CHECK(values == std::vector<std::string>{"0/1", "0/1", "0/1", "1/4", "0/1", "1/2", "0/1",
                                           "3/4"});
}

TEST_CASE("cli --out writes the same records as stdout") {
  fs::path out = temp_file("frac_out");
  CliResult direct = run_cli("frac --m 5 --count 10");
  CliResult filed = run_cli("frac --m 5 --count 10 --out " + out.string());
  CHECK(direct.exit_code == 0);
  CHECK(filed.exit_code == 0);
  CHECK(filed.out.empty());
  CHECK(read_file(out) == direct.out);
  fs::remove(out);
}

TEST_CASE("cli period reports the frac period") {
  CliResult r = run_cli("period --m 6");
  CHECK(r.exit_code == 0);
  std::vector<json> records = parse_lines(r.out);
  REQUIRE(records.size() == 1);
  CHECK(records[0].at("period").get<uint64_t>() == 72);
  CHECK(records[0].at("k").get<uint64_t>() == 5);
}

TEST_CASE("cli conj1 reports are worker-independent") {
  fs::path out1 = temp_file("conj1_w1");
  fs::path out8 = temp_file("conj1_w8");
  CliResult r1 = run_cli("conj1 --from 0 --to 1024 --workers 1 --chunk-rows 128 --out " +
                         out1.string());
  CliResult r8 = run_cli("conj1 --from 0 --to 1024 --workers 8 --chunk-rows 128 --out " +
                         out8.string());
  CHECK(r1.exit_code == 0);
  CHECK(r8.exit_code == 0);
  std::string a = read_file(out1);
  CHECK(!a.empty());
  CHECK(a == read_file(out8));
  fs::remove(out1);
  fs::remove(out8);
}

TEST_CASE("cli conj1 kill and resume is byte-identical") {
  fs::path out_plain = temp_file("conj1_plain");
  fs::path out_resumed = temp_file("conj1_resumed");
  fs::path checkpoint = temp_file("conj1_cli_ckpt");

  std::string common = "conj1 --from 0 --to 2048 --workers 4 --chunk-rows 128 "
                       "--checkpoint-rows 128 ";
  CliResult plain = run_cli("conj1 --from 0 --to 2048 --workers 4 --chunk-rows 128 --out " +
                            out_plain.string());
  CHECK(plain.exit_code == 0);

  CliResult killed = run_cli(common + "--abort-after-rows 600 --checkpoint " +
                             checkpoint.string() + " --out " + out_resumed.string());
  CHECK(killed.exit_code == 3);
  CHECK(fs::exists(checkpoint));

  CliResult resumed = run_cli(common + "--checkpoint " + checkpoint.string() + " --out " +
                              out_resumed.string());
  CHECK(resumed.exit_code == 0);
  CHECK(read_file(out_plain) == read_file(out_resumed));

  fs::remove(out_plain);
  fs::remove(out_resumed);
  fs::remove(checkpoint);
}

TEST_CASE("cli census checkpoint requires --out") {
  fs::path checkpoint = temp_file("census_noout");
  CliResult r = run_cli("census --from 0 --to 10 --mod 8 --checkpoint " + checkpoint.string());
  CHECK(r.exit_code == 2);
  fs::remove(checkpoint);
}

TEST_CASE("worker count comes from the environment unless a flag wins") {
  const char* bin = std::getenv("PASCALFORGE_BIN");
  REQUIRE(bin != nullptr);
  fs::path out_env = temp_file("env_workers");
  fs::path out_flag = temp_file("flag_workers");

  std::string env_cmd = std::string("PASCALFORGE_WORKERS=3 ") + bin +
                        " conj1 --from 0 --to 256 --out " + out_env.string() +
                        " >/dev/null 2>/dev/null";
  int status = std::system(env_cmd.c_str());
  CHECK(WEXITSTATUS(status) == 0);

  CliResult flagged =
      run_cli("conj1 --from 0 --to 256 --workers 2 --out " + out_flag.string());
  CHECK(flagged.exit_code == 0);
  CHECK(read_file(out_env) == read_file(out_flag));

  std::string bad_cmd = std::string("PASCALFORGE_WORKERS=banana ") + bin +
                        " conj1 --from 0 --to 4 >/dev/null 2>/dev/null";
  status = std::system(bad_cmd.c_str());
  CHECK(WEXITSTATUS(status) == 2);

  fs::remove(out_env);
  fs::remove(out_flag);
}

TEST_CASE("cli census scans with several workers keep row order") {
  fs::path out = temp_file("census_workers");
  CliResult r = run_cli("census --from 0 --to 200 --mod 12 --workers 4 --chunk-rows 16 --out " +
                        out.string());
  CHECK(r.exit_code == 0);
  std::vector<json> records = parse_lines(read_file(out));
  REQUIRE(records.size() == 201);
  for (size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].at("n").get<uint64_t>() == i);
  }
  fs::remove(out);
}
