#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, bool merge_stderr = false) {
    std::string cmd = std::string("\"") + GOLDARC_CLI_PATH + "\" " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<nlohmann::json> json_lines(const std::string& text) {
    std::vector<nlohmann::json> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(nlohmann::json::parse(line));
    return out;
}

std::string temp_file(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path.string();
}

}  // namespace

TEST_CASE("fib and lucas") {
    CHECK(run("fib 10").out == "55\n");
    CHECK(run("fib -3").out == "2\n");
    CHECK(run("fib 100").out == "354224848179261915075\n");
    CHECK(run("lucas 0").out == "2\n");
    CHECK(run("lucas 10").out == "123\n");
    CHECK(run("fib 100000000").code == 1);
}

TEST_CASE("eval") {
    Run r = run("eval pi-phinary --prec 128");
    CHECK(r.code == 0);
    CHECK(r.out.find("3.14159265358979323846264338327950288") != std::string::npos);
    auto j = json_lines(run("--output structured eval arctan-phi --prec 64").out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["name"] == "arctan-phi");
    CHECK(j[0]["value"] == "1.0172219678978513677");
    CHECK(run("eval no-such-constant").code == 1);
    CHECK(run("eval arctan-phi --prec 3").code == 1);
}

TEST_CASE("digits") {
    Run r = run("digits arctan-phi --pos 0 --count 8");
    CHECK(r.code == 0);
    CHECK(r.out.find("0468a8ac") != std::string::npos);
    auto j = json_lines(run("--output structured digits arctan-phi --pos 0 --count 8").out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["radix"] == 16);
    CHECK(j[0]["digits"] == nlohmann::json::array({0, 4, 6, 8, 10, 8, 10, 12}));
    Run bad = run("digits pi-phinary", true);
    CHECK(bad.code == 1);
    CHECK(bad.out.find("not digit-extractable") != std::string::npos);
}

TEST_CASE("verify") {
    CHECK(run("verify eq3 --k 7").code == 0);
    Run ex = run("verify eq17 --k 0");
    CHECK(ex.code == 0);
    CHECK(ex.out.find("EXCLUDED") != std::string::npos);
    auto rows = json_lines(run("--output structured verify eq13").out);
    REQUIRE(rows.size() >= 2);
    CHECK(rows.front()["status"] == "PASS");
    CHECK(rows.back()["summary"] == true);
    CHECK(run("verify no-such-id").code == 1);

    std::string bad = temp_file("goldarc_bad_identities.cat",
                                "identity bad\n  params: none\n  lhs: atan(1)\n  rhs: atan(1/2)\n  anchor: x\nend\n");
    Run fail = run("--identities " + bad + " verify --all --bound 3");
    CHECK(fail.code == 2);
    CHECK(fail.out.find("FAIL") != std::string::npos);
}

TEST_CASE("phinary") {
    CHECK(run("phinary 2").out == "10.01\n");
    CHECK(run("phinary 1").out == "1.\n");
    auto j = json_lines(run("--output structured phinary 2").out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["text"] == "10.01");
    CHECK(j[0]["uncertain"] == false);
    Run pi = run("phinary pi --digits 20");
    CHECK(pi.code == 0);
    CHECK(pi.out.rfind("100.", 0) == 0);
    CHECK(pi.out.find("11") == std::string::npos);
    CHECK(run("phinary -1").code == 1);
}

TEST_CASE("catalog and usage errors") {
    Run c = run("catalog formulas");
    CHECK(c.code == 0);
    CHECK(c.out.find("arctan-phi7") != std::string::npos);
    auto ids = json_lines(run("--output structured catalog identities").out);
    CHECK(ids.size() >= 30);
    CHECK(run("").code == 1);
    CHECK(run("bogus").code == 1);
    CHECK(run("digits arctan-phi --count 0").code == 1);
    CHECK(run("--formulas /nonexistent/file digits arctan-phi").code == 1);
}
