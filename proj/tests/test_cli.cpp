#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string path = "cli_out_" + std::to_string(++counter) + ".txt";
    std::string cmd = std::string(CANBASE_CLI_PATH) + " " + args + " > " + path + " 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::remove(path.c_str());
    return {WEXITSTATUS(rc), buffer.str()};
}

}  // namespace

TEST_CASE("kl table output") {
    auto r = run_cli("kl --family A --rank 2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("(q^3)*H[1, 2, 3]") != std::string::npos);  // entry (e, w0)
    CHECK(r.output.find("6 elements") != std::string::npos);
}

TEST_CASE("pkl table output") {
    auto r = run_cli("pkl --family A --rank 2 --J s1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("3 elements") != std::string::npos);
    CHECK(r.output.find("(q)*M[1, 2, 3] + M[1, 3, 2]") != std::string::npos);
}

TEST_CASE("hybrid single element output") {
    auto r = run_cli("hybrid --family B --rank 2 --I s1 --w \"s0 s1\"");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("(q)*H[-1, 2] + H[2, -1]") != std::string::npos);
}

TEST_CASE("basis command output") {
    auto r = run_cli("basis --n 1 --factors V,V --kind canonical");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("(q)*v[12] + v[21]") != std::string::npos);
    auto ri = run_cli("basis --n 1 --factors V --kind iota --variant bw13");
    CHECK(ri.exit_code == 0);
    CHECK(ri.output.find("bi[1] = v[1] + (q)*v[2]") != std::string::npos);
    CHECK(ri.output.find("bi[2] = v[2]") != std::string::npos);
    auto rw = run_cli("basis --n 2 --factors wedge2 --kind canonical");
    CHECK(rw.exit_code == 0);
    CHECK(rw.output.find("dim 3") != std::string::npos);
}

TEST_CASE("json output parses and follows the schema") {
    auto r = run_cli("basis --n 1 --factors V,V --kind canonical --format json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j.at("basis") == "canonical");
    CHECK(j.at("space").at("factors") == "V,V");
    CHECK(j.at("elements").size() == 4);
    auto rp = run_cli("positivity --n 1 --factors V,V --split 1 --format json");
    CHECK(rp.exit_code == 0);
    auto jp = nlohmann::json::parse(rp.output);
    CHECK(jp.at("positive") == true);
    CHECK(jp.at("negative") == 0);
    CHECK(jp.at("failures").empty());
}

TEST_CASE("positivity exit codes") {
    CHECK(run_cli("positivity --n 1 --factors V,V --split 1 --variant bw13").exit_code == 0);
    CHECK(run_cli("positivity --n 1 --factors V,V --split 2 --variant bao17").exit_code == 0);
    CHECK(run_cli("positivity --n 1 --factors V --kind simple --lambda 1").exit_code == 0);
}

TEST_CASE("configuration errors exit with code 2") {
    CHECK(run_cli("kl --family A --rank 9").exit_code == 2);
    CHECK(run_cli("kl --family C --rank 2").exit_code == 2);
    CHECK(run_cli("pkl --family A --rank 2 --J s7").exit_code == 2);
    CHECK(run_cli("basis --n 1 --factors wedge2").exit_code == 2);  // wedge beyond rank
    CHECK(run_cli("basis --n 1 --factors X").exit_code == 2);
    CHECK(run_cli("positivity --n 1 --factors V,V --split 5").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("byte-identical reruns") {
    for (std::string cmd : {std::string("kl --family B --rank 2 --format json"),
                            std::string("basis --n 2 --factors V,V --kind iota --format json"),
                            std::string("positivity --n 1 --factors V,V,V --split 1 --format csv")}) {
        auto a = run_cli(cmd);
        auto b = run_cli(cmd);
        CHECK(a.exit_code == 0);
        CHECK(a.output == b.output);
    }
}

TEST_CASE("cache on and off produce identical tables") {
    std::string dir = "cli_cache_dir";
    std::string base = "basis --n 2 --factors V,wedge2 --kind iota --format json";
    auto cold = run_cli(base + " --cache-dir " + dir);   // populates
    auto warm = run_cli(base + " --cache-dir " + dir);   // reads back
    auto off = run_cli(base + " --no-cache");
    CHECK(cold.exit_code == 0);
    CHECK(cold.output == warm.output);
    CHECK(cold.output == off.output);
    std::system(("rm -rf " + dir).c_str());
}
