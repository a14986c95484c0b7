#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = -1;
    std::string out;
};

const fs::path& scratch()
{
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("frogmatch-cli-" + std::to_string(::getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

Result run(const std::string& args)
{
    const auto out = scratch() / "stdout";
    const std::string cmd = std::string(FROGMATCH_EXE) + " " + args + " > " + out.string() + " 2> " +
                            (scratch() / "stderr").string();
    const int status = std::system(cmd.c_str());
    std::ifstream in(out);
    std::ostringstream text;
    text << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text.str()};
}

std::string write(const std::string& name, const std::string& text)
{
    const auto p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const std::string kFour = "dim=1 region=box side=8\n0\n1\n3\n7\n";

} // namespace

TEST_CASE("match prints the stable pairs")
{
    const auto f = write("four.txt", kFour);
    auto r = run("match " + f);
    CHECK(r.code == 0);
    CHECK(r.out == "variant=plain\n0 1\n2 3\n");
    r = run("match " + f + " --variant misere");
    CHECK(r.code == 0);
    CHECK(r.out == "variant=misere\n0 3\n1 2\n");
}

TEST_CASE("solve reports the winner")
{
    const auto f = write("four.txt", kFour);
    auto r = run("solve " + f + " --ruleset plain");
    CHECK(r.code == 0);
    CHECK(r.out.find("winner bob") != std::string::npos);
    r = run("solve " + f + " --ruleset shy:5");
    CHECK(r.out.find("winner alice") != std::string::npos);
    r = run("solve " + f + " --ruleset plain --oracle");
    CHECK(r.out.find("winner bob") != std::string::npos);
}

TEST_CASE("grundy table export")
{
    const auto r = run("grundy " + write("four.txt", kFour));
    CHECK(r.code == 0);
    CHECK(r.out == "0 1 0\n1 2 1\n0 2 2\n2 3 0\n1 3 2\n0 3 1\n");
}

TEST_CASE("play is reproducible")
{
    const auto f = write("four.txt", kFour);
    const auto a = run("play " + f + " --seed 4 --alice random --bob engine");
    const auto b = run("play " + f + " --seed 4 --alice random --bob engine");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("# winner bob") != std::string::npos);
}

TEST_CASE("bad input is reported with exit code 1")
{
    CHECK(run("experiment nope").code == 1);
    CHECK(run("match " + write("tied.txt", "dim=1 region=box side=6\n0\n2\n3\n5\n")).code == 1);
    CHECK(run("match " + (scratch() / "missing.txt").string()).code == 1);
    CHECK(run("experiment parity --grid n=2.5").code == 1);
    CHECK(run("experiment parity --trials 0").code == 1);
}

TEST_CASE("sampling is seeded")
{
    const auto a = run("sample --n 5 --seed 3 --region torus:2:2");
    const auto b = run("sample --n 5 --seed 3 --region torus:2:2");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("dim=2 region=torus side=2\n", 0) == 0);
}

TEST_CASE("experiment output files are byte-identical across runs")
{
    for (const std::string format : {"json", "csv"}) {
        const auto a = scratch() / ("a." + format);
        const auto b = scratch() / ("b." + format);
        const std::string common = "experiment parity --grid n=3,n=4 --trials 5 --seed 9 --format " + format;
        CHECK(run(common + " --out " + a.string()).code == 0);
        CHECK(run(common + " --serial --out " + b.string()).code == 0);
        CHECK(slurp(a) == slurp(b));
        CHECK(!slurp(a).empty());
    }
}
