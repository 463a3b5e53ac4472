// cli_tests.cpp — end-to-end runs of the installed command-line tool

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#ifdef __unix__
#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#endif

namespace fs = std::filesystem;

namespace {

const std::string cli = MIBWARDEN_CLI_PATH;

struct run_result {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("mibwarden_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

run_result run(const std::string &args, const std::string &stdin_file = "") {
    static int counter = 0;
    const fs::path out = scratch_dir() / ("out" + std::to_string(counter) + ".txt");
    const fs::path err = scratch_dir() / ("err" + std::to_string(counter) + ".txt");
    ++counter;
    std::string command = cli + " " + args + " > " + out.string() + " 2> " + err.string();
    if (!stdin_file.empty())
        command += " < " + stdin_file;
    const int status = std::system(command.c_str());
    run_result r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string write_file(const std::string &name, const std::string &content) {
    const fs::path p = scratch_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p.string();
}

} // namespace

TEST_CASE("synth is deterministic and sized to the default profile") {
    const std::string a = (scratch_dir() / "a.csv").string();
    const std::string b = (scratch_dir() / "b.csv").string();
    REQUIRE(run("synth --out " + a + " --seed 7").exit_code == 0);
    REQUIRE(run("synth --out " + b + " --seed 7").exit_code == 0);
    CHECK(slurp(a) == slurp(b));

    std::istringstream in(slurp(a));
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == 4999); // header + 4998 records
}

TEST_CASE("bench emits byte-identical JSON for identical seeds") {
    const std::string data = (scratch_dir() / "bench.csv").string();
    REQUIRE(run("synth --out " + data + " --seed 3").exit_code == 0);
    const std::string j1 = (scratch_dir() / "r1.json").string();
    const std::string j2 = (scratch_dir() / "r2.json").string();
    REQUIRE(run("bench --data " + data + " --seed 5 --json " + j1).exit_code == 0);
    REQUIRE(run("bench --data " + data + " --seed 5 --json " + j2).exit_code == 0);
    const std::string report = slurp(j1);
    CHECK(report == slurp(j2));
    CHECK(report.find("\"ranking\"") != std::string::npos);
    CHECK(report.find("\"holdout\"") != std::string::npos);
    CHECK(report.find("\"resubstitution\"") != std::string::npos);
}

TEST_CASE("flag validation exits with code 2") {
    const std::string data = (scratch_dir() / "flags.csv").string();
    REQUIRE(run("synth --out " + data).exit_code == 0);
    CHECK(run("bench --data " + data + " --split 1.5").exit_code == 2);
    CHECK(run("bench --data " + data + " --split 0").exit_code == 2);
    CHECK(run("train --data " + data + " --learner forest --out /tmp/x.model").exit_code == 2);
}

TEST_CASE("data format problems exit with code 3") {
    const std::string bad = write_file("bad.csv", "a,b,class\n1.0,x,Normal\n");
    CHECK(run("bench --data " + bad).exit_code == 3);
    CHECK(run("train --data " + bad + " --learner zeror --out /tmp/x.model").exit_code == 3);
    CHECK(run("bench --data /nonexistent.csv").exit_code == 3);
}

TEST_CASE("schema mismatches exit with code 4") {
    const std::string data = write_file("train4.csv", "a,b,class\n1,2,Normal\n3,4,TcpSyn\n"
                                                      "1,2,Normal\n3,4,TcpSyn\n");
    const std::string model = (scratch_dir() / "m4.model").string();
    REQUIRE(run("train --data " + data + " --learner zeror --out " + model).exit_code == 0);
    const std::string other = write_file("other4.csv", "x,y,z\n1,2,3\n");
    CHECK(run("predict --model " + model + " --input " + other).exit_code == 4);
}

TEST_CASE("train then predict returns the plurality class for every row") {
    const std::string data = write_file(
        "plurality.csv", "a,class\n1,Slowpost\n2,Slowpost\n3,Slowpost\n4,Normal\n");
    const std::string model = (scratch_dir() / "zeror.model").string();
    REQUIRE(run("train --data " + data + " --learner zeror --out " + model).exit_code == 0);
    const std::string rows = write_file("rows.csv", "a\n10\n20\n30\n");
    const run_result r = run("predict --model " + model + " --input " + rows);
    CHECK(r.exit_code == 0);
    CHECK(r.out == "Slowpost\nSlowpost\nSlowpost\n");
}

TEST_CASE("eval on the training data beats eval on label-noised data") {
    const std::string clean = (scratch_dir() / "clean.csv").string();
    REQUIRE(run("synth --out " + clean + " --seed 11 --noise 0").exit_code == 0);

    // flip 5% of the labels deterministically
    std::istringstream in(slurp(clean));
    std::string header, line;
    std::getline(in, header);
    std::ostringstream noisy;
    noisy << header << '\n';
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (row % 20 == 7) {
            const std::size_t comma = line.rfind(',');
            line = line.substr(0, comma + 1) +
                   (line.substr(comma + 1) == "Normal" ? "TcpSyn" : "Normal");
        }
        noisy << line << '\n';
        ++row;
    }
    const std::string noised = write_file("noised.csv", noisy.str());

    const std::string model = (scratch_dir() / "part.model").string();
    REQUIRE(run("train --data " + clean + " --learner part --out " + model).exit_code == 0);

    const std::string jc = (scratch_dir() / "eval_clean.json").string();
    const std::string jn = (scratch_dir() / "eval_noisy.json").string();
    REQUIRE(run("eval --model " + model + " --data " + clean + " --json " + jc).exit_code == 0);
    REQUIRE(run("eval --model " + model + " --data " + noised + " --json " + jn).exit_code == 0);

    auto accuracy_of = [](const std::string &json) {
        const std::string key = "\"accuracy\": ";
        const std::size_t at = json.find(key);
        REQUIRE(at != std::string::npos);
        return std::stod(json.substr(at + key.size()));
    };
    CHECK(accuracy_of(slurp(jc)) > accuracy_of(slurp(jn)));
}

TEST_CASE("classify-stream reads stdin and reports pair counts") {
    const std::string data = write_file(
        "stream_train.csv",
        "ifInOctets,ifOutOctets,class\n100,90,Normal\n120,95,Normal\n110,80,Normal\n"
        "90,70,Normal\n9000,7000,TcpSyn\n9900,7100,TcpSyn\n9500,7300,TcpSyn\n9200,7600,TcpSyn\n");
    const std::string model = (scratch_dir() / "stream.model").string();
    REQUIRE(run("train --data " + data + " --learner part --out " + model).exit_code == 0);

    const std::string snaps = write_file("snaps.txt",
                                         "t=100 ifInOctets=5000 ifOutOctets=4000\n"
                                         "t=115 ifInOctets=5100 ifOutOctets=4080\n"
                                         "t=130 ifInOctets=14800 ifOutOctets=11300\n");
    const run_result r = run("classify-stream --model " + model, snaps);
    CHECK(r.exit_code == 0);
    CHECK(r.out == "t=115 class=Normal\nt=130 class=TcpSyn\n");
    CHECK(r.err.find("classified 2 intervals") != std::string::npos);
}

TEST_CASE("bin-based models survive the file and stream paths") {
    const std::string data = write_file(
        "bins_train.csv",
        "c,d,class\n1,5,Normal\n2,5,Normal\n3,5,Normal\n4,5,Normal\n5,5,Normal\n6,5,Normal\n"
        "100,5,TcpSyn\n101,5,TcpSyn\n102,5,TcpSyn\n103,5,TcpSyn\n104,5,TcpSyn\n105,5,TcpSyn\n");
    for (const char *learner : {"oner", "dtable"}) {
        const std::string model =
            (scratch_dir() / (std::string(learner) + "_bins.model")).string();
        REQUIRE(run(std::string("train --data ") + data + " --learner " + learner + " --out " +
                    model)
                    .exit_code == 0);
        const std::string rows = write_file("bins_rows.csv", "c,d\n2,5\n104,5\n");
        const run_result pr = run("predict --model " + model + " --input " + rows);
        CHECK(pr.exit_code == 0);
        CHECK(pr.out == "Normal\nTcpSyn\n");

        const std::string snaps = write_file("bins_snaps.txt", "t=100 c=1000 d=0\n"
                                                               "t=115 c=1003 d=5\n"
                                                               "t=130 c=1104 d=10\n");
        const run_result sr = run("classify-stream --model " + model, snaps);
        CHECK(sr.exit_code == 0);
        CHECK(sr.out == "t=115 class=Normal\nt=130 class=TcpSyn\n");
    }
}

TEST_CASE("classify-stream skips malformed lines and keeps going") {
    const std::string data = write_file(
        "stream_train2.csv",
        "c,class\n1,Normal\n2,Normal\n3,Normal\n4,Normal\n100,TcpSyn\n101,TcpSyn\n102,TcpSyn\n103,TcpSyn\n");
    const std::string model = (scratch_dir() / "stream2.model").string();
    REQUIRE(run("train --data " + data + " --learner part --out " + model).exit_code == 0);
    const std::string snaps = write_file("snaps2.txt", "t=100 c=1000\n"
                                                       "t=abc c=9\n"
                                                       "t=130 c=1002\n");
    const run_result r = run("classify-stream --model " + model, snaps);
    CHECK(r.exit_code == 0);
    CHECK(r.out == "t=130 class=Normal\n");
    CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("synth profiles come from JSON files") {
    SUBCASE("a valid profile drives counts and schema") {
        const std::string profile = write_file("profile.json", R"({
            "attributes": ["inPkts", "outPkts"],
            "noise_rate": 0.0,
            "classes": {
                "Normal":  {"count": 30, "centers": [100, 90], "spreads": [5, 5]},
                "TcpSyn":  {"count": 20, "centers": [900, 50], "spreads": [20, 5]}
            }
        })");
        const std::string out = (scratch_dir() / "profiled.csv").string();
        REQUIRE(run("synth --out " + out + " --profile " + profile + " --seed 2").exit_code == 0);
        const std::string csv = slurp(out);
        CHECK(csv.starts_with("inPkts,outPkts,class\n"));
        std::istringstream in(csv);
        std::string line;
        std::size_t rows = 0;
        while (std::getline(in, line))
            ++rows;
        CHECK(rows == 51); // header + 50 records
    }
    SUBCASE("a broken profile names the offending field") {
        const std::string profile =
            write_file("broken.json", R"({"attributes": ["a"], "classes": {"Normal": {"count": 5}}})");
        const run_result r = run("synth --out /tmp/x.csv --profile " + profile);
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("centers") != std::string::npos);
    }
    SUBCASE("a missing profile file is a config error") {
        CHECK(run("synth --out /tmp/x.csv --profile /nonexistent.json").exit_code == 2);
    }
}

TEST_CASE("MIBWARDEN_SEED env var is the seed fallback") {
    const std::string a = (scratch_dir() / "env_a.csv").string();
    const std::string b = (scratch_dir() / "env_b.csv").string();
    REQUIRE(std::system(("MIBWARDEN_SEED=42 " + cli + " synth --out " + a + " > /dev/null").c_str()) == 0);
    REQUIRE(run("synth --out " + b + " --seed 42").exit_code == 0);
    CHECK(slurp(a) == slurp(b));
}

#ifdef __unix__
TEST_CASE("classify-stream accepts one-line UDP datagrams") {
    const std::string data = write_file(
        "udp_train.csv",
        "c,class\n1,Normal\n2,Normal\n3,Normal\n4,Normal\n100,TcpSyn\n101,TcpSyn\n102,TcpSyn\n103,TcpSyn\n");
    const std::string model = (scratch_dir() / "udp.model").string();
    REQUIRE(run("train --data " + data + " --learner part --out " + model).exit_code == 0);

    const int port = 19000 + static_cast<int>(::getpid() % 2000);
    const fs::path out = scratch_dir() / "udp_out.txt";
    const fs::path err = scratch_dir() / "udp_err.txt";
    const std::string command = cli + " classify-stream --model " + model + " --udp " +
                                std::to_string(port) + " --limit 2 > " + out.string() + " 2> " +
                                err.string() + " &";
    REQUIRE(std::system(command.c_str()) == 0);

    // wait for the listener to come up
    bool listening = false;
    for (int i = 0; i < 100 && !listening; ++i) {
        ::usleep(50 * 1000);
        listening = slurp(err).find("listening") != std::string::npos;
    }
    REQUIRE(listening);

    const int fd = ::socket(AF_INET, SOCK_DGRAM, 0);
    REQUIRE(fd >= 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(static_cast<std::uint16_t>(port));
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    for (const char *line : {"t=100 c=1000\n", "t=115 c=1001\n", "t=130 c=1500\n"}) {
        ::sendto(fd, line, strlen(line), 0, reinterpret_cast<sockaddr *>(&addr), sizeof addr);
        ::usleep(20 * 1000);
    }
    ::close(fd);

    std::string got;
    for (int i = 0; i < 100; ++i) {
        ::usleep(50 * 1000);
        got = slurp(out);
        if (got.find("t=130") != std::string::npos)
            break;
    }
    CHECK(got == "t=115 class=Normal\nt=130 class=TcpSyn\n");
}
#endif
