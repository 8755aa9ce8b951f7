#include "rangerenew/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

using namespace rangerenew;
namespace fs = std::filesystem;

TEST_CASE("g17 formatting round trips bit for bit") {
    for (double x : {0.1, 1.0 / 3.0, 3.141592653589793, 1e300, 5e-324,
                     -437.19999999999999, 0.0, 1381.4765978853419}) {
        std::string s = format_g17(x);
        double back = std::strtod(s.c_str(), nullptr);
        CHECK(back == x);
    }
    CHECK(format_g17(1.0) == "1");
    CHECK(format_g17(-2.5) == "-2.5");
}

TEST_CASE("fnv1a64 test vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
    CHECK(fnv1a64("x") != fnv1a64("y"));
}

TEST_CASE("hex64 formatting") {
    CHECK(hex64(0) == "0000000000000000");
    CHECK(hex64(0xdeadbeefull) == "00000000deadbeef");
    CHECK(hex64(0xffffffffffffffffull) == "ffffffffffffffff");
}

TEST_CASE("csv comment header") {
    OutputMeta meta;
    meta.version = "0.1.0";
    meta.config_hash = 0xabcull;
    meta.seed = 42;
    std::string h = csv_comment_header(meta);
    CHECK(h.find("# rangerenew 0.1.0\n") != std::string::npos);
    CHECK(h.find("# config 0000000000000abc\n") != std::string::npos);
    CHECK(h.find("# seed 42\n") != std::string::npos);
}

TEST_CASE("atomic writes") {
    fs::path dir = fs::temp_directory_path() / "rangerenew_io_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    fs::path target = dir / "out.csv";

    write_text_atomic(target.string(), "alpha,beta\n1,2\n");
    {
        std::ifstream in(target);
        std::string all((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
        CHECK(all == "alpha,beta\n1,2\n");
    }
    // overwrite keeps the newest content and leaves no temp droppings
    write_text_atomic(target.string(), "gamma\n");
    {
        std::ifstream in(target);
        std::string all((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
        CHECK(all == "gamma\n");
    }
    int entries = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        (void)e;
        ++entries;
    }
    CHECK(entries == 1);

    // a missing directory must fail loudly and leave nothing behind
    fs::path bad = dir / "no_such_dir" / "x.csv";
    CHECK_THROWS_AS(write_text_atomic(bad.string(), "z"), std::runtime_error);
    CHECK_FALSE(fs::exists(bad));
    fs::remove_all(dir);
}
