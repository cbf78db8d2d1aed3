#include "doctest.h"

#include <sstream>

#include "bench.hpp"
#include "mpole/io.hpp"
#include "mpole/pipeline.hpp"
#include "test_helpers.hpp"
#include "translate.hpp"
#include "verify.hpp"

using namespace mpole;
using namespace mpole::cli;

TEST_CASE("bench produces one record per (order, kernel)") {
    bench_options opt;
    opt.pmin = 1;
    opt.pmax = 3;
    opt.reps = 2;
    opt.batch = 8;
    const auto records = run_bench<double>(opt);
    REQUIRE(records.size() == 6);
    for (const auto& r : records) {
        CHECK(r.ns_per_translation > 0.0);
        CHECK(r.reps == 2);
        CHECK(r.batch == 8);
    }

    std::stringstream csv;
    write_csv(csv, records);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "P,kernel,ns_per_translation,batch,reps");
    int lines = 0;
    std::string line;
    while (std::getline(csv, line))
        if (!line.empty()) ++lines;
    CHECK(lines == 6);
}

TEST_CASE("bench rejects bad ranges") {
    bench_options opt;
    opt.pmin = 5;
    opt.pmax = 2;
    CHECK_THROWS_AS(run_bench<double>(opt), std::invalid_argument);
    opt.pmin = 1;
    opt.pmax = 200;
    CHECK_THROWS_AS(run_bench<double>(opt), std::invalid_argument);
}

TEST_CASE("bench auto repetitions meet the time floor") {
    bench_options opt;
    opt.pmin = 2;
    opt.pmax = 2;
    opt.kernel = "optimized";
    opt.reps = 0;
    const auto records = run_bench<double>(opt);
    REQUIRE(records.size() == 1);
    // 50 ms floor: reps * batch * ns >= 50e6 within calibration slack
    const double total =
        records[0].ns_per_translation * records[0].batch * records[0].reps;
    CHECK(total >= 25e6);
}

TEST_CASE("loglog slope fit") {
    std::vector<bench_record> recs;
    for (int p = 2; p <= 32; ++p)
        recs.push_back({p, "naive", 3.5 * std::pow(p, 4.0), 8, 1});
    CHECK(std::abs(loglog_slope(recs, "naive", 4, 32) - 4.0) < 1e-12);
    CHECK(std::isnan(loglog_slope(recs, "optimized", 4, 32)));
}

TEST_CASE("verify suites pass at a small order") {
    verify_options opt;
    opt.pmax = 8;
    std::stringstream log;
    const auto results = run_verify<double>(opt, log);
    REQUIRE(results.size() == 5);
    for (const auto& r : results) {
        INFO(r.name, " err ", r.max_error, " tol ", r.tolerance);
        CHECK(r.passed);
    }
    CHECK(log.str().find("PASS") != std::string::npos);
}

TEST_CASE("verify rejects orders past the faculty cap") {
    verify_options opt;
    opt.pmax = 90;
    std::stringstream log;
    CHECK_THROWS_AS(run_verify<double>(opt, log), std::invalid_argument);
}

TEST_CASE("dump-tables prints the derived F_1 and G_1") {
    verify_options opt;
    opt.dump_tables = true;
    opt.order = 1;
    std::stringstream out;
    dump_tables<double>(out, opt);
    const auto text = out.str();
    CHECK(text.find("F_1 dense:\n0 2\n0.5 0\n") != std::string::npos);
    CHECK(text.find("G_1 dense:\n0 0\n0 1\n") != std::string::npos);
    CHECK(text.find("F_1 packed: 0.5 0 0 2 0 0") != std::string::npos);
    CHECK(text.find("G_1 packed: 0 0 0 1 0 0") != std::string::npos);
}

TEST_CASE("translate: z-shift of a unit monopole") {
    std::stringstream in("SOLID M 1\n1 0\n");
    std::stringstream out;
    translate_options opt;
    opt.op = "m2l";
    opt.shift = {0.0, 0.0, 2.0};
    opt.pout = 3;
    run_translate<double>(opt, in, out);

    const auto l = read_solid<double>(out);
    REQUIRE(l.has_value());
    CHECK(l->kind() == solid_kind::local);
    CHECK(l->order() == 3);
    CHECK(l->re(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(l->re(1, 0) == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(l->re(2, 0) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("translate: zero shift is rejected") {
    std::stringstream in("SOLID M 1\n1 0\n");
    std::stringstream out;
    translate_options opt;
    opt.op = "m2m";
    opt.shift = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(run_translate<double>(opt, in, out), std::domain_error);
}

TEST_CASE("translate: kind mismatch is rejected") {
    std::stringstream in("SOLID L 1\n1 0\n");
    std::stringstream out;
    translate_options opt;
    opt.op = "m2l";
    opt.shift = {0.0, 0.0, 1.0};
    CHECK_THROWS_WITH_AS(run_translate<double>(opt, in, out),
                         doctest::Contains("kind"), std::runtime_error);
}

TEST_CASE("translate: l2l there and back round trips") {
    auto rng = testing::make_rng(301);
    const auto l = testing::random_solid<double>(rng, 9, solid_kind::local);
    std::stringstream first_in;
    write_solid(first_in, l);

    translate_options there;
    there.op = "l2l";
    there.shift = {0.4, -0.7, 0.3};
    std::stringstream mid;
    run_translate<double>(there, first_in, mid);

    translate_options back;
    back.op = "l2l";
    back.shift = {-0.4, 0.7, -0.3};
    std::stringstream out;
    run_translate<double>(back, mid, out);

    const auto got = read_solid<double>(out);
    REQUIRE(got.has_value());
    CHECK(testing::normalized_error(*got, l) < 1e-12);
}

TEST_CASE("translate: every solid in the stream is processed") {
    auto rng = testing::make_rng(303);
    std::stringstream in;
    const auto a = testing::random_solid<double>(rng, 4);
    const auto b = testing::random_solid<double>(rng, 7);
    write_solid(in, a);
    write_solid(in, b);

    translate_options opt;
    opt.op = "m2l";
    opt.shift = {1.0, 0.5, -0.8};
    std::stringstream out;
    run_translate<double>(opt, in, out);
    const auto got = read_solids<double>(out);
    REQUIRE(got.size() == 2);
    const vec3<double> r{1.0, 0.5, -0.8};
    CHECK(testing::normalized_error(got[0], m2l_naive(a, r, 4)) < 1e-12);
    CHECK(testing::normalized_error(got[1], m2l_naive(b, r, 7)) < 1e-12);
}

TEST_CASE("p2m command expands a charge file") {
    std::stringstream in("0 0 0.25 1.0\n");
    std::stringstream out;
    p2m_options opt;
    opt.center = {0.0, 0.0, 0.0};
    opt.order = 4;
    run_p2m<double>(opt, in, out);
    const auto m = read_solid<double>(out);
    REQUIRE(m.has_value());
    CHECK(m->kind() == solid_kind::multipole);
    CHECK(m->re(0, 0) == 1.0);
    CHECK(m->re(1, 0) == doctest::Approx(0.25));
    CHECK(m->re(2, 0) == doctest::Approx(0.25 * 0.25 / 2.0));

    std::stringstream empty(" \n");
    std::stringstream out2;
    CHECK_THROWS_AS(run_p2m<double>(opt, empty, out2), std::runtime_error);
}
