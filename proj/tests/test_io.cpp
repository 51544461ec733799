#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include <json.hpp>

#include "fracspec/io.hpp"
#include "fracspec/spectrum.hpp"

using namespace fracspec;

TEST_CASE("spectrum csv is stable and schema-tagged", "[io]") {
    SpectralParams p;
    p.d = 2;
    p.s = 1.0;
    p.L = std::numbers::pi;
    SpectrumSlice slice = enumerate_smallest(p, 5);
    std::ostringstream os;
    io::write_spectrum_csv(os, slice);
    const std::string expected =
        "# fracspec-csv v1 spectrum\n"
        "index_1,index_2,value,multiplicity_class\n"
        "1,1,2,0\n"
        "1,2,5,1\n"
        "2,1,5,1\n"
        "2,2,8,2\n"
        "1,3,10,3\n";
    CHECK(os.str() == expected);

    std::ostringstream again;
    io::write_spectrum_csv(again, slice);
    CHECK(os.str() == again.str());
}

TEST_CASE("spectrum json mirror", "[io]") {
    SpectralParams p;
    p.d = 2;
    p.s = 0.75;
    p.L = 1.0;
    SpectrumSlice slice = enumerate_smallest(p, 4);
    std::ostringstream os;
    io::write_spectrum_json(os, slice);
    const auto j = nlohmann::json::parse(os.str());
    CHECK(j["params"]["d"] == 2);
    CHECK(j["cutoff_kind"] == "by_count");
    REQUIRE(j["records"].size() == 4);
    CHECK(j["records"][0]["index"] == nlohmann::json::array({1, 1}));
    CHECK(j["records"][0]["value"].get<double>() == slice.value(0));
}

TEST_CASE("format_double round-trips", "[io]") {
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int i = 0; i < 500; ++i) {
        const double x = std::ldexp(mant(rng), expo(rng));
        CHECK(std::stod(io::format_double(x)) == x);
    }
}

TEST_CASE("bound report csv", "[io]") {
    std::vector<BoundReport> reports;
    reports.push_back({"polya_eigenvalue", "d=2;n=1", 2.0, 1.2732, 0.7268, true});
    std::ostringstream os;
    io::write_bound_reports_csv(os, reports);
    CHECK(os.str().find("quantity,param_point,exact,bound,margin,satisfied") !=
          std::string::npos);
    CHECK(os.str().find("polya_eigenvalue,d=2;n=1,2,") != std::string::npos);
}

TEST_CASE("potential grid round-trip", "[io]") {
    SampledWell g;
    g.dims = {3, 2};
    g.origin = {-1.0, 0.5};
    g.spacing = {0.25, 0.5};
    g.data = {0.0, 1.5, 2.25, 0.125, 3.75, 0.0625};
    std::ostringstream os;
    io::write_potential_grid_csv(os, g);
    std::istringstream is(os.str());
    const SampledWell back = io::read_potential_grid_csv(is);
    CHECK(back.dims == g.dims);
    CHECK(back.origin == g.origin);
    CHECK(back.spacing == g.spacing);
    CHECK(back.data == g.data);

    std::istringstream bad("# wrong header\n1\n");
    CHECK_THROWS(io::read_potential_grid_csv(bad));
}

TEST_CASE("row emitters carry the schema header", "[io]") {
    std::ostringstream heat;
    io::write_heat_csv(heat, std::vector<io::HeatRow>{{0.5, 1.0, 1.1, 1.5}});
    CHECK(heat.str().rfind("# fracspec-csv v1 heat\nt,Z_exact,Z_asymptote,Z_bound\n", 0) == 0);

    std::ostringstream riesz;
    io::write_riesz_csv(riesz, std::vector<io::RieszRow>{{9.0, 1.0, 16.0, 15.9, 20.0}});
    CHECK(riesz.str().find("E,rho,R_exact,R_asymptote,R_bound") != std::string::npos);

    std::ostringstream conv;
    io::write_convergence_csv(conv, std::vector<ConvergenceRow>{{0.1, 39.5, 39.48, 0.05}});
    CHECK(conv.str().find("hbar,expectation,limit,gap") != std::string::npos);
}
