#include <doctest.h>

#include <bit>
#include <fstream>
#include <sstream>

#include "sivhs/errors.hpp"
#include "sivhs/series.hpp"
#include "sivhs_cli/run.hpp"
#include "sivhs_cli/spec_io.hpp"

using namespace sivhs;
using namespace sivhs::cli;

namespace {

const std::string kData = SIVHS_DATA_DIR;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json model_doc(const std::string& name) { return Json::parse(slurp(kData + "/models/" + name + ".json")); }

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<const char*> args) {
    args.insert(args.begin(), "sivhs");
    std::ostringstream out, err;
    int code = main_entry(static_cast<int>(args.size()), args.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string expect_error(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    FAIL("expected an error");
    return {};
}

// Exterior algebra on dz1..dzn, dzb1..dzbn, bit k for dz(k+1), bit n+k for dzb(k+1).
using Form = std::map<std::uint32_t, Scalar>;

Form wedge(const Form& x, const Form& y) {
    Form r;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y) {
            if (a & b) continue;
            int swaps = 0;
            for (int i = 0; i < 32; ++i)
                if (a >> i & 1u) swaps += std::popcount(b & ((1u << i) - 1u));
            Scalar c = ca * cb;
            if (swaps % 2) c = -c;
            r[a | b] += c;
            if (r[a | b].is_zero()) r.erase(a | b);
        }
    return r;
}

// "dz1*dzb1" as a product of generators in the written order.
Form form_of_symbol(const std::string& symbol, int n) {
    Form f{{0u, Scalar(1)}};
    if (symbol == "1") return f;
    std::stringstream ss(symbol);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
        const bool anti = factor.rfind("dzb", 0) == 0;
        const int k = std::stoi(factor.substr(anti ? 3 : 2)) - 1;
        f = wedge(f, Form{{1u << (anti ? n + k : k), Scalar(1)}});
    }
    return f;
}

} // namespace

TEST_CASE("builtin models round-trip through the golden spec files") {
    for (const auto& name : builtin_algebras()) {
        INFO(name);
        const auto alg = *builtin_algebra(name);
        const std::string text = slurp(kData + "/models/" + name + ".json");
        CHECK(dump(algebra_to_json(alg)) == text);
        const auto parsed = algebra_from_json(Json::parse(text), name);
        CHECK(dump(algebra_to_json(parsed)) == text);
        CHECK(parsed.basis->dim() == alg.basis->dim());
        CHECK(parsed.product.parity() == 0);
        if (name == "truncated-poly") {
            auto msg = expect_error([&] { parse_spec(kData + "/models/" + name + ".json"); });
            CHECK(msg.find("validation error") != std::string::npos);
            CHECK(msg.find("FAIL delta-order-two") != std::string::npos);
        } else {
            CHECK(parse_spec(kData + "/models/" + name + ".json").basis->dim() == alg.basis->dim());
        }
    }
}

TEST_CASE("elliptic curve spec loads with its declared dimension") {
    auto alg = parse_spec(kData + "/models/elliptic-curve.json");
    CHECK(alg.basis->dim() == 4);
    CHECK(alg.n == 1);
    REQUIRE(alg.calibration.has_value());
    CHECK(alg.basis->name(alg.calibration->begin()->first) == "1");

    auto doc = model_doc("elliptic-curve");
    doc["dim"] = 16;
    auto msg = expect_error([&] { algebra_from_json(doc, "ec.json"); });
    CHECK(msg.find("ec.json: /dim") != std::string::npos);
}

TEST_CASE("d of the wrong bidegree is a validation error") {
    auto doc = model_doc("elliptic-curve");
    doc["d"].push_back({{"from", "1"}, {"to", "psi1"}, {"coeff", "1/1"}});
    auto msg = expect_error([&] { parse_spec_text(doc.dump(), "bad-d.json"); });
    CHECK(msg.find("validation error") != std::string::npos);
    CHECK(msg.find("FAIL d-bidegree") != std::string::npos);
}

TEST_CASE("non-associative product is a validation error with a witness") {
    auto doc = model_doc("polyvector-torus-n2");
    int touched = 0;
    for (auto& t : doc["product"]) {
        const auto a = t["a"].get<std::string>(), b = t["b"].get<std::string>();
        if ((a == "psi1" && b == "psi2") || (a == "psi2" && b == "psi1")) {
            t["coeff"] = (parse_rational(t["coeff"], "coeff") * Scalar(2)).str();
            ++touched;
        }
    }
    REQUIRE(touched == 2);
    auto msg = expect_error([&] { parse_spec_text(doc.dump(), "mutated.json"); });
    CHECK(msg.find("FAIL associative [") != std::string::npos);
    CHECK(msg.find("pass supercommutative") != std::string::npos);
}

TEST_CASE("parse errors carry a location") {
    auto msg = expect_error([] { parse_spec_text("{\n  \"name\": ,\n}", "broken.json"); });
    CHECK(msg.find("cli: parse error: broken.json:2:") != std::string::npos);

    auto doc = model_doc("elliptic-curve");
    doc["basis"][2].erase("q");
    msg = expect_error([&] { algebra_from_json(doc, "x.json"); });
    CHECK(msg.find("x.json: /basis/2/q: missing field") != std::string::npos);

    doc = model_doc("elliptic-curve");
    doc["product"][0]["coeff"] = 1;
    msg = expect_error([&] { algebra_from_json(doc, "x.json"); });
    CHECK(msg.find("/product/0/coeff") != std::string::npos);

    doc = model_doc("elliptic-curve");
    doc["unit"] = "e";
    msg = expect_error([&] { algebra_from_json(doc, "x.json"); });
    CHECK(msg.find("unknown symbol 'e'") != std::string::npos);
}

TEST_CASE("metric and filtration files") {
    auto g = parse_metric(kData + "/diag12.json");
    REQUIRE(g.rows() == 2);
    CHECK(g(1, 1) == Scalar(2));
    CHECK(g(0, 1).is_zero());
    CHECK(dump(metric_to_json(g)) == slurp(kData + "/diag12.json"));
}

TEST_CASE("golden frobenius report matches the cup-product oracle") {
    Options o;
    o.command = "frobenius";
    o.model = "torus-n1";
    o.order = 3;
    auto r = run(o);
    CHECK(r.exit_code == 0);
    const std::string golden = slurp(kData + "/golden/frobenius-torus-n1-order3.json");
    CHECK(dump(r.report) == golden);

    const Json doc = Json::parse(golden);
    CHECK(doc["verdict"] == "pass");
    for (const auto& c : doc["checks"]) {
        INFO(c["suite"].get<std::string>() << ": " << c["name"].get<std::string>());
        CHECK(c["pass"].get<bool>());
    }

    // (1/6) sum int(D_a D_b D_c) t^c t^b t^a rebuilt from the reported generators.
    const auto& params = doc["result"]["parameters"];
    std::vector<std::string> names;
    std::vector<int> parity;
    std::vector<Form> delta;
    for (const auto& p : params) {
        names.push_back(p["name"]);
        parity.push_back(p["parity"]);
        Form f;
        for (const auto& [sym, coeff] : p["generator"].items())
            for (const auto& [mask, c] : form_of_symbol(sym, 1)) f[mask] += c * parse_rational(coeff, sym);
        delta.push_back(f);
    }
    auto ring = make_ring(names, parity, 4);
    SuperSeries phi(ring);
    const int dim = static_cast<int>(delta.size());
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (int c = 0; c < dim; ++c) {
                auto abc = wedge(wedge(delta[a], delta[b]), delta[c]);
                auto it = abc.find(3u);
                if (it == abc.end()) continue;
                phi += (SuperSeries::variable(ring, c) * SuperSeries::variable(ring, b) * SuperSeries::variable(ring, a))
                           .scaled(it->second * Scalar(1, 6));
            }
    Json expected = Json::object();
    for (const auto& [m, c] : phi.terms()) expected[mono_str(m, *ring)] = c.str();
    CHECK(doc["result"]["potential"] == expected);
    CHECK(expected.size() == 2);
}

TEST_CASE("command line exit codes") {
    SUBCASE("usage errors") {
        CHECK(invoke({"bogus"}).code == 2);
        CHECK(invoke({}).code == 2);
        auto r = invoke({"frobenius", "--cases", "3"});
        CHECK(r.code == 2);
        CHECK(r.err.find("usage error") != std::string::npos);
        CHECK(invoke({"selftest", "--order", "3"}).code == 2);
        CHECK(invoke({"deform", "--order", "x"}).code == 2);
    }
    SUBCASE("frobenius passes") {
        auto r = invoke({"frobenius", "--model", "torus-n1", "--order", "3"});
        CHECK(r.code == 0);
        CHECK(Json::parse(r.out)["verdict"] == "pass");
    }
    SUBCASE("a failing verdict exits nonzero") {
        auto r = invoke({"deform", "--model", "heisenberg-bv", "--order", "3"});
        CHECK(r.code == 1);
        auto doc = Json::parse(r.out);
        CHECK(doc["result"]["obstructions"][0]["order"] == 2);
    }
    SUBCASE("pipeline errors carry their module") {
        auto r = invoke({"verify", "--model", "no-such-model"});
        CHECK(r.code == 1);
        CHECK(Json::parse(r.out)["error"]["module"] == "cli");
        r = invoke({"frobenius", "--model", "elliptic-curve", "--order", "3"});
        CHECK(r.code == 1);
        auto doc = Json::parse(r.out);
        CHECK(doc["error"]["module"] == "frobenius");
        CHECK(doc["error"]["kind"] == "structural");
        r = invoke({"mirror", "--model", "torus-n2", "--metric", (kData + "/diag1.json").c_str()});
        CHECK(r.code == 1);
        CHECK(Json::parse(r.out)["error"]["kind"] == "argument");
    }
    SUBCASE("spec files are accepted as models") {
        const std::string path = kData + "/models/heisenberg-ce.json";
        CHECK(invoke({"verify", "--model", path.c_str()}).code == 0);
        const std::string bad = kData + "/models/truncated-poly.json";
        auto r = invoke({"verify", "--model", bad.c_str()});
        CHECK(r.code == 1);
        CHECK(Json::parse(r.out)["error"]["kind"] == "validation");
    }
}

TEST_CASE("mirror and filtration commands") {
    const std::string diag1 = kData + "/diag1.json";
    auto r = invoke({"mirror", "--metric", diag1.c_str(), "--order", "3"});
    CHECK(r.code == 0);
    auto doc = Json::parse(r.out);
    CHECK(doc["result"]["equality"] == "pass");

    const std::string tilted = kData + "/tilted-n1.json";
    r = invoke({"frobenius", "--model", "torus-n1", "--filtration", tilted.c_str()});
    CHECK(r.code == 0);
    r = invoke({"mirror", "--metric", diag1.c_str(), "--order", "2", "--filtration", tilted.c_str()});
    CHECK(r.code == 0);
}

TEST_CASE("cohomology report agrees with the rank oracle") {
    auto r = invoke({"cohomology", "--model", "heisenberg-ce"});
    CHECK(r.code == 0);
    auto doc = Json::parse(r.out);
    CHECK(doc["result"]["complexes"]["d"]["total"] == 6);
    CHECK(doc["result"]["manin"] == false);
}

TEST_CASE("selftest reports are byte-identical") {
    auto a = invoke({"selftest", "--seed", "3", "--cases", "4"});
    auto b = invoke({"selftest", "--seed", "3", "--cases", "4"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(Json::parse(a.out)["verdict"] == "pass");
}
