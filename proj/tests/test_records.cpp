#include <doctest.h>

#include "tmcf/records.hpp"

using namespace tmcf;
using namespace tmcf::records;

namespace {

std::vector<std::string> keys(const Record& r) {
    std::vector<std::string> out;
    for (const auto& [k, v] : r.items()) out.push_back(k);
    return out;
}

Rat from_decimal(const std::string& s) {
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(BigInt(s));
    const std::string frac = s.substr(dot + 1);
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    return make_rat(BigInt(s.substr(0, dot) + frac), den);
}

/// The text rendering must carry the same value strings as the JSON one.
void check_same_content(const Record& r) {
    const std::string text = render(r, Format::text);
    for (const auto& [k, v] : r.items()) {
        const std::string value = v.is_string() ? v.get<std::string>() : v.is_null() ? "none" : v.dump();
        CHECK_MESSAGE(text.find(k + "=" + value) != std::string::npos, text);
    }
    CHECK(Record::parse(render(r, Format::json)) == r);
}

}  // namespace

TEST_CASE("witness record") {
    const auto r = witness(approx::witness(3, 9, 2, 3));
    CHECK(keys(r) == std::vector<std::string>{"p", "t", "a", "m", "x_m", "n_m", "bound_ok", "q_divisible", "p_divisible"});
    CHECK(r["n_m"] == "7");
    CHECK(r["x_m"] == "16");
    CHECK(r["bound_ok"] == true);
    check_same_content(r);
    CHECK(render(r, Format::text) == "p=3 t=9 a=2 m=3 x_m=16 n_m=7 bound_ok=true q_divisible=true p_divisible=true");
}

TEST_CASE("acceptability record") {
    const auto r = acceptability(*approx::acceptable(3, 16).certificate);
    CHECK(keys(r) == std::vector<std::string>{"p", "t", "q1_valuation", "qprime_nonzero", "primroot"});
    CHECK(r["t"] == "9");
    CHECK(r["q1_valuation"] == "1");
    check_same_content(r);
}

TEST_CASE("scan rows") {
    approx::ScanOptions o;
    o.pool = {3, 5, 7, 113};
    const auto rows = approx::scan(14, 15, o);
    const auto hit = scan_row(rows[0]);  // 14: 13 is not in the pool, 3 || 14^2 - 1
    CHECK(keys(hit) == std::vector<std::string>{"a", "p", "n", "t"});
    CHECK(hit["a"] == "14");
    const auto miss = scan_row(rows[1]);
    CHECK(miss["p"].is_null());
    CHECK(render(miss, Format::text) == "a=15 p=none n=none t=none");
    check_same_content(hit);
    check_same_content(miss);
}

TEST_CASE("quality record") {
    const auto pr = approx::tilde_pair(0, 9, 2);
    const auto q = approx::quality(pr, approx::min_quality_bits(pr));
    const auto r = quality(pr, q);
    CHECK(keys(r) == std::vector<std::string>{"n", "t", "a", "lower", "upper", "bits"});
    const std::string lo = r["lower"], hi = r["upper"];
    CHECK(lo.rfind("1.6786246492", 0) == 0);
    CHECK(hi.rfind("1.6786246492", 0) == 0);
    // Outward rounding keeps the printed bracket valid.
    CHECK(from_decimal(lo) <= q.lower());
    CHECK(from_decimal(hi) >= q.upper());
    check_same_content(r);
}

TEST_CASE("formats") {
    CHECK(parse_format("json") == Format::json);
    CHECK(parse_format("text") == Format::text);
    CHECK_THROWS_AS(parse_format("xml"), Error);
}
