// tmcf: one subcommand per pipeline stage, JSON lines on stdout.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tmcf/acceptance.hpp"
#include "tmcf/records.hpp"

using namespace tmcf;
using records::Record;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Config {
    unsigned long precision_bits = 4096;
    long t_max = 64;
    std::uint64_t n_max = 8;
    unsigned long size_limit_bits = approx::kDefaultSizeLimitBits;
    std::string format = "json";
};

void load_config(const std::string& path, Config& cfg) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::InvalidArgument, "cannot read config " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, path + ": " + e.what());
    }
    cfg.precision_bits = j.value("precision_bits", cfg.precision_bits);
    cfg.t_max = j.value("t_max", cfg.t_max);
    cfg.n_max = j.value("n_max", cfg.n_max);
    cfg.size_limit_bits = j.value("size_limit_bits", cfg.size_limit_bits);
    cfg.format = j.value("format", cfg.format);
}

BigInt big(const std::string& s) {
    BigInt v;
    if (s.empty() || v.set_str(s, 10) != 0) throw Error(Errc::InvalidArgument, "not an integer: '" + s + "'");
    return v;
}

std::vector<BigInt> parse_pool(const std::string& s) {
    std::vector<BigInt> pool;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');)
        if (!item.empty()) pool.push_back(big(item));
    return pool;
}

Record pair_record(const Poly& P, const Poly& Q) { return Record{{"P", P.to_string()}, {"Q", Q.to_string()}}; }

Record approx_record(const approx::ApproxPair& pr) {
    return Record{{"n", std::to_string(pr.n)},     {"t", std::to_string(pr.t)}, {"a", pr.a.get_str()},
                  {"p_int", pr.p_int.get_str()},   {"q_int", pr.q_int.get_str()}, {"d_P", pr.d_P.get_str()},
                  {"d_Q", pr.d_Q.get_str()},       {"divisor", pr.divisor.get_str()}};
}

int exit_code_for(Errc c) {
    switch (c) {
        case Errc::InvalidArgument:
        case Errc::ParseError:
            return kExitUsage;
        default:
            return kExitFailed;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thue-Morse continued fractions and approximation certificates"};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    std::string config_path;
    std::optional<unsigned long> precision_flag;
    std::optional<long> t_max_flag;
    std::optional<std::uint64_t> n_max_flag;
    std::optional<unsigned long> size_limit_flag;
    std::optional<std::string> format_flag;
    app.add_option("--config", config_path, "JSON config file (default: $TMCF_CONFIG)");
    app.add_option("--precision-bits", precision_flag, "Working precision in bits")->check(CLI::PositiveNumber);
    app.add_option("--t-max", t_max_flag, "Largest convergent index to try")->check(CLI::PositiveNumber);
    app.add_option("--n-max", n_max_flag, "Largest tower index in scans");
    app.add_option("--size-limit", size_limit_flag, "Bit-size limit for tilde pairs")->check(CLI::PositiveNumber);
    app.add_option("--format", format_flag, "json or text")->check(CLI::IsMember({"json", "text"}));

    long n = 0, t = 9, terms = 20, k = 1;
    unsigned m = 3;
    std::uint64_t tower = 0, search_bound = approx::kDefaultWitnessSearchBound;
    std::string a_str = "2", p_str = "3", P_str, Q_str;
    std::optional<unsigned long> bits;

    auto* beta_cmd = app.add_subcommand("beta", "beta_n of the closed form");
    beta_cmd->add_option("--n", n, "Index n >= 3")->required();

    auto* conv_cmd = app.add_subcommand("convergent", "Canonical convergent Phat_n / Qhat_n");
    conv_cmd->add_option("--n", n, "Index n >= 1")->required();

    auto* series_cmd = app.add_subcommand("cf-series", "Partial quotients of f~ (or of P/Q) by the generic engine");
    series_cmd->add_option("--terms", terms, "Number of partial quotients")->check(CLI::PositiveNumber);
    series_cmd->add_option("--P", P_str, "Numerator of a rational series");
    series_cmd->add_option("--Q", Q_str, "Denominator of a rational series");

    auto* double_cmd = app.add_subcommand("double", "((z-1) P(z^2), Q(z^2)) of a convergent");
    double_cmd->add_option("--n", n, "Canonical index");
    double_cmd->add_option("--P", P_str, "Numerator");
    double_cmd->add_option("--Q", Q_str, "Denominator");

    auto* structure_cmd = app.add_subcommand("structure", "Check the even/odd shape of Qhat_2n, Qhat_2n-1");
    structure_cmd->add_option("--n", n, "Index n >= 2")->required();

    auto* approx_cmd = app.add_subcommand("approx", "Scaled integer pair for (n, t, a)");
    auto* quality_cmd = app.add_subcommand("quality", "Certified q |q f~(a) - p|");
    auto* reduce_cmd = app.add_subcommand("reduce", "Divide a pair by p^k");
    for (auto* cmd : {approx_cmd, quality_cmd, reduce_cmd}) {
        cmd->add_option("--n", tower, "Tower index")->required();
        cmd->add_option("--t", t, "Convergent index")->check(CLI::PositiveNumber);
        cmd->add_option("--a", a_str, "Base a >= 2");
    }
    quality_cmd->add_option("--bits", bits, "Precision for this measurement");
    reduce_cmd->add_option("--p", p_str, "Prime")->required();
    reduce_cmd->add_option("--k", k, "Exponent")->check(CLI::NonNegativeNumber);

    auto* acceptable_cmd = app.add_subcommand("acceptable", "Smallest t certifying p");
    acceptable_cmd->add_option("--p", p_str, "Prime")->required();

    auto* witness_cmd = app.add_subcommand("witness", "Tower index n_m with p^m dividing the pair");
    witness_cmd->add_option("--p", p_str, "Prime")->required();
    witness_cmd->add_option("--t", t, "Convergent index")->required();
    witness_cmd->add_option("--a", a_str, "Base a >= 2")->required();
    witness_cmd->add_option("--m", m, "Exponent m >= 3")->required();
    witness_cmd->add_option("--search-bound", search_bound, "Largest admissible n_m");

    long a_min = 2, a_max = 104;
    std::string pool_str = "3,5,11,13,19,29,61";
    unsigned threads = 1;
    auto* scan_cmd = app.add_subcommand("scan", "Which a are covered by the prime pool");
    scan_cmd->add_option("--a-min", a_min, "First base");
    scan_cmd->add_option("--a-max", a_max, "Last base");
    scan_cmd->add_option("--pool", pool_str, "Comma-separated primes");
    scan_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    std::string value = "tau";
    auto* realcf_cmd = app.add_subcommand("real-cf", "Certified partial quotients of a real constant");
    realcf_cmd->add_option("--value", value, "tau, ftmm or lacunary")->check(CLI::IsMember({"tau", "ftmm", "lacunary"}));
    realcf_cmd->add_option("--a", a_str, "Base for ftmm");
    realcf_cmd->add_option("--bits", bits, "Precision");
    realcf_cmd->add_option("--terms", terms, "Quotients after a_0")->check(CLI::PositiveNumber);

    std::optional<long> corrupt_beta;
    auto* selftest_cmd = app.add_subcommand("selftest", "Run the acceptance checklist");
    selftest_cmd->add_option("--corrupt-beta", corrupt_beta)->group("");
    selftest_cmd->add_option("--bits", bits)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (config_path.empty())
            if (const char* env = std::getenv("TMCF_CONFIG")) config_path = env;
        if (!config_path.empty()) load_config(config_path, cfg);
        if (precision_flag) cfg.precision_bits = *precision_flag;
        if (t_max_flag) cfg.t_max = *t_max_flag;
        if (n_max_flag) cfg.n_max = *n_max_flag;
        if (size_limit_flag) cfg.size_limit_bits = *size_limit_flag;
        if (format_flag) cfg.format = *format_flag;
        if (cfg.precision_bits == 0 || cfg.t_max <= 0 || cfg.size_limit_bits == 0)
            throw Error(Errc::InvalidArgument, "config limits must be positive");
        const auto fmt = records::parse_format(cfg.format);
        auto emit = [&](const Record& r) { std::cout << records::render(r, fmt) << '\n'; };

        if (*beta_cmd) {
            emit(Record{{"n", n}, {"beta", tm::beta(n).get_str()}});
        } else if (*conv_cmd) {
            const auto c = tm::canonical(n);
            Record r{{"n", n}};
            r.update(pair_record(c.Phat, c.Qhat));
            emit(r);
        } else if (*series_cmd) {
            if (P_str.empty() != Q_str.empty()) throw Error(Errc::InvalidArgument, "--P and --Q go together");
            const LaurentTail tail = P_str.empty() ? tm_series() : LaurentTail::from_rational(Poly::parse(P_str), Poly::parse(Q_str));
            const auto prefix = cf::extract_cf(tail, static_cast<std::size_t>(terms));
            for (std::size_t i = 0; i < prefix.quotients.size(); ++i) {
                Record r{{"k", i + 1}, {"a", prefix.quotients[i].to_string()}};
                r.update(pair_record(prefix.pairs[i].P, prefix.pairs[i].Q));
                r["verified"] = i < prefix.verified_count;
                emit(r);
            }
            if (prefix.terminated) emit(Record{{"terminated", true}, {"length", prefix.quotients.size()}});
        } else if (*double_cmd) {
            cf::ConvergentPair in;
            if (!P_str.empty() || !Q_str.empty())
                in = cf::ConvergentPair::make(Poly::parse(P_str), Poly::parse(Q_str));
            else if (n >= 1)
                in = tm::canonical(n).pair();
            else
                throw Error(Errc::InvalidArgument, "double needs --n or --P/--Q");
            const auto d = tm::double_pair(in);
            emit(pair_record(d.P, d.Q));
        } else if (*structure_cmd) {
            const auto rep = tm::structure_report(n);
            Record quotients = Record::array();
            for (const auto& q : rep.monic_quotients) quotients.push_back(q.to_string());
            emit(Record{{"n", n}, {"q_plus", rep.q_plus.to_string()}, {"monic_quotients", quotients}, {"ok", true}});
        } else if (*approx_cmd) {
            emit(approx_record(approx::tilde_pair(tower, t, big(a_str), cfg.size_limit_bits)));
        } else if (*quality_cmd) {
            const auto pr = approx::tilde_pair(tower, t, big(a_str), cfg.size_limit_bits);
            const unsigned long b = bits ? *bits : std::max(cfg.precision_bits, approx::min_quality_bits(pr));
            emit(records::quality(pr, approx::quality(pr, b)));
        } else if (*reduce_cmd) {
            const auto pr = approx::tilde_pair(tower, t, big(a_str), cfg.size_limit_bits);
            emit(approx_record(approx::reduce(pr, big(p_str), static_cast<unsigned>(k))));
        } else if (*acceptable_cmd) {
            const auto res = approx::acceptable(big(p_str), cfg.t_max);
            if (res.certificate) {
                emit(records::acceptability(*res.certificate));
            } else {
                emit(Record{{"p", p_str}, {"t", nullptr}, {"q1_valuation", nullptr}, {"qprime_nonzero", nullptr}, {"primroot", res.primroot}});
            }
        } else if (*witness_cmd) {
            const auto w = approx::witness(big(p_str), t, big(a_str), m, search_bound);
            emit(records::witness(w));
            return w.ok() ? kExitOk : kExitFailed;
        } else if (*scan_cmd) {
            approx::ScanOptions o;
            o.pool = parse_pool(pool_str);
            o.t_max = cfg.t_max;
            o.n_max = cfg.n_max;
            o.threads = threads;
            for (const auto& row : approx::scan(a_min, a_max, o)) emit(records::scan_row(row));
        } else if (*realcf_cmd) {
            const unsigned long b = bits ? *bits : cfg.precision_bits;
            const auto x = value == "tau"        ? approx::tau_tm(b)
                           : value == "lacunary" ? approx::lacunary_constant(b)
                                                 : approx::ftmm_value(big(a_str), b);
            const auto res = approx::real_cf(x, static_cast<std::size_t>(terms));
            Record qs = Record::array();
            for (const auto& q : res.quotients) qs.push_back(q.get_str());
            emit(Record{{"value", value}, {"bits", std::to_string(b)}, {"quotients", qs}, {"truncated", res.truncated}});
        } else if (*selftest_cmd) {
            acceptance::Options o;
            o.corrupt_beta = corrupt_beta;
            if (bits)
                o.precision_bits = bits;
            else if (precision_flag)
                o.precision_bits = precision_flag;
            const auto results = acceptance::run(o, [](const acceptance::CriterionResult& r) {
                std::cout << acceptance::format_line(r) << std::endl;
            });
            const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
            std::cout << (all ? "selftest: all criteria pass" : "selftest: FAILED") << '\n';
            return all ? kExitOk : kExitFailed;
        }
    } catch (const Error& e) {
        std::cerr << "tmcf: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "tmcf: " << e.what() << '\n';
        return kExitFailed;
    }
    return kExitOk;
}
