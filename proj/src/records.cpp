#include "tmcf/records.hpp"

namespace tmcf::records {

namespace {

std::string flat(const Record& v) {
    if (v.is_null()) return "none";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string out;
        for (const auto& item : v) {
            if (!out.empty()) out += ',';
            out += flat(item);
        }
        return out;
    }
    return v.dump();
}

}  // namespace

Format parse_format(std::string_view name) {
    if (name == "json") return Format::json;
    if (name == "text") return Format::text;
    throw Error(Errc::InvalidArgument, "unknown output format '" + std::string(name) + "'");
}

Record witness(const approx::WitnessRecord& w) {
    return Record{{"p", w.p.get_str()},
                  {"t", std::to_string(w.t)},
                  {"a", w.a.get_str()},
                  {"m", std::to_string(w.m)},
                  {"x_m", w.x_m.get_str()},
                  {"n_m", std::to_string(w.n_m)},
                  {"bound_ok", w.bound_ok},
                  {"q_divisible", w.q_divisible},
                  {"p_divisible", w.p_divisible}};
}

Record acceptability(const approx::AcceptabilityCertificate& c) {
    return Record{{"p", c.p.get_str()},
                  {"t", std::to_string(c.t)},
                  {"q1_valuation", std::to_string(c.q1_valuation.value)},
                  {"qprime_nonzero", c.qprime_nonzero},
                  {"primroot", c.primroot}};
}

Record scan_row(const approx::ScanRow& row) {
    Record r{{"a", row.a.get_str()}};
    if (row.p) {
        r["p"] = row.p->get_str();
        r["n"] = std::to_string(row.n);
        r["t"] = std::to_string(row.t);
    } else {
        r["p"] = nullptr;
        r["n"] = nullptr;
        r["t"] = nullptr;
    }
    return r;
}

Record quality(const approx::ApproxPair& pair, const approx::QualityReport& q) {
    return Record{{"n", std::to_string(pair.n)},
                  {"t", std::to_string(pair.t)},
                  {"a", pair.a.get_str()},
                  {"lower", to_decimal(q.lower(), kDecimalDigits, Rounding::down)},
                  {"upper", to_decimal(q.upper(), kDecimalDigits, Rounding::up)},
                  {"bits", std::to_string(q.bits_used)}};
}

std::string render(const Record& rec, Format fmt) {
    if (fmt == Format::json) return rec.dump();
    std::string out;
    for (const auto& [key, value] : rec.items()) {
        if (!out.empty()) out += ' ';
        out += key + '=' + flat(value);
    }
    return out;
}

}  // namespace tmcf::records
