#include "nilwitness/io.hpp"

#include <stdexcept>

namespace nilwitness {

using nlohmann::json;

namespace {

std::vector<int64_t> int_list(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        throw std::invalid_argument(std::string("expected array field \"") + key + "\"");
    }
    std::vector<int64_t> out;
    for (const auto& v : j.at(key)) out.push_back(v.get<int64_t>());
    return out;
}

}  // namespace

json sigma_to_json(const SigmaSeq& s) {
    json j;
    j["p"] = s.modulus();
    j["prefix"] = s.prefix();
    j["period"] = s.period();
    return j;
}

SigmaSeq sigma_from_json(const json& j) {
    uint32_t p = j.at("p").get<uint32_t>();
    return SigmaSeq(p, int_list(j, "prefix"), int_list(j, "period"));
}

json character_to_json(const CharacterSpec& chi) {
    json coeffs = json::object();
    for (const auto& [m, c] : chi.coeffs()) {
        coeffs[std::to_string(m)] = c;
    }
    json j;
    j["p"] = chi.modulus();
    j["coeffs"] = coeffs;
    return j;
}

CharacterSpec character_from_json(const json& j) {
    uint32_t p = j.at("p").get<uint32_t>();
    std::map<int64_t, int64_t> coeffs;
    if (j.contains("coeffs")) {
        for (const auto& [key, value] : j.at("coeffs").items()) {
            coeffs[std::stoll(key)] = value.get<int64_t>();
        }
    }
    return CharacterSpec(p, coeffs);
}

json window_group_to_json(const FiniteWindowGroup& q) {
    json j;
    j["p"] = q.modulus();
    j["basis"] = q.basis();
    json pairing = json::array();
    for (size_t i = 0; i < q.window_size(); ++i) {
        json row = json::array();
        for (size_t k = 0; k < q.window_size(); ++k) row.push_back(q.pairing(i, k));
        pairing.push_back(row);
    }
    j["pairing"] = pairing;
    if (!q.provenance().empty()) {
        j["provenance"] = json::parse(q.provenance());
    }
    return j;
}

FiniteWindowGroup window_group_from_json(const json& j) {
    uint32_t p = j.at("p").get<uint32_t>();
    std::vector<int64_t> basis = int_list(j, "basis");
    const auto& rows = j.at("pairing");
    FpMatrix pairing(p, basis.size(), basis.size());
    if (!rows.is_array() || rows.size() != basis.size()) {
        throw std::invalid_argument("group json: pairing must be a basis-sized square array");
    }
    for (size_t i = 0; i < basis.size(); ++i) {
        if (rows[i].size() != basis.size()) {
            throw std::invalid_argument("group json: pairing must be a basis-sized square array");
        }
        for (size_t k = 0; k < basis.size(); ++k) {
            pairing.set(i, k, rows[i][k].get<int64_t>());
        }
    }
    std::string provenance = j.contains("provenance") ? j.at("provenance").dump() : "";
    return FiniteWindowGroup(p, std::move(basis), std::move(pairing), std::move(provenance));
}

json biadd_to_json(const BiAddMapSpec& gamma) {
    json j;
    j["q"] = gamma.field.order();
    j["dimA"] = gamma.dim_a;
    j["dimN"] = gamma.dim_n;
    json table = json::object();
    uint32_t e = gamma.field.degree();
    // emit only the F_q-basis pairs; this round-trips exactly for tables
    // built from structure constants
    for (size_t a = 0; a < gamma.dim_a; ++a) {
        for (size_t b = 0; b < gamma.dim_a; ++b) {
            const auto& value = gamma.table[a * e][b * e];
            bool zero = true;
            for (uint32_t v : value) zero &= (v == 0);
            if (zero) continue;
            json coords = json::array();
            for (size_t i = 0; i < gamma.dim_n; ++i) coords.push_back(value[i * e]);
            table[std::to_string(a) + "," + std::to_string(b)] = coords;
        }
    }
    j["table"] = table;
    return j;
}

BiAddMapSpec biadd_from_json(const json& j) {
    size_t q = j.at("q").get<size_t>();
    // factor q = p^e
    uint32_t p = 0;
    for (uint32_t cand = 2; cand <= q; ++cand) {
        if (q % cand == 0) {
            p = cand;
            break;
        }
    }
    if (p == 0) throw std::invalid_argument("biadd json: bad field order");
    uint32_t e = 0;
    size_t power = 1;
    while (power < q) {
        power *= p;
        ++e;
    }
    if (power != q) throw std::invalid_argument("biadd json: field order is not a prime power");
    if (e == 0) e = 1;

    BiAddMapSpec gamma;
    gamma.field = FqField::make(p, e);
    gamma.dim_a = j.at("dimA").get<size_t>();
    gamma.dim_n = j.at("dimN").get<size_t>();
    size_t ac = gamma.a_coords();
    size_t nc = gamma.n_coords();
    gamma.table.assign(ac, std::vector<std::vector<uint32_t>>(ac, std::vector<uint32_t>(nc, 0)));

    // structure constants on the F_q-basis, extended F_q-bilinearly
    std::vector<std::vector<std::vector<FqField::Elem>>> base(
        gamma.dim_a,
        std::vector<std::vector<FqField::Elem>>(gamma.dim_a,
                                                std::vector<FqField::Elem>(gamma.dim_n,
                                                                           gamma.field.zero())));
    if (j.contains("table")) {
        for (const auto& [key, value] : j.at("table").items()) {
            size_t comma = key.find(',');
            if (comma == std::string::npos) {
                throw std::invalid_argument("biadd json: table keys must be \"i,j\"");
            }
            size_t a = std::stoull(key.substr(0, comma));
            size_t b = std::stoull(key.substr(comma + 1));
            if (a >= gamma.dim_a || b >= gamma.dim_a || value.size() != gamma.dim_n) {
                throw std::invalid_argument("biadd json: table entry out of range");
            }
            for (size_t i = 0; i < gamma.dim_n; ++i) {
                int64_t c = value[i].get<int64_t>();
                FqField::Elem elem = gamma.field.zero();
                elem[0] = reduce_mod(c, p);
                base[a][b][i] = elem;
            }
        }
    }
    FqField::Elem beta = e > 1 ? gamma.field.from_index(p) : gamma.field.one();
    for (size_t a = 0; a < gamma.dim_a; ++a) {
        for (uint32_t r = 0; r < e; ++r) {
            for (size_t b = 0; b < gamma.dim_a; ++b) {
                for (uint32_t s = 0; s < e; ++s) {
                    FqField::Elem scale = gamma.field.pow(beta, r + s);
                    for (size_t i = 0; i < gamma.dim_n; ++i) {
                        FqField::Elem v = gamma.field.mul(scale, base[a][b][i]);
                        for (uint32_t t = 0; t < e; ++t) {
                            gamma.table[a * e + r][b * e + s][i * e + t] = v[t];
                        }
                    }
                }
            }
        }
    }
    return gamma;
}

json verdict_to_json(const TypeIVerdict& v) {
    json j;
    switch (v.kind) {
        case TypeIVerdict::Kind::type_i:
            j["type"] = "TypeI";
            if (v.criterion == 0) {
                j["criterion"] = "abelian";
            } else {
                j["criterion"] = v.criterion;
                j["c"] = v.threshold;
            }
            break;
        case TypeIVerdict::Kind::not_type_i:
            j["type"] = "NotTypeI";
            j["d"] = v.witness_d;
            break;
        default:
            j["type"] = "Unknown";
            break;
    }
    return j;
}

json gram_rows_to_json(const std::vector<GramRow>& rows, SweepVerdict verdict) {
    json j;
    json arr = json::array();
    for (const auto& r : rows) {
        json row;
        row["i_0"] = r.i0;
        row["dim_O"] = r.dim_O;
        row["rank"] = r.rank;
        row["quotient_dim"] = r.quotient_dim;
        arr.push_back(row);
    }
    j["rows"] = arr;
    j["verdict"] = to_string(verdict);
    return j;
}

std::string gram_rows_to_csv(const std::vector<GramRow>& rows, SweepVerdict verdict) {
    std::string out = "i_0,dim_O,rank,quotient_dim\n";
    for (const auto& r : rows) {
        out += std::to_string(r.i0) + "," + std::to_string(r.dim_O) + "," +
               std::to_string(r.rank) + "," + std::to_string(r.quotient_dim) + "\n";
    }
    out += "verdict," + to_string(verdict) + "\n";
    return out;
}

}  // namespace nilwitness
