#include "nilwitness/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <thread>

#include "CLI11.hpp"

#include "nilwitness/group.hpp"
#include "nilwitness/io.hpp"

namespace nilwitness::cli {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------- helpers

size_t thread_cap() {
    size_t hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("NILWITNESS_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && cap > 0) hw = std::min<size_t>(hw, static_cast<size_t>(cap));
    }
    return hw;
}

// Fan out independent window computations; results land by index, so the
// assembled report does not depend on completion order.
template <typename F>
void parallel_for(size_t n, F&& f) {
    size_t workers = std::min(n, thread_cap());
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

std::vector<int64_t> parse_bracket_list(const std::string& text) {
    std::string body = text;
    if (!body.empty() && body.front() == '[') {
        if (body.back() != ']') throw std::invalid_argument("unterminated list: " + text);
        body = body.substr(1, body.size() - 2);
    }
    std::vector<int64_t> out;
    size_t pos = 0;
    while (pos < body.size()) {
        size_t comma = body.find(',', pos);
        std::string item = body.substr(pos, comma == std::string::npos ? comma : comma - pos);
        size_t start = item.find_first_not_of(" \t");
        if (start != std::string::npos) {
            out.push_back(std::stoll(item.substr(start)));
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

// Accepts either ["prefix=[...]", "period=[...]"] tokens or a single JSON
// object {"p":..., "prefix":[...], "period":[...]}.
SigmaSeq parse_seq_spec(uint32_t p, const std::vector<std::string>& tokens) {
    if (tokens.size() == 1 && !tokens[0].empty() && tokens[0].front() == '{') {
        return sigma_from_json(json::parse(tokens[0]));
    }
    std::optional<std::vector<int64_t>> prefix, period;
    for (const auto& tok : tokens) {
        if (tok.rfind("prefix=", 0) == 0) {
            prefix = parse_bracket_list(tok.substr(7));
        } else if (tok.rfind("period=", 0) == 0) {
            period = parse_bracket_list(tok.substr(7));
        } else {
            throw std::invalid_argument("unrecognized sequence token: " + tok);
        }
    }
    if (!period) throw std::invalid_argument("sequence spec needs period=[...]");
    return SigmaSeq(p, prefix.value_or(std::vector<int64_t>{}), *period);
}

Window parse_window(const std::string& text) {
    size_t dots = text.find("..");
    if (dots == std::string::npos) {
        throw std::invalid_argument("window must be of the form a..b: " + text);
    }
    Window w{std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
    if (w.lo > w.hi) throw std::invalid_argument("empty window: " + text);
    return w;
}

CharacterSpec parse_character(uint32_t p, const std::string& inline_json,
                              const std::string& file) {
    if (!inline_json.empty()) {
        return character_from_json(json::parse(inline_json));
    }
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw std::invalid_argument("cannot open character file: " + file);
        json j;
        in >> j;
        return character_from_json(j);
    }
    return CharacterSpec(p, {});
}

void emit(const std::string& payload, const std::string& out_path, std::ostream& out) {
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
        f << payload;
    }
    out << payload;
}

json report_check(const std::string& name, bool pass, size_t count, const std::string& detail) {
    json j;
    j["name"] = name;
    j["pass"] = pass;
    j["count"] = count;
    if (!detail.empty()) j["detail"] = detail;
    return j;
}

struct PaperRef {
    bool requested = false;
    std::string text;
};

// Each command can print a self-contained statement of the identity or
// criterion it checks.
bool handle_paper_ref(const PaperRef& ref, std::ostream& out) {
    if (ref.requested) out << ref.text << "\n";
    return ref.requested;
}

// ---------------------------------------------------------------- classify

int cmd_classify(uint32_t p, const std::vector<std::string>& s_tokens,
                 const std::vector<std::string>& sigma_tokens, const std::string& out_path,
                 std::ostream& out) {
    json report;
    report["command"] = "classify";
    TypeIVerdict verdict;
    if (!s_tokens.empty()) {
        SigmaSeq s = parse_seq_spec(p, s_tokens);
        if (!s.zero_one_valued()) {
            throw std::invalid_argument("classify: s must be {0,1}-valued");
        }
        SigmaSeq sigma = g0_sigma(s);
        verdict = classify_s(s);
        report["input"] = sigma_to_json(s);
        report["input"]["kind"] = "s";
        report["sigma"] = sigma_to_json(sigma);
    } else {
        SigmaSeq sigma = parse_seq_spec(p, sigma_tokens);
        verdict = classify_sigma(sigma);
        report["input"] = sigma_to_json(sigma);
        report["input"]["kind"] = "sigma";
        report["sigma"] = sigma_to_json(sigma);
    }
    report["verdict"] = verdict_to_json(verdict);
    report["summary"] = to_string(verdict);
    emit(report.dump(2) + "\n", out_path, out);
    return 0;
}

// ---------------------------------------------------------------- grow

int cmd_grow(uint32_t p, const std::vector<std::string>& sigma_tokens,
             const std::vector<std::string>& s_tokens, const std::string& chi_json,
             const std::string& chi_file, const std::vector<std::string>& witness_tokens,
             const std::string& schedule_text, const std::string& format,
             const std::string& out_path, std::ostream& out) {
    SigmaSeq sigma = !sigma_tokens.empty() ? parse_seq_spec(p, sigma_tokens)
                                           : g0_sigma(parse_seq_spec(p, s_tokens));
    if (format != "json" && format != "csv") {
        throw std::invalid_argument("grow: format must be json or csv");
    }
    if (!witness_tokens.empty() && (!chi_json.empty() || !chi_file.empty())) {
        throw std::invalid_argument("grow: --witness and --chi are mutually exclusive");
    }
    std::vector<int64_t> schedule = parse_bracket_list(schedule_text);
    if (schedule.empty()) throw std::invalid_argument("grow: empty window schedule");
    for (size_t i = 1; i < schedule.size(); ++i) {
        if (schedule[i] >= schedule[i - 1]) {
            throw std::invalid_argument("grow: schedule must be strictly decreasing in i_0");
        }
    }

    json report;
    report["command"] = "grow";
    report["p"] = p;
    report["sigma"] = sigma_to_json(sigma);

    std::vector<GramRow> rows(schedule.size());
    std::vector<std::string> failures(schedule.size());
    if (!witness_tokens.empty()) {
        int64_t d = 0;
        size_t M = 0;
        for (const auto& tok : witness_tokens) {
            if (tok.rfind("d=", 0) == 0) d = std::stoll(tok.substr(2));
            else if (tok.rfind("M=", 0) == 0) M = std::stoull(tok.substr(2));
            else throw std::invalid_argument("grow: unrecognized witness token: " + tok);
        }
        if (d <= 0 || M == 0) throw std::invalid_argument("grow: witness needs d=... M=...");
        report["witness"] = json{{"d", d}, {"M", M}};
        // step j uses the first min(j, M) blocks; the window is deepened
        // when the schedule depth would truncate a block
        parallel_for(schedule.size(), [&](size_t j) {
            try {
                size_t blocks = std::min(j + 1, M);
                CharacterSpec chi = witness_character(d, blocks, sigma);
                int64_t needed = -(3 * static_cast<int64_t>(blocks) + 1) * d;
                int64_t i0 = std::min(schedule[j], needed);
                rows[j] = gram_rank(chi, sigma, i0);
            } catch (const std::exception& e) {
                failures[j] = e.what();
            }
        });
    } else {
        CharacterSpec chi = parse_character(p, chi_json, chi_file);
        report["character"] = character_to_json(chi);
        parallel_for(schedule.size(), [&](size_t j) {
            try {
                rows[j] = gram_rank(chi, sigma, schedule[j]);
            } catch (const std::exception& e) {
                failures[j] = e.what();
            }
        });
    }
    for (const auto& f : failures) {
        if (!f.empty()) throw std::runtime_error("grow: " + f);
    }

    SweepVerdict verdict = assess_rank_sweep(rows);
    if (format == "csv") {
        emit(gram_rows_to_csv(rows, verdict), out_path, out);
    } else {
        json g = gram_rows_to_json(rows, verdict);
        report["rows"] = g["rows"];
        report["verdict"] = g["verdict"];
        emit(report.dump(2) + "\n", out_path, out);
    }
    return 0;
}

// ---------------------------------------------------------------- witness

int cmd_witness(uint32_t p, const std::vector<std::string>& sigma_tokens, int64_t d, size_t M,
                const std::string& out_path, std::ostream& out) {
    SigmaSeq sigma = parse_seq_spec(p, sigma_tokens);
    CharacterSpec chi = witness_character(d, M, sigma);
    json report;
    report["command"] = "witness";
    report["d"] = d;
    report["M"] = M;
    report["character"] = character_to_json(chi);
    emit(report.dump(2) + "\n", out_path, out);
    return 0;
}

// ---------------------------------------------------------------- verify

int finish_verify(json& report, const std::string& out_path, std::ostream& out) {
    bool pass = true;
    for (const auto& c : report["checks"]) pass &= c.at("pass").get<bool>();
    report["pass"] = pass;
    emit(report.dump(2) + "\n", out_path, out);
    return pass ? 0 : 1;
}

int verify_cocycle_suite(uint32_t p, const std::vector<std::string>& s_tokens,
                         const std::vector<std::string>& sigma_tokens, const std::string& window,
                         uint64_t seed, const std::string& out_path, std::ostream& out) {
    Window w = parse_window(window);
    json report;
    report["command"] = "verify";
    report["suite"] = "cocycle";
    report["seed"] = seed;
    report["checks"] = json::array();
    if (!s_tokens.empty()) {
        SigmaSeq s = parse_seq_spec(p, s_tokens);
        CocycleSpec omega = EtaS{s};
        VerifyReport identity = verify_cocycle_identity(omega, w, seed);
        report["checks"].push_back(
            report_check("cocycle-identity", identity.pass, identity.checks, identity.first_failure));
        VerifyReport equivariance = verify_equivariance(s, w, seed);
        report["checks"].push_back(report_check("shift-equivariance", equivariance.pass,
                                                equivariance.checks, equivariance.first_failure));
    } else {
        SigmaSeq sigma = parse_seq_spec(p, sigma_tokens);
        CocycleSpec omega = MonomialGamma{sigma};
        VerifyReport identity = verify_cocycle_identity(omega, w, seed);
        report["checks"].push_back(
            report_check("cocycle-identity", identity.pass, identity.checks, identity.first_failure));
    }
    return finish_verify(report, out_path, out);
}

int verify_commutator_suite(uint32_t p, const std::vector<std::string>& s_tokens,
                            const std::string& window, const std::string& out_path,
                            std::ostream& out) {
    Window w = parse_window(window);
    SigmaSeq s = parse_seq_spec(p, s_tokens);
    auto omega = std::make_shared<const CocycleSpec>(EtaS{s});
    size_t count = 0;
    bool pass = true;
    std::string detail;
    for (int64_t a = w.lo; a <= w.hi && pass; ++a) {
        for (int64_t b = w.lo; b <= w.hi && pass; ++b) {
            LaurentPoly closed = gw_commutator_closed_form(s, a, b);
            LaurentPoly xa = LaurentPoly::monomial(p, 1, a);
            LaurentPoly xb = LaurentPoly::monomial(p, 1, b);
            LaurentPoly antisym = add(eval_eta(s, xa, xb), negate(eval_eta(s, xb, xa)));
            CentralExtElement g = make_element(omega, xa, LaurentPoly(p));
            CentralExtElement h = make_element(omega, xb, LaurentPoly(p));
            CentralExtElement lit = commutator_literal(g, h);
            ++count;
            if (!(closed == antisym) || !(closed == lit.a) || !lit.x.is_zero()) {
                pass = false;
                detail = "mismatch at (a, b) = (" + std::to_string(a) + ", " + std::to_string(b) +
                         ")";
            }
        }
    }
    json report;
    report["command"] = "verify";
    report["suite"] = "commutator";
    report["checks"] = json::array();
    report["checks"].push_back(report_check("closed-vs-eta-vs-literal", pass, count, detail));
    return finish_verify(report, out_path, out);
}

int verify_extension_suite(uint32_t p, const std::vector<std::string>& s_tokens,
                           const std::string& chi_json, const std::string& window_list,
                           const std::string& out_path, std::ostream& out) {
    std::vector<int64_t> basis = parse_bracket_list(window_list);
    if (basis.empty()) throw std::invalid_argument("verify extension: empty window");
    SigmaSeq s = s_tokens.empty() ? SigmaSeq(p, {1}, {0}) : parse_seq_spec(p, s_tokens);
    CharacterSpec chi = chi_json.empty() ? CharacterSpec(p, {{1, 1}})
                                         : character_from_json(json::parse(chi_json));
    CocycleSpec omega = EtaS{s};
    FiniteWindowGroup q = FiniteWindowGroup::from_character(chi, omega, basis);
    SemidirectEnvelope e(q);

    json report;
    report["command"] = "verify";
    report["suite"] = "extension";
    report["group"] = window_group_to_json(q);
    report["order_E"] = e.order();
    report["checks"] = json::array();

    VerifyReport nilp = verify_class2_and_center(e);
    report["checks"].push_back(
        report_check("class2-and-center", nilp.pass, nilp.checks, nilp.first_failure));
    for (uint32_t u = 1; u < p; ++u) {
        SurjectivityReport surj = omega_sigma_surjective(e, u);
        report["checks"].push_back(report_check("omega-sigma-surjective(u=" + std::to_string(u) + ")",
                                                surj.pass, surj.image_size, surj.detail));
    }
    return finish_verify(report, out_path, out);
}

int verify_bilinear_suite(const std::string& group, size_t n, size_t q,
                          const std::string& bracket_json, const std::string& out_path,
                          std::ostream& out) {
    json report;
    report["command"] = "verify";
    report["suite"] = "bilinear";
    report["group"] = group;
    report["checks"] = json::array();

    if (group == "heisenberg") {
        uint32_t p = 2;
        uint32_t e = 1;
        // factor q = p^e
        for (uint32_t cand = 2; cand <= q; ++cand) {
            if (q % cand == 0) {
                p = cand;
                break;
            }
        }
        size_t power = p;
        e = 1;
        while (power < q) {
            power *= p;
            ++e;
        }
        if (power != q) throw std::invalid_argument("bilinear: q must be a prime power");
        HeisenbergResult h = heisenberg(n, FqField::make(p, e));
        BilinearCheck check = is_k_bilinear(h.gamma);
        report["checks"].push_back(
            report_check("heisenberg-k-bilinear", check.pass, 1, check.witness));
        report["checks"].push_back(report_check("gamma-alternating", h.gamma.alternating(), 1, ""));
    } else if (group == "lazard") {
        BiAddMapSpec bracket;
        if (!bracket_json.empty()) {
            bracket = biadd_from_json(json::parse(bracket_json));
        } else {
            // 3-dimensional Heisenberg Lie algebra over F_q
            json j = {{"q", q}, {"dimA", 3}, {"dimN", 3},
                      {"table", {{"0,1", {0, 0, 1}}, {"1,0", {0, 0, -1}}}}};
            bracket = biadd_from_json(j);
        }
        LazardResult lz = lazard_E(bracket);
        BilinearCheck check = is_k_bilinear(lz.gamma);
        report["checks"].push_back(report_check("lazard-k-bilinear", check.pass, 1, check.witness));
        if (bracket.field.characteristic() == 2) {
            bool abelian = true;
            size_t order = lz.group.order();
            for (size_t a = 0; a < order && abelian; ++a) {
                for (size_t b = 0; b < order && abelian; ++b) {
                    abelian = lz.group.mul(lz.group.decode(a), lz.group.decode(b)) ==
                              lz.group.mul(lz.group.decode(b), lz.group.decode(a));
                }
            }
            report["checks"].push_back(report_check("char2-abelian", abelian, order * order, ""));
        }
    } else if (group == "pseudoquadratic") {
        PseudoQuadraticSpec spec;
        spec.q = static_cast<uint32_t>(q);
        spec.n = n;
        PseudoQuadraticResult r = pseudo_quadratic_group(spec);
        BilinearCheck over_k = is_k_bilinear(r.gamma_over_k);
        report["checks"].push_back(
            report_check("pseudoquadratic-bilinear-over-fixed-field", over_k.pass, 1,
                         over_k.witness));
        BilinearCheck over_K = is_k_bilinear(r.gamma_over_K);
        report["checks"].push_back(report_check("pseudoquadratic-fails-over-extension",
                                                !over_K.pass, 1,
                                                over_K.pass ? "unexpectedly bilinear over K" : ""));
    } else {
        throw std::invalid_argument("bilinear: unknown group " + group);
    }
    return finish_verify(report, out_path, out);
}

// ---------------------------------------------------------------- extend

int cmd_extend(uint32_t p, const std::vector<std::string>& s_tokens,
               const std::vector<std::string>& sigma_tokens, const std::string& chi_json,
               const std::string& window_list, const std::string& out_path, std::ostream& out) {
    std::vector<int64_t> basis = parse_bracket_list(window_list);
    if (basis.empty()) throw std::invalid_argument("extend: empty window");
    CharacterSpec chi = chi_json.empty() ? CharacterSpec(p, {{1, 1}})
                                         : character_from_json(json::parse(chi_json));
    json provenance;
    CocycleSpec omega = EtaS{SigmaSeq(p, {1}, {0})};
    if (!sigma_tokens.empty()) {
        SigmaSeq sigma = parse_seq_spec(p, sigma_tokens);
        omega = MonomialGamma{sigma};
        provenance["sigma"] = sigma_to_json(sigma);
    } else {
        SigmaSeq s = s_tokens.empty() ? SigmaSeq(p, {1}, {0}) : parse_seq_spec(p, s_tokens);
        omega = EtaS{s};
        provenance["s"] = sigma_to_json(s);
    }
    provenance["chi"] = character_to_json(chi);

    FiniteWindowGroup q =
        FiniteWindowGroup::from_character(chi, omega, basis, provenance.dump());
    json report = window_group_to_json(q);
    emit(report.dump(2) + "\n", out_path, out);
    return 0;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact finite-scale analysis of two-step nilpotent groups with monomial "
                 "commutation relations",
                 "nilwitness"};
    app.require_subcommand(1);

    // ------------------------------------------------------------ classify
    auto* classify = app.add_subcommand("classify", "symbolic type-I classification of s or sigma");
    uint32_t cl_p = 2;
    std::vector<std::string> cl_s, cl_sigma;
    std::string cl_out;
    bool cl_ref = false;
    classify->add_option("--p", cl_p, "prime modulus");
    classify->add_option("--s", cl_s, "sequence s: prefix=[...] period=[...] or JSON");
    classify->add_option("--sigma", cl_sigma, "sequence sigma: prefix=[...] period=[...] or JSON");
    classify->add_option("--out", cl_out, "also write the report to this file");
    classify->add_flag("--paper-ref", cl_ref, "print the criterion this command decides");

    // ------------------------------------------------------------ grow
    auto* grow = app.add_subcommand("grow", "window sweep of O/L rank evidence");
    uint32_t gr_p = 2;
    std::vector<std::string> gr_sigma, gr_s, gr_witness;
    std::string gr_chi, gr_chi_file, gr_schedule = "-4,-8,-16,-32", gr_format = "json", gr_out;
    bool gr_ref = false;
    grow->add_option("--p", gr_p, "prime modulus");
    grow->add_option("--sigma", gr_sigma, "sequence sigma: prefix=[...] period=[...] or JSON");
    grow->add_option("--s", gr_s, "sequence s (converted through the even-part subgroup)");
    grow->add_option("--chi", gr_chi, "character JSON");
    grow->add_option("--chi-file", gr_chi_file, "character JSON file");
    grow->add_option("--witness", gr_witness, "witness mode: d=... M=...");
    grow->add_option("--schedule", gr_schedule, "strictly decreasing i_0 list");
    grow->add_option("--format", gr_format, "json or csv");
    grow->add_option("--out", gr_out, "also write the report to this file");
    grow->add_flag("--paper-ref", gr_ref, "print the quantity this command computes");

    // ------------------------------------------------------------ witness
    auto* witness = app.add_subcommand("witness", "construct a rank-growth witness character");
    uint32_t wi_p = 2;
    std::vector<std::string> wi_sigma;
    int64_t wi_d = 1;
    size_t wi_m = 1;
    std::string wi_out;
    bool wi_ref = false;
    witness->add_option("--p", wi_p, "prime modulus");
    witness->add_option("--sigma", wi_sigma, "sequence sigma");
    witness->add_option("--d", wi_d, "lattice step with sigma_d != 0");
    witness->add_option("--M", wi_m, "number of symplectic blocks");
    witness->add_option("--out", wi_out, "also write the report to this file");
    witness->add_flag("--paper-ref", wi_ref, "print the construction this command performs");

    // ------------------------------------------------------------ verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string ve_suite;
    uint32_t ve_p = 2;
    std::vector<std::string> ve_s, ve_sigma;
    std::string ve_window, ve_chi, ve_out, ve_group = "heisenberg";
    std::string ve_bracket;
    size_t ve_n = 1, ve_q = 2;
    uint64_t ve_seed = kDefaultSeed;
    bool ve_ref = false;
    verify->add_option("suite", ve_suite, "cocycle | commutator | extension | bilinear")
        ->required();
    verify->add_option("--p", ve_p, "prime modulus");
    verify->add_option("--s", ve_s, "sequence s");
    verify->add_option("--sigma", ve_sigma, "sequence sigma");
    verify->add_option("--window", ve_window,
                       "exponent window: a..b for cocycle/commutator, a comma list of basis "
                       "exponents for extension");
    verify->add_option("--chi", ve_chi, "character JSON (extension)");
    verify->add_option("--group", ve_group, "heisenberg | lazard | pseudoquadratic (bilinear)");
    verify->add_option("--n", ve_n, "rank parameter (bilinear)");
    verify->add_option("--q", ve_q, "field order (bilinear)");
    verify->add_option("--bracket", ve_bracket, "structure constants JSON (lazard)");
    verify->add_option("--seed", ve_seed, "seed for randomized checks");
    verify->add_option("--out", ve_out, "also write the report to this file");
    verify->add_flag("--paper-ref", ve_ref, "print the identity this suite checks");

    // ------------------------------------------------------------ extend
    auto* extend = app.add_subcommand("extend", "build the finite-window quotient group");
    uint32_t ex_p = 2;
    std::vector<std::string> ex_s, ex_sigma;
    std::string ex_chi, ex_window = "0,2", ex_out;
    bool ex_ref = false;
    extend->add_option("--p", ex_p, "prime modulus");
    extend->add_option("--s", ex_s, "sequence s");
    extend->add_option("--sigma", ex_sigma, "sequence sigma");
    extend->add_option("--chi", ex_chi, "character JSON");
    extend->add_option("--window", ex_window, "window basis exponents (comma list)");
    extend->add_option("--out", ex_out, "also write the report to this file");
    extend->add_flag("--paper-ref", ex_ref, "print the construction this command performs");

    // ------------------------------------------------------------ bilinear
    auto* bilinear = app.add_subcommand("bilinear", "bilinearity checks (alias of verify bilinear)");
    std::string bi_group = "heisenberg", bi_bracket, bi_out;
    size_t bi_n = 1, bi_q = 2;
    bool bi_ref = false;
    bilinear->add_option("--group", bi_group, "heisenberg | lazard | pseudoquadratic");
    bilinear->add_option("--n", bi_n, "rank parameter");
    bilinear->add_option("--q", bi_q, "field order");
    bilinear->add_option("--bracket", bi_bracket, "structure constants JSON (lazard)");
    bilinear->add_option("--out", bi_out, "also write the report to this file");
    bilinear->add_flag("--paper-ref", bi_ref, "print the identity this suite checks");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (classify->parsed()) {
            PaperRef ref{cl_ref,
                         "classify: the group with commutation relations gamma(t^m, t^n) = "
                         "sigma_{m-n} t^{m+n} is type I when sigma is eventually nonzero, "
                         "eventually nonzero exactly on the odd integers, or supported and "
                         "eventually nonzero on a progression dZ; it is not type I when "
                         "sigma_d != 0 while sigma_{dn} = 0 for all n >= 2."};
            if (handle_paper_ref(ref, out)) return 0;
            if (cl_s.empty() == cl_sigma.empty()) {
                throw std::invalid_argument("classify: provide exactly one of --s, --sigma");
            }
            return cmd_classify(cl_p, cl_s, cl_sigma, cl_out, out);
        }
        if (grow->parsed()) {
            PaperRef ref{gr_ref,
                         "grow: window evidence for closedness of the image of g -> chi([g, .]); "
                         "the elements commuting with the compact open subgroup "
                         "t^{K0+1}F_p[[t]] modulo those commuting with all of them form a "
                         "quotient of F_p-dimension equal to the rank of the alternating form "
                         "chi(gamma(., .)) on the window."};
            if (handle_paper_ref(ref, out)) return 0;
            if (gr_sigma.empty() && gr_s.empty()) {
                throw std::invalid_argument("grow: provide --sigma or --s");
            }
            return cmd_grow(gr_p, gr_sigma, gr_s, gr_chi, gr_chi_file, gr_witness, gr_schedule,
                            gr_format, gr_out, out);
        }
        if (witness->parsed()) {
            PaperRef ref{wi_ref,
                         "witness: the character supported on {-d-6nd : 1 <= n <= M} with "
                         "coefficients 1/sigma_d pairs (t^{-3nd}, t^{-3nd-d}) into M disjoint "
                         "symplectic blocks, so the rank of chi(gamma(., .)) grows without "
                         "bound in M."};
            if (handle_paper_ref(ref, out)) return 0;
            if (wi_sigma.empty()) throw std::invalid_argument("witness: provide --sigma");
            return cmd_witness(wi_p, wi_sigma, wi_d, wi_m, wi_out, out);
        }
        if (verify->parsed()) {
            PaperRef ref{ve_ref,
                         "verify: cocycle = the identity omega(a+b,c)+omega(a,b) = "
                         "omega(a,b+c)+omega(b,c) and shift equivariance; commutator = closed "
                         "form vs antisymmetrized cocycle vs literal g h g^-1 h^-1; extension = "
                         "[E,E] <= Cbar <= Z(E) and surjectivity of omega_sigma onto the dual "
                         "of E/Cbar; bilinear = k-bilinearity of constructed commutator maps."};
            if (handle_paper_ref(ref, out)) return 0;
            if (ve_suite == "cocycle") {
                if (ve_s.empty() && ve_sigma.empty()) {
                    throw std::invalid_argument("verify cocycle: provide --s or --sigma");
                }
                return verify_cocycle_suite(ve_p, ve_s, ve_sigma,
                                            ve_window.empty() ? "-4..4" : ve_window, ve_seed,
                                            ve_out, out);
            }
            if (ve_suite == "commutator") {
                if (ve_s.empty()) throw std::invalid_argument("verify commutator: provide --s");
                return verify_commutator_suite(ve_p, ve_s, ve_window.empty() ? "-5..5" : ve_window,
                                               ve_out, out);
            }
            if (ve_suite == "extension") {
                return verify_extension_suite(ve_p, ve_s, ve_chi,
                                              ve_window.empty() ? "0,2" : ve_window, ve_out, out);
            }
            if (ve_suite == "bilinear") {
                return verify_bilinear_suite(ve_group, ve_n, ve_q, ve_bracket, ve_out, out);
            }
            throw std::invalid_argument("verify: unknown suite " + ve_suite);
        }
        if (extend->parsed()) {
            PaperRef ref{ex_ref,
                         "extend: builds the finite-window quotient with pairing "
                         "chi(omega(t^a, t^b)) over the window basis, the substrate of the "
                         "semidirect envelope."};
            if (handle_paper_ref(ref, out)) return 0;
            return cmd_extend(ex_p, ex_s, ex_sigma, ex_chi, ex_window, ex_out, out);
        }
        if (bilinear->parsed()) {
            PaperRef ref{bi_ref,
                         "bilinear: k-bilinearity of the commutator maps of the Heisenberg, "
                         "twisted-addition and pseudo-quadratic groups; the last is bilinear "
                         "over the fixed field of the involution but not over the quadratic "
                         "extension."};
            if (handle_paper_ref(ref, out)) return 0;
            return verify_bilinear_suite(bi_group, bi_n, bi_q, bi_bracket, bi_out, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no command\n";
    return 2;
}

}  // namespace nilwitness::cli
