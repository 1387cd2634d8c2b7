#include <CLI11.hpp>

#include <future>
#include <iostream>

#include "curvemod/deformation.hpp"
#include "curvemod/io.hpp"
#include "curvemod/synthetic.hpp"

namespace {

using namespace curvemod;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // validation / audit / integrality failure
constexpr int kExitUsage = 2;    // usage or parse error

void print_result_tsv(const EngineResult& result, bool with_trace, std::ostream& os) {
    for (const auto& [label, mult] : result.decomposition.entries())
        os << label.a << "\t" << label.b << "\t" << mult << "\n";
    const EngineTrace& tr = result.trace;
    os << "# mode\t" << mode_name(tr.mode) << "\n";
    if (tr.mode.kind == Mode::Kind::PolyDifferential) os << "# m\t" << tr.mode.m << "\n";
    os << "# total_dimension\t" << total_dimension(result.decomposition) << "\n";
    os << "# genus_x\t" << tr.genus_x << "\n";
    os << "# genus_y\t" << tr.genus_y << "\n";
    os << "# genus_z\t" << tr.genus_z << "\n";
    if (tr.mode.kind != Mode::Kind::Differentials) os << "# degree_e\t" << tr.deg_e << "\n";
    if (!with_trace) return;
    for (std::size_t i = 0; i < tr.ell_by_t.size(); ++i)
        for (std::size_t t = 0; t < tr.ell_by_t[i].size(); ++t) {
            os << "# orbit\t" << i << "\tt\t" << t << "\te\t";
            if (tr.e_by_t[i][t])
                os << *tr.e_by_t[i][t];
            else
                os << "-";
            os << "\tell\t" << tr.ell_by_t[i][t];
            if (!tr.d_by_t[i].empty()) os << "\td\t" << tr.d_by_t[i][t];
            os << "\n";
        }
    for (std::size_t j = 0; j < tr.n_j.size(); ++j) {
        os << "# n_j\t" << j << "\t" << tr.n_j[j];
        if (!tr.n_j_alt.empty())
            os << "\talt\t" << tr.n_j_alt[j] << "\tdeg_Ej\t" << tr.deg_Ej[j];
        os << "\n";
    }
    for (std::size_t a = 0; a < tr.n_aj.size(); ++a) {
        os << "# n_aj\t" << a;
        for (const auto& v : tr.n_aj[a]) os << "\t" << v;
        os << "\n";
    }
}

void print_modular_tsv(const ModularDecomposition& dec, const AuditReport* audit,
                       std::ostream& os) {
    for (const auto& np : dec.nonprojective)
        os << np.name << "\t" << np.dimension << "\t1\n";
    for (std::size_t i = 0; i < dec.simples.size(); ++i) {
        if (dec.projective[i] == 0) continue;
        os << "P(" << dec.simples[i].name << ")\t" << dec.simples[i].dimP << "\t"
           << dec.projective[i] << "\n";
    }
    os << "# mode\tmodular\n";
    os << "# ell\t" << dec.params.ell << "\n";
    os << "# m\t" << dec.params.m << "\n";
    os << "# s01\t" << (dec.s01 > 0 ? "+1" : "-1") << "\n";
    os << "# total_dimension\t" << total_dimension(dec) << "\n";
    if (audit) {
        for (const auto& line : audit->lines) os << "# audit\t" << line << "\n";
        os << "# audit_total\t" << audit->total << "\t expected\t" << audit->expected << "\n";
        os << "# audit\t" << (audit->pass ? "PASS" : "FAIL") << "\n";
    }
}

Mode mode_for(const std::string& sub, const std::optional<Int>& m) {
    if (sub == "riemann-roch") return Mode::riemann_roch();
    if (sub == "poly-diff") return Mode::poly_diff(m.value_or(0));
    if (sub == "tangent") return Mode::poly_diff(2);
    return Mode::omega();
}

int run_file_command(const std::string& sub, const std::string& path, std::optional<Int> m_flag,
                     bool with_trace, bool as_json) {
    InputDocument doc = load_document(path);
    std::optional<Int> m = m_flag ? m_flag : doc.m;
    if (sub == "poly-diff" && !m)
        throw Failure(FailureCode::ParseError, "poly-diff needs --m or an \"m\" field");
    Mode mode = mode_for(sub, m);

    auto issues = validate_input(doc.group, doc.cover, mode);
    if (!issues.empty()) {
        for (const auto& issue : issues) std::cerr << issue.text() << "\n";
        return kExitFailure;
    }

    if (sub == "tangent") {
        Int t = tangent_dimension(doc.group, doc.cover);
        if (as_json) {
            Json out;
            out["mode"] = "tangent";
            out["tangent_dimension"] = json_int(t);
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << "tangent_dimension\t" << t << "\n";
        }
        return kExitOk;
    }

    EngineResult result = [&] {
        switch (mode.kind) {
            case Mode::Kind::RiemannRoch: return decompose_riemann_roch(doc.group, doc.cover);
            case Mode::Kind::PolyDifferential:
                return decompose_polydifferential(doc.group, doc.cover, *m);
            default: return decompose_differentials(doc.group, doc.cover);
        }
    }();
    if (as_json)
        std::cout << result_json(result, with_trace).dump(2) << "\n";
    else
        print_result_tsv(result, with_trace, std::cout);
    return kExitOk;
}

// Deterministic fan-out helper for the sweep suites.
std::vector<std::string> run_jobs(std::vector<std::function<std::string()>> jobs, bool parallel) {
    std::vector<std::string> lines(jobs.size());
    if (parallel) {
        std::vector<std::future<std::string>> futures;
        futures.reserve(jobs.size());
        for (auto& job : jobs) futures.push_back(std::async(std::launch::async, job));
        for (std::size_t i = 0; i < futures.size(); ++i) lines[i] = futures[i].get();
    } else {
        for (std::size_t i = 0; i < jobs.size(); ++i) lines[i] = jobs[i]();
    }
    return lines;
}

int run_sweep(const std::string& suite, long max_value, bool parallel) {
    bool all_pass = true;
    std::vector<std::function<std::string()>> jobs;

    if (suite == "hyperelliptic") {
        Int p_max = max_value > 0 ? Int(max_value) : Int(31);
        RegressionReport report = hyperelliptic_regression(p_max);
        for (const auto& line : report.lines) std::cout << line << "\n";
        std::cout << "# cases\t" << report.cases << "\n";
        std::cout << "# result\t" << (report.pass ? "PASS" : "FAIL") << "\n";
        return report.pass ? kExitOk : kExitFailure;
    }

    if (suite == "modular") {
        Int l_max = max_value > 0 ? Int(max_value) : Int(61);
        for (const Int& ell : primes_in_range(7, l_max))
            for (Int m = 2; m <= 12; ++m)
                for (int s01 : {1, -1})
                    jobs.push_back([ell, m, s01]() {
                        std::ostringstream os;
                        AuditReport audit = dimension_audit(ell, m, s01);
                        os << (audit.pass ? "ok" : "FAIL") << " ell=" << ell << " m=" << m
                           << " s01=" << (s01 > 0 ? "+1" : "-1") << " dim=" << audit.total;
                        if (!audit.pass) os << " expected=" << audit.expected;
                        return os.str();
                    });
    } else if (suite == "local") {
        Int l_max = max_value > 0 ? Int(max_value) : Int(19);
        for (const Int& ell : primes_in_range(7, l_max))
            for (auto sub : valid_local_subgroups(ell))
                for (Int m = 2; m <= 8; ++m)
                    jobs.push_back([ell, sub, m]() {
                        std::ostringstream os;
                        LocalCheck check = local_restriction_check(ell, sub, m);
                        os << (check.pass ? "ok" : "FAIL") << " ell=" << ell << " "
                           << local_subgroup_name(sub) << " m=" << m;
                        if (!check.pass) os << " " << check.detail;
                        return os.str();
                    });
    } else if (suite == "synthetic") {
        int count = max_value > 0 ? static_cast<int>(max_value) : 1000;
        auto cases = synthetic_cases(20240915u, count);
        for (const auto& sc : cases)
            jobs.push_back([sc]() {
                PropertyCheck pc = check_engine_properties(sc);
                return (pc.pass ? "ok " + sc.tag : "FAIL " + pc.detail);
            });
    } else {
        throw Failure(FailureCode::ParseError,
                      "unknown suite \"" + suite +
                          "\" (have: hyperelliptic, modular, local, synthetic)");
    }

    auto lines = run_jobs(std::move(jobs), parallel);
    for (const auto& line : lines) {
        std::cout << line << "\n";
        if (line.rfind("FAIL", 0) == 0) all_pass = false;
    }
    std::cout << "# cases\t" << lines.size() << "\n";
    std::cout << "# result\t" << (all_pass ? "PASS" : "FAIL") << "\n";
    return all_pass ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact kG-module decompositions of Riemann-Roch spaces and"
                 " (poly-)differentials for curves with a p-hypo-elementary group action"};
    app.require_subcommand(1);

    std::string path;
    long long m_arg = -1;
    bool with_trace = false, as_json = false;

    auto add_file_sub = [&](const char* name, const char* desc, bool needs_m) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("file", path, "JSON input document")->required();
        if (needs_m) sub->add_option("--m", m_arg, "tensor power m >= 2");
        sub->add_flag("--trace", with_trace, "emit the full audit trace");
        sub->add_flag("--json", as_json, "machine-readable JSON output");
        return sub;
    };
    CLI::App* rr = add_file_sub("riemann-roch", "decompose H^0(X, O(E)) from raw coefficients", false);
    CLI::App* pd = add_file_sub("poly-diff", "decompose H^0(X, Omega^m)", true);
    CLI::App* om = add_file_sub("diff", "decompose H^0(X, Omega)", false);
    CLI::App* tg = add_file_sub("tangent", "deformation tangent dimension (m = 2)", false);

    long long hp = 0, hm = 0;
    bool expect = false;
    CLI::App* hyper = app.add_subcommand("hyperelliptic", "the y^2 = t^{p^2} - t family");
    hyper->add_option("--p", hp, "prime p > 3m")->required();
    hyper->add_option("--m", hm, "tensor power m >= 2")->required();
    hyper->add_flag("--expect", expect, "compare against the closed form");
    hyper->add_flag("--trace", with_trace, "emit the full audit trace");
    hyper->add_flag("--json", as_json, "machine-readable JSON output");

    long long ml = 0, mm = 0;
    std::string s01_text = "+1";
    bool audit_flag = false;
    CLI::App* modular = app.add_subcommand("modular", "PSL(2, F_ell) cusp forms mod 3");
    modular->add_option("--l", ml, "prime level >= 7")->required();
    modular->add_option("--m", mm, "half-weight m >= 2")->required();
    modular->add_option("--s01", s01_text, "square-root convention, +1 or -1");
    modular->add_flag("--audit", audit_flag, "run the dimension audit");
    modular->add_flag("--json", as_json, "machine-readable JSON output");

    std::string suite;
    long long sweep_max = 0;
    bool parallel = false;
    CLI::App* sweep = app.add_subcommand("sweep", "regression suites");
    sweep->add_option("suite", suite, "hyperelliptic | modular | local | synthetic")->required();
    sweep->add_option("--max", sweep_max, "sweep bound (prime bound or case count)");
    sweep->add_flag("--parallel", parallel, "fan the sweep out over threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        for (CLI::App* sub : {rr, pd, om, tg})
            if (sub->parsed())
                return run_file_command(sub->get_name(), path,
                                        m_arg >= 0 ? std::optional<Int>(Int(m_arg)) : std::nullopt,
                                        with_trace, as_json);

        if (hyper->parsed()) {
            HyperellipticInstance inst = build_hyperelliptic(Int(hp));
            EngineResult result = decompose_polydifferential(inst.group, inst.cover, Int(hm));
            if (expect) {
                Decomposition want = expected_hyperelliptic(Int(hp), Int(hm));
                if (!(result.decomposition == want)) {
                    std::cerr << "engine output differs from the closed form\n";
                    return kExitFailure;
                }
            }
            if (as_json) {
                Json out = result_json(result, with_trace);
                if (expect) out["matches_closed_form"] = true;
                std::cout << out.dump(2) << "\n";
            } else {
                print_result_tsv(result, with_trace, std::cout);
                if (expect) std::cout << "# closed_form\tmatch\n";
            }
            return kExitOk;
        }

        if (modular->parsed()) {
            int s01 = 1;
            if (s01_text == "+1" || s01_text == "1")
                s01 = 1;
            else if (s01_text == "-1")
                s01 = -1;
            else
                throw Failure(FailureCode::ParseError, "--s01 must be +1 or -1");
            ModularDecomposition dec = modular_decomposition(Int(ml), Int(mm), s01);
            std::optional<AuditReport> audit;
            if (audit_flag) audit = dimension_audit(Int(ml), Int(mm), s01);
            if (as_json)
                std::cout << modular_json(dec, audit ? &*audit : nullptr).dump(2) << "\n";
            else
                print_modular_tsv(dec, audit ? &*audit : nullptr, std::cout);
            return audit && !audit->pass ? kExitFailure : kExitOk;
        }

        if (sweep->parsed()) return run_sweep(suite, sweep_max, parallel);
    } catch (const Failure& f) {
        std::cerr << f.what() << "\n";
        return f.code() == FailureCode::ParseError ? kExitUsage : kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
